//! Resource caps. Precedence: explicit setting > `EHK_*` environment
//! variable > default.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest number of monomials in one degree slice.
    pub max_slice_dim: usize,
    /// Largest total degree a slice may be enumerated in.
    pub max_degree: u32,
    /// Largest dense working matrix (rows × columns) for one elimination.
    pub max_dense_cells: usize,
    /// Largest even slice on which the non-exactness of x^(d'+n+1) in the
    /// extended model is proved with the linear solver; above it the
    /// colouring-point functional is used.
    pub w_solver_max_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_slice_dim: 200_000,
            max_degree: 64,
            max_dense_cells: 64_000_000,
            w_solver_max_dim: 1500,
        }
    }
}

const VARS: [&str; 4] = [
    "EHK_MAX_SLICE_DIM",
    "EHK_MAX_DEGREE",
    "EHK_MAX_DENSE_CELLS",
    "EHK_W_SOLVER_MAX_DIM",
];

fn parse_var<T: std::str::FromStr>(name: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Validation(format!("{name}: expected a non-negative integer, got {value:?}")))
}

impl Caps {
    /// Defaults overridden by whichever `EHK_*` variables are set.
    pub fn from_env() -> Result<Caps> {
        Caps::from_lookup(|name| std::env::var(name).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Caps> {
        let mut caps = Caps::default();
        for name in VARS {
            let Some(value) = lookup(name) else { continue };
            match name {
                "EHK_MAX_SLICE_DIM" => caps.max_slice_dim = parse_var(name, &value)?,
                "EHK_MAX_DEGREE" => caps.max_degree = parse_var(name, &value)?,
                "EHK_MAX_DENSE_CELLS" => caps.max_dense_cells = parse_var(name, &value)?,
                _ => caps.w_solver_max_dim = parse_var(name, &value)?,
            }
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn environment_overrides_defaults() {
        let caps = Caps::from_lookup(|n| (n == "EHK_MAX_DEGREE").then(|| "30".to_string())).unwrap();
        assert_eq!(caps.max_degree, 30);
        assert_eq!(caps.max_slice_dim, 200_000);
        assert!(Caps::from_lookup(|n| (n == "EHK_MAX_SLICE_DIM").then(|| "-4".to_string())).is_err());
    }
}
