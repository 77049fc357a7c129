//! Certified span membership: is `target` a ℚ-combination of `columns`?

use num_traits::{One, Zero};

use super::echelon::{span_echelon, SparseMod, TrackedEchelon};
use super::modp::Zp;
use super::{bareiss, combine, dense_to_exact, dot, exact_to_dense, multimodular, to_mod, Attempt, ExactVec};
use crate::algebra::Rational;
use crate::config::Caps;
use crate::error::{Error, Result};

/// A certified answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// target = Σ c_j · columns[j]; `coefficients` is sparse over column
    /// indices.
    Member { coefficients: ExactVec },
    /// λ(columns[j]) = 0 for every j and λ(target) ≠ 0.
    NonMember { functional: ExactVec },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Up to this many matrix cells the system is solved directly with
/// Bareiss.
pub const BAREISS_CELLS: usize = 3000;

pub fn check(dim: usize, columns: &[ExactVec], target: &ExactVec, answer: &Membership) -> bool {
    match answer {
        Membership::Member { coefficients } => {
            if coefficients.iter().any(|(j, _)| *j >= columns.len()) {
                return false;
            }
            combine(dim, columns, coefficients) == exact_to_dense(target, dim)
        }
        Membership::NonMember { functional } => {
            !dot(functional, target).is_zero() && columns.iter().all(|c| dot(functional, c).is_zero())
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Shape {
    Member { accepted: Vec<usize> },
    NonMember { support: Vec<usize> },
}

pub fn certify_membership(
    dim: usize,
    columns: &[ExactVec],
    target: &ExactVec,
    caps: &Caps,
) -> Result<Membership> {
    if target.is_empty() {
        return Ok(Membership::Member {
            coefficients: Vec::new(),
        });
    }
    if target.iter().any(|(i, _)| *i >= dim) {
        return Err(Error::Structural("target outside the slice".into()));
    }
    if dim * columns.len() <= BAREISS_CELLS {
        return Ok(small_system(dim, columns, target));
    }
    let cells = dim.saturating_mul(dim.min(columns.len() + 1));
    if cells > caps.max_dense_cells {
        return Err(Error::Capacity {
            what: format!("dense elimination on a {dim}-dimensional slice"),
            requested: cells,
            cap: caps.max_dense_cells,
        });
    }
    multimodular(
        "span membership",
        |zp| attempt(zp, dim, columns, target),
        |shape, values| {
            let answer = match shape {
                Shape::Member { accepted } => Membership::Member {
                    coefficients: accepted
                        .iter()
                        .copied()
                        .zip(values)
                        .filter(|(_, q)| !q.is_zero())
                        .collect(),
                },
                Shape::NonMember { support } => Membership::NonMember {
                    functional: support
                        .iter()
                        .copied()
                        .zip(values)
                        .filter(|(_, q)| !q.is_zero())
                        .collect(),
                },
            };
            Ok(check(dim, columns, target, &answer).then_some(answer))
        },
    )
}

/// Membership modulo a single large prime. A "no" can be wrong for an
/// unlucky prime; use only to steer searches.
pub fn likely_member(dim: usize, columns: &[ExactVec], target: &ExactVec) -> bool {
    let zp = Zp::new(super::modp::primes().next().expect("primes"));
    let (Some(cols), Some(t)) = (
        columns.iter().map(|c| to_mod(zp, c)).collect::<Option<Vec<SparseMod>>>(),
        to_mod(zp, target),
    ) else {
        return true;
    };
    let ech = span_echelon(zp, dim, &cols, 0x5eed);
    let mut residual = vec![0u64; dim];
    for &(i, a) in &t {
        residual[i] = a;
    }
    ech.reduce(&mut residual);
    residual.iter().all(|&x| x == 0)
}

fn attempt(zp: Zp, dim: usize, columns: &[ExactVec], target: &ExactVec) -> Result<Option<Attempt<Shape>>> {
    let Some(cols): Option<Vec<SparseMod>> = columns.iter().map(|c| to_mod(zp, c)).collect() else {
        return Ok(None);
    };
    let Some(t) = to_mod(zp, target) else {
        return Ok(None);
    };
    let ech = span_echelon(zp, dim, &cols, 0x5eed);
    let mut residual = vec![0u64; dim];
    for &(i, a) in &t {
        residual[i] = a;
    }
    ech.reduce(&mut residual);
    if let Some(mu) = residual.iter().position(|&x| x != 0) {
        let lambda = ech.dual_functional(mu);
        let mut support = ech.pivots();
        support.push(mu);
        support.sort_unstable();
        let values = support.iter().map(|&i| lambda[i]).collect();
        return Ok(Some(Attempt {
            key: 2 * ech.rank() + 1,
            signature: Shape::NonMember { support },
            values,
        }));
    }
    let rank = ech.rank();
    let mut tracked = TrackedEchelon::new(zp, dim);
    for (j, c) in cols.iter().enumerate() {
        if tracked.rank() == rank {
            break;
        }
        tracked.insert_sparse(j, c);
    }
    let Some(coeffs) = tracked.solve(&t) else {
        // The compressed span saw more than the greedy pass; retry with
        // another prime.
        return Ok(None);
    };
    Ok(Some(Attempt {
        key: 2 * rank,
        signature: Shape::Member {
            accepted: tracked.accepted().to_vec(),
        },
        values: coeffs,
    }))
}

fn small_system(dim: usize, columns: &[ExactVec], target: &ExactVec) -> Membership {
    let n = columns.len();
    // Rows of A (dim × n).
    let mut a = vec![vec![Rational::zero(); n]; dim];
    for (j, c) in columns.iter().enumerate() {
        for (i, q) in c {
            a[*i][j] = q.clone();
        }
    }
    let t = exact_to_dense(target, dim);
    if let Some(x) = bareiss::solve(&a, n, &t) {
        return Membership::Member {
            coefficients: dense_to_exact(&x),
        };
    }
    // λ with λ·column_j = 0 and λ·target = 1.
    let mut rows: Vec<Vec<Rational>> = columns.iter().map(|c| exact_to_dense(c, dim)).collect();
    rows.push(t);
    let mut rhs = vec![Rational::zero(); n];
    rhs.push(Rational::one());
    let lambda = bareiss::solve(&rows, dim, &rhs).expect("inconsistent system has a separating functional");
    Membership::NonMember {
        functional: dense_to_exact(&lambda),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn col(entries: &[(usize, i64)]) -> ExactVec {
        entries.iter().map(|&(i, c)| (i, rational(c))).collect()
    }

    #[test]
    fn small_member_and_non_member() {
        let cols = vec![col(&[(0, 1), (1, 1)]), col(&[(1, 1), (2, 1)])];
        let caps = Caps::default();
        let t = col(&[(0, 1), (2, -1)]);
        let ans = certify_membership(3, &cols, &t, &caps).unwrap();
        assert!(ans.is_member());
        assert!(check(3, &cols, &t, &ans));
        let t2 = col(&[(0, 1)]);
        let ans2 = certify_membership(3, &cols, &t2, &caps).unwrap();
        assert!(!ans2.is_member());
        assert!(check(3, &cols, &t2, &ans2));
    }

    /// Same answers from the modular route and from Bareiss on a system
    /// just over the direct threshold.
    #[test]
    fn modular_route_agrees_with_bareiss() {
        let dim = 40;
        let mut cols = Vec::new();
        for j in 0..90usize {
            let a = (j * 7) % dim;
            let b = (j * 11 + 3) % dim;
            if a == b {
                continue;
            }
            let (a, b) = (a.min(b), a.max(b));
            cols.push(col(&[(a, 1 + (j % 3) as i64), (b, -1)]));
        }
        // Sum-of-coordinates-weighted targets: some members, some not.
        let caps = Caps::default();
        for (k, t) in [col(&[(0, 1), (5, -2)]), col(&[(3, 1)]), col(&[(1, 2), (2, 2), (39, 1)])]
            .into_iter()
            .enumerate()
        {
            let modular = certify_membership(dim, &cols, &t, &caps).unwrap();
            let direct = small_system(dim, &cols, &t);
            assert_eq!(modular.is_member(), direct.is_member(), "target {k}");
            assert!(check(dim, &cols, &t, &modular));
        }
    }
}
