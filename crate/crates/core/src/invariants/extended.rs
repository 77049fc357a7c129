//! Invariants of the extension `ΛW_{G,k}`.
//!
//! Elliptic case: the splitting `ΛW ≅ ΛV ⊗ Λ(z'_1, …, z'_n)` adds exactly n
//! to cup-length and category. Otherwise some `x_i` is non-nilpotent in
//! `ΛV`, and `x_i^{d'+n+1}` is shown to be non-exact in `ΛW` below the
//! degree of the z's, which bounds both invariants from below.

use serde::Serialize;

use super::ellipticity::{ColouringOutcome, NilpotenceWitness};
use super::Value;
use crate::algebra::Polynomial;
use crate::coloring;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::ideal::{ideal_membership, IdealMembership};
use crate::linalg::slice::{slice_dimension, SliceFilter};
use crate::reduction::{build_splitting, build_v, build_w, constants, x_power};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingCheck {
    /// z'_i = z_i − x̃_i · x_i^exponent
    pub exponent: u32,
    pub closed: bool,
    /// Each z'_i has coefficient 1 on z_i, and 1 ∉ (d y_e): not exact.
    pub non_exact: bool,
    pub cocycles: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerCertificate {
    /// A rational functional on the even slice found by the solver.
    Solver,
    /// Evaluation at the colouring point, checked in cyclotomic arithmetic.
    ColouringPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonExactPower {
    pub vertex: usize,
    pub exponent: u32,
    pub degree: u32,
    pub certificate: PowerCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedInvariants {
    /// d'_{n,k} + n
    pub bound: i64,
    pub cup_length_w: Value,
    pub cat0_w: Value,
    /// cup_length_W ≤ d' + n
    pub p3: bool,
    /// cat0_W ≤ d' + n
    pub q3: bool,
    pub splitting: Option<SplittingCheck>,
    pub non_exact_power: Option<NonExactPower>,
}

/// Elliptic branch. `cup_v` / `cat_v` are the invariants of `ΛV` (exact or
/// upper bounds).
pub fn elliptic_branch(
    g: &Graph,
    k: i64,
    witnesses: &[NilpotenceWitness],
    cup_v: &Value,
    cat_v: &Value,
    caps: &Caps,
) -> Result<ExtendedInvariants> {
    let c = constants(g, k)?;
    let n = g.n() as u64;
    let bound = c.d_n_k_prime + g.n() as i64;
    let polys: Vec<Polynomial> = witnesses.iter().map(|w| w.witness.clone()).collect();
    let split = build_splitting(g, k, &polys)?;
    let v = build_v(g, k)?;
    let relations: Vec<Polynomial> = (g.n()..v.generators().len()).map(|j| v.differential_of(j).clone()).collect();
    let one = Polynomial::from_monomial(v.generators().one());
    let non_exact = !ideal_membership(v.generators(), &one, &relations, caps)?.is_member();
    if !non_exact {
        return Err(Error::Inconsistent("1 lies in the ideal of edge relations".into()));
    }
    let w = build_w(g, k)?;
    let shift = |val: &Value, what: &str| -> Value {
        match val {
            Value::Exact { value } => Value::Exact { value: value + n },
            Value::AtMost { value, .. } => Value::AtMost {
                value: value + n,
                reason: format!("{what}(ΛV) ≤ ⌊fd/2⌋, plus n from the split-off exterior factor"),
            },
            other => other.clone(),
        }
    };
    let cup_w = shift(cup_v, "cup-length");
    let cat_w = shift(cat_v, "cat0");
    let within = |v: &Value| v.upper().is_some_and(|u| u as i64 <= bound);
    if !within(&cup_w) || !within(&cat_w) {
        return Err(Error::Inconsistent(format!("elliptic ΛW invariant exceeds d'+n = {bound}")));
    }
    Ok(ExtendedInvariants {
        bound,
        p3: true,
        q3: true,
        cup_length_w: cup_w,
        cat0_w: cat_w,
        splitting: Some(SplittingCheck {
            exponent: split.exponent,
            closed: true,
            non_exact,
            cocycles: split.cocycles.iter().map(|p| w.generators().format_poly(p)).collect(),
        }),
        non_exact_power: None,
    })
}

/// Non-elliptic branch: `vertex` (1-based) is non-nilpotent in `ΛV`.
pub fn non_elliptic_branch(
    g: &Graph,
    k: i64,
    vertex: usize,
    colouring: Option<&ColouringOutcome>,
    caps: &Caps,
) -> Result<ExtendedInvariants> {
    let c = constants(g, k)?;
    let n = g.n() as i64;
    let bound = c.d_n_k_prime + n;
    let e = (bound + 1) as u32;
    let degree = 2 * e;
    // Everything of degree 2e − 1 lives in ΛV, so exactness in ΛW at this
    // degree is exactness in ΛV.
    if degree as i64 > c.z_degree {
        return Err(Error::Inconsistent("power degree reaches the z generators".into()));
    }
    let v = build_v(g, k)?;
    let gens = v.generators();
    let target = Polynomial::from_monomial(x_power(gens, vertex, e));
    let dim = slice_dimension(gens, degree, SliceFilter::EvenOnly);
    let certificate = if dim <= caps.w_solver_max_dim as u128 && degree <= caps.max_degree {
        let relations: Vec<Polynomial> = (g.n()..gens.len()).map(|j| v.differential_of(j).clone()).collect();
        match ideal_membership(gens, &target, &relations, caps)? {
            IdealMembership::NonMember { .. } => PowerCertificate::Solver,
            IdealMembership::Member { .. } => {
                return Err(Error::Inconsistent(format!("x{vertex}^{e} is exact although x{vertex} is not nilpotent")))
            }
        }
    } else {
        let point = match colouring {
            Some(c) => c.point.clone(),
            None => coloring::colouring_point(g, k as u32),
        };
        if point[vertex - 1].is_none() || !coloring::point_annihilates_edges(g, k as u32, &point)? {
            return Err(Error::CertificateInvalid(format!("colouring point does not separate x{vertex}^{e}")));
        }
        // λ(f) = f(P) kills the ideal; λ(x^e) = ζ^{e·c} ≠ 0.
        if coloring::vanishes_at(k as u32, gens, &target, &point) {
            return Err(Error::CertificateInvalid("power vanishes at the colouring point".into()));
        }
        PowerCertificate::ColouringPoint
    };
    let reason = format!("[x{vertex}]^{e} ≠ 0 in H^{degree}(ΛW)");
    Ok(ExtendedInvariants {
        bound,
        cup_length_w: Value::AtLeast {
            value: e as u64,
            reason: reason.clone(),
        },
        cat0_w: Value::AtLeast {
            value: e as u64,
            reason: format!("cat0 ≥ cup-length; {reason}"),
        },
        p3: false,
        q3: false,
        splitting: None,
        non_exact_power: Some(NonExactPower {
            vertex,
            exponent: e,
            degree,
            certificate,
        }),
    })
}
