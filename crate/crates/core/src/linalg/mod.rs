//! Exact linear algebra on degree slices.
//!
//! Every verdict leaving this module is certified over ℚ. Elimination runs
//! modulo word-size primes; the objects it produces (solutions, dual
//! functionals, cocycles) are canonical, so their residues can be combined
//! across primes, rationally reconstructed and then checked exactly.
//! Small systems go straight through [`bareiss`].

pub mod bareiss;
pub mod cohomology;
pub mod echelon;
pub mod ideal;
pub mod membership;
pub mod modp;
pub mod reconstruct;
pub mod slice;

use num_traits::Zero;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use echelon::SparseMod;
use modp::{primes, Zp};
use reconstruct::CrtVector;

/// Sparse exact vector: strictly increasing indices, no zero entries.
pub type ExactVec = Vec<(usize, Rational)>;

pub fn to_mod(zp: Zp, v: &ExactVec) -> Option<SparseMod> {
    v.iter()
        .map(|(i, q)| zp.from_rational(q).map(|r| (*i, r)))
        .filter(|r| !matches!(r, Some((_, 0))))
        .collect()
}

pub fn dense_to_exact(v: &[Rational]) -> ExactVec {
    v.iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| (i, q.clone()))
        .collect()
}

pub fn exact_to_dense(v: &ExactVec, dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (i, q) in v {
        out[*i] = q.clone();
    }
    out
}

/// Σ a_i b_i for two sparse vectors.
pub fn dot(a: &ExactVec, b: &ExactVec) -> Rational {
    let (mut i, mut j) = (0, 0);
    let mut s = Rational::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// Σ c_j · columns[j], as a dense vector of length `dim`.
pub fn combine(dim: usize, columns: &[ExactVec], coeffs: &ExactVec) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (j, c) in coeffs {
        for (i, a) in &columns[*j] {
            out[*i] += c * a;
        }
    }
    out
}

/// Outcome of one modular attempt: a priority `key` (higher is more
/// trustworthy, e.g. a rank), a structural signature that must agree
/// across primes, and the residues of the rational values to recover.
pub(crate) struct Attempt<S> {
    pub key: usize,
    pub signature: S,
    pub values: Vec<u64>,
}

pub(crate) const MAX_PRIMES: usize = 400;

/// Runs `attempt` over successive primes, accumulating residues of
/// attempts that share the best key and signature, until `finish` accepts
/// a reconstruction.
pub(crate) fn multimodular<S: Clone + PartialEq, T>(
    what: &str,
    mut attempt: impl FnMut(Zp) -> Result<Option<Attempt<S>>>,
    mut finish: impl FnMut(&S, Vec<Rational>) -> Result<Option<T>>,
) -> Result<T> {
    let mut best: Option<(usize, S, CrtVector)> = None;
    for p in primes().take(MAX_PRIMES) {
        let zp = Zp::new(p);
        let Some(a) = attempt(zp)? else { continue };
        let updated = match best.as_mut() {
            Some((key, sig, acc)) if a.key == *key && a.signature == *sig => {
                acc.add_prime(&a.values, p);
                true
            }
            Some((key, _, _)) if a.key <= *key => false,
            _ => {
                best = Some((a.key, a.signature, CrtVector::new(&a.values, p)));
                true
            }
        };
        if !updated {
            continue;
        }
        let (_, sig, acc) = best.as_ref().expect("set above");
        if let Some(vals) = acc.reconstruct() {
            if let Some(out) = finish(sig, vals)? {
                return Ok(out);
            }
        }
    }
    Err(Error::Inconsistent(format!(
        "{what}: no certified reconstruction after {MAX_PRIMES} primes"
    )))
}
