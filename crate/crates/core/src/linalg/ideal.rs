//! Membership in a homogeneous ideal of the even subalgebra, one degree
//! slice at a time.
//!
//! In a pure model an element `Σ p_j y_j` with `p_j ∈ ΛQ` has differential
//! `Σ p_j · d(y_j)`, so exactness of an even element is the same as
//! membership in `J = (d y_1, …, d y_r)` in that degree.

use num_traits::Zero;

use super::membership::{certify_membership, Membership};
use super::slice::{DegreeSlice, SliceFilter};
use super::ExactVec;
use crate::algebra::{GeneratorSet, Homogeneity, Monomial, Polynomial, Rational};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::SullivanModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealMembership {
    /// target = Σ coefficients[j] · generators[j].
    Member { coefficients: Vec<Polynomial> },
    /// A linear form on the target's degree slice (monomial → value) that
    /// vanishes on the ideal's slice but not on the target.
    NonMember { functional: Vec<(Monomial, Rational)> },
}

impl IdealMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, IdealMembership::Member { .. })
    }
}

fn degree_of(p: &Polynomial, what: &str) -> Result<Option<u32>> {
    match p.homogeneity() {
        Homogeneity::Zero => Ok(None),
        Homogeneity::Degree(d) => Ok(Some(d)),
        Homogeneity::Mixed => Err(Error::Validation(format!("{what} is not homogeneous"))),
    }
}

/// Target slice, column origins `(j, m)`, columns and target coordinates.
type System = (DegreeSlice, Vec<(usize, Monomial)>, Vec<ExactVec>, ExactVec);

/// Columns `m·g_j` for every even monomial `m` of the complementary degree.
fn system(
    gens: &GeneratorSet,
    degree: u32,
    target: &Polynomial,
    generators: &[Polynomial],
    caps: &Caps,
) -> Result<System> {
    let slice = DegreeSlice::enumerate(gens, degree, SliceFilter::EvenOnly, caps)?;
    let mut origin: Vec<(usize, Monomial)> = Vec::new();
    let mut columns: Vec<ExactVec> = Vec::new();
    for (j, g) in generators.iter().enumerate() {
        let Some(gd) = degree_of(g, "ideal generator")? else { continue };
        if gd > degree {
            continue;
        }
        let coeff_slice = DegreeSlice::enumerate(gens, degree - gd, SliceFilter::EvenOnly, caps)?;
        for m in coeff_slice.basis() {
            let prod = gens.mul(&Polynomial::from_monomial(m.clone()), g)?;
            columns.push(slice.coordinates(&prod)?);
            origin.push((j, m.clone()));
        }
    }
    let t = slice.coordinates(target)?;
    Ok((slice, origin, columns, t))
}

/// One-prime answer, for steering searches only (never a verdict).
pub fn likely_member(gens: &GeneratorSet, target: &Polynomial, generators: &[Polynomial], caps: &Caps) -> Result<bool> {
    let Some(degree) = degree_of(target, "target")? else { return Ok(true) };
    let (slice, _, columns, t) = system(gens, degree, target, generators, caps)?;
    Ok(super::membership::likely_member(slice.dim(), &columns, &t))
}

/// Decides `target ∈ (generators)` inside `ΛQ`, with an exactly verified
/// certificate either way.
pub fn ideal_membership(
    gens: &GeneratorSet,
    target: &Polynomial,
    generators: &[Polynomial],
    caps: &Caps,
) -> Result<IdealMembership> {
    let even_only = |p: &Polynomial| p.terms().all(|(m, _)| gens.is_even_only(m));
    if !even_only(target) || !generators.iter().all(even_only) {
        return Err(Error::Validation("ideal membership needs polynomials in the even generators".into()));
    }
    let Some(degree) = degree_of(target, "target")? else {
        return Ok(IdealMembership::Member {
            coefficients: vec![Polynomial::zero(); generators.len()],
        });
    };
    let (slice, origin, columns, t) = system(gens, degree, target, generators, caps)?;
    match certify_membership(slice.dim(), &columns, &t, caps)? {
        Membership::Member { coefficients } => {
            let mut out = vec![Polynomial::zero(); generators.len()];
            for (col, c) in coefficients {
                let (j, m) = &origin[col];
                out[*j].add_term(m.clone(), c);
            }
            let answer = IdealMembership::Member { coefficients: out };
            verify(gens, target, generators, &answer)?;
            Ok(answer)
        }
        Membership::NonMember { functional } => Ok(IdealMembership::NonMember {
            functional: functional
                .into_iter()
                .map(|(i, c)| (slice.basis()[i].clone(), c))
                .collect(),
        }),
    }
}

/// Re-checks a membership witness by polynomial arithmetic alone.
pub fn verify(gens: &GeneratorSet, target: &Polynomial, generators: &[Polynomial], answer: &IdealMembership) -> Result<()> {
    match answer {
        IdealMembership::Member { coefficients } => {
            let mut sum = Polynomial::zero();
            for (p, g) in coefficients.iter().zip(generators) {
                sum = sum.add(&gens.mul(p, g)?);
            }
            if coefficients.len() != generators.len() || sum != *target {
                return Err(Error::CertificateInvalid("ideal coefficients do not reproduce the target".into()));
            }
        }
        IdealMembership::NonMember { functional } => {
            let eval = |p: &Polynomial| -> Rational {
                functional
                    .iter()
                    .map(|(m, c)| c * p.coefficient(m))
                    .fold(Rational::zero(), |a, b| a + b)
            };
            if eval(target).is_zero() {
                return Err(Error::CertificateInvalid("functional vanishes on the target".into()));
            }
            let Some(degree) = degree_of(target, "target")? else {
                return Err(Error::CertificateInvalid("zero target is always a member".into()));
            };
            // The functional must kill every m·g_j of the target degree.
            let caps = Caps {
                max_degree: u32::MAX,
                ..Caps::default()
            };
            for g in generators {
                let Some(gd) = degree_of(g, "ideal generator")? else { continue };
                if gd > degree {
                    continue;
                }
                let coeff_slice = DegreeSlice::enumerate(gens, degree - gd, SliceFilter::EvenOnly, &caps)?;
                for m in coeff_slice.basis() {
                    let prod = gens.mul(&Polynomial::from_monomial(m.clone()), g)?;
                    if !eval(&prod).is_zero() {
                        return Err(Error::CertificateInvalid("functional does not vanish on the ideal".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

/// An odd primitive `w = Σ p_j y_j` with `d w = target`, or a proof that
/// the even element `target` is not exact. Requires a pure model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact { witness: Polynomial },
    NotExact { functional: Vec<(Monomial, Rational)> },
}

pub fn even_exactness(model: &SullivanModel, target: &Polynomial, caps: &Caps) -> Result<Exactness> {
    if !model.is_pure() {
        return Err(Error::Unsupported("exactness through the ideal needs a pure model".into()));
    }
    let gens = model.generators();
    let odd = gens.odd_ids();
    let relations: Vec<Polynomial> = odd.iter().map(|&j| model.differential_of(j).clone()).collect();
    match ideal_membership(gens, target, &relations, caps)? {
        IdealMembership::Member { coefficients } => {
            let mut witness = Polynomial::zero();
            for (p, &j) in coefficients.iter().zip(&odd) {
                witness = witness.add(&gens.mul(p, &gens.generator_poly(j))?);
            }
            if model.apply_differential(&witness)? != *target {
                return Err(Error::CertificateInvalid("d(witness) differs from the target".into()));
            }
            Ok(Exactness::Exact { witness })
        }
        IdealMembership::NonMember { functional } => Ok(Exactness::NotExact { functional }),
    }
}
