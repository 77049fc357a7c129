//! Ellipticity of pure algebras: nilpotence of the even classes, and the
//! colouring criterion for the graph models.

use serde::Serialize;

use crate::algebra::{GeneratorSet, Monomial, Polynomial, Rational};
use crate::coloring::{self, ColouringPoint};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::ideal::{self, Exactness};
use crate::model::SullivanModel;
use crate::reduction::{build_v, check_k, constants};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Nilpotence,
    Coloring,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "nilpotence" => Ok(Method::Nilpotence),
            "coloring" | "colouring" => Ok(Method::Coloring),
            "both" => Ok(Method::Both),
            _ => Err(Error::Validation(format!("unknown method {s:?} (nilpotence|coloring|both)"))),
        }
    }
}

/// `d w = x^exponent` for one even generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotenceWitness {
    pub generator: usize,
    pub exponent: u32,
    /// Smallest exponent found to be exact (the search starts at 1).
    pub first_exact_exponent: u32,
    pub witness: Polynomial,
}

/// `x^exponent` is not exact: a linear form on the even slice that kills
/// the ideal of relations and not the power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub generator: usize,
    pub exponent: u32,
    pub functional: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotenceOutcome {
    Nilpotent(Vec<NilpotenceWitness>),
    NotNilpotent(Obstruction),
}

impl NilpotenceOutcome {
    pub fn elliptic(&self) -> bool {
        matches!(self, NilpotenceOutcome::Nilpotent(_))
    }
}

/// Decides, for each `(generator, exponent)`, whether `x^exponent` is
/// exact in the pure model; stops at the first one that is not.
///
/// The exponents come from a bound that is valid when the model is
/// elliptic, so "all exact" means elliptic and any obstruction means not.
pub fn nilpotence(model: &SullivanModel, targets: &[(usize, u32)], caps: &Caps) -> Result<NilpotenceOutcome> {
    if !model.is_pure() {
        return Err(Error::Unsupported("ellipticity by nilpotence needs a pure model".into()));
    }
    let gens = model.generators();
    let relations: Vec<Polynomial> = gens.odd_ids().iter().map(|&j| model.differential_of(j).clone()).collect();
    let mut witnesses = Vec::new();
    for &(id, exponent) in targets {
        let power = |e: u32| Polynomial::from_monomial(gens.power(id, e));
        // Cheap one-prime probe for the first exact power, then certify.
        let mut found = None;
        for e in 1..exponent {
            if ideal::likely_member(gens, &power(e), &relations, caps)? {
                if let Exactness::Exact { witness } = ideal::even_exactness(model, &power(e), caps)? {
                    found = Some((e, witness));
                    break;
                }
            }
        }
        let (first, witness) = match found {
            Some((e, w)) => {
                // x^exponent = x^(exponent−e) · d w = d(x^(exponent−e) w).
                let lifted = gens.mul(&power(exponent - e), &w)?;
                (e, lifted)
            }
            None => match ideal::even_exactness(model, &power(exponent), caps)? {
                Exactness::Exact { witness } => (exponent, witness),
                Exactness::NotExact { functional } => {
                    return Ok(NilpotenceOutcome::NotNilpotent(Obstruction {
                        generator: id,
                        exponent,
                        functional,
                    }))
                }
            },
        };
        if model.apply_differential(&witness)? != power(exponent) {
            return Err(Error::CertificateInvalid(format!(
                "nilpotence witness for {} fails",
                gens.generator(id).name
            )));
        }
        witnesses.push(NilpotenceWitness {
            generator: id,
            exponent,
            first_exact_exponent: first,
            witness,
        });
    }
    Ok(NilpotenceOutcome::Nilpotent(witnesses))
}

/// Exponent per even generator for a hand-written pure model: if the model
/// is elliptic, cohomology vanishes above the formal dimension, so
/// `⌊fd / deg x⌋ + 1` must already be exact.
pub fn generic_targets(model: &SullivanModel) -> Vec<(usize, u32)> {
    let fd = model.formal_dimension();
    let gens = model.generators();
    gens.even_ids()
        .into_iter()
        .map(|id| (id, if fd < 0 { 0 } else { fd as u32 / gens.degree(id) + 1 }))
        .collect()
}

/// The colouring side: the point that colours every k-colourable component
/// (and is 0 elsewhere) is a common zero of the edge differentials; it is
/// nonzero exactly when the algebra is not elliptic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouringOutcome {
    pub point: ColouringPoint,
    /// A proper colouring of the whole graph, when there is one.
    pub colouring: Option<Vec<u32>>,
}

impl ColouringOutcome {
    pub fn elliptic(&self) -> bool {
        self.point.iter().all(|c| c.is_none())
    }
}

pub fn by_colouring(g: &Graph, k: i64) -> Result<ColouringOutcome> {
    check_k(k)?;
    let k = k as u32;
    let point = coloring::colouring_point(g, k);
    if !coloring::point_annihilates_edges(g, k, &point)? {
        return Err(Error::CertificateInvalid("colouring point is not a common zero".into()));
    }
    let colouring = coloring::find_coloring(g, k);
    if let Some(c) = &colouring {
        if !coloring::check_noncoloring_certificate(g, k, c)? {
            return Err(Error::CertificateInvalid("colouring certificate fails".into()));
        }
    }
    Ok(ColouringOutcome { point, colouring })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticityVerdict {
    pub elliptic: bool,
    pub method: Method,
    pub nilpotence: Option<NilpotenceOutcome>,
    pub colouring: Option<ColouringOutcome>,
}

/// Per-vertex exponent `d_{G,k} + 1`, clamped at 0.
pub fn graph_targets(g: &Graph, k: i64) -> Result<Vec<(usize, u32)>> {
    let c = constants(g, k)?;
    let e = (c.d_g_k + 1).max(0) as u32;
    Ok((0..g.n()).map(|id| (id, e)).collect())
}

pub fn is_elliptic_algebraic(g: &Graph, k: i64, caps: &Caps) -> Result<NilpotenceOutcome> {
    let model = build_v(g, k)?;
    nilpotence(&model, &graph_targets(g, k)?, caps)
}

pub fn is_elliptic(g: &Graph, k: i64, method: Method, caps: &Caps) -> Result<EllipticityVerdict> {
    let nil = match method {
        Method::Coloring => None,
        _ => Some(is_elliptic_algebraic(g, k, caps)?),
    };
    let col = match method {
        Method::Nilpotence => None,
        _ => Some(by_colouring(g, k)?),
    };
    let elliptic = match (&nil, &col) {
        (Some(a), Some(b)) => {
            if a.elliptic() != b.elliptic() {
                return Err(Error::Inconsistent(format!(
                    "nilpotence says elliptic={}, colouring says elliptic={}",
                    a.elliptic(),
                    b.elliptic()
                )));
            }
            a.elliptic()
        }
        (Some(a), None) => a.elliptic(),
        (None, Some(b)) => b.elliptic(),
        (None, None) => unreachable!(),
    };
    Ok(EllipticityVerdict {
        elliptic,
        method,
        nilpotence: nil,
        colouring: col,
    })
}

/// Independent re-check of a nilpotence certificate against a fresh model.
pub fn recheck_witnesses(model: &SullivanModel, witnesses: &[NilpotenceWitness]) -> Result<bool> {
    let gens: &GeneratorSet = model.generators();
    for w in witnesses {
        let target = Polynomial::from_monomial(gens.power(w.generator, w.exponent));
        if model.apply_differential(&w.witness)? != target {
            return Ok(false);
        }
    }
    Ok(true)
}
