//! Random homogeneous elements of a handful of model families, and the
//! algebraic identities checked on them.

#![allow(dead_code)]

use ehk_core::algebra::{Generator, GeneratorSet, Homogeneity, Polynomial, Rational};
use ehk_core::graph::Graph;
use ehk_core::linalg::slice::{DegreeSlice, SliceFilter};
use ehk_core::model::{truncated_polynomial_model, SullivanModel};
use ehk_core::reduction::{build_v, build_w};
use ehk_core::Caps;
use num_bigint::BigInt;
use proptest::prelude::*;

pub const CASES: u32 = 1000;
const MAX_DEGREE: u32 = 9;

#[derive(Clone, Debug)]
pub enum Family {
    V { n: usize, mask: u64, k: i64 },
    W { n: usize, mask: u64 },
    Truncated { power: u32 },
    /// d = 0, with degree-1 and degree-3 odd generators.
    Free,
}

impl Family {
    pub fn model(&self) -> SullivanModel {
        match *self {
            Family::V { n, mask, k } => build_v(&Graph::from_mask(n, mask), k).unwrap(),
            Family::W { n, mask } => build_w(&Graph::from_mask(n, mask), 3).unwrap(),
            Family::Truncated { power } => truncated_polynomial_model(2, power),
            Family::Free => {
                let gens = GeneratorSet::new(vec![
                    Generator::new("a", 1),
                    Generator::new("s", 2),
                    Generator::new("b", 3),
                    Generator::new("t", 4),
                    Generator::new("c", 3),
                ])
                .unwrap();
                let n = gens.len();
                SullivanModel::new(gens, vec![Polynomial::zero(); n]).unwrap()
            }
        }
    }
}

fn arb_family() -> impl Strategy<Value = Family> {
    // Edge masks keep at least one edge so that d is not identically zero.
    prop_oneof![
        4 => (2usize..=4, any::<u64>(), 3i64..=4).prop_map(|(n, m, k)| Family::V {
            n,
            mask: (m & ((1 << (n * (n - 1) / 2)) - 1)) | 1,
            k
        }),
        1 => (1usize..=3, any::<u64>()).prop_map(|(n, m)| Family::W {
            n,
            mask: m & ((1 << (n * (n - 1) / 2)) - 1)
        }),
        2 => (2u32..=4).prop_map(|power| Family::Truncated { power }),
        1 => Just(Family::Free),
    ]
}

/// (degree, [(basis index, numerator, denominator)], odd factor): the odd
/// factor multiplies the element by an odd generator, so that d acts.
type Seed = (u32, Vec<(usize, i64, i64)>, Option<usize>);

fn arb_seed() -> impl Strategy<Value = Seed> {
    (
        0..=MAX_DEGREE,
        prop::collection::vec((any::<usize>(), -6i64..=6, 1i64..=4), 1..5),
        prop::option::of(any::<usize>()),
    )
}

fn build(gens: &GeneratorSet, seed: &Seed) -> Polynomial {
    let caps = Caps::default();
    let slice = DegreeSlice::enumerate(gens, seed.0, SliceFilter::All, &caps).unwrap();
    let mut p = Polynomial::zero();
    if slice.dim() == 0 {
        return p;
    }
    for &(i, num, den) in &seed.1 {
        if num != 0 {
            let c = Rational::new(BigInt::from(num), BigInt::from(den));
            p.add_term(slice.basis()[i % slice.dim()].clone(), c);
        }
    }
    let odd = gens.odd_ids();
    match seed.2 {
        Some(j) if !odd.is_empty() => gens.mul(&gens.generator_poly(odd[j % odd.len()]), &p).unwrap(),
        _ => p,
    }
}

/// A model and three homogeneous elements of it.
#[derive(Clone, Debug)]
pub struct Case {
    pub family: Family,
    pub model: SullivanModel,
    pub p: Polynomial,
    pub q: Polynomial,
    pub r: Polynomial,
}

pub fn arb_case() -> impl Strategy<Value = Case> {
    (arb_family(), arb_seed(), arb_seed(), arb_seed()).prop_map(|(family, a, b, c)| {
        let model = family.model();
        let gens = model.generators();
        let (p, q, r) = (build(gens, &a), build(gens, &b), build(gens, &c));
        Case { family, model, p, q, r }
    })
}

fn degree(p: &Polynomial) -> u32 {
    match p.homogeneity() {
        Homogeneity::Degree(d) => d,
        _ => 0,
    }
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// p q = (−1)^{|p||q|} q p
pub fn sign_law(c: &Case) -> Result<(), TestCaseError> {
    let g = c.model.generators();
    let pq = g.mul(&c.p, &c.q).unwrap();
    let qp = g.mul(&c.q, &c.p).unwrap();
    let want = if degree(&c.p) * degree(&c.q) % 2 == 1 { qp.neg() } else { qp };
    check(pq == want, "graded commutativity")
}

pub fn associativity(c: &Case) -> Result<(), TestCaseError> {
    let g = c.model.generators();
    let left = g.mul(&g.mul(&c.p, &c.q).unwrap(), &c.r).unwrap();
    let right = g.mul(&c.p, &g.mul(&c.q, &c.r).unwrap()).unwrap();
    check(left == right, "associativity")
}

pub fn distributivity(c: &Case) -> Result<(), TestCaseError> {
    let g = c.model.generators();
    let left = g.mul(&c.p, &c.q.add(&c.r)).unwrap();
    let right = g.mul(&c.p, &c.q).unwrap().add(&g.mul(&c.p, &c.r).unwrap());
    check(left == right, "distributivity")
}

pub fn d_squared_zero(c: &Case) -> Result<(), TestCaseError> {
    let m = &c.model;
    let dp = m.apply_differential(&c.p).unwrap();
    check(m.apply_differential(&dp).unwrap().is_zero(), "d∘d = 0")
}

/// d(pq) = dp·q + (−1)^{|p|} p·dq
pub fn leibniz(c: &Case) -> Result<(), TestCaseError> {
    let m = &c.model;
    let g = m.generators();
    let lhs = m.apply_differential(&g.mul(&c.p, &c.q).unwrap()).unwrap();
    let a = g.mul(&m.apply_differential(&c.p).unwrap(), &c.q).unwrap();
    let b = g.mul(&c.p, &m.apply_differential(&c.q).unwrap()).unwrap();
    let rhs = if degree(&c.p) % 2 == 1 { a.sub(&b) } else { a.add(&b) };
    check(lhs == rhs, "derivation rule")
}

/// d is homogeneous of degree +1.
pub fn degree_plus_one(c: &Case) -> Result<(), TestCaseError> {
    let dp = c.model.apply_differential(&c.p).unwrap();
    let ok = match (c.p.homogeneity(), dp.homogeneity()) {
        (_, Homogeneity::Zero) => true,
        (Homogeneity::Degree(a), Homogeneity::Degree(b)) => b == a + 1,
        _ => false,
    };
    check(ok, "deg d = +1")
}

/// Word length is additive on nonzero products, and a minimal differential
/// raises it by at least one.
pub fn word_length(c: &Case) -> Result<(), TestCaseError> {
    let g = c.model.generators();
    for (a, _) in c.p.terms() {
        for (b, _) in c.q.terms() {
            if let Some((m, _)) = g.mul_monomials(a, b).unwrap() {
                check(m.word_length() == a.word_length() + b.word_length(), "word length additive")?;
            }
        }
    }
    if let (Some(w), Some(dw)) = (
        c.p.min_word_length(),
        c.model.apply_differential(&c.p).unwrap().min_word_length(),
    ) {
        check(dw > w, "minimal d raises word length")?;
    }
    Ok(())
}

pub type Property = fn(&Case) -> Result<(), TestCaseError>;

pub const PROPERTIES: [(&str, Property); 7] = [
    ("graded-commutativity sign law", sign_law),
    ("associativity", associativity),
    ("distributivity", distributivity),
    ("d^2 = 0", d_squared_zero),
    ("derivation rule", leibniz),
    ("deg d = +1", degree_plus_one),
    ("word length", word_length),
];
