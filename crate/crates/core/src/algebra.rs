//! Free graded-commutative algebras over the rationals.
//!
//! A [`GeneratorSet`] fixes the universe: an ordered list of homogeneous
//! generators. Even generators are polynomial variables, odd ones are
//! exterior. A [`Monomial`] stores one exponent per generator id (odd ids
//! carry exponent 0 or 1); its canonical written form is the even part
//! followed by the odd factors in increasing id order, which is the order
//! every Koszul sign below is measured against.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` with `p` alone when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Accepts `p`, `-p` and `p/q` with integer `p`, `q` (q ≠ 0). Decimal
/// points and exponents are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let int_ok = |t: &str| {
        let t = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        None => {
            if !int_ok(s) {
                return None;
            }
            s.parse::<BigInt>().ok().map(Rational::from_integer)
        }
        Some((p, q)) => {
            if !int_ok(p) || !int_ok(q) {
                return None;
            }
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(degree: u32) -> Parity {
        if degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn parity(&self) -> Parity {
        Parity::of_degree(self.degree)
    }
}

/// A monomial in the free graded-commutative algebra on a fixed
/// [`GeneratorSet`]. Ordered by total degree, then lexicographically on the
/// exponent vector (generator order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, id: usize) -> u32 {
        self.exps[id]
    }

    /// Number of generator factors, counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn universe_len(&self) -> usize {
        self.exps.len()
    }

    /// Pads the exponent vector with zeros for trailing generators that
    /// this monomial does not involve.
    pub fn embed(&self, len: usize) -> Monomial {
        assert!(len >= self.exps.len());
        let mut exps = self.exps.to_vec();
        exps.resize(len, 0);
        Monomial {
            degree: self.degree,
            exps: exps.into_boxed_slice(),
        }
    }

    /// The monomial with every exponent permuted by `perm` (new id =
    /// `perm[old id]`). Degrees must already be compatible.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut exps = vec![0u32; self.exps.len()];
        for (old, &e) in self.exps.iter().enumerate() {
            exps[perm[old]] = e;
        }
        Monomial {
            degree: self.degree,
            exps: exps.into_boxed_slice(),
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// Homogeneity of a [`Polynomial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// Exact-rational linear combination of monomials. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Polynomial::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_scaled(other, &Rational::one());
        r
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_scaled(other, &-Rational::one());
        r
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Homogeneity::Zero;
        };
        if it.all(|m| m.degree == first.degree) {
            Homogeneity::Degree(first.degree)
        } else {
            Homogeneity::Mixed
        }
    }

    pub fn min_word_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::word_length).min()
    }

    pub fn embed(&self, len: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embed(len), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

/// The universe of generators a family of monomials lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
    odd: Vec<bool>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if g.degree == 0 {
                return Err(Error::Structural(format!(
                    "generator {} has degree 0",
                    g.name
                )));
            }
            if g.name.is_empty() || !seen.insert(g.name.clone()) {
                return Err(Error::Structural(format!(
                    "generator name {:?} is empty or repeated",
                    g.name
                )));
            }
        }
        let odd = gens.iter().map(|g| g.degree % 2 == 1).collect();
        Ok(GeneratorSet { gens, odd })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: usize) -> &Generator {
        &self.gens[id]
    }

    pub fn degree(&self, id: usize) -> u32 {
        self.gens[id].degree
    }

    pub fn is_odd(&self, id: usize) -> bool {
        self.odd[id]
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn even_ids(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.odd[i]).collect()
    }

    pub fn odd_ids(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.odd[i]).collect()
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            degree: 0,
            exps: vec![0; self.len()].into_boxed_slice(),
        }
    }

    pub fn generator_monomial(&self, id: usize) -> Monomial {
        let mut exps = vec![0; self.len()];
        exps[id] = 1;
        Monomial {
            degree: self.degree(id),
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn generator_poly(&self, id: usize) -> Polynomial {
        Polynomial::from_monomial(self.generator_monomial(id))
    }

    /// Builds a monomial from a full exponent vector. Odd exponents above 1
    /// give `Ok(None)` (the monomial vanishes).
    pub fn monomial(&self, exps: Vec<u32>) -> Result<Option<Monomial>> {
        if exps.len() != self.len() {
            return Err(Error::Structural(format!(
                "exponent vector of length {} over {} generators",
                exps.len(),
                self.len()
            )));
        }
        if exps.iter().zip(&self.odd).any(|(&e, &o)| o && e > 1) {
            return Ok(None);
        }
        Ok(Some(self.monomial_unchecked(exps)))
    }

    pub(crate) fn monomial_unchecked(&self, exps: Vec<u32>) -> Monomial {
        let degree = exps
            .iter()
            .zip(&self.gens)
            .map(|(&e, g)| e * g.degree)
            .sum();
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    /// `x_id^e` for an even generator.
    pub fn power(&self, id: usize, e: u32) -> Monomial {
        assert!(!self.odd[id] || e <= 1);
        let mut exps = vec![0; self.len()];
        exps[id] = e;
        self.monomial_unchecked(exps)
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.exps.len() != self.len() {
            return Err(Error::Structural(format!(
                "monomial over {} generators used with a universe of {}",
                m.exps.len(),
                self.len()
            )));
        }
        Ok(())
    }

    pub fn odd_factors<'a>(&'a self, m: &'a Monomial) -> impl Iterator<Item = usize> + 'a {
        m.exps
            .iter()
            .enumerate()
            .filter(move |&(i, &e)| e > 0 && self.odd[i])
            .map(|(i, _)| i)
    }

    /// True when no odd generator divides `m`.
    pub fn is_even_only(&self, m: &Monomial) -> bool {
        m.exps.iter().zip(&self.odd).all(|(&e, &o)| !o || e == 0)
    }

    pub fn odd_word_length(&self, m: &Monomial) -> u32 {
        m.exps
            .iter()
            .zip(&self.odd)
            .filter(|&(_, &o)| o)
            .map(|(&e, _)| e)
            .sum()
    }

    /// Signed product of two monomials: `None` when an odd generator
    /// repeats, otherwise the canonical product and the Koszul sign of
    /// reordering the concatenated odd words into increasing id order.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Option<(Monomial, i8)>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_monomials_unchecked(a, b))
    }

    pub(crate) fn mul_monomials_unchecked(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, i8)> {
        let mut exps = Vec::with_capacity(a.exps.len());
        // `odd_a_after` counts odd factors of `a` with id above the current one.
        let mut odd_a_total: u32 = 0;
        for (i, &e) in a.exps.iter().enumerate() {
            if self.odd[i] {
                odd_a_total += e;
            }
        }
        let mut odd_a_seen = 0u32;
        let mut inversions = 0u32;
        for i in 0..a.exps.len() {
            let (ea, eb) = (a.exps[i], b.exps[i]);
            if self.odd[i] {
                if ea + eb > 1 {
                    return None;
                }
                odd_a_seen += ea;
                if eb == 1 {
                    inversions += odd_a_total - odd_a_seen;
                }
            }
            exps.push(ea + eb);
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((
            Monomial {
                degree: a.degree + b.degree,
                exps: exps.into_boxed_slice(),
            },
            sign,
        ))
    }

    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        for m in p.terms.keys().chain(q.terms.keys()) {
            self.check(m)?;
        }
        Ok(self.mul_unchecked(p, q))
    }

    pub(crate) fn mul_unchecked(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut r = Polynomial::zero();
        for (ma, ca) in &p.terms {
            for (mb, cb) in &q.terms {
                if let Some((m, s)) = self.mul_monomials_unchecked(ma, mb) {
                    let c = ca * cb;
                    r.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        r
    }

    pub fn pow(&self, p: &Polynomial, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::from_monomial(self.one());
        for _ in 0..e {
            acc = self.mul(&acc, p)?;
        }
        Ok(acc)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        for (i, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.gens[i].name);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn format_poly(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest monomials first reads more naturally.
        for (i, (m, c)) in p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&self.format_monomial(m));
            } else {
                let _ = write!(out, "{}*{}", format_rational(&a), self.format_monomial(m));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// x1, x2 even of degree 2; y1, y2 odd of degree 3.
    fn universe() -> GeneratorSet {
        GeneratorSet::new(vec![
            Generator::new("x1", 2),
            Generator::new("x2", 2),
            Generator::new("y1", 3),
            Generator::new("y2", 3),
        ])
        .unwrap()
    }

    fn mono(u: &GeneratorSet, e: [u32; 4]) -> Monomial {
        u.monomial(e.to_vec()).unwrap().unwrap()
    }

    fn poly(u: &GeneratorSet, terms: &[([u32; 4], i64)]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|&(e, c)| (mono(u, e), rational(c))))
    }

    #[test]
    fn even_generators_commute() {
        let u = universe();
        let (m, s) = u
            .mul_monomials(&mono(&u, [2, 0, 0, 0]), &mono(&u, [1, 1, 0, 0]))
            .unwrap()
            .unwrap();
        assert_eq!(m, mono(&u, [3, 1, 0, 0]));
        assert_eq!(s, 1);
    }

    #[test]
    fn odd_square_vanishes() {
        let u = universe();
        let y1 = mono(&u, [0, 0, 1, 0]);
        assert_eq!(u.mul_monomials(&y1, &y1).unwrap(), None);
    }

    #[test]
    fn odd_transposition_flips_sign() {
        let u = universe();
        let (m, s) = u
            .mul_monomials(&mono(&u, [0, 0, 0, 1]), &mono(&u, [0, 0, 1, 0]))
            .unwrap()
            .unwrap();
        assert_eq!(m, mono(&u, [0, 0, 1, 1]));
        assert_eq!(s, -1);
    }

    #[test]
    fn mismatched_universe_is_structural_error() {
        let u = universe();
        let small = GeneratorSet::new(vec![Generator::new("x", 2)]).unwrap();
        let err = u.mul_monomials(&small.one(), &u.one()).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn difference_of_squares() {
        let u = universe();
        let a = poly(&u, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], 1)]);
        let b = poly(&u, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], -1)]);
        let expect = poly(&u, &[([2, 0, 0, 0], 1), ([0, 2, 0, 0], -1)]);
        assert_eq!(u.mul(&a, &b).unwrap(), expect);
    }

    #[test]
    fn repeated_odd_factor_product_is_zero() {
        let u = universe();
        let y1 = poly(&u, &[([0, 0, 1, 0], 1)]);
        let x1y1 = poly(&u, &[([1, 0, 1, 0], 1)]);
        assert!(u.mul(&y1, &x1y1).unwrap().is_zero());
    }

    #[test]
    fn telescoping_cube_difference() {
        let u = universe();
        let a = poly(&u, &[([2, 0, 0, 0], 1), ([1, 1, 0, 0], 1), ([0, 2, 0, 0], 1)]);
        let b = poly(&u, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], -1)]);
        let expect = poly(&u, &[([3, 0, 0, 0], 1), ([0, 3, 0, 0], -1)]);
        assert_eq!(u.mul(&a, &b).unwrap(), expect);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(rational(-4)));
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1e3"), None);
        assert_eq!(parse_rational("2/-4"), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(format_rational(&Rational::new(6.into(), (-4).into())), "-3/2");
        assert_eq!(format_rational(&rational(7)), "7");
    }

    #[test]
    fn formatting() {
        let u = universe();
        let p = poly(&u, &[([2, 0, 0, 0], 1), ([1, 0, 1, 0], -2)]);
        assert_eq!(u.format_poly(&p), "-2*x1*y1 + x1^2");
    }
}
