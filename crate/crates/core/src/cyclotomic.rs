//! Exact arithmetic in ℚ(ζ_k) = ℚ[t]/(Φ_k(t)).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{GeneratorSet, Polynomial, Rational};

/// Integer polynomial, ascending coefficients.
type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of monic-divisor long division; panics on a remainder.
fn div_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut r = num.clone();
    let dn = den.len() - 1;
    assert!(den[dn].is_one());
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(dn)];
    for i in (0..q.len()).rev() {
        let c = r[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= &c * d;
        }
        q[i] = c;
    }
    trim(&mut r);
    assert!(r.is_empty(), "inexact division");
    q
}

/// Φ_k as an ascending integer coefficient vector.
pub fn cyclotomic_polynomial(k: u32) -> Vec<BigInt> {
    assert!(k >= 1);
    let mut p: IntPoly = vec![BigInt::zero(); k as usize + 1];
    p[0] = -BigInt::one();
    p[k as usize] = BigInt::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// ℚ(ζ_k) with elements stored in the power basis 1, ζ, …, ζ^{φ(k)−1}.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    k: u32,
    phi: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element(Vec<Rational>);

impl Element {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }
}

impl CyclotomicField {
    pub fn new(k: u32) -> Self {
        let phi = cyclotomic_polynomial(k)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        CyclotomicField { k, phi }
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Element {
        Element(vec![Rational::zero(); self.degree()])
    }

    /// Reduces an arbitrary-length coefficient vector modulo Φ_k.
    fn reduce(&self, mut c: Vec<Rational>) -> Element {
        let n = self.degree();
        for i in (n..c.len()).rev() {
            let lead = std::mem::replace(&mut c[i], Rational::zero());
            if lead.is_zero() {
                continue;
            }
            for (j, p) in self.phi[..n].iter().enumerate() {
                c[i - n + j] -= &lead * p;
            }
        }
        c.resize(n, Rational::zero());
        Element(c)
    }

    pub fn zeta_pow(&self, e: u64) -> Element {
        let e = (e % self.k as u64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        self.reduce(c)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, a: &Element, s: &Rational) -> Element {
        Element(a.0.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut c = vec![Rational::zero(); (2 * self.degree()).max(1)];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce(c)
    }

    /// Evaluates a polynomial in the even generators at the point with
    /// `x_id ↦ ζ^{point[id]}`, or `x_id ↦ 0` where `point[id]` is `None`.
    /// Generators outside `point` must not occur.
    pub fn evaluate(&self, gens: &GeneratorSet, p: &Polynomial, point: &[Option<u32>]) -> Element {
        let mut acc = self.zero();
        'terms: for (m, c) in p.terms() {
            let mut e: u64 = 0;
            for (id, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                assert!(!gens.is_odd(id), "evaluation point is on the even generators only");
                match point[id] {
                    None => continue 'terms,
                    Some(col) => e += x as u64 * col as u64,
                }
            }
            acc = self.add(&acc, &self.scale(&self.zeta_pow(e), c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for k in 2..10 {
            let f = CyclotomicField::new(k);
            let mut s = f.zero();
            for e in 0..k as u64 {
                s = f.add(&s, &f.zeta_pow(e));
            }
            assert!(s.is_zero(), "k = {k}");
            assert_eq!(f.zeta_pow(k as u64), f.zeta_pow(0));
            assert_eq!(f.mul(&f.zeta_pow(2), &f.zeta_pow(k as u64 - 1)), f.zeta_pow(1));
        }
    }
}
