//! Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Rational;

/// Residues of a vector of unknown rationals modulo a growing product of
/// primes.
#[derive(Clone, Debug)]
pub struct CrtVector {
    modulus: BigInt,
    residues: Vec<BigInt>,
    primes: usize,
}

impl CrtVector {
    pub fn new(residues: &[u64], p: u64) -> Self {
        CrtVector {
            modulus: BigInt::from(p),
            residues: residues.iter().map(|&r| BigInt::from(r)).collect(),
            primes: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn primes(&self) -> usize {
        self.primes
    }

    pub fn add_prime(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.residues.len());
        let pb = BigInt::from(p);
        let m_mod_p = (&self.modulus % &pb).to_u64().expect("residue fits");
        let inv = mod_inverse(m_mod_p, p);
        for (acc, &r) in self.residues.iter_mut().zip(residues) {
            let acc_mod_p = (&*acc % &pb).to_u64().expect("residue fits");
            let diff = (r + p - acc_mod_p) % p;
            let t = (diff as u128 * inv as u128 % p as u128) as u64;
            *acc += &self.modulus * BigInt::from(t);
        }
        self.modulus *= pb;
        self.primes += 1;
    }

    /// Rational reconstruction of every entry with numerator and
    /// denominator bounded by sqrt(M/2). Uses a running common
    /// denominator, so vectors with a shared denominator reconstruct
    /// almost as cheaply as integer vectors.
    pub fn reconstruct(&self) -> Option<Vec<Rational>> {
        let bound = (&self.modulus >> 1u32).sqrt();
        let mut common = BigInt::one();
        let mut out = Vec::with_capacity(self.residues.len());
        for r in &self.residues {
            let scaled = (r * &common).mod_floor(&self.modulus);
            let sym = if scaled > (&self.modulus >> 1u32) {
                &scaled - &self.modulus
            } else {
                scaled.clone()
            };
            if sym.abs() <= bound {
                out.push(Rational::new(sym, common.clone()));
                continue;
            }
            let (n, d) = reconstruct_one(&scaled, &self.modulus, &bound)?;
            common *= &d;
            out.push(Rational::new(n, common.clone()));
        }
        Some(out)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "modulus not invertible");
    t.rem_euclid(p as i128) as u64
}

/// Wang's algorithm: n/d ≡ a (mod m) with |n| ≤ bound, 0 < d ≤ bound.
fn reconstruct_one(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::modp::{primes, Zp};

    #[test]
    fn reconstructs_small_rationals() {
        let values = vec![
            Rational::new(3.into(), 7.into()),
            Rational::new((-22).into(), 9.into()),
            Rational::from_integer(5.into()),
            Rational::zero(),
            Rational::new(1.into(), 21.into()),
        ];
        let mut acc: Option<CrtVector> = None;
        for p in primes().take(3) {
            let zp = Zp::new(p);
            let res: Vec<u64> = values.iter().map(|v| zp.from_rational(v).unwrap()).collect();
            match acc.as_mut() {
                None => acc = Some(CrtVector::new(&res, p)),
                Some(a) => a.add_prime(&res, p),
            }
        }
        assert_eq!(acc.unwrap().reconstruct().unwrap(), values);
    }

    #[test]
    fn large_value_needs_more_primes() {
        let big = Rational::new(BigInt::from(10u64).pow(30) + 7, BigInt::from(3u64).pow(17));
        let mut acc: Option<CrtVector> = None;
        let mut got = None;
        for p in primes().take(12) {
            let r = Zp::new(p).from_rational(&big).unwrap();
            match acc.as_mut() {
                None => acc = Some(CrtVector::new(&[r], p)),
                Some(a) => a.add_prime(&[r], p),
            }
            if let Some(v) = acc.as_ref().unwrap().reconstruct() {
                if v[0] == big {
                    got = Some(acc.as_ref().unwrap().primes());
                    break;
                }
            }
        }
        assert!(got.unwrap() >= 4);
    }
}
