//! Arithmetic in F_p for word-size primes p < 2^31.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::algebra::Rational;

/// F_p with Barrett reduction. All residues are kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
    m: u64,
}

impl Zp {
    pub fn new(p: u64) -> Zp {
        assert!(p > 2 && p < (1 << 31));
        Zp {
            p,
            m: (u128::from(u64::MAX) / u128::from(p)) as u64,
        }
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    /// x mod p for x < 2^63.
    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn from_bigint(self, v: &BigInt) -> u64 {
        if let Some(s) = v.to_i64() {
            return self.from_i64(s);
        }
        let p = BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits")
    }

    /// `None` when p divides the denominator.
    pub fn from_rational(self, q: &Rational) -> Option<u64> {
        let num = self.from_bigint(q.numer());
        if q.denom().is_one() {
            return Some(num);
        }
        let den = self.from_bigint(q.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(num, self.inv(den)))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes below 2^31 in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut next = (1u64 << 31) - 1;
    std::iter::from_fn(move || {
        while !is_prime(next) {
            next -= 2;
        }
        let p = next;
        next -= 2;
        Some(p)
    })
}
