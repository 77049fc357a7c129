//! Finitely generated Sullivan algebras `(ΛV, d)`.

use num_traits::One;

use crate::algebra::{GeneratorSet, Homogeneity, Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

/// A free graded-commutative algebra with a differential given on
/// generators and extended as a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanModel {
    gens: GeneratorSet,
    differential: Vec<Polynomial>,
    // d(g) has no odd factors, so it commutes with everything.
    even_valued: Vec<bool>,
}

/// Even generators Q, odd generators P, and the two verified purity
/// conditions d|_Q = 0, d(P) ⊆ ΛQ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityCertificate {
    pub even_ids: Vec<usize>,
    pub odd_ids: Vec<usize>,
    pub d_vanishes_on_even: bool,
    pub d_odd_in_even_subalgebra: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub minimal: bool,
    pub pure: bool,
    pub simply_connected: bool,
    pub d_squared_zero: bool,
    pub purity: PurityCertificate,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.minimal && self.pure && self.simply_connected && self.d_squared_zero
    }
}

impl SullivanModel {
    /// Structural checks only (universes agree, one value per generator).
    /// Use [`SullivanModel::validate`] for the algebraic conditions.
    pub fn new(gens: GeneratorSet, differential: Vec<Polynomial>) -> Result<Self> {
        if differential.len() != gens.len() {
            return Err(Error::Structural(format!(
                "{} differential values for {} generators",
                differential.len(),
                gens.len()
            )));
        }
        for (id, p) in differential.iter().enumerate() {
            if let Some((m, _)) = p.terms().find(|(m, _)| m.universe_len() != gens.len()) {
                return Err(Error::Structural(format!(
                    "d({}) has a monomial over {} generators",
                    gens.generator(id).name,
                    m.universe_len()
                )));
            }
        }
        let even_valued = differential
            .iter()
            .map(|p| p.terms().all(|(m, _)| gens.is_even_only(m)))
            .collect();
        Ok(SullivanModel {
            gens,
            differential,
            even_valued,
        })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn differential_of(&self, id: usize) -> &Polynomial {
        &self.differential[id]
    }

    pub fn differentials(&self) -> &[Polynomial] {
        &self.differential
    }

    /// d on a single monomial, by the Leibniz rule with Koszul signs.
    pub fn d_monomial(&self, m: &Monomial) -> Polynomial {
        let u = &self.gens;
        let mut out = Polynomial::zero();
        let exps = m.exponents();
        // Even part a, odd word w = o_0 o_1 ... in increasing id order:
        // d(a w) = d(a) w + a d(w).
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 || u.is_odd(i) || self.differential[i].is_zero() {
                continue;
            }
            let mut rest = exps.to_vec();
            rest[i] -= 1;
            let rest = Polynomial::from_monomial(u.monomial_unchecked(rest));
            let term = u.mul_unchecked(&self.differential[i], &rest);
            out.add_scaled(&term, &Rational::from_integer(e.into()));
        }
        let mut position = 0u32;
        for (j, &e) in exps.iter().enumerate() {
            if e == 0 || !u.is_odd(j) {
                continue;
            }
            let sign_neg = position % 2 == 1;
            position += 1;
            let dv = &self.differential[j];
            if dv.is_zero() {
                continue;
            }
            let mut rest = exps.to_vec();
            rest[j] = 0;
            let rest = u.monomial_unchecked(rest);
            if self.even_valued[j] {
                // d(o_j) is central: a o_0 .. d(o_j) .. = d(o_j) · (a w / o_j).
                for (dm, c) in dv.terms() {
                    let (prod, s) = u
                        .mul_monomials_unchecked(dm, &rest)
                        .expect("even factor never repeats an odd generator");
                    debug_assert_eq!(s, 1);
                    out.add_term(prod, if sign_neg { -c.clone() } else { c.clone() });
                }
            } else {
                // General case: a · prefix · d(o_j) · suffix.
                let mut prefix = vec![0u32; exps.len()];
                let mut suffix = vec![0u32; exps.len()];
                for (i, &ei) in exps.iter().enumerate() {
                    if !u.is_odd(i) || i < j {
                        prefix[i] = ei;
                    } else if i > j {
                        suffix[i] = ei;
                    }
                }
                let prefix = Polynomial::from_monomial(u.monomial_unchecked(prefix));
                let suffix = Polynomial::from_monomial(u.monomial_unchecked(suffix));
                let t = u.mul_unchecked(&u.mul_unchecked(&prefix, dv), &suffix);
                let s = if sign_neg { -Rational::one() } else { Rational::one() };
                out.add_scaled(&t, &s);
            }
        }
        out
    }

    pub fn apply_differential(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            if m.universe_len() != self.gens.len() {
                return Err(Error::Structural(format!(
                    "polynomial over {} generators applied to a model with {}",
                    m.universe_len(),
                    self.gens.len()
                )));
            }
            out.add_scaled(&self.d_monomial(m), c);
        }
        Ok(out)
    }

    /// Computes every flag independently. A differential value that is not
    /// homogeneous of degree `deg + 1` is a hard validation failure.
    pub fn validate(&self) -> Result<ValidationReport> {
        let u = &self.gens;
        for (id, dv) in self.differential.iter().enumerate() {
            let want = u.degree(id) + 1;
            match dv.homogeneity() {
                Homogeneity::Zero => {}
                Homogeneity::Degree(d) if d == want => {}
                Homogeneity::Degree(d) => {
                    return Err(Error::Validation(format!(
                        "d({}) has degree {d}, expected {want}",
                        u.generator(id).name
                    )))
                }
                Homogeneity::Mixed => {
                    return Err(Error::Validation(format!(
                        "d({}) is not homogeneous",
                        u.generator(id).name
                    )))
                }
            }
        }
        let simply_connected = u.generators().iter().all(|g| g.degree >= 2);
        let minimal = self
            .differential
            .iter()
            .all(|p| p.min_word_length().is_none_or(|w| w >= 2));
        let d_squared_zero = self
            .differential
            .iter()
            .all(|p| self.apply_differential(p).map(|q| q.is_zero()).unwrap_or(false));
        let even_ids = u.even_ids();
        let odd_ids = u.odd_ids();
        let d_vanishes_on_even = even_ids.iter().all(|&i| self.differential[i].is_zero());
        let d_odd_in_even_subalgebra = odd_ids.iter().all(|&i| self.even_valued[i]);
        Ok(ValidationReport {
            minimal,
            pure: d_vanishes_on_even && d_odd_in_even_subalgebra,
            simply_connected,
            d_squared_zero,
            purity: PurityCertificate {
                even_ids,
                odd_ids,
                d_vanishes_on_even,
                d_odd_in_even_subalgebra,
            },
        })
    }

    pub fn is_pure(&self) -> bool {
        let u = &self.gens;
        (0..u.len()).all(|i| {
            if u.is_odd(i) {
                self.even_valued[i]
            } else {
                self.differential[i].is_zero()
            }
        })
    }

    /// Σ deg(odd) − Σ (deg(even) − 1). The top cohomology degree when the
    /// model is pure and elliptic; computed unconditionally.
    pub fn formal_dimension(&self) -> i64 {
        self.gens
            .generators()
            .iter()
            .map(|g| {
                if g.degree % 2 == 1 {
                    g.degree as i64
                } else {
                    -(g.degree as i64 - 1)
                }
            })
            .sum()
    }

    /// The model on the first `count` generators, provided their
    /// differentials only involve those generators.
    pub fn truncate(&self, count: usize) -> Result<SullivanModel> {
        let gens = GeneratorSet::new(self.gens.generators()[..count].to_vec())?;
        let mut diffs = Vec::with_capacity(count);
        for p in &self.differential[..count] {
            let mut q = Polynomial::zero();
            for (m, c) in p.terms() {
                if m.exponents()[count..].iter().any(|&e| e != 0) {
                    return Err(Error::Structural(
                        "differential leaves the truncated generator range".into(),
                    ));
                }
                let m = gens.monomial_unchecked(m.exponents()[..count].to_vec());
                q.add_term(m, c.clone());
            }
            diffs.push(q);
        }
        SullivanModel::new(gens, diffs)
    }
}

/// Convenience for tests and hand-written models: Λ(x, y) with
/// deg x = `x_degree`, dy = x^`power`.
pub fn truncated_polynomial_model(x_degree: u32, power: u32) -> SullivanModel {
    use crate::algebra::Generator;
    assert!(x_degree.is_multiple_of(2) && power >= 1);
    let y_degree = x_degree * power - 1;
    let gens = GeneratorSet::new(vec![
        Generator::new("x", x_degree),
        Generator::new("y", y_degree),
    ])
    .expect("distinct names");
    let dy = Polynomial::from_monomial(gens.power(0, power));
    SullivanModel::new(gens, vec![Polynomial::zero(), dy]).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational, Generator};

    #[test]
    fn word_length_one_differential_is_not_minimal() {
        let gens = GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("y", 1)]);
        // deg y must be 1 for dy = x; that also breaks simple connectivity.
        let gens = gens.unwrap();
        let model = SullivanModel::new(gens.clone(), vec![Polynomial::zero(), gens.generator_poly(0)]).unwrap();
        let r = model.validate().unwrap();
        assert!(!r.minimal);
        assert!(!r.simply_connected);
        assert!(r.pure);
    }

    #[test]
    fn degree_one_generator_breaks_simple_connectivity() {
        let gens = GeneratorSet::new(vec![Generator::new("a", 1)]).unwrap();
        let model = SullivanModel::new(gens, vec![Polynomial::zero()]).unwrap();
        let r = model.validate().unwrap();
        assert!(!r.simply_connected);
        assert!(r.minimal && r.pure && r.d_squared_zero);
    }

    #[test]
    fn inhomogeneous_differential_is_rejected() {
        let gens = GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("y", 5)]).unwrap();
        let dy = Polynomial::from_terms([
            (gens.power(0, 3), rational(1)),
            (gens.power(0, 2), rational(1)),
        ]);
        let model = SullivanModel::new(gens, vec![Polynomial::zero(), dy]).unwrap();
        let err = model.validate().unwrap_err();
        assert!(err.to_string().contains("d(y)"), "{err}");
    }

    #[test]
    fn formal_dimension_of_truncated_model() {
        let m = truncated_polynomial_model(2, 3);
        assert_eq!(m.formal_dimension(), 4);
        assert!(m.validate().unwrap().all_ok());
    }

    #[test]
    fn derivation_on_product_of_odd_generators() {
        // Λ(x; a, b) with da = x^2, db = x^3 (deg a = 3, deg b = 5).
        let gens = GeneratorSet::new(vec![
            Generator::new("x", 2),
            Generator::new("a", 3),
            Generator::new("b", 5),
        ])
        .unwrap();
        let da = Polynomial::from_monomial(gens.power(0, 2));
        let db = Polynomial::from_monomial(gens.power(0, 3));
        let model = SullivanModel::new(gens.clone(), vec![Polynomial::zero(), da, db]).unwrap();
        let ab = gens.monomial(vec![0, 1, 1]).unwrap().unwrap();
        // d(ab) = x^2 b − a x^3
        let got = model.d_monomial(&ab);
        let expect = Polynomial::from_terms([
            (gens.monomial(vec![2, 0, 1]).unwrap().unwrap(), rational(1)),
            (gens.monomial(vec![3, 1, 0]).unwrap().unwrap(), rational(-1)),
        ]);
        assert_eq!(got, expect);
        assert!(model.apply_differential(&got).unwrap().is_zero());
    }

    #[test]
    fn non_pure_differential_uses_general_path() {
        // Even u of degree 4 with du = x·y: not pure, still minimal.
        let gens = GeneratorSet::new(vec![
            Generator::new("x", 2),
            Generator::new("y", 3),
            Generator::new("u", 4),
        ])
        .unwrap();
        let xy = gens.monomial(vec![1, 1, 0]).unwrap().unwrap();
        let model = SullivanModel::new(
            gens.clone(),
            vec![Polynomial::zero(), Polynomial::zero(), Polynomial::from_monomial(xy)],
        )
        .unwrap();
        let r = model.validate().unwrap();
        assert!(!r.pure && r.minimal && r.d_squared_zero);
        // d(u^2) = 2 u x y
        let u2 = gens.monomial(vec![0, 0, 2]).unwrap().unwrap();
        let expect = Polynomial::term(gens.monomial(vec![1, 1, 1]).unwrap().unwrap(), rational(2));
        assert_eq!(model.d_monomial(&u2), expect);
    }
}
