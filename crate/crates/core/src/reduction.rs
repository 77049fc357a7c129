//! Graph + k ↦ pure Sullivan algebras `ΛV_{G,k}` and `ΛW_{G,k}`.
//!
//! Generator ids: `x_1..x_n` (degree 2) first, then one `y_{i,j}` per edge
//! (degree 2k−3) in lexicographic edge order, then for `W` the `z_1..z_n`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{Generator, GeneratorSet, Monomial, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::SullivanModel;

/// The integers attached to an instance `(G, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionConstants {
    /// ⌈((2k−3)|E| − |V|) / 2⌉
    pub d_g_k: i64,
    /// ⌈(n(n−1)(2k−3) − n) / 2⌉
    pub d_n_k_prime: i64,
    /// deg z_i = 4(d' + n) + 3
    pub z_degree: i64,
    /// d z_i = x_i^{2(d' + n + 1)}
    pub z_target_exponent: i64,
}

pub fn check_k(k: i64) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    Ok(())
}

pub fn constants(g: &Graph, k: i64) -> Result<ReductionConstants> {
    check_k(k)?;
    let n = g.n() as i64;
    let e = g.edge_count() as i64;
    let d_g_k = Integer::div_ceil(&((2 * k - 3) * e - n), &2);
    let d_n_k_prime = Integer::div_ceil(&(n * (n - 1) * (2 * k - 3) - n), &2);
    Ok(ReductionConstants {
        d_g_k,
        d_n_k_prime,
        z_degree: 4 * (d_n_k_prime + n) + 3,
        z_target_exponent: 2 * (d_n_k_prime + n + 1),
    })
}

pub fn x_name(i: usize) -> String {
    format!("x{i}")
}

pub fn y_name(i: usize, j: usize) -> String {
    format!("y{i}_{j}")
}

pub fn z_name(i: usize) -> String {
    format!("z{i}")
}

/// Σ_{l=1}^{k} x_i^{k−l} x_j^{l−1} over a universe whose first `n`
/// generators are the x's (0-based ids `i-1`, `j-1`).
pub fn edge_polynomial(gens: &GeneratorSet, i: usize, j: usize, k: u32) -> Polynomial {
    let mut p = Polynomial::zero();
    for l in 1..=k {
        let mut exps = vec![0u32; gens.len()];
        exps[i - 1] += k - l;
        exps[j - 1] += l - 1;
        p.add_term(gens.monomial_unchecked(exps), Rational::from_integer(1.into()));
    }
    p
}

fn v_generators(g: &Graph, k: u32) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (1..=g.n()).map(|i| Generator::new(x_name(i), 2)).collect();
    gens.extend(
        g.edges()
            .iter()
            .map(|&(i, j)| Generator::new(y_name(i, j), 2 * k - 3)),
    );
    gens
}

/// `ΛV_{G,k}`: dx_i = 0, d y_{i,j} = Σ_l x_i^{k−l} x_j^{l−1}.
pub fn build_v(g: &Graph, k: i64) -> Result<SullivanModel> {
    check_k(k)?;
    let k = k as u32;
    let gens = GeneratorSet::new(v_generators(g, k))?;
    let mut diffs = vec![Polynomial::zero(); g.n()];
    diffs.extend(g.edges().iter().map(|&(i, j)| edge_polynomial(&gens, i, j, k)));
    SullivanModel::new(gens, diffs)
}

/// `ΛW_{G,k}`: `ΛV_{G,k}` plus odd z_i with d z_i = x_i^{2(d'+n+1)}.
pub fn build_w(g: &Graph, k: i64) -> Result<SullivanModel> {
    let c = constants(g, k)?;
    let k = k as u32;
    let mut gens = v_generators(g, k);
    gens.extend((1..=g.n()).map(|i| Generator::new(z_name(i), c.z_degree as u32)));
    let gens = GeneratorSet::new(gens)?;
    let mut diffs = vec![Polynomial::zero(); g.n()];
    diffs.extend(g.edges().iter().map(|&(i, j)| edge_polynomial(&gens, i, j, k)));
    diffs.extend((0..g.n()).map(|i| {
        Polynomial::from_monomial(gens.power(i, c.z_target_exponent as u32))
    }));
    SullivanModel::new(gens, diffs)
}

pub fn x_power(gens: &GeneratorSet, vertex: usize, e: u32) -> Monomial {
    gens.power(vertex - 1, e)
}

/// Output of the constructive splitting of `ΛW_{G,k}`.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// 2d' + 2n − d_{G,k} + 1
    pub exponent: u32,
    /// z'_i = z_i − x̃_i · x_i^exponent, over the W universe.
    pub cocycles: Vec<Polynomial>,
}

/// Checks each witness (d x̃_i = x_i^{d_G+1} in `ΛV`), forms the
/// z'_i and verifies symbolically that d z'_i = 0 in `ΛW` and that
/// deg z'_i = deg z_i.
pub fn build_splitting(g: &Graph, k: i64, witnesses: &[Polynomial]) -> Result<Splitting> {
    let c = constants(g, k)?;
    let v = build_v(g, k)?;
    let w = build_w(g, k)?;
    let n = g.n();
    if witnesses.len() != n {
        return Err(Error::CertificateInvalid(format!(
            "{} witnesses for {n} vertices",
            witnesses.len()
        )));
    }
    if c.d_g_k < 0 {
        return Err(Error::CertificateInvalid(
            "d_{G,k} + 1 ≤ 0: no nilpotence witness can exist".into(),
        ));
    }
    let target_exp = (c.d_g_k + 1) as u32;
    let exponent = (2 * c.d_n_k_prime + 2 * n as i64 - c.d_g_k + 1) as u32;
    let wg = w.generators();
    let mut cocycles = Vec::with_capacity(n);
    for (idx, wit) in witnesses.iter().enumerate() {
        let vertex = idx + 1;
        let dw = v.apply_differential(wit)?;
        let expect = Polynomial::from_monomial(x_power(v.generators(), vertex, target_exp));
        if dw != expect {
            return Err(Error::CertificateInvalid(format!(
                "witness for x{vertex} does not satisfy d x̃ = x{vertex}^{target_exp}"
            )));
        }
        let lifted = wit.embed(wg.len());
        let power = Polynomial::from_monomial(x_power(wg, vertex, exponent));
        let correction = wg.mul(&lifted, &power)?;
        let z = wg.generator_poly(n + g.edge_count() + idx);
        let zp = z.sub(&correction);
        if let Some((m, _)) = zp.terms().find(|(m, _)| m.degree() as i64 != c.z_degree) {
            return Err(Error::CertificateInvalid(format!(
                "z'{vertex} has a term of degree {} ≠ {}",
                m.degree(),
                c.z_degree
            )));
        }
        if !w.apply_differential(&zp)?.is_zero() {
            return Err(Error::CertificateInvalid(format!("d z'{vertex} ≠ 0")));
        }
        cocycles.push(zp);
    }
    Ok(Splitting { exponent, cocycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    #[test]
    fn constants_k4() {
        let c = constants(&Graph::complete(4), 3).unwrap();
        assert_eq!(
            c,
            ReductionConstants {
                d_g_k: 7,
                d_n_k_prime: 16,
                z_degree: 83,
                z_target_exponent: 42
            }
        );
    }

    #[test]
    fn constants_k3_k2() {
        let c = constants(&Graph::complete(3), 3).unwrap();
        assert_eq!((c.d_g_k, c.d_n_k_prime, c.z_degree, c.z_target_exponent), (3, 8, 47, 24));
        assert_eq!(constants(&Graph::complete(2), 3).unwrap().d_g_k, 1);
    }

    #[test]
    fn k_below_three_is_rejected() {
        assert_eq!(constants(&Graph::complete(2), 2), Err(Error::InvalidK(2)));
        assert!(build_v(&Graph::complete(2), 2).is_err());
        assert!(build_w(&Graph::complete(2), 1).is_err());
    }

    #[test]
    fn k2_edge_differential() {
        let v = build_v(&Graph::complete(2), 3).unwrap();
        let u = v.generators();
        let expect = Polynomial::from_terms([
            (u.monomial(vec![2, 0, 0]).unwrap().unwrap(), rational(1)),
            (u.monomial(vec![1, 1, 0]).unwrap().unwrap(), rational(1)),
            (u.monomial(vec![0, 2, 0]).unwrap().unwrap(), rational(1)),
        ]);
        assert_eq!(v.differential_of(2), &expect);
        assert_eq!(u.generator(2).name, "y1_2");
        assert_eq!(u.degree(2), 3);
    }

    #[test]
    fn edge_polynomial_is_symmetric() {
        let v = build_v(&Graph::complete(3), 5).unwrap();
        let u = v.generators();
        for &(i, j) in Graph::complete(3).edges() {
            assert_eq!(edge_polynomial(u, i, j, 5), edge_polynomial(u, j, i, 5));
        }
    }

    #[test]
    fn edge_differentials_are_homogeneous() {
        for k in 3..=6 {
            let v = build_v(&Graph::cycle(5), k).unwrap();
            for id in 5..v.generators().len() {
                assert_eq!(
                    v.differential_of(id).homogeneity(),
                    crate::algebra::Homogeneity::Degree(2 * k as u32 - 2)
                );
            }
        }
    }

    #[test]
    fn w_generators_k3() {
        let w = build_w(&Graph::complete(3), 3).unwrap();
        let u = w.generators();
        assert_eq!(u.len(), 9);
        for i in 0..3 {
            assert_eq!(u.degree(6 + i), 47);
            assert_eq!(
                w.differential_of(6 + i),
                &Polynomial::from_monomial(u.power(i, 24))
            );
        }
        let w4 = build_w(&Graph::complete(4), 3).unwrap();
        assert_eq!(w4.generators().degree(10), 83);
        assert_eq!(
            w4.differential_of(10),
            &Polynomial::from_monomial(w4.generators().power(0, 42))
        );
    }

    #[test]
    fn splitting_rejects_a_bad_witness() {
        let g = Graph::complete(4);
        let v = build_v(&g, 3).unwrap();
        let bogus = vec![v.generators().generator_poly(4); 4];
        assert!(matches!(
            build_splitting(&g, 3, &bogus),
            Err(Error::CertificateInvalid(_))
        ));
    }
}
