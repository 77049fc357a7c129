//! Degree slices `(ΛV)^m` and the maps between them.

use std::collections::HashMap;

use num_traits::Zero;

use super::ExactVec;
use crate::algebra::{GeneratorSet, Monomial, Polynomial, Rational};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::SullivanModel;

/// Which monomials of a degree enter the slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceFilter {
    All,
    /// Only monomials in the even generators (`ΛQ` for a pure model).
    EvenOnly,
}

/// The monomial basis of one total degree, in canonical order.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeSlice {
    pub fn enumerate(gens: &GeneratorSet, degree: u32, filter: SliceFilter, caps: &Caps) -> Result<Self> {
        if degree > caps.max_degree {
            return Err(Error::Capacity {
                what: "slice degree".into(),
                requested: degree as usize,
                cap: caps.max_degree as usize,
            });
        }
        let ids: Vec<usize> = match filter {
            SliceFilter::All => (0..gens.len()).collect(),
            SliceFilter::EvenOnly => gens.even_ids(),
        };
        let mut basis = Vec::new();
        let mut exps = vec![0u32; gens.len()];
        walk(gens, &ids, 0, degree, &mut exps, &mut basis, caps.max_slice_dim)?;
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(DegreeSlice { degree, basis, index })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p`; every monomial of `p` must be in the slice.
    pub fn coordinates(&self, p: &Polynomial) -> Result<ExactVec> {
        let mut v: ExactVec = p
            .terms()
            .map(|(m, c)| {
                self.index_of(m).map(|i| (i, c.clone())).ok_or_else(|| {
                    Error::Structural(format!("monomial of degree {} outside the degree-{} slice", m.degree(), self.degree))
                })
            })
            .collect::<Result<_>>()?;
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    pub fn polynomial(&self, v: &ExactVec) -> Polynomial {
        Polynomial::from_terms(v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())))
    }
}

/// Number of monomials of a degree, counted without enumerating them.
pub fn slice_dimension(gens: &GeneratorSet, degree: u32, filter: SliceFilter) -> u128 {
    let d = degree as usize;
    let mut ways = vec![0u128; d + 1];
    ways[0] = 1;
    for id in 0..gens.len() {
        let odd = gens.is_odd(id);
        if odd && filter == SliceFilter::EvenOnly {
            continue;
        }
        let g = gens.degree(id) as usize;
        if odd {
            for t in (g..=d).rev() {
                ways[t] = ways[t].saturating_add(ways[t - g]);
            }
        } else {
            for t in g..=d {
                ways[t] = ways[t].saturating_add(ways[t - g]);
            }
        }
    }
    ways[d]
}

fn walk(
    gens: &GeneratorSet,
    ids: &[usize],
    at: usize,
    remaining: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
    cap: usize,
) -> Result<()> {
    if remaining == 0 {
        if out.len() == cap {
            return Err(Error::Capacity {
                what: "degree slice dimension".into(),
                requested: cap + 1,
                cap,
            });
        }
        out.push(gens.monomial_unchecked(exps.clone()));
        return Ok(());
    }
    let Some(&id) = ids.get(at) else { return Ok(()) };
    let deg = gens.degree(id);
    let max_e = if gens.is_odd(id) { 1 } else { remaining / deg };
    for e in 0..=max_e.min(remaining / deg) {
        exps[id] = e;
        walk(gens, ids, at + 1, remaining - e * deg, exps, out, cap)?;
    }
    exps[id] = 0;
    Ok(())
}

/// Matrix of a linear map between two slices, stored by columns.
#[derive(Clone, Debug)]
pub struct SliceMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub columns: Vec<ExactVec>,
}

impl SliceMap {
    /// The differential `source → target` (target must be one degree up).
    pub fn differential(model: &SullivanModel, source: &DegreeSlice, target: &DegreeSlice) -> Result<Self> {
        if target.degree != source.degree + 1 {
            return Err(Error::Structural("differential target must be one degree up".into()));
        }
        let columns = source
            .basis
            .iter()
            .map(|m| target.coordinates(&model.d_monomial(m)))
            .collect::<Result<_>>()?;
        Ok(SliceMap {
            source_dim: source.dim(),
            target_dim: target.dim(),
            columns,
        })
    }

    /// Multiplication by a fixed homogeneous polynomial.
    pub fn multiplication(gens: &GeneratorSet, factor: &Polynomial, source: &DegreeSlice, target: &DegreeSlice) -> Result<Self> {
        let columns = source
            .basis
            .iter()
            .map(|m| target.coordinates(&gens.mul(factor, &Polynomial::from_monomial(m.clone()))?))
            .collect::<Result<_>>()?;
        Ok(SliceMap {
            source_dim: source.dim(),
            target_dim: target.dim(),
            columns,
        })
    }

    pub fn apply(&self, v: &ExactVec) -> ExactVec {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (j, c) in v {
            for (i, a) in &self.columns[*j] {
                *acc.entry(*i).or_insert_with(Rational::zero) += c * a;
            }
        }
        let mut out: ExactVec = acc.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// True when `self ∘ before` is the zero matrix.
    pub fn composes_to_zero(&self, before: &SliceMap) -> bool {
        before.target_dim == self.source_dim && before.columns.iter().all(|c| self.apply(c).is_empty())
    }
}
