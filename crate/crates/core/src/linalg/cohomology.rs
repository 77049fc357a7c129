//! Certified cohomology of a Sullivan algebra in each degree.
//!
//! For one degree m with differentials `D_{m−1}: S^{m−1} → S^m` and
//! `D_m: S^m → S^{m+1}`, a prime p gives the upper bound
//! `dim H^m ≤ dim S^m − rank_p D_m − rank_p D_{m−1}`. The same elimination
//! yields canonical cocycles `c_a` (RREF kernel vectors) and canonical
//! functionals `λ_ν` (RREF annihilators of `B^m`); after reconstruction
//! over ℚ we check `D_m c_a = 0`, `λ_ν(B^m) = 0` and `det(λ_ν(c_a)) ≠ 0`,
//! which proves the matching lower bound.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bareiss;
use super::echelon::{span_echelon, Echelon, SparseMod};
use super::modp::Zp;
use super::slice::{DegreeSlice, SliceFilter, SliceMap};
use super::{dot, multimodular, to_mod, Attempt, ExactVec};
use crate::algebra::{Polynomial, Rational};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::SullivanModel;

/// `H^m` with a basis of representatives and the dual basis of
/// functionals (each kills the coboundaries).
#[derive(Clone, Debug)]
pub struct CohomologySlice {
    pub degree: u32,
    pub betti: usize,
    pub slice_dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub slice: DegreeSlice,
    pub representatives: Vec<ExactVec>,
    /// `duals[a](representatives[b]) = δ_ab`, `duals[a](B^m) = 0`.
    pub duals: Vec<ExactVec>,
}

impl CohomologySlice {
    pub fn representative_polys(&self) -> Vec<Polynomial> {
        self.representatives.iter().map(|v| self.slice.polynomial(v)).collect()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    /// The caller guarantees `p` is closed.
    pub fn class_of(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let v = self.slice.coordinates(p)?;
        Ok(self.class_of_vector(&v))
    }

    pub fn class_of_vector(&self, v: &ExactVec) -> Vec<Rational> {
        self.duals.iter().map(|l| dot(l, v)).collect()
    }
}

#[derive(Clone, PartialEq, Debug)]
struct Shape {
    ranks: (usize, usize),
    kernel_pivots: Vec<usize>,
    frees: Vec<usize>,
    boundary_pivots: Vec<usize>,
    nus: Vec<usize>,
}

fn transpose(dim: usize, columns: &[ExactVec]) -> Vec<ExactVec> {
    let mut rows: Vec<ExactVec> = vec![Vec::new(); dim];
    for (j, c) in columns.iter().enumerate() {
        for (i, q) in c {
            rows[*i].push((j, q.clone()));
        }
    }
    rows.retain(|r| !r.is_empty());
    rows
}

fn attempt(
    zp: Zp,
    dim: usize,
    out_rows: &[ExactVec],
    in_columns: &[ExactVec],
) -> Result<Option<Attempt<Shape>>> {
    let conv = |vs: &[ExactVec]| -> Option<Vec<SparseMod>> { vs.iter().map(|v| to_mod(zp, v)).collect() };
    let (Some(rows), Some(cols)) = (conv(out_rows), conv(in_columns)) else {
        return Ok(None);
    };
    let zrow = span_echelon(zp, dim, &rows, 0xc0c1);
    let bnd = span_echelon(zp, dim, &cols, 0xb0b1);
    let kernel_pivots = zrow.pivots();
    let boundary_pivots = bnd.pivots();
    // Kernel vectors, kept when independent modulo B.
    let mut quotient = bnd.clone();
    let mut frees = Vec::new();
    let mut kernels = Vec::new();
    for f in 0..dim {
        if zrow.is_pivot(f) {
            continue;
        }
        let k = zrow.kernel_vector(f);
        if quotient.insert(k.clone()).is_some() {
            frees.push(f);
            kernels.push(k);
        }
    }
    let b = frees.len();
    if b != dim - zrow.rank() - bnd.rank() {
        // B ⊄ Z mod p cannot happen for a genuine complex.
        return Err(Error::Inconsistent(format!("d∘d ≠ 0 modulo {}", zp.modulus())));
    }
    // Annihilators of B, kept while their pairings with the cocycles stay
    // independent.
    let mut gram = Echelon::new(zp, b);
    let mut nus = Vec::new();
    let mut lambdas = Vec::new();
    for nu in 0..dim {
        if gram.rank() == b {
            break;
        }
        if bnd.is_pivot(nu) {
            continue;
        }
        let l = bnd.dual_functional(nu);
        let pairing: Vec<u64> = kernels
            .iter()
            .map(|k| k.iter().zip(&l).fold(0, |acc, (&x, &y)| zp.add(acc, zp.mul(x, y))))
            .collect();
        if gram.insert(pairing).is_some() {
            nus.push(nu);
            lambdas.push(l);
        }
    }
    if nus.len() != b {
        return Err(Error::Inconsistent("annihilator pairing is degenerate modulo p".into()));
    }
    let mut values = Vec::new();
    for k in &kernels {
        values.extend(kernel_pivots.iter().map(|&i| k[i]));
    }
    for l in &lambdas {
        values.extend(boundary_pivots.iter().map(|&i| l[i]));
    }
    Ok(Some(Attempt {
        key: zrow.rank() + bnd.rank(),
        signature: Shape {
            ranks: (zrow.rank(), bnd.rank()),
            kernel_pivots,
            frees,
            boundary_pivots,
            nus,
        },
        values,
    }))
}

fn assemble(pivots: &[usize], extra: usize, values: &[Rational]) -> ExactVec {
    let mut v: ExactVec = pivots
        .iter()
        .copied()
        .zip(values.iter().cloned())
        .filter(|(_, q)| !q.is_zero())
        .collect();
    v.push((extra, Rational::one()));
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Certifies `H^m` given the slice and the two adjacent differentials.
pub fn cohomology_slice(slice: DegreeSlice, d_in: &SliceMap, d_out: &SliceMap) -> Result<CohomologySlice> {
    let dim = slice.dim();
    if d_in.target_dim != dim || d_out.source_dim != dim {
        return Err(Error::Structural("differentials do not meet the slice".into()));
    }
    let out_rows = transpose(d_out.target_dim, &d_out.columns);
    let (reps, duals, shape) = multimodular(
        "cohomology",
        |zp| attempt(zp, dim, &out_rows, &d_in.columns),
        |shape: &Shape, values| {
            let nk = shape.kernel_pivots.len();
            let nb = shape.boundary_pivots.len();
            let b = shape.frees.len();
            let reps: Vec<ExactVec> = (0..b)
                .map(|a| assemble(&shape.kernel_pivots, shape.frees[a], &values[a * nk..(a + 1) * nk]))
                .collect();
            let off = b * nk;
            let lambdas: Vec<ExactVec> = (0..b)
                .map(|a| assemble(&shape.boundary_pivots, shape.nus[a], &values[off + a * nb..off + (a + 1) * nb]))
                .collect();
            if reps.iter().any(|c| !d_out.apply(c).is_empty()) {
                return Ok(None);
            }
            if lambdas.iter().any(|l| d_in.columns.iter().any(|c| !dot(l, c).is_zero())) {
                return Ok(None);
            }
            // G[ν][a] = λ_ν(c_a); the normalized duals are the rows of G^{-1} λ.
            let gram: Vec<Vec<Rational>> = lambdas.iter().map(|l| reps.iter().map(|c| dot(l, c)).collect()).collect();
            let Some(inv) = bareiss::inverse(&gram) else {
                return Ok(None);
            };
            let duals = (0..b)
                .map(|a| {
                    let mut dense = vec![Rational::zero(); dim];
                    for (nu, l) in lambdas.iter().enumerate() {
                        let f = &inv[a][nu];
                        if f.is_zero() {
                            continue;
                        }
                        for (i, q) in l {
                            dense[*i] += f * q;
                        }
                    }
                    super::dense_to_exact(&dense)
                })
                .collect::<Vec<_>>();
            Ok(Some((reps, duals, shape.clone())))
        },
    )?;
    Ok(CohomologySlice {
        degree: slice.degree(),
        betti: reps.len(),
        slice_dim: dim,
        rank_in: shape.ranks.1,
        rank_out: shape.ranks.0,
        slice,
        representatives: reps,
        duals,
    })
}

/// `H^0 … H^top` of a model, one certified slice per degree, computed in
/// parallel across degrees.
pub fn cohomology(model: &SullivanModel, top: u32, caps: &Caps) -> Result<Vec<CohomologySlice>> {
    let gens = model.generators();
    let slices: Vec<DegreeSlice> = (0..=top + 1)
        .into_par_iter()
        .map(|m| DegreeSlice::enumerate(gens, m, SliceFilter::All, caps))
        .collect::<Result<_>>()?;
    let maps: Vec<SliceMap> = (0..=top)
        .into_par_iter()
        .map(|m| SliceMap::differential(model, &slices[m as usize], &slices[m as usize + 1]))
        .collect::<Result<_>>()?;
    let zero_in = SliceMap {
        source_dim: 0,
        target_dim: slices[0].dim(),
        columns: Vec::new(),
    };
    (0..=top)
        .into_par_iter()
        .map(|m| {
            let d_in = if m == 0 { &zero_in } else { &maps[m as usize - 1] };
            cohomology_slice(slices[m as usize].clone(), d_in, &maps[m as usize])
        })
        .collect()
}

/// Σ (−1)^m b_m, and the same sum from dimensions and ranks alone.
pub fn euler_characteristics(slices: &[CohomologySlice]) -> (i64, i64) {
    let mut from_betti = 0i64;
    let mut from_ranks = 0i64;
    for s in slices {
        let sign = if s.degree % 2 == 0 { 1 } else { -1 };
        from_betti += sign * s.betti as i64;
        from_ranks += sign * (s.slice_dim as i64 - s.rank_in as i64 - s.rank_out as i64);
    }
    (from_betti, from_ranks)
}
