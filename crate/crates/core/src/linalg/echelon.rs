//! Row echelon forms over F_p.
//!
//! Vectors are dense `u64` residues. Rows are stored from their pivot
//! column onward with a leading 1. Pivot choice is the first nonzero
//! column, so the fully reduced basis depends only on the span.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::Zp;

const NONE: u32 = u32::MAX;

pub type SparseMod = Vec<(usize, u64)>;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    data: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct Echelon {
    zp: Zp,
    dim: usize,
    rows: Vec<Row>,
    col_to_row: Vec<u32>,
    reduced: bool,
}

impl Echelon {
    pub fn new(zp: Zp, dim: usize) -> Self {
        Echelon {
            zp,
            dim,
            rows: Vec::new(),
            col_to_row: vec![NONE; dim],
            reduced: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.col_to_row[col] != NONE
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Subtracts multiples of the rows to clear every pivot column of `v`.
    pub fn reduce(&self, v: &mut [u64]) {
        let zp = self.zp;
        for c in 0..self.dim {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let r = self.col_to_row[c];
            if r == NONE {
                continue;
            }
            let row = &self.rows[r as usize];
            let nf = zp.neg(f);
            for (x, &a) in v[c..].iter_mut().zip(&row.data) {
                *x = zp.reduce(*x + nf * a);
            }
        }
    }

    /// Adds `v` to the span. Returns the new row index when `v` was
    /// independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> Option<usize> {
        self.reduce(&mut v);
        let c = v.iter().position(|&x| x != 0)?;
        let zp = self.zp;
        let inv = zp.inv(v[c]);
        let data: Vec<u64> = v[c..].iter().map(|&x| zp.mul(x, inv)).collect();
        self.col_to_row[c] = self.rows.len() as u32;
        self.rows.push(Row { pivot: c, data });
        self.reduced = false;
        Some(self.rows.len() - 1)
    }

    pub fn insert_sparse(&mut self, v: &SparseMod) -> Option<usize> {
        let mut dense = vec![0u64; self.dim];
        for &(i, a) in v {
            dense[i] = a;
        }
        self.insert(dense)
    }

    /// Back-substitution: afterwards every row is zero in every other
    /// row's pivot column.
    pub fn fully_reduce(&mut self) {
        if self.reduced {
            return;
        }
        let zp = self.zp;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].pivot));
        for &r in &order {
            let (pc, pdata) = {
                let row = &self.rows[r];
                (row.pivot, row.data.clone())
            };
            for s in 0..self.rows.len() {
                let srow = &mut self.rows[s];
                if srow.pivot >= pc {
                    continue;
                }
                let off = pc - srow.pivot;
                let f = srow.data[off];
                if f == 0 {
                    continue;
                }
                let nf = zp.neg(f);
                for (x, &a) in srow.data[off..].iter_mut().zip(&pdata) {
                    *x = zp.reduce(*x + nf * a);
                }
            }
        }
        self.reduced = true;
    }

    /// Entry of the (fully reduced) basis row with pivot `pivot` at `col`.
    pub fn entry(&self, pivot: usize, col: usize) -> u64 {
        let row = &self.rows[self.col_to_row[pivot] as usize];
        if col < row.pivot {
            0
        } else {
            row.data[col - row.pivot]
        }
    }

    /// Canonical kernel vector of the row space for a non-pivot column:
    /// 1 at `free`, −R_j[free] at each pivot j. Requires `fully_reduce`.
    pub fn kernel_vector(&self, free: usize) -> Vec<u64> {
        debug_assert!(self.reduced && !self.is_pivot(free));
        let mut v = vec![0u64; self.dim];
        v[free] = 1;
        for row in &self.rows {
            if free > row.pivot {
                v[row.pivot] = self.zp.neg(row.data[free - row.pivot]);
            }
        }
        v
    }

    /// The functional λ_μ with λ_μ(e_μ) = 1 that kills the span and
    /// vanishes on every other non-pivot coordinate. Identical in shape
    /// to [`Echelon::kernel_vector`].
    pub fn dual_functional(&self, non_pivot: usize) -> Vec<u64> {
        self.kernel_vector(non_pivot)
    }
}

/// Span echelon of a family of sparse vectors. Large families are first
/// compressed to `dim + 8` random combinations; the span is unchanged
/// with overwhelming probability, and callers certify exactly anyway.
pub fn span_echelon(zp: Zp, dim: usize, vectors: &[SparseMod], seed: u64) -> Echelon {
    let mut ech = Echelon::new(zp, dim);
    let k = dim + 8;
    if vectors.len() <= 2 * dim + 16 {
        for v in vectors {
            if ech.rank() == dim {
                break;
            }
            ech.insert_sparse(v);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ zp.modulus());
        // Built in row-blocks so memory is k·dim, not |vectors|·dim.
        let mut combos = vec![vec![0u64; dim]; k];
        for v in vectors {
            for combo in combos.iter_mut() {
                let r: u64 = rng.gen_range(1..zp.modulus());
                for &(i, a) in v {
                    combo[i] = zp.reduce(combo[i] + r * a);
                }
            }
        }
        for combo in combos {
            if ech.rank() == dim {
                break;
            }
            ech.insert(combo);
        }
    }
    ech.fully_reduce();
    ech
}

/// Greedy echelon over the inputs in order, recording each row as a
/// combination of the accepted inputs. The accepted inputs are the first
/// independent ones, so a solution over them is unique.
pub struct TrackedEchelon {
    ech: Echelon,
    combos: Vec<Vec<u64>>,
    accepted: Vec<usize>,
}

impl TrackedEchelon {
    pub fn new(zp: Zp, dim: usize) -> Self {
        TrackedEchelon {
            ech: Echelon::new(zp, dim),
            combos: Vec::new(),
            accepted: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn accepted(&self) -> &[usize] {
        &self.accepted
    }

    /// Reduces `v`, returning the residual and the combination `c` of
    /// accepted inputs with `v = residual + Σ c_t · input_t`.
    fn reduce_tracked(&self, v: &mut [u64]) -> Vec<u64> {
        let zp = self.ech.zp;
        let mut combo = vec![0u64; self.accepted.len()];
        for c in 0..self.ech.dim {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let r = self.ech.col_to_row[c];
            if r == NONE {
                continue;
            }
            let row = &self.ech.rows[r as usize];
            let nf = zp.neg(f);
            for (x, &a) in v[c..].iter_mut().zip(&row.data) {
                *x = zp.reduce(*x + nf * a);
            }
            for (x, &a) in combo.iter_mut().zip(&self.combos[r as usize]) {
                *x = zp.reduce(*x + f * a);
            }
        }
        combo
    }

    pub fn insert_sparse(&mut self, index: usize, v: &SparseMod) -> bool {
        let zp = self.ech.zp;
        let mut dense = vec![0u64; self.ech.dim];
        for &(i, a) in v {
            dense[i] = a;
        }
        let combo = self.reduce_tracked(&mut dense);
        let Some(c) = dense.iter().position(|&x| x != 0) else {
            return false;
        };
        // row = (v − Σ combo·inputs) / lead
        let inv = zp.inv(dense[c]);
        let mut row_combo: Vec<u64> = combo.iter().map(|&x| zp.mul(zp.neg(x), inv)).collect();
        row_combo.push(inv);
        for rc in &mut self.combos {
            rc.push(0);
        }
        let data: Vec<u64> = dense[c..].iter().map(|&x| zp.mul(x, inv)).collect();
        self.ech.col_to_row[c] = self.ech.rows.len() as u32;
        self.ech.rows.push(Row { pivot: c, data });
        self.combos.push(row_combo);
        self.accepted.push(index);
        true
    }

    /// Coefficients over the accepted inputs when `v` lies in the span.
    pub fn solve(&self, v: &SparseMod) -> Option<Vec<u64>> {
        let mut dense = vec![0u64; self.ech.dim];
        for &(i, a) in v {
            dense[i] = a;
        }
        let combo = self.reduce_tracked(&mut dense);
        if dense.iter().any(|&x| x != 0) {
            return None;
        }
        Some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_000_003;

    #[test]
    fn rank_and_kernel() {
        let zp = Zp::new(P);
        // rows (1 2 3), (2 4 6), (0 1 1)
        let rows: Vec<SparseMod> = vec![
            vec![(0, 1), (1, 2), (2, 3)],
            vec![(0, 2), (1, 4), (2, 6)],
            vec![(1, 1), (2, 1)],
        ];
        let ech = span_echelon(zp, 3, &rows, 1);
        assert_eq!(ech.rank(), 2);
        assert_eq!(ech.pivots(), vec![0, 1]);
        let k = ech.kernel_vector(2);
        // kernel of (1 2 3),(0 1 1): (−1, −1, 1)
        assert_eq!(k, vec![P - 1, P - 1, 1]);
    }

    #[test]
    fn compressed_span_matches_direct() {
        let zp = Zp::new(P);
        let mut vecs: Vec<SparseMod> = Vec::new();
        for i in 0..40usize {
            vecs.push(vec![(i % 7, 1), ((i * 3) % 7, 2)]);
        }
        let a = span_echelon(zp, 7, &vecs, 9);
        let mut b = Echelon::new(zp, 7);
        for v in &vecs {
            b.insert_sparse(v);
        }
        b.fully_reduce();
        assert_eq!(a.pivots(), b.pivots());
        for &p in &a.pivots() {
            for c in 0..7 {
                assert_eq!(a.entry(p, c), b.entry(p, c));
            }
        }
    }

    #[test]
    fn tracked_solution() {
        let zp = Zp::new(P);
        let inputs: Vec<SparseMod> = vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)], vec![(1, 1)]];
        let mut t = TrackedEchelon::new(zp, 2);
        for (i, v) in inputs.iter().enumerate() {
            t.insert_sparse(i, v);
        }
        assert_eq!(t.accepted(), &[0, 2]);
        // (3, 5) = 3·(1,1) + 2·(0,1)
        let c = t.solve(&vec![(0, 3), (1, 5)]).unwrap();
        assert_eq!(c, vec![3, 2]);
    }
}
