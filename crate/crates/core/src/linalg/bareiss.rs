//! Fraction-free Gaussian elimination over ℤ (Bareiss).
//!
//! Rational input rows are first scaled by the lcm of their denominators.
//! Pivoting is deterministic: the first column with an eligible entry, and
//! among eligible rows the one with the largest support (lowest index on
//! ties).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Integer echelon form produced by [`Bareiss::new`].
#[derive(Clone, Debug)]
pub struct Bareiss {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
    pivots: Vec<usize>,
    /// Row permutation applied: `order[i]` is the original index of row i.
    order: Vec<usize>,
}

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

impl Bareiss {
    pub fn new(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut m = integer_rows(rows);
        for r in &m {
            assert_eq!(r.len(), cols);
        }
        let mut order: Vec<usize> = (0..m.len()).collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..cols {
            if r == m.len() {
                break;
            }
            let support = |row: &Vec<BigInt>| row.iter().filter(|x| !x.is_zero()).count();
            let pick = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .max_by(|&a, &b| support(&m[a]).cmp(&support(&m[b])).then(b.cmp(&a)));
            let Some(i) = pick else { continue };
            m.swap(r, i);
            order.swap(r, i);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let f = row[c].clone();
                for j in c + 1..cols {
                    let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                    row[j] = v.div_floor(&prev);
                }
                row[c] = BigInt::zero();
                // Columns left of c are already zero below the pivot rows.
            }
            prev = pivot_row[c].clone();
            pivots.push(c);
            r += 1;
        }
        Bareiss {
            rows: m,
            cols,
            pivots,
            order,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Rational reduced row echelon form of the row space (rank rows).
    pub fn rref(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        let mut out: Vec<Vec<Rational>> = self.rows[..r]
            .iter()
            .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        for i in (0..r).rev() {
            let c = self.pivots[i];
            let lead = out[i][c].clone();
            for x in out[i].iter_mut() {
                *x = &*x / &lead;
            }
            let pivot_row = out[i].clone();
            for row in out.iter_mut().take(i) {
                let f = row[c].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        out
    }

    pub fn row_order(&self) -> &[usize] {
        &self.order
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    Bareiss::new(rows, cols).rank()
}

/// Determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    // Track the row scaling and the permutation sign separately.
    let scale = rows.iter().fold(Rational::one(), |acc, r| {
        let l = r.iter().fold(BigInt::one(), |a, q| a.lcm(q.denom()));
        acc * Rational::from_integer(l)
    });
    let b = Bareiss::new(rows, n);
    if b.rank() < n {
        return Rational::zero();
    }
    let sign = permutation_sign(&b.order);
    let det_int = b.rows[n - 1][n - 1].clone();
    Rational::from_integer(det_int * sign) / scale
}

fn permutation_sign(order: &[usize]) -> i32 {
    let mut seen = vec![false; order.len()];
    let mut sign = 1;
    for i in 0..order.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = order[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// A solution of A x = b with free variables set to zero, or `None` when
/// the system is inconsistent. `a` is given by rows.
pub fn solve(a: &[Vec<Rational>], cols: usize, b: &[Rational]) -> Option<Vec<Rational>> {
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = Bareiss::new(&aug, cols + 1);
    if e.pivots().last() == Some(&cols) {
        return None;
    }
    let rref = e.rref();
    let mut x = vec![Rational::zero(); cols];
    for (row, &c) in rref.iter().zip(e.pivots()) {
        x[c] = row[cols].clone();
    }
    Some(x)
}

/// Kernel basis of the map given by `rows` (canonical: one vector per
/// non-pivot column, 1 there and 0 at the other non-pivot columns).
pub fn kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let e = Bareiss::new(rows, cols);
    let rref = e.rref();
    let pivots = e.pivots().to_vec();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square rational matrix.
pub fn inverse(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut cols_out = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let x = solve(rows, n, &e)?;
        for i in 0..n {
            cols_out[i][j] = x[i].clone();
        }
    }
    if rank(rows, n) < n {
        return None;
    }
    Some(cols_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rational(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a, 3), 2);
    }

    #[test]
    fn determinant_with_swaps_and_fractions() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 5]]);
        // expansion along row 2: −1·(2·5 − 1·1) = −9
        assert_eq!(determinant(&a), rational(-9));
        let half = vec![
            vec![Rational::new(1.into(), 2.into()), rational(0)],
            vec![rational(0), rational(3)],
        ];
        assert_eq!(determinant(&half), Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, 2, &[rational(3), rational(1)]).unwrap();
        assert_eq!(x, vec![rational(2), rational(1)]);
        let s = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, 2, &[rational(1), rational(3)]).is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let k = kernel(&a, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[4, -1], &[-7, 2]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
