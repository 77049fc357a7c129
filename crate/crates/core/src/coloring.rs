//! Exact k-colouring by backtracking, and the algebraic check that a
//! colouring gives a common zero of the edge differentials.

use crate::algebra::Polynomial;
use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduction::{build_v, check_k};

/// A proper colouring with colours `0..k`, or `None` after exhausting the
/// search. Vertices are coloured in decreasing-degree order; a new colour
/// is only ever the smallest unused one, which removes colour symmetry.
pub fn find_coloring(g: &Graph, k: u32) -> Option<Vec<u32>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let adj = g.adjacency();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut colour: Vec<Option<u32>> = vec![None; n];
    fn go(at: usize, order: &[usize], adj: &[Vec<usize>], k: u32, used: u32, colour: &mut [Option<u32>]) -> bool {
        let Some(&v) = order.get(at) else { return true };
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if adj[v].iter().any(|&u| colour[u] == Some(c)) {
                continue;
            }
            colour[v] = Some(c);
            if go(at + 1, order, adj, k, used.max(c + 1), colour) {
                return true;
            }
        }
        colour[v] = None;
        false
    }
    go(0, &order, &adj, k, 0, &mut colour).then(|| colour.into_iter().map(|c| c.expect("complete")).collect())
}

pub fn is_colorable(g: &Graph, k: u32) -> bool {
    find_coloring(g, k).is_some()
}

pub fn is_proper(g: &Graph, colouring: &[u32]) -> bool {
    colouring.len() == g.n() && g.edges().iter().all(|&(i, j)| colouring[i - 1] != colouring[j - 1])
}

/// A point of `({0} ∪ μ_k)^n` as colour exponents: vertex v ↦ ζ^{c} or 0.
pub type ColouringPoint = Vec<Option<u32>>;

/// Colours every k-colourable component and puts 0 on the rest. The point
/// is nonzero exactly when some component is k-colourable.
pub fn colouring_point(g: &Graph, k: u32) -> ColouringPoint {
    let mut point = vec![None; g.n()];
    for comp in g.components() {
        let index: std::collections::HashMap<usize, usize> =
            comp.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        let sub = Graph::new(
            comp.len(),
            g.edges()
                .iter()
                .filter(|(a, _)| index.contains_key(a))
                .map(|(a, b)| (index[a], index[b])),
        )
        .expect("induced subgraph is simple");
        if let Some(c) = find_coloring(&sub, k) {
            for (i, &v) in comp.iter().enumerate() {
                point[v - 1] = Some(c[i]);
            }
        }
    }
    point
}

/// True when every edge differential of `ΛV_{G,k}` vanishes at the point
/// (exact cyclotomic arithmetic).
pub fn point_annihilates_edges(g: &Graph, k: u32, point: &[Option<u32>]) -> Result<bool> {
    check_k(k as i64)?;
    if point.len() != g.n() {
        return Err(Error::Validation(format!("point has {} coordinates for {} vertices", point.len(), g.n())));
    }
    if let Some(c) = point.iter().flatten().find(|&&c| c >= k) {
        return Err(Error::Validation(format!("colour {c} out of range 0..{k}")));
    }
    let model = build_v(g, k as i64)?;
    let field = CyclotomicField::new(k);
    let gens = model.generators();
    let mut full = point.to_vec();
    full.resize(gens.len(), None);
    Ok((g.n()..gens.len()).all(|id| field.evaluate(gens, model.differential_of(id), &full).is_zero()))
}

/// A proper colouring whose induced point `P_i = ζ^{c(i)}` annihilates every
/// edge differential: a nontrivial morphism `ΛV_{G,k} → (ℂ[z], 0)`.
pub fn check_noncoloring_certificate(g: &Graph, k: u32, colouring: &[u32]) -> Result<bool> {
    if colouring.len() != g.n() {
        return Err(Error::Validation(format!("{} colours for {} vertices", colouring.len(), g.n())));
    }
    if let Some(c) = colouring.iter().find(|&&c| c >= k) {
        return Err(Error::Validation(format!("colour {c} out of range 0..{k}")));
    }
    let point: Vec<Option<u32>> = colouring.iter().map(|&c| Some(c)).collect();
    Ok(is_proper(g, colouring) && point_annihilates_edges(g, k, &point)?)
}

/// Value of an even polynomial at a colouring point, zero test only.
pub fn vanishes_at(k: u32, gens: &crate::algebra::GeneratorSet, p: &Polynomial, point: &[Option<u32>]) -> bool {
    let mut full = point.to_vec();
    full.resize(gens.len(), None);
    CyclotomicField::new(k).evaluate(gens, p, &full).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques_and_petersen() {
        assert!(is_colorable(&Graph::complete(3), 3));
        assert!(!is_colorable(&Graph::complete(4), 3));
        let c = find_coloring(&Graph::petersen(), 3).unwrap();
        assert!(is_proper(&Graph::petersen(), &c));
        assert!(is_colorable(&Graph::cycle(5), 3));
        assert!(!is_colorable(&Graph::cycle(5), 2));
    }

    #[test]
    fn certificates() {
        let k3 = Graph::complete(3);
        assert!(check_noncoloring_certificate(&k3, 3, &[0, 1, 2]).unwrap());
        assert!(!check_noncoloring_certificate(&Graph::complete(2), 3, &[0, 0]).unwrap());
        assert!(check_noncoloring_certificate(&k3, 3, &[0, 1, 3]).is_err());
        // Every assignment fails on K4.
        let k4 = Graph::complete(4);
        for code in 0..81u32 {
            let c: Vec<u32> = (0..4).map(|i| code / 3u32.pow(i) % 3).collect();
            assert!(!check_noncoloring_certificate(&k4, 3, &c).unwrap());
        }
    }

    #[test]
    fn componentwise_point() {
        // K4 plus an isolated vertex: only the isolated vertex is coloured.
        let g = Graph::new(5, Graph::complete(4).edges().to_vec()).unwrap();
        let p = colouring_point(&g, 3);
        assert_eq!(p[..4], [None, None, None, None]);
        assert_eq!(p[4], Some(0));
        assert!(point_annihilates_edges(&g, 3, &p).unwrap());
    }
}
