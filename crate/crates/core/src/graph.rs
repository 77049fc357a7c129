//! Finite simple undirected graphs and the DIMACS `.col` reader.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple graph on vertices `1..=n`. Edges are stored once, as `(i, j)`
/// with `i < j`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Deserialisation goes through [`Graph::new`] so documents cannot carry
/// loops or out-of-range edges.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Graph> {
        Graph::new(raw.n, raw.edges)
    }
}

impl Graph {
    /// Normalises orientation and drops duplicates; loops and out-of-range
    /// endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Structural(format!("loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Structural(format!(
                    "edge ({a},{b}) outside vertex range 1..={n}"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Neighbour lists over 0-based vertex indices.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a - 1].push(b - 1);
            adj[b - 1].push(a - 1);
        }
        adj
    }

    /// Connected components as sorted lists of 1-based vertices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v + 1);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("valid")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i + 1, (i + 1) % 5 + 1));
            edges.push((i + 1, i + 6));
            edges.push((i + 6, (i + 2) % 5 + 6));
        }
        Graph::new(10, edges).expect("valid")
    }

    /// The graph on `n` vertices whose edge set is selected by `mask` over
    /// the pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Graph {
        let pairs = all_pairs(n);
        assert!(pairs.len() <= 64);
        let edges = pairs
            .into_iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, e)| e);
        Graph::new(n, edges).expect("valid")
    }

    pub fn mask(&self) -> u64 {
        let pairs = all_pairs(self.n);
        self.edges
            .iter()
            .map(|e| 1u64 << pairs.iter().position(|p| p == e).expect("edge in range"))
            .sum()
    }

    /// Relabels vertex `v` as `perm[v-1] + 1`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        Graph::new(
            self.n,
            self.edges.iter().map(|&(a, b)| (perm[a - 1] + 1, perm[b - 1] + 1)),
        )
        .expect("permutation of a valid graph")
    }

    /// The lexicographically smallest edge mask over all relabellings and a
    /// permutation `perm` with `self.permuted(&perm)` equal to it. Brute
    /// force, intended for n ≤ 7.
    pub fn canonical_form(&self) -> (u64, Vec<usize>) {
        let mut best: Option<(u64, Vec<usize>)> = None;
        let mut perm: Vec<usize> = (0..self.n).collect();
        loop {
            let m = self.permuted(&perm).mask();
            if best.as_ref().is_none_or(|(b, _)| m < *b) {
                best = Some((m, perm.clone()));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.expect("at least the identity")
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p edge {} {}", self.n, self.edges.len());
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "e {a} {b}");
        }
        s
    }
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Reads DIMACS `.col` text: `c` comment lines, one `p edge n m` line
/// (`p col` is accepted too) and `e i j` edge lines. Edges given in both
/// orientations collapse to one. The `m` field is not enforced.
pub fn parse_dimacs(input: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(input).map_err(|e| Error::Parse {
        line: 0,
        message: format!("input is not UTF-8: {e}"),
    })?;
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| Error::Parse { line, message };
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if n.is_some() {
                    return Err(err("second problem line".into()));
                }
                let kind = fields.next().ok_or_else(|| err("missing problem kind".into()))?;
                if kind != "edge" && kind != "col" {
                    return Err(err(format!("unknown problem kind {kind:?}")));
                }
                let vn = parse_count(fields.next(), "vertex count").map_err(err)?;
                parse_count(fields.next(), "edge count").map_err(err)?;
                if fields.next().is_some() {
                    return Err(err("trailing fields on problem line".into()));
                }
                n = Some(vn);
            }
            "e" => {
                let Some(vn) = n else {
                    return Err(err("edge before problem line".into()));
                };
                let a = parse_count(fields.next(), "endpoint").map_err(err)?;
                let b = parse_count(fields.next(), "endpoint").map_err(err)?;
                if fields.next().is_some() {
                    return Err(err("trailing fields on edge line".into()));
                }
                if a == b {
                    return Err(err(format!("loop at vertex {a}")));
                }
                if a == 0 || b == 0 || a > vn || b > vn {
                    return Err(err(format!("vertex index out of range 1..={vn} in edge {a} {b}")));
                }
                edges.push((a, b));
            }
            other => return Err(err(format!("unrecognised line tag {other:?}"))),
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing problem line".into(),
    })?;
    Graph::new(n, edges)
}

fn parse_count(field: Option<&str>, what: &str) -> std::result::Result<usize, String> {
    let f = field.ok_or_else(|| format!("missing {what}"))?;
    f.parse::<usize>()
        .map_err(|_| format!("malformed {what} {f:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = parse_dimacs(b"p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn both_orientations_collapse() {
        let g = parse_dimacs(b"c test\np edge 2 2\ne 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.edges(), &[(1, 2)]);
    }

    #[test]
    fn loop_is_rejected_with_line() {
        let err = parse_dimacs(b"p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "loop at vertex 1".into()
            }
        );
    }

    #[test]
    fn out_of_range_and_malformed() {
        assert!(matches!(
            parse_dimacs(b"p edge 2 1\ne 1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs(b"p edge 2 1\n\ne x 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_dimacs(b"e 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_dimacs(b""), Err(Error::Parse { .. })));
        assert!(matches!(parse_dimacs(b"p edge -1 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn petersen_is_cubic() {
        let g = Graph::petersen();
        assert_eq!(g.edge_count(), 15);
        assert!(g.adjacency().iter().all(|a| a.len() == 3));
        assert!(g.is_connected());
    }

    #[test]
    fn canonical_form_identifies_isomorphic_graphs() {
        let path_a = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let path_b = Graph::new(4, [(2, 4), (4, 1), (1, 3)]).unwrap();
        let (ca, pa) = path_a.canonical_form();
        let (cb, pb) = path_b.canonical_form();
        assert_eq!(ca, cb);
        assert_eq!(path_a.permuted(&pa).mask(), ca);
        assert_eq!(path_b.permuted(&pb).mask(), cb);
    }

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::petersen();
        assert_eq!(parse_dimacs(g.to_dimacs().as_bytes()).unwrap(), g);
    }
}
