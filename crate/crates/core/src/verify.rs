//! Cross-verification harness: runs the whole equivalence suite on every
//! labelled graph of a given order (or a seeded sample of connected ones).
//!
//! Invariants are isomorphism-invariant, so each isomorphism class is
//! computed once on its canonical representative. Certificates are then
//! transported to every labelled member along the relabelling and
//! re-checked there, and the colouring side is recomputed per labelled
//! graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GeneratorSet, Polynomial};
use crate::coloring;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::graph::{all_pairs, Graph};
use crate::invariants::ellipticity::{by_colouring, is_elliptic, EllipticityVerdict, Method, NilpotenceOutcome};
use crate::invariants::{graph_report_with, InvariantReport, ReportOptions, Value};
use crate::linalg::ideal::{self, IdealMembership};
use crate::model::SullivanModel;
use crate::reduction::{build_v, constants};

/// Hard limit: canonical forms are brute force over all n! relabellings.
pub const MAX_ORDER: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub k: i64,
    /// Sample this many random connected graphs of order `n_max` instead of
    /// enumerating it; the vertex-transitive graphs of that order are added.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Largest accepted `n_max`.
    pub order_cap: usize,
    pub caps: Caps,
    /// Passed to the reports: larger `ΛV` cohomology is replaced by bounds.
    pub cohomology_max_slice: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_min: 4,
            n_max: 4,
            k: 3,
            sample: None,
            seed: 0,
            order_cap: 5,
            caps: Caps::default(),
            cohomology_max_slice: 1000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Non-elliptic ⇔ some component is k-colourable (for connected graphs:
    /// ⇔ k-colourable), both sides certified.
    ColouringEquivalence,
    /// Witnesses sit at exponent d_{G,k}+1 exactly.
    ExponentBound,
    /// cup_length(ΛW) ≤ d'+n ⇔ elliptic.
    CupLengthW,
    /// cat0(ΛW) ≤ d'+n ⇔ elliptic.
    Cat0W,
    /// The z'_i are closed and non-exact.
    Splitting,
    /// cup_length ≤ e0 = cat0 ≤ fd/2 when computed.
    Sandwich,
    /// Certificates transported to the labelled graph re-validate there.
    Certificates,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::ColouringEquivalence,
        Check::ExponentBound,
        Check::CupLengthW,
        Check::Cat0W,
        Check::Splitting,
        Check::Sandwich,
        Check::Certificates,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Check::ColouringEquivalence => "colouring <=> non-elliptic",
            Check::ExponentBound => "witness exponent d_G+1",
            Check::CupLengthW => "cup_W <= d'+n <=> elliptic",
            Check::Cat0W => "cat0_W <= d'+n <=> elliptic",
            Check::Splitting => "splitting z' closed, non-exact",
            Check::Sandwich => "cup <= e0 = cat0 <= fd/2",
            Check::Certificates => "certificates re-validate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tally {
    pub check: Check,
    pub label: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderSummary {
    pub n: usize,
    pub mode: &'static str,
    pub labeled_graphs: usize,
    pub distinct_labeled_graphs: usize,
    pub isomorphism_classes: usize,
}

/// Per isomorphism class, computed on the canonical representative.
#[derive(Clone, Debug, Serialize)]
pub struct ClassResult {
    pub n: usize,
    pub canonical_mask: u64,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    pub colourable: bool,
    pub elliptic: bool,
    pub d_g_k: i64,
    pub bound: i64,
    pub cup_length_v: Value,
    pub cat0_v: Value,
    pub cup_length_w: Value,
    pub cat0_w: Value,
    pub p3: Option<bool>,
    pub q3: Option<bool>,
    pub members_checked: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub check: Check,
    pub graph: Graph,
    pub dimacs: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub orders: Vec<OrderSummary>,
    pub checks: Vec<Tally>,
    pub classes: Vec<ClassResult>,
    pub counterexamples: Vec<Counterexample>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "verify k={} n={}..={} seed={}", c.k, c.n_min, c.n_max, c.seed);
        for o in &self.orders {
            let _ = writeln!(
                out,
                "  n={} {}: {} labeled graphs ({} distinct), {} isomorphism classes",
                o.n, o.mode, o.labeled_graphs, o.distinct_labeled_graphs, o.isomorphism_classes
            );
        }
        let _ = writeln!(out, "  {:<34} {:>7} {:>7} {:>7}", "check", "pass", "fail", "n/a");
        for t in &self.checks {
            let _ = writeln!(
                out,
                "  {:<34} {:>7} {:>7} {:>7}",
                t.label, t.passed, t.failed, t.not_applicable
            );
        }
        for cx in &self.counterexamples {
            let _ = writeln!(out, "  counterexample [{}]: {}", cx.check.label(), cx.detail);
            for line in cx.dimacs.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        let _ = writeln!(out, "{}", if self.all_passed { "all checks passed" } else { "VIOLATIONS FOUND" });
        out
    }
}

fn is_vertex_transitive(g: &Graph, perms: &[Vec<usize>]) -> bool {
    let mut reach = vec![false; g.n()];
    for p in perms {
        if g.permuted(p) == *g {
            reach[p[0]] = true;
        }
    }
    reach.iter().all(|&r| r)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The labelled graphs of order n to check, in a deterministic order.
fn graphs_of_order(n: usize, config: &VerifyConfig) -> (Vec<Graph>, &'static str) {
    let masks = 1u64 << all_pairs(n).len();
    match (config.sample, n == config.n_max) {
        (Some(count), true) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let g = Graph::from_mask(n, rng.gen_range(0..masks));
                if g.is_connected() {
                    out.push(g);
                }
            }
            let perms = all_permutations(n);
            let mut seen = std::collections::BTreeSet::new();
            for mask in 0..masks {
                let g = Graph::from_mask(n, mask);
                let canon = g.canonical_form().0;
                if seen.insert(canon) && is_vertex_transitive(&g, &perms) {
                    out.push(g);
                }
            }
            (out, "sampled")
        }
        _ => ((0..masks).map(|m| Graph::from_mask(n, m)).collect(), "exhaustive"),
    }
}

/// Generator map from the canonical representative's `ΛV` to the labelled
/// graph's: representative vertex u is labelled vertex `inv[u-1] + 1`.
fn generator_map(rep: &Graph, g: &Graph, inv: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut map: Vec<usize> = inv.to_vec();
    for &(a, b) in rep.edges() {
        let (i, j) = (inv[a - 1] + 1, inv[b - 1] + 1);
        let e = (i.min(j), i.max(j));
        let t = g.edges().iter().position(|&x| x == e).expect("isomorphic edge");
        map.push(n + t);
    }
    map
}

/// Image of `p` under the algebra isomorphism sending generator `i` to
/// `map[i]`; Koszul signs come from re-multiplying in the target.
fn transport(src: &GeneratorSet, dst: &GeneratorSet, map: &[usize], p: &Polynomial) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut acc = Polynomial::term(dst.one(), c.clone());
        for (id, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = if src.is_odd(id) {
                dst.generator_poly(map[id])
            } else {
                Polynomial::from_monomial(dst.power(map[id], e))
            };
            acc = dst.mul(&acc, &factor)?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

fn recheck_transported(
    rep_model: &SullivanModel,
    verdict: &EllipticityVerdict,
    g: &Graph,
    k: i64,
    map: &[usize],
) -> Result<std::result::Result<(), String>> {
    let model = build_v(g, k)?;
    let (src, dst) = (rep_model.generators(), model.generators());
    match verdict.nilpotence.as_ref() {
        Some(NilpotenceOutcome::Nilpotent(ws)) => {
            for w in ws {
                let witness = transport(src, dst, map, &w.witness)?;
                let target = Polynomial::from_monomial(dst.power(map[w.generator], w.exponent));
                if model.apply_differential(&witness)? != target {
                    return Ok(Err(format!("transported witness for x{} fails", map[w.generator] + 1)));
                }
            }
        }
        Some(NilpotenceOutcome::NotNilpotent(o)) => {
            let functional = o.functional.iter().map(|(m, c)| (m.permuted(map), c.clone())).collect();
            let target = Polynomial::from_monomial(dst.power(map[o.generator], o.exponent));
            let relations: Vec<Polynomial> = dst.odd_ids().iter().map(|&j| model.differential_of(j).clone()).collect();
            if let Err(e) = ideal::verify(dst, &target, &relations, &IdealMembership::NonMember { functional }) {
                return Ok(Err(format!("transported obstruction: {e}")));
            }
        }
        None => return Ok(Err("no nilpotence certificate".into())),
    }
    // Colouring side, recomputed on the labelled graph and re-checked.
    let col = match by_colouring(g, k) {
        Ok(c) => c,
        Err(Error::CertificateInvalid(e)) => return Ok(Err(e)),
        Err(e) => return Err(e),
    };
    if col.elliptic() != verdict.elliptic {
        return Ok(Err("colouring verdict differs from the class verdict".into()));
    }
    Ok(Ok(()))
}

struct ClassRun {
    result: ClassResult,
    rep_model: SullivanModel,
    verdict: EllipticityVerdict,
    outcomes: Vec<(Check, Outcome, String)>,
}

fn bool_outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// Decides `value ≤ bound` from what the value certifies.
fn at_most(value: &Value, bound: i64) -> Option<bool> {
    if value.upper().is_some_and(|u| u as i64 <= bound) {
        Some(true)
    } else if value.lower().is_some_and(|l| l as i64 > bound) {
        Some(false)
    } else {
        None
    }
}

fn run_class(rep: &Graph, k: i64, config: &VerifyConfig) -> Result<ClassRun> {
    let opts = ReportOptions {
        method: Method::Both,
        full: false,
        caps: config.caps.clone(),
        cohomology_max_slice: Some(config.cohomology_max_slice),
    };
    let c = constants(rep, k)?;
    let colourable = coloring::is_colorable(rep, k as u32);
    let some_component_colourable = rep.components().iter().any(|comp| {
        let idx: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        let sub = Graph::new(
            comp.len(),
            rep.edges().iter().filter(|e| idx.contains_key(&e.0)).map(|&(a, b)| (idx[&a], idx[&b])),
        )
        .expect("induced subgraph");
        coloring::is_colorable(&sub, k as u32)
    });
    let mut outcomes = Vec::new();
    // Disagreement between the two methods surfaces as an error here.
    let verdict = is_elliptic(rep, k, Method::Both, &config.caps)?;
    let elliptic = verdict.elliptic;
    let eq = elliptic != some_component_colourable && (!rep.is_connected() || colourable == !elliptic);
    outcomes.push((
        Check::ColouringEquivalence,
        bool_outcome(eq),
        format!("colourable={colourable} elliptic={elliptic}"),
    ));
    let report: InvariantReport = graph_report_with(rep, k, verdict.clone(), &opts)?;
    let ext = report.extended.as_ref().expect("graph reports carry ΛW invariants");
    let bound = ext.bound;
    if let Some(NilpotenceOutcome::Nilpotent(ws)) = &verdict.nilpotence {
        let want = (c.d_g_k + 1).max(0) as u32;
        let ok = ws.iter().all(|w| w.exponent == want);
        outcomes.push((Check::ExponentBound, bool_outcome(ok), format!("expected exponent {want}")));
    } else {
        outcomes.push((Check::ExponentBound, Outcome::NotApplicable, String::new()));
    }
    for (check, value) in [(Check::CupLengthW, &ext.cup_length_w), (Check::Cat0W, &ext.cat0_w)] {
        let within = at_most(value, bound);
        outcomes.push((
            check,
            bool_outcome(within == Some(elliptic)),
            format!("value {value:?} against d'+n = {bound}, elliptic={elliptic}"),
        ));
    }
    match &ext.splitting {
        Some(s) => outcomes.push((
            Check::Splitting,
            bool_outcome(s.closed && s.non_exact && s.cocycles.len() == rep.n()),
            "splitting".into(),
        )),
        None => outcomes.push((
            Check::Splitting,
            if elliptic { Outcome::Fail } else { Outcome::NotApplicable },
            "no splitting for an elliptic graph".into(),
        )),
    }
    match report.sandwich {
        Some(s) => outcomes.push((
            Check::Sandwich,
            bool_outcome(s && report.poincare_duality == Some(true)),
            format!("cup {:?} e0 {:?}", report.cup_length, report.toomer),
        )),
        None => outcomes.push((Check::Sandwich, Outcome::NotApplicable, String::new())),
    }
    Ok(ClassRun {
        result: ClassResult {
            n: rep.n(),
            canonical_mask: rep.mask(),
            edges: rep.edges().to_vec(),
            connected: rep.is_connected(),
            colourable,
            elliptic,
            d_g_k: c.d_g_k,
            bound,
            cup_length_v: report.cup_length.clone(),
            cat0_v: report.cat0.clone(),
            cup_length_w: ext.cup_length_w.clone(),
            cat0_w: ext.cat0_w.clone(),
            p3: report.p3(),
            q3: report.q3(),
            members_checked: 0,
        },
        rep_model: build_v(rep, k)?,
        verdict,
        outcomes,
    })
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.n_max > config.order_cap || config.n_max > MAX_ORDER {
        return Err(Error::Capacity {
            what: "verify order".into(),
            requested: config.n_max,
            cap: config.order_cap.min(MAX_ORDER),
        });
    }
    if config.n_min == 0 || config.n_min > config.n_max {
        return Err(Error::Validation(format!("bad order range {}..={}", config.n_min, config.n_max)));
    }
    crate::reduction::check_k(config.k)?;
    let k = config.k;
    let mut orders = Vec::new();
    let mut classes = Vec::new();
    let mut tallies: BTreeMap<Check, (usize, usize, usize)> = Check::ALL.iter().map(|&c| (c, (0, 0, 0))).collect();
    let mut counterexamples = Vec::new();
    for n in config.n_min..=config.n_max {
        let (graphs, mode) = graphs_of_order(n, config);
        let forms: Vec<(u64, Vec<usize>)> = graphs.par_iter().map(|g| g.canonical_form()).collect();
        let mut members: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, (mask, _)) in forms.iter().enumerate() {
            members.entry(*mask).or_default().push(i);
        }
        let distinct = graphs.iter().map(|g| g.mask()).collect::<std::collections::BTreeSet<_>>().len();
        orders.push(OrderSummary {
            n,
            mode,
            labeled_graphs: graphs.len(),
            distinct_labeled_graphs: distinct,
            isomorphism_classes: members.len(),
        });
        let runs: Vec<(u64, Result<ClassRun>)> = members
            .keys()
            .copied()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|mask| (mask, run_class(&Graph::from_mask(n, mask), k, config)))
            .collect();
        for (mask, run) in runs {
            let rep = Graph::from_mask(n, mask);
            let idx = &members[&mask];
            let mut run = match run {
                Ok(r) => r,
                Err(e) if e.is_capacity() => return Err(e),
                Err(e) => {
                    // The pipeline itself found an inconsistency.
                    let t = tallies.get_mut(&Check::ColouringEquivalence).expect("tally");
                    t.1 += idx.len();
                    counterexamples.push(Counterexample {
                        check: Check::ColouringEquivalence,
                        graph: rep.clone(),
                        dimacs: rep.to_dimacs(),
                        detail: e.to_string(),
                    });
                    continue;
                }
            };
            let checks: Vec<std::result::Result<(), String>> = idx
                .par_iter()
                .map(|&i| {
                    let g = &graphs[i];
                    let perm = &forms[i].1;
                    let mut inv = vec![0; n];
                    for (v, &p) in perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let map = generator_map(&rep, g, &inv);
                    recheck_transported(&run.rep_model, &run.verdict, g, k, &map)
                })
                .collect::<Result<_>>()?;
            for (check, outcome, detail) in &run.outcomes {
                let t = tallies.get_mut(check).expect("tally");
                match outcome {
                    Outcome::Pass => t.0 += idx.len(),
                    Outcome::Fail => {
                        t.1 += idx.len();
                        counterexamples.push(Counterexample {
                            check: *check,
                            graph: rep.clone(),
                            dimacs: rep.to_dimacs(),
                            detail: detail.clone(),
                        });
                    }
                    Outcome::NotApplicable => t.2 += idx.len(),
                }
            }
            let t = tallies.get_mut(&Check::Certificates).expect("tally");
            for (&i, c) in idx.iter().zip(&checks) {
                match c {
                    Ok(()) => t.0 += 1,
                    Err(detail) => {
                        t.1 += 1;
                        counterexamples.push(Counterexample {
                            check: Check::Certificates,
                            graph: graphs[i].clone(),
                            dimacs: graphs[i].to_dimacs(),
                            detail: detail.clone(),
                        });
                    }
                }
            }
            run.result.members_checked = idx.len();
            classes.push(run.result);
        }
    }
    let checks: Vec<Tally> = tallies
        .into_iter()
        .map(|(check, (passed, failed, not_applicable))| Tally {
            check,
            label: check.label(),
            passed,
            failed,
            not_applicable,
        })
        .collect();
    let all_passed = checks.iter().all(|t| t.failed == 0) && counterexamples.is_empty();
    Ok(VerifyReport {
        config: config.clone(),
        orders,
        checks,
        classes,
        counterexamples,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_three_exhaustive() {
        let config = VerifyConfig {
            n_min: 3,
            n_max: 3,
            ..VerifyConfig::default()
        };
        let r = run(&config).unwrap();
        assert!(r.all_passed, "{}", r.to_text());
        assert_eq!(r.orders[0].labeled_graphs, 8);
        assert_eq!(r.orders[0].isomorphism_classes, 4);
    }

    #[test]
    fn transport_preserves_witnesses() {
        let rep = Graph::complete(4);
        let model = build_v(&rep, 3).unwrap();
        let verdict = is_elliptic(&rep, 3, Method::Both, &Caps::default()).unwrap();
        let inv = vec![2, 0, 3, 1];
        let map = generator_map(&rep, &rep, &inv);
        assert!(recheck_transported(&model, &verdict, &rep, 3, &map).unwrap().is_ok());
    }

    #[test]
    fn vertex_transitive_order_five() {
        let perms = all_permutations(5);
        let vt: Vec<u64> = (0..1u64 << 10)
            .map(|m| Graph::from_mask(5, m))
            .filter(|g| is_vertex_transitive(g, &perms))
            .map(|g| g.canonical_form().0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(vt.len(), 3);
    }

    #[test]
    fn order_cap_enforced() {
        let config = VerifyConfig {
            n_min: 6,
            n_max: 6,
            ..VerifyConfig::default()
        };
        assert!(run(&config).unwrap_err().is_capacity());
    }
}
