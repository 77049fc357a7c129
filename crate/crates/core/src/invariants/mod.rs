//! Decision procedures and invariants, assembled into reports.

pub mod cohomological;
pub mod ellipticity;
pub mod extended;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::slice::{slice_dimension, SliceFilter};
use crate::model::SullivanModel;
use crate::reduction::{build_v, constants, ReductionConstants};
use cohomological::{cup_length, toomer_invariant, FullCohomology};
use ellipticity::{generic_targets, is_elliptic, nilpotence, EllipticityVerdict, Method, NilpotenceOutcome};
use extended::ExtendedInvariants;

/// An invariant's value, or the best certified statement about it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Value {
    Exact { value: u64 },
    Infinite { reason: String },
    AtLeast { value: u64, reason: String },
    AtMost { value: u64, reason: String },
    NotComputed { reason: String },
}

impl Value {
    pub fn exact(&self) -> Option<u64> {
        match self {
            Value::Exact { value } => Some(*value),
            _ => None,
        }
    }

    pub fn upper(&self) -> Option<u64> {
        match self {
            Value::Exact { value } | Value::AtMost { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn lower(&self) -> Option<u64> {
        match self {
            Value::Exact { value } | Value::AtLeast { value, .. } => Some(*value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub method: Method,
    /// Include Betti representatives and full certificates.
    pub full: bool,
    pub caps: Caps,
    /// Skip the cohomology of `ΛV` when one of its slices up to `fd + 1`
    /// is larger than this; certified bounds are reported instead.
    pub cohomology_max_slice: Option<u128>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            method: Method::Both,
            full: false,
            caps: Caps::default(),
            cohomology_max_slice: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Source {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Graph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<ReductionConstants>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub minimal: bool,
    pub pure: bool,
    pub simply_connected: bool,
    pub d_squared_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub generator: String,
    pub exponent: u32,
    pub first_exact_exponent: u32,
    pub terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionSummary {
    pub generator: String,
    pub exponent: u32,
    pub functional_support: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotenceSummary {
    pub elliptic: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColouringSummary {
    pub elliptic: bool,
    /// Colour exponent per vertex (ζ^c), `null` for the coordinate 0.
    pub point: Vec<Option<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colouring: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EllipticitySummary {
    pub elliptic: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotence: Option<NilpotenceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colouring: Option<ColouringSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeClasses {
    pub degree: u32,
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub source: Source,
    pub validation: Validation,
    pub ellipticity: EllipticitySummary,
    pub formal_dimension: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare_duality: Option<bool>,
    pub cup_length: Value,
    /// e₀ (fundamental-class form)
    pub toomer: Value,
    pub cat0: Value,
    /// cup_length ≤ e₀ = cat₀ ≤ fd/2, when all are exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended: Option<ExtendedInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<DegreeClasses>>,
}

impl InvariantReport {
    pub fn p3(&self) -> Option<bool> {
        self.extended.as_ref().map(|e| e.p3)
    }

    pub fn q3(&self) -> Option<bool> {
        self.extended.as_ref().map(|e| e.q3)
    }
}

/// Serialisable view of a verdict; `full` includes the witness polynomials.
pub fn summarize(model: &SullivanModel, v: &EllipticityVerdict, full: bool) -> EllipticitySummary {
    let gens = model.generators();
    let name = |id: usize| gens.generator(id).name.clone();
    let nilpotence = v.nilpotence.as_ref().map(|n| match n {
        NilpotenceOutcome::Nilpotent(ws) => NilpotenceSummary {
            elliptic: true,
            witnesses: ws
                .iter()
                .map(|w| WitnessSummary {
                    generator: name(w.generator),
                    exponent: w.exponent,
                    first_exact_exponent: w.first_exact_exponent,
                    terms: w.witness.len(),
                    witness: full.then(|| gens.format_poly(&w.witness)),
                })
                .collect(),
            obstruction: None,
        },
        NilpotenceOutcome::NotNilpotent(o) => NilpotenceSummary {
            elliptic: false,
            witnesses: Vec::new(),
            obstruction: Some(ObstructionSummary {
                generator: name(o.generator),
                exponent: o.exponent,
                functional_support: o.functional.len(),
            }),
        },
    });
    let colouring = v.colouring.as_ref().map(|c| ColouringSummary {
        elliptic: c.elliptic(),
        point: c.point.clone(),
        colouring: c.colouring.clone(),
    });
    EllipticitySummary {
        elliptic: v.elliptic,
        method: v.method,
        nilpotence,
        colouring,
    }
}

struct VInvariants {
    betti: Option<Vec<usize>>,
    poincare: Option<bool>,
    cup: Value,
    toomer: Value,
    cat0: Value,
    sandwich: Option<bool>,
    representatives: Option<Vec<DegreeClasses>>,
}

fn elliptic_invariants(model: &SullivanModel, opts: &ReportOptions) -> Result<VInvariants> {
    let fd = model.formal_dimension();
    let half = (fd.max(0) / 2) as u64;
    let bounded = |reason: String| -> VInvariants {
        let at_most = |what: &str| Value::AtMost {
            value: half,
            reason: format!("{what} ≤ ⌊fd/2⌋ (cohomology not computed: {reason})"),
        };
        VInvariants {
            betti: None,
            poincare: None,
            cup: at_most("cup-length"),
            toomer: at_most("e0"),
            cat0: at_most("cat0"),
            sandwich: None,
            representatives: None,
        }
    };
    if let Some(max) = opts.cohomology_max_slice {
        let gens = model.generators();
        if let Some(m) = (0..=fd.max(0) as u32 + 1).find(|&m| slice_dimension(gens, m, SliceFilter::All) > max) {
            return Ok(bounded(format!("slice of degree {m} exceeds {max} monomials")));
        }
    }
    let h = match FullCohomology::compute(model, &opts.caps) {
        Ok(h) => h,
        Err(e) if e.is_capacity() => return Ok(bounded(e.to_string())),
        Err(e) => return Err(e),
    };
    let cup = cup_length(&h, model)? as u64;
    let (e0, _) = toomer_invariant(&h, model, &opts.caps)?;
    let e0 = e0 as u64;
    let representatives = opts.full.then(|| {
        h.slices[..=h.formal_dimension as usize]
            .iter()
            .filter(|s| s.betti > 0)
            .map(|s| DegreeClasses {
                degree: s.degree,
                classes: s
                    .representative_polys()
                    .iter()
                    .map(|p| model.generators().format_poly(p))
                    .collect(),
            })
            .collect()
    });
    Ok(VInvariants {
        betti: Some(h.betti()),
        poincare: Some(h.poincare_duality_holds() && h.euler_consistent()),
        cup: Value::Exact { value: cup },
        toomer: Value::Exact { value: e0 },
        cat0: Value::Exact { value: e0 },
        sandwich: Some(cup <= e0 && e0 <= half),
        representatives,
    })
}

fn non_elliptic_v(reason: String) -> VInvariants {
    VInvariants {
        betti: None,
        poincare: None,
        cup: Value::Infinite { reason: reason.clone() },
        toomer: Value::NotComputed {
            reason: "not elliptic: no fundamental class".into(),
        },
        cat0: Value::Infinite {
            reason: format!("cat0 ≥ cup-length = ∞; {reason}"),
        },
        sandwich: None,
        representatives: None,
    }
}

fn validation(model: &SullivanModel) -> Result<Validation> {
    let r = model.validate()?;
    Ok(Validation {
        minimal: r.minimal,
        pure: r.pure,
        simply_connected: r.simply_connected,
        d_squared_zero: r.d_squared_zero,
    })
}

/// The full report for `ΛV_{G,k}` and `ΛW_{G,k}`.
pub fn graph_report(g: &Graph, k: i64, opts: &ReportOptions) -> Result<InvariantReport> {
    let verdict = is_elliptic(g, k, opts.method, &opts.caps)?;
    graph_report_with(g, k, verdict, opts)
}

/// [`graph_report`] from an already computed verdict.
pub fn graph_report_with(g: &Graph, k: i64, mut verdict: EllipticityVerdict, opts: &ReportOptions) -> Result<InvariantReport> {
    let c = constants(g, k)?;
    let model = build_v(g, k)?;
    let validation = validation(&model)?;
    // The ΛW invariants need the nilpotence witnesses when elliptic.
    if verdict.elliptic && verdict.nilpotence.is_none() {
        verdict.nilpotence = Some(ellipticity::is_elliptic_algebraic(g, k, &opts.caps)?);
    }
    let summary = summarize(&model, &verdict, opts.full);
    let (v, extended) = if verdict.elliptic {
        let v = elliptic_invariants(&model, opts)?;
        let Some(NilpotenceOutcome::Nilpotent(ws)) = &verdict.nilpotence else {
            return Err(Error::Inconsistent("elliptic verdict without witnesses".into()));
        };
        let ext = extended::elliptic_branch(g, k, ws, &v.cup, &v.cat0, &opts.caps)?;
        (v, ext)
    } else {
        let vertex = match (&verdict.nilpotence, &verdict.colouring) {
            (Some(NilpotenceOutcome::NotNilpotent(o)), _) => o.generator + 1,
            (_, Some(c)) => c.point.iter().position(|p| p.is_some()).expect("non-elliptic point is nonzero") + 1,
            _ => return Err(Error::Inconsistent("non-elliptic verdict without certificate".into())),
        };
        let reason = format!("[x{vertex}] is not nilpotent");
        let ext = extended::non_elliptic_branch(g, k, vertex, verdict.colouring.as_ref(), &opts.caps)?;
        (non_elliptic_v(reason), ext)
    };
    Ok(InvariantReport {
        source: Source {
            kind: "graph",
            graph: Some(g.clone()),
            k: Some(k),
            constants: Some(c),
        },
        validation,
        ellipticity: summary,
        formal_dimension: model.formal_dimension(),
        betti: v.betti,
        poincare_duality: v.poincare,
        cup_length: v.cup,
        toomer: v.toomer,
        cat0: v.cat0,
        sandwich: v.sandwich,
        extended: Some(extended),
        representatives: v.representatives,
    })
}

/// Ellipticity of a hand-written pure model by nilpotence.
pub fn model_ellipticity(model: &SullivanModel, caps: &Caps) -> Result<EllipticityVerdict> {
    let r = model.validate()?;
    if !r.pure {
        return Err(Error::Unsupported("model is not pure".into()));
    }
    let out = nilpotence(model, &generic_targets(model), caps)?;
    Ok(EllipticityVerdict {
        elliptic: out.elliptic(),
        method: Method::Nilpotence,
        nilpotence: Some(out),
        colouring: None,
    })
}

pub fn model_report(model: &SullivanModel, opts: &ReportOptions) -> Result<InvariantReport> {
    let validation = validation(model)?;
    let verdict = model_ellipticity(model, &opts.caps)?;
    let summary = summarize(model, &verdict, opts.full);
    let v = if verdict.elliptic {
        elliptic_invariants(model, opts)?
    } else {
        let Some(NilpotenceOutcome::NotNilpotent(o)) = &verdict.nilpotence else {
            return Err(Error::Inconsistent("non-elliptic verdict without obstruction".into()));
        };
        non_elliptic_v(format!("[{}] is not nilpotent", model.generators().generator(o.generator).name))
    };
    Ok(InvariantReport {
        source: Source {
            kind: "model",
            graph: None,
            k: None,
            constants: None,
        },
        validation,
        ellipticity: summary,
        formal_dimension: model.formal_dimension(),
        betti: v.betti,
        poincare_duality: v.poincare,
        cup_length: v.cup,
        toomer: v.toomer,
        cat0: v.cat0,
        sandwich: v.sandwich,
        extended: None,
        representatives: v.representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::truncated_polynomial_model;

    #[test]
    fn truncated_model_report() {
        let r = model_report(&truncated_polynomial_model(2, 3), &ReportOptions::default()).unwrap();
        assert!(r.ellipticity.elliptic);
        assert_eq!(r.cup_length.exact(), Some(2));
        assert_eq!(r.toomer.exact(), Some(2));
        assert_eq!(r.cat0.exact(), Some(2));
    }

    #[test]
    fn k3_report_answers_no() {
        let r = graph_report(&Graph::complete(3), 3, &ReportOptions::default()).unwrap();
        assert!(!r.ellipticity.elliptic);
        assert_eq!(r.p3(), Some(false));
        assert_eq!(r.q3(), Some(false));
        let ext = r.extended.unwrap();
        assert_eq!(ext.cup_length_w.lower(), Some(12));
        assert_eq!(ext.non_exact_power.unwrap().certificate, extended::PowerCertificate::Solver);
    }
}
