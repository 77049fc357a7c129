//! Human-readable output.

use std::fmt::Write as _;

use ehk_core::invariants::{EllipticitySummary, InvariantReport, Value};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn elliptic_word(b: bool) -> &'static str {
    if b {
        "elliptic"
    } else {
        "not elliptic"
    }
}

pub fn value(v: &Value) -> String {
    match v {
        Value::Exact { value } => value.to_string(),
        Value::Infinite { reason } => format!("∞ ({reason})"),
        Value::AtLeast { value, reason } => format!("≥ {value} ({reason})"),
        Value::AtMost { value, reason } => format!("≤ {value} ({reason})"),
        Value::NotComputed { reason } => format!("not computed ({reason})"),
    }
}

pub fn verdict_text(s: &EllipticitySummary) -> String {
    let mut out = String::new();
    if let Some(n) = &s.nilpotence {
        let _ = write!(out, "nilpotence: {}", elliptic_word(n.elliptic));
        if let Some(o) = &n.obstruction {
            let _ = writeln!(
                out,
                " ({}^{} is not exact; dual functional on {} monomials)",
                o.generator, o.exponent, o.functional_support
            );
        } else {
            let _ = writeln!(out, " ({} witnesses)", n.witnesses.len());
            for w in &n.witnesses {
                let _ = write!(
                    out,
                    "  {}^{} = d(w), first exact power {}, {} terms",
                    w.generator, w.exponent, w.first_exact_exponent, w.terms
                );
                match &w.witness {
                    Some(p) => {
                        let _ = writeln!(out, ": w = {p}");
                    }
                    None => out.push('\n'),
                }
            }
        }
    }
    if let Some(c) = &s.colouring {
        let _ = write!(out, "coloring: {}", elliptic_word(c.elliptic));
        match &c.colouring {
            Some(col) => {
                let list: Vec<String> = col.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, " (proper colouring {})", list.join(" "));
            }
            None if c.elliptic => {
                let _ = writeln!(out, " (no component is colourable; the colouring point is 0)");
            }
            None => {
                let point: Vec<String> = c
                    .point
                    .iter()
                    .map(|p| p.map_or("0".to_string(), |e| format!("ζ^{e}")))
                    .collect();
                let _ = writeln!(out, " (common zero ({}))", point.join(", "));
            }
        }
    }
    let _ = writeln!(out, "verdict: {}", elliptic_word(s.elliptic));
    out
}

pub fn report_text(r: &InvariantReport) -> String {
    let mut out = String::new();
    if let (Some(g), Some(k)) = (&r.source.graph, r.source.k) {
        let _ = writeln!(out, "graph: n={} |E|={} k={k}", g.n(), g.edge_count());
    }
    if let Some(c) = &r.source.constants {
        let _ = writeln!(
            out,
            "constants: d_G={} d'={} deg z={} z exponent={}",
            c.d_g_k, c.d_n_k_prime, c.z_degree, c.z_target_exponent
        );
    }
    let _ = write!(out, "{}", verdict_text(&r.ellipticity));
    let _ = writeln!(out, "formal dimension: {}", r.formal_dimension);
    if let Some(b) = &r.betti {
        let list: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "betti: {}", list.join(" "));
    }
    if let Some(p) = r.poincare_duality {
        let _ = writeln!(out, "poincaré duality: {}", yes_no(p));
    }
    let _ = writeln!(out, "cup-length: {}", value(&r.cup_length));
    let _ = writeln!(out, "e0 (fundamental-class form): {}", value(&r.toomer));
    let _ = writeln!(out, "cat0: {}", value(&r.cat0));
    if let Some(s) = r.sandwich {
        let _ = writeln!(out, "cup-length ≤ e0 = cat0 ≤ fd/2: {}", yes_no(s));
    }
    if let Some(reps) = &r.representatives {
        for d in reps {
            let _ = writeln!(out, "H^{}: {}", d.degree, d.classes.join(", "));
        }
    }
    if let Some(e) = &r.extended {
        let _ = writeln!(out, "ΛW cup-length: {}", value(&e.cup_length_w));
        let _ = writeln!(out, "ΛW cat0: {}", value(&e.cat0_w));
        if let Some(s) = &e.splitting {
            let _ = writeln!(
                out,
                "splitting: z'_i = z_i - x̃_i x_i^{} closed={} non-exact={}",
                s.exponent,
                yes_no(s.closed),
                yes_no(s.non_exact)
            );
        }
        if let Some(p) = &e.non_exact_power {
            let _ = writeln!(
                out,
                "x{}^{} not exact in degree {} ({:?} certificate)",
                p.vertex, p.exponent, p.degree, p.certificate
            );
        }
        let _ = writeln!(out, "P3 (cup-length of ΛW ≤ d'+n = {}): {}", e.bound, yes_no(e.p3));
        let _ = writeln!(out, "Q3 (cat0 of ΛW ≤ d'+n = {}): {}", e.bound, yes_no(e.q3));
    }
    out
}
