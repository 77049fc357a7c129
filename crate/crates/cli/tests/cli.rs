use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const K3: &str = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n";

const TRUNCATED: &str = r#"{
  "schema_version": 1,
  "generators": [
    { "name": "x", "degree": 2, "parity": "even" },
    { "name": "y", "degree": 5, "parity": "odd" }
  ],
  "differential": [
    { "generator": "y", "terms": [ { "coefficient": "1", "exponents": { "x": 3 } } ] }
  ]
}"#;

struct Dir(tempfile::TempDir);

impl Dir {
    fn new() -> Dir {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn ehk(args: &[&str]) -> Output {
    ehk_env(args, &[])
}

fn ehk_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ehk"));
    c.args(args);
    for var in ["EHK_MAX_SLICE_DIM", "EHK_MAX_DEGREE", "EHK_MAX_DENSE_CELLS", "EHK_W_SOLVER_MAX_DIM", "EHK_VERIFY_NMAX_CAP"] {
        c.env_remove(var);
    }
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn reduce_k4_v() {
    let d = Dir::new();
    let g = d.file("k4.col", K4);
    let out = d.0.path().join("k4.json");
    let o = ehk(&["reduce", "--graph", p(&g), "--k", "3", "--target", "V", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["generators"].as_array().unwrap().len(), 10);
    let c = &doc["provenance"]["constants"];
    assert_eq!(
        [&c["d_g_k"], &c["d_n_k_prime"], &c["z_degree"], &c["z_target_exponent"]],
        [7, 16, 83, 42]
    );
    assert_eq!(doc["provenance"]["construction"], "V");
    // The emitted document is accepted back as a model.
    let o = ehk(&["decide", "--model", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reduce_k3_w_to_stdout() {
    let d = Dir::new();
    let g = d.file("k3.col", K3);
    let o = ehk(&["reduce", "--graph", p(&g), "--target", "w"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 9);
    assert!(gens[6..].iter().all(|g| g["degree"] == 47));
}

#[test]
fn reduce_rejects_k2() {
    let d = Dir::new();
    let g = d.file("k3.col", K3);
    let o = ehk(&["reduce", "--graph", p(&g), "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("k must be ≥ 3"));
}

#[test]
fn decide_exit_codes() {
    let d = Dir::new();
    let k4 = d.file("k4.col", K4);
    let k3 = d.file("k3.col", K3);
    let o = ehk(&["decide", "--graph", p(&k4), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: elliptic"));
    let o = ehk(&["decide", "--graph", p(&k3), "--k", "3"]);
    assert_eq!(o.status.code(), Some(10));
    let text = stdout(&o);
    assert!(text.contains("verdict: not elliptic"));
    assert!(text.contains("proper colouring"));
}

#[test]
fn decide_both_prints_both_verdicts() {
    let d = Dir::new();
    let k3 = d.file("k3.col", K3);
    let o = ehk(&["decide", "--graph", p(&k3), "--method", "both", "--json"]);
    assert_eq!(o.status.code(), Some(10));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nilpotence"]["elliptic"], false);
    assert_eq!(v["colouring"]["elliptic"], false);
    let o = ehk(&["decide", "--graph", p(&k3), "--method", "coloring"]);
    assert_eq!(o.status.code(), Some(10));
    assert!(!stdout(&o).contains("nilpotence:"));
}

#[test]
fn invariants_answers() {
    let d = Dir::new();
    let k4 = d.file("k4.col", K4);
    let k3 = d.file("k3.col", K3);
    let o = ehk(&["invariants", "--graph", p(&k4), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("P3 (cup-length of ΛW ≤ d'+n = 20): yes"), "{text}");
    assert!(text.contains("Q3 (cat0 of ΛW ≤ d'+n = 20): yes"));
    let o = ehk(&["invariants", "--graph", p(&k3), "--k", "3"]);
    let text = stdout(&o);
    assert!(text.contains("P3 (cup-length of ΛW ≤ d'+n = 11): no"), "{text}");
    assert!(text.contains("Q3 (cat0 of ΛW ≤ d'+n = 11): no"));
    assert!(text.contains("≥ 12"));
}

#[test]
fn invariants_json_is_deterministic() {
    let d = Dir::new();
    let k4 = d.file("k4.col", K4);
    let a = ehk(&["invariants", "--graph", p(&k4), "--json", "--full"]);
    let b = ehk(&["invariants", "--graph", p(&k4), "--json", "--full"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["formal_dimension"], 14);
    assert_eq!(v["extended"]["p3"], true);
    assert_eq!(v["caps"]["max_slice_dim"], 200000);
    assert!(v.get("timings").is_none());
    assert!(v["representatives"].as_array().unwrap().len() > 1);
}

#[test]
fn invariants_of_a_model() {
    let d = Dir::new();
    let m = d.file("trunc.json", TRUNCATED);
    let o = ehk(&["invariants", "--model", p(&m), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["cup_length", "toomer", "cat0"] {
        assert_eq!(v[key]["kind"], "exact");
        assert_eq!(v[key]["value"], 2);
    }
}

#[test]
fn capacity_exits_20() {
    let d = Dir::new();
    let k3 = d.file("k3.col", K3);
    let o = ehk(&["decide", "--graph", p(&k3), "--max-slice-dim", "10"]);
    assert_eq!(o.status.code(), Some(20));
    assert!(stderr(&o).contains("cap is 10"));
}

#[test]
fn flag_overrides_environment() {
    let d = Dir::new();
    let k3 = d.file("k3.col", K3);
    let o = ehk_env(&["decide", "--graph", p(&k3)], &[("EHK_MAX_SLICE_DIM", "10")]);
    assert_eq!(o.status.code(), Some(20));
    let o = ehk_env(&["decide", "--graph", p(&k3), "--max-slice-dim", "1000"], &[("EHK_MAX_SLICE_DIM", "10")]);
    assert_eq!(o.status.code(), Some(10));
    let o = ehk_env(&["decide", "--graph", p(&k3)], &[("EHK_MAX_DEGREE", "many")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_inputs_exit_1() {
    let d = Dir::new();
    let bad = d.file("bad.col", "p edge 3 1\ne 1 4\n");
    let o = ehk(&["decide", "--graph", p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));
    let doc = d.file("bad.json", &TRUNCATED.replace("\"odd\"", "\"even\""));
    let o = ehk(&["decide", "--model", p(&doc)]);
    assert_eq!(o.status.code(), Some(1));
    let o = ehk(&["decide", "--model", p(&d.file("m.json", TRUNCATED)), "--method", "coloring"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ehk(&["decide"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_order_three() {
    let o = ehk(&["verify", "--nmax", "3", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("8 labeled graphs"));
    assert!(text.contains("all checks passed"));
}

#[test]
fn verify_is_byte_deterministic() {
    let args = ["verify", "--nmin", "2", "--nmax", "4", "--sample", "40", "--seed", "11", "--json"];
    let a = ehk(&args);
    let b = ehk(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["orders"][2]["mode"], "sampled");
}

#[test]
fn verify_order_cap() {
    let o = ehk(&["verify", "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(20));
    let o = ehk_env(&["verify", "--nmax", "6"], &[("EHK_VERIFY_NMAX_CAP", "4")]);
    assert_eq!(o.status.code(), Some(20));
}
