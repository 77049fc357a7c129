//! Replays the checked-in fuzz seeds through the fuzz targets' checks.

use std::path::PathBuf;

use ehk_core::document::ModelDocument;
use ehk_core::graph::parse_dimacs;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn dimacs_seeds() {
    let mut accepted = 0;
    for (name, bytes) in seeds("dimacs") {
        match parse_dimacs(&bytes) {
            Ok(g) => {
                accepted += 1;
                assert_eq!(parse_dimacs(g.to_dimacs().as_bytes()).unwrap(), g, "{name}");
            }
            Err(_) => assert!(name.contains("out_of_range"), "{name} rejected"),
        }
    }
    assert!(accepted >= 4);
}

#[test]
fn model_document_seeds() {
    for (name, bytes) in seeds("model_document") {
        let doc = ModelDocument::parse(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        let model = doc.to_model().unwrap_or_else(|e| panic!("{name}: {e}"));
        let canon = ModelDocument::from_model(&model, doc.provenance.clone());
        let back = ModelDocument::parse(canon.to_json().as_bytes()).unwrap();
        assert_eq!(back.to_model().unwrap(), model, "{name}");
        assert!(model.validate().unwrap().d_squared_zero, "{name}");
    }
}
