#![no_main]

use ehk_core::document::ModelDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = ModelDocument::parse(data) else { return };
    let Ok(model) = doc.to_model() else { return };
    // Canonical re-emission is stable and yields the same model.
    let canon = ModelDocument::from_model(&model, doc.provenance.clone());
    let text = canon.to_json();
    let back = ModelDocument::parse(text.as_bytes()).expect("re-parse");
    assert_eq!(back.to_model().expect("re-build"), model);
    assert_eq!(back.to_json(), text);
});
