#![no_main]

use ehk_core::graph::parse_dimacs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_dimacs(data) {
        // Accepted graphs must survive a write/read cycle unchanged.
        let again = parse_dimacs(g.to_dimacs().as_bytes()).expect("re-parse");
        assert_eq!(again, g);
    }
});
