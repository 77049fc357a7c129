use ehk_core::document::ModelDocument;
use ehk_core::graph::{parse_dimacs, Graph};
use ehk_core::linalg::slice::{slice_dimension, SliceFilter};
use ehk_core::reduction::{build_v, build_w, constants};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, m)| {
        let pairs = n * (n - 1) / 2;
        Graph::from_mask(n, if pairs == 64 { m } else { m & ((1u64 << pairs) - 1) })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn constant_inequalities(g in arb_graph(8), k in 3i64..=5) {
        let c = constants(&g, k).unwrap();
        let n = g.n() as i64;
        prop_assert!(c.d_g_k <= c.d_n_k_prime);
        // The power x^(d'+n+1) sits strictly below the z generators.
        prop_assert!(2 * (c.d_n_k_prime + n + 1) <= c.z_degree);
        prop_assert!(2 * (c.d_g_k + 1) <= c.z_degree);
        prop_assert_eq!(c.z_degree, 4 * (c.d_n_k_prime + n) + 3);
    }

    #[test]
    fn construction_shape(g in arb_graph(5), k in 3i64..=5) {
        let v = build_v(&g, k).unwrap();
        let (n, e) = (g.n(), g.edge_count());
        prop_assert_eq!(v.generators().len(), n + e);
        prop_assert_eq!(v.formal_dimension(), (2 * k - 3) * e as i64 - n as i64);
        for j in n..n + e {
            prop_assert_eq!(v.generators().degree(j) as i64, 2 * k - 3);
            prop_assert_eq!(v.differential_of(j).len(), k as usize);
        }
        let r = v.validate().unwrap();
        prop_assert!(r.pure && r.minimal && r.simply_connected && r.d_squared_zero);
    }

    #[test]
    fn w_extends_v(g in arb_graph(4), k in 3i64..=4) {
        let v = build_v(&g, k).unwrap();
        let w = build_w(&g, k).unwrap();
        let c = constants(&g, k).unwrap();
        let (n, base) = (g.n(), v.generators().len());
        prop_assert_eq!(w.generators().len(), base + n);
        for j in 0..base {
            prop_assert_eq!(w.generators().generator(j), v.generators().generator(j));
            prop_assert_eq!(w.differential_of(j), &v.differential_of(j).embed(base + n));
        }
        for j in base..base + n {
            prop_assert_eq!(w.generators().degree(j) as i64, c.z_degree);
        }
        // Below deg z the two algebras have the same slices.
        for m in [0u32, 5, 13, 24] {
            if (m as i64) < c.z_degree {
                prop_assert_eq!(
                    slice_dimension(v.generators(), m, SliceFilter::All),
                    slice_dimension(w.generators(), m, SliceFilter::All)
                );
            }
        }
        prop_assert!(w.validate().unwrap().all_ok());
    }

    #[test]
    fn documents_round_trip(g in arb_graph(5), k in 3i64..=4, extended in any::<bool>()) {
        let m = if extended { build_w(&g, k).unwrap() } else { build_v(&g, k).unwrap() };
        let doc = ModelDocument::from_model(&m, None);
        let text = doc.to_json();
        let back = ModelDocument::parse(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_model().unwrap(), m);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn dimacs_round_trip(g in arb_graph(11)) {
        prop_assert_eq!(parse_dimacs(g.to_dimacs().as_bytes()).unwrap(), g);
    }

    #[test]
    fn dimacs_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_dimacs(&bytes);
    }

    #[test]
    fn documents_never_panic(s in "[{}\\[\\]\":,a-z0-9 /]{0,200}") {
        if let Ok(doc) = ModelDocument::parse(s.as_bytes()) {
            let _ = doc.to_model();
        }
    }
}
