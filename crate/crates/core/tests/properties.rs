mod common;

use proptest::prelude::*;

use prismatic_core::budget::Budget;
use prismatic_core::graph::random_gnp;
use prismatic_core::graph6::{parse_graph6, to_graph6};
use prismatic_core::pipeline::{certify, verify_certificate, CertificateKind};
use prismatic_core::products::{cyclic_product_certificate, verify_product_cycle, CyclicProduct};
use prismatic_core::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.1f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_gnp(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in graph(40)) {
        let text = to_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn certificates_verify(g in graph(11)) {
        let run = certify(&g, &Budget::unlimited()).unwrap();
        prop_assert!(verify_certificate(&g, &run.certificate));
        prop_assert!(run.gap.is_none());
        if let Some(c) = run.certificate.prism_cycle() {
            prop_assert!(common::prism_cycle_ok(&g, &c.sequence));
        } else {
            prop_assert_eq!(run.certificate.kind, CertificateKind::RefutedHypothesis);
        }
    }

    #[test]
    fn product_cycles_verify(g in graph(9), t in 3usize..6) {
        match cyclic_product_certificate(&g, t, &Budget::unlimited()).unwrap() {
            CyclicProduct::Certified(c) => prop_assert!(verify_product_cycle(&g, &c)),
            CyclicProduct::NotApplicable { alpha, kappa } => prop_assert!(alpha > (t - 1) * kappa),
            CyclicProduct::Exhausted => prop_assert!(false, "unlimited budget exhausted"),
        }
    }
}
