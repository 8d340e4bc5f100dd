use braidlo_core::braid::{
    normalize_type1_d1, normalize_type1_dm1, BaldwinClass, NormalizationOutcome,
};
use braidlo_core::diagram::{
    closure_white_graph, cycle_graph_from_params, goeritz_matrix, to_decorated,
};
use braidlo_core::lo_checker::{certify_cycle_non_lo, NonLOCertificate, Sign, Verdict};
use braidlo_core::pipeline::{run_pipeline, PipelineOptions};
use braidlo_core::presentation::{abelianize, cycle_presentation, greene_presentation};
use braidlo_core::DecoratedCycleGraph;
use num_traits::Zero;
use proptest::prelude::*;

fn canonical() -> PipelineOptions {
    PipelineOptions {
        canonical: true,
        recheck: true,
        ..Default::default()
    }
}

fn cycle_params() -> impl Strategy<Value = DecoratedCycleGraph> {
    (1u64..=5, 1usize..=3).prop_flat_map(|(m, n)| {
        (
            Just(m),
            prop::collection::vec(1u64..=3, n + 1),
            prop::collection::vec(1u64..=3, n),
        )
            .prop_map(|(m, a, b)| DecoratedCycleGraph::new(m, a, b).unwrap())
    })
}

/// Type 1 exponent vectors `a_i <= 3`, not all zero.
fn type1() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..=3, 1..=4)
        .prop_filter("some exponent positive", |a| a.iter().any(|&x| x > 0))
}

#[test]
fn worked_examples_end_to_end() {
    let r = run_pipeline("h s1 s2^-2 s1 s2^-2", &canonical()).unwrap();
    assert_eq!(r.verdict, Verdict::NonLoCertified);
    let c = r.certificate.unwrap();
    assert_eq!(c.hypothesis.case, 1);
    assert_eq!(c.steps[0].sign, Sign::Negative);

    let r = run_pipeline("h^-1 s1 s2^-1 s1 s2^-2", &canonical()).unwrap();
    assert_eq!(r.verdict, Verdict::NonLoCertified);
    assert_eq!(r.certificate.unwrap().hypothesis.case, 2);
}

#[test]
fn exceptional_groups_through_pipeline() {
    for (w, order) in [
        ("h^2 s1^-1 s2^-1", 120),
        ("h^2 s1^-2 s2^-1", 48),
        ("h^2 s1^-3 s2^-1", 24),
    ] {
        let r = run_pipeline(w, &canonical()).unwrap();
        assert_eq!(r.verdict, Verdict::NonLoFiniteGroup);
        assert_eq!(r.group_order, Some(order));
        assert!(r.soundness_failures.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_of_cycle_word_is_the_cycle_graph(d in cycle_params()) {
        let g = closure_white_graph(&d.braid_word()).unwrap();
        prop_assert_eq!(to_decorated(&g).unwrap(), d.clone());
        let a = goeritz_matrix(&g).link_determinant();
        let b = goeritz_matrix(&cycle_graph_from_params(&d)).link_determinant();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cycle_presentation_homology_is_determinant(d in cycle_params()) {
        let det = goeritz_matrix(&cycle_graph_from_params(&d)).link_determinant();
        let ab = abelianize(&cycle_presentation(&d).unwrap());
        match ab.order() {
            Some(o) => prop_assert_eq!(o, det),
            None => prop_assert!(det.is_zero()),
        }
    }

    #[test]
    fn certificates_recheck_from_json(d in cycle_params()) {
        match certify_cycle_non_lo(&d) {
            Ok(c) => {
                prop_assert!(d.satisfies_hypothesis());
                let back = NonLOCertificate::from_json(&c.to_json()).unwrap();
                prop_assert_eq!(&back, &c);
                prop_assert!(back.recheck().is_ok());
            }
            Err(_) => prop_assert!(!d.satisfies_hypothesis()),
        }
    }

    #[test]
    fn positive_normalizations_certify(a in type1()) {
        let w = BaldwinClass::Type1 { d: 1, a }.family_word().unwrap();
        let n = normalize_type1_d1(&w).unwrap();
        prop_assert!(n.verify().is_ok());
        if let NormalizationOutcome::CycleForm { graph } = &n.outcome {
            prop_assert!(graph.m() > 2);
            prop_assert!(certify_cycle_non_lo(graph).is_ok());
        }
    }

    #[test]
    fn negative_normalizations_certify(a in type1()) {
        let w = BaldwinClass::Type1 { d: -1, a }.family_word().unwrap();
        let n = normalize_type1_dm1(&w).unwrap();
        prop_assert!(n.verify().is_ok());
        if let NormalizationOutcome::CycleForm { graph } = &n.outcome {
            prop_assert_eq!(graph.m(), 1);
            let c = certify_cycle_non_lo(graph).unwrap();
            prop_assert_eq!(c.hypothesis.case, 2);
        }
    }

    #[test]
    fn pipeline_is_deterministic_and_sound(a in type1(), d in -1i64..=1) {
        let w = BaldwinClass::Type1 { d, a }.family_word().unwrap().to_string();
        let r1 = run_pipeline(&w, &canonical()).unwrap();
        let r2 = run_pipeline(&w, &canonical()).unwrap();
        prop_assert_eq!(r1.to_json(), r2.to_json());
        prop_assert!(r1.soundness_failures.is_empty(), "{:?}", r1.soundness_failures);
        prop_assert!(r1.verdict.is_non_lo());
    }

    #[test]
    fn greene_and_cycle_presentations_share_homology(d in cycle_params()) {
        let g = cycle_graph_from_params(&d);
        prop_assert_eq!(abelianize(&greene_presentation(&g)), abelianize(&cycle_presentation(&d).unwrap()));
    }
}
