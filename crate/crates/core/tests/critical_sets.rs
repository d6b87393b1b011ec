mod common;

use common::{connected_graph, proper_masks, set};
use leader_core::corpus::{random_connected, standard_corpus};
use leader_core::spectral::eigen_residual;
use leader_core::{
    lemma1_filter, proposition3_test, theorem3_test, Classification, CriticalSets, Graph, Options,
    VertexSet,
};
use nalgebra::DVector;
use proptest::prelude::*;

fn check_report_invariants(g: &Graph, cs: &CriticalSets, s: &VertexSet, class: Classification) {
    let report = match class {
        Classification::Mpcvs | Classification::PcvsNotMinimal => cs.is_mpcvs(s).unwrap(),
        _ => cs.is_pcvs(s).unwrap(),
    };
    if !report.classification.is_critical() {
        assert!(report.witness_eigenvector.is_none());
        return;
    }
    let y = DVector::from_vec(report.witness_eigenvector.clone().unwrap());
    let lambda = report.witness_eigenvalue.unwrap();
    assert!(eigen_residual(&g.laplacian(), lambda, &y) <= 1e-8, "{s}");
    for v in 1..=g.order() {
        if !s.contains(v) {
            assert!(y[v - 1].abs() <= 1e-8, "{s}: y_{v} = {}", y[v - 1]);
        } else if report.classification.is_perfect() {
            assert!(y[v - 1].abs() > 1e-8, "{s}: y_{v} = {}", y[v - 1]);
        }
    }
}

#[test]
fn corpus_hierarchy_singletons_and_witnesses() {
    for g in standard_corpus() {
        let n = g.order();
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        for mask in 1..(1u64 << n) {
            let s = VertexSet::from_mask(mask);
            let cvs = cs.is_cvs(&s).unwrap().classification;
            let pcvs = cs.is_pcvs(&s).unwrap().classification;
            assert_eq!(cvs, pcvs);
            if s.len() == 1 && n > 1 {
                assert!(
                    !cvs.is_critical(),
                    "singleton {s} critical in {}",
                    g.to_edge_list()
                );
            }
            if s.len() <= 4 {
                check_report_invariants(&g, &cs, &s, pcvs);
            }
        }
    }
}

#[test]
fn no_singleton_is_critical_up_to_8() {
    for g in random_connected(8, 60, &[8], 0.35) {
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        for v in 1..=8 {
            assert!(!cs.is_cvs(&set(&[v])).unwrap().classification.is_critical());
        }
    }
}

#[test]
fn family_members_are_mpcvs_and_pairwise_incomparable() {
    for g in standard_corpus().into_iter().filter(|g| g.order() >= 4) {
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        let family = cs.enumerate_mpcvs().unwrap();
        assert!(family.complete && !family.sets.is_empty());
        for (i, a) in family.sets.iter().enumerate() {
            assert_eq!(
                cs.is_mpcvs(a).unwrap().classification,
                Classification::Mpcvs
            );
            for b in &family.sets[i + 1..] {
                assert!(!a.is_subset(b) && !b.is_subset(a));
            }
        }
    }
}

#[test]
fn enumeration_agrees_with_is_mpcvs_on_every_subset() {
    for g in standard_corpus().into_iter().filter(|g| g.order() <= 5) {
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        let family = cs.enumerate_mpcvs().unwrap();
        for mask in 1..(1u64 << g.order()) {
            let s = VertexSet::from_mask(mask);
            let minimal = cs.is_mpcvs(&s).unwrap().classification == Classification::Mpcvs;
            assert_eq!(
                minimal,
                family.sets.contains(&s),
                "{s} in {}",
                g.to_edge_list()
            );
        }
    }
}

#[test]
fn twin_test_matches_is_mpcvs_on_pairs() {
    for g in standard_corpus() {
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        for a in 1..=g.order() {
            for b in (a + 1)..=g.order() {
                let s = set(&[a, b]);
                let exact = cs.is_mpcvs(&s).unwrap().classification == Classification::Mpcvs;
                assert_eq!(
                    theorem3_test(&g, &s).unwrap(),
                    exact,
                    "{s} in {}",
                    g.to_edge_list()
                );
            }
        }
    }
}

#[test]
fn no_mpcvs_of_size_three() {
    for g in standard_corpus() {
        let family = CriticalSets::new(&g, Options::default())
            .unwrap()
            .enumerate_mpcvs()
            .unwrap();
        assert!(
            family.sets.iter().all(|s| s.len() != 3),
            "{}",
            g.to_edge_list()
        );
    }
}

#[test]
fn graphical_tests_are_sound() {
    for g in standard_corpus() {
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        for mask in proper_masks(g.order()) {
            let s = VertexSet::from_mask(mask);
            if s.len() < 2 {
                continue;
            }
            if proposition3_test(&g, &s).unwrap() {
                assert!(cs.is_cvs(&s).unwrap().classification.is_critical(), "{s}");
            }
            if !lemma1_filter(&g, &s).unwrap() {
                assert!(!cs.is_pcvs(&s).unwrap().classification.is_perfect(), "{s}");
            }
        }
    }
}

#[test]
fn size_four_mpcvs_exists() {
    let g = Graph::path(6).unwrap();
    let family = CriticalSets::new(&g, Options::default())
        .unwrap()
        .enumerate_mpcvs()
        .unwrap();
    assert!(family.sets.contains(&set(&[1, 3, 4, 6])));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_is_monotone(g in connected_graph(8), raw in 1u64..255) {
        let n = g.order();
        let mask = raw & ((1u64 << n) - 1);
        prop_assume!(mask != 0);
        let s = VertexSet::from_mask(mask);
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        let full = cs.is_mpcvs(&s).unwrap().classification;
        let pcvs = cs.is_pcvs(&s).unwrap().classification;
        let cvs = cs.is_cvs(&s).unwrap().classification;
        prop_assert_eq!(full.is_perfect(), pcvs.is_perfect());
        if full.is_perfect() {
            prop_assert!(cvs.is_critical());
        }
        if full == Classification::Mpcvs {
            prop_assert!(s.len() >= 2);
        }
    }

    #[test]
    fn sequential_and_parallel_enumeration_agree(g in connected_graph(9)) {
        let seq = CriticalSets::new(&g, Options::default().with_execution(leader_core::Execution::Sequential))
            .unwrap()
            .enumerate_mpcvs()
            .unwrap();
        let par = CriticalSets::new(&g, Options::default()).unwrap().enumerate_mpcvs().unwrap();
        prop_assert_eq!(seq, par);
    }
}
