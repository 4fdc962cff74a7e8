use parapac_core::consistency::{
    brute_force_consistency, fvs_consistency, hdeletion_consistency, is_minimal_deletion_set,
};
use parapac_core::{
    ConceptKind, ConsistencyInstance, ForbiddenFamily, Graph, GraphSampleSet, InstanceSamples,
};
use proptest::prelude::*;

fn graph_strategy(order: usize) -> impl Strategy<Value = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=order)
        .flat_map(|u| (u + 1..=order).map(move |v| (u, v)))
        .collect();
    prop::collection::vec(prop::bool::weighted(0.4), pairs.len()).prop_map(move |keep| {
        let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
        Graph::new(order, edges).unwrap()
    })
}

fn instance_strategy() -> impl Strategy<Value = (GraphSampleSet, usize)> {
    (2usize..=6).prop_flat_map(|order| {
        (
            prop::collection::vec((graph_strategy(order), any::<bool>()), 0..=4),
            0..=order.min(3),
        )
            .prop_map(move |(samples, k)| {
                // A graph can carry only one label.
                let mut kept: Vec<(Graph, bool)> = Vec::new();
                for (g, l) in samples {
                    if kept.iter().all(|(h, _)| *h != g) {
                        kept.push((g, l));
                    }
                }
                (GraphSampleSet::new(order, kept).unwrap(), k)
            })
    })
}

fn brute(kind: ConceptKind, samples: &GraphSampleSet, k: usize) -> bool {
    let inst = ConsistencyInstance::new(kind, InstanceSamples::Graph(samples.clone()), k).unwrap();
    brute_force_consistency(&inst).unwrap().is_consistent()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hdeletion_matches_subset_enumeration((samples, k) in instance_strategy()) {
        for family in [ForbiddenFamily::vertex_cover(), ForbiddenFamily::cluster()] {
            let out = hdeletion_consistency(&samples, k, &family).unwrap();
            prop_assert_eq!(out.is_consistent(), brute(ConceptKind::HDeletion(family.clone()), &samples, k));
            if let Some(set) = out.hypothesis() {
                prop_assert!(set.len() <= k);
                prop_assert!(is_minimal_deletion_set(&samples, &family, set));
                let mask = set.mask();
                for s in samples.samples() {
                    prop_assert_eq!(family.is_free(&s.graph, &mask), s.label);
                }
            }
        }
    }

    #[test]
    fn fvs_matches_subset_enumeration((samples, k) in instance_strategy()) {
        let out = fvs_consistency(&samples, k).unwrap();
        prop_assert_eq!(out.is_consistent(), brute(ConceptKind::Fvs, &samples, k));
        if let Some(set) = out.hypothesis() {
            let mask = set.mask();
            for s in samples.samples() {
                prop_assert_eq!(s.graph.is_forest_without(&mask), s.label);
            }
        }
    }
}

#[test]
fn star_needs_its_center() {
    let star = Graph::new(5, [(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
    let samples = GraphSampleSet::new(5, [(star, true)]).unwrap();
    let set = hdeletion_consistency(&samples, 1, &ForbiddenFamily::vertex_cover())
        .unwrap()
        .into_hypothesis()
        .unwrap();
    assert_eq!(set.vertices(), &[1]);
}
