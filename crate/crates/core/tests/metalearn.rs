use parapac_core::consistency::{brute_force_consistency, BruteForce};
use parapac_core::metalearn::{
    consistency_via_pac_learner, log_hyp_count, pac_learn_scenario, pac_learn_via_consistency,
    required_samples, ConsistencyLearner, LearnerConfig,
};
use parapac_core::oracle::{
    exact_error, typical_uniform_sampler, FiniteDistribution, HiddenScenario, RandomSource,
};
use parapac_core::{
    Assignment, ConceptKind, ConsistencyInstance, DnfFormula, Hypothesis, InstanceSamples,
    LabeledSample, ParamInfo, SampleSet,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn budget_is_monotone(log_hyp in 0.0f64..200.0, eps in 0.01f64..1.0, delta in 0.01f64..1.0, bump in 0.0f64..0.5) {
        let base = required_samples(log_hyp, eps, delta);
        prop_assert!(required_samples(log_hyp, (eps + bump).min(1.0), delta) <= base);
        prop_assert!(required_samples(log_hyp, eps, (delta + bump).min(1.0)) <= base);
        prop_assert!(required_samples(log_hyp + bump, eps, delta) >= base);
    }

    #[test]
    fn small_error_means_consistent(points in prop::collection::btree_map(0u64..16, any::<bool>(), 1..=8), term in 0u64..16) {
        // Uniform on t points: error below 1/(t+1) iff zero disagreements.
        let xs: Vec<Assignment> = points.keys().map(|&i| Assignment::from_index(4, i).unwrap()).collect();
        let samples = SampleSet::new(4, points.iter().map(|(&i, &l)| LabeledSample::new(Assignment::from_index(4, i).unwrap(), l))).unwrap();
        let d = typical_uniform_sampler(&xs).unwrap();
        let h = Hypothesis::Dnf(DnfFormula::new(4, vec![parapac_core::Term::exact(&Assignment::from_index(4, term).unwrap())]).unwrap());
        let wrong = samples.iter().filter(|s| h.eval(&s.assignment).unwrap() != s.label).count();
        let err = wrong as f64 * d.weights()[0];
        prop_assert_eq!(err < 1.0 / (xs.len() + 1) as f64, h.is_consistent_with(&samples));
    }
}

#[test]
fn samples_used_equals_the_budget() {
    let n = 5;
    let concept = Hypothesis::Dnf(
        DnfFormula::new(
            n,
            vec![parapac_core::Term::new([parapac_core::Literal::pos(2)]).unwrap()],
        )
        .unwrap(),
    );
    let support: Vec<(Assignment, f64)> = (0..8)
        .map(|i| (Assignment::from_index(n, i * 3).unwrap(), 0.125))
        .collect();
    let scenario = HiddenScenario::with_computed_params(
        ConceptKind::KDnf,
        concept,
        FiniteDistribution::new(n, support).unwrap(),
    )
    .unwrap();
    let cfg = LearnerConfig::new(n, 0.25, 0.25, ParamInfo::new(1, 0), 11).unwrap();
    let mut rng = RandomSource::new(11);
    let rec = pac_learn_scenario(
        &cfg,
        &scenario,
        &ConsistencyLearner(ConceptKind::KDnf),
        &mut rng,
    )
    .unwrap();
    let t = required_samples(log_hyp_count(&ConceptKind::KDnf, n, 1).unwrap(), 0.25, 0.25);
    assert_eq!(rec.samples_used, t);
    assert_eq!(
        rec.exact_err,
        exact_error(&rec.hypothesis, &scenario).unwrap()
    );
}

#[test]
fn learner_reports_unrealizable_draws() {
    // Parity on two bits has no 1-CNF.
    let pts = ["00", "01", "10", "11"];
    let mut i = 0;
    let mut draw = || {
        let x = Assignment::parse_bits(pts[i % 4]).unwrap();
        i += 1;
        let label = x.get(1) != x.get(2);
        LabeledSample::new(x, label)
    };
    let cfg = LearnerConfig::new(2, 0.5, 0.5, ParamInfo::new(1, 0), 0).unwrap();
    let err = pac_learn_via_consistency(&cfg, &ConceptKind::KCnf, &mut draw).unwrap_err();
    assert_eq!(err, parapac_core::Error::NotRealizable);
}

#[test]
fn round_trip_through_the_brute_force_learner() {
    let s = SampleSet::from_strs(&[("110", true), ("011", true), ("000", false)]).unwrap();
    let inst = ConsistencyInstance::new(ConceptKind::KCnf, InstanceSamples::Boolean(s.clone()), 1)
        .unwrap();
    assert!(brute_force_consistency(&inst).unwrap().is_consistent());
    let mut rng = RandomSource::new(5);
    let learner = ConsistencyLearner(BruteForce(ConceptKind::KCnf));
    let out = consistency_via_pac_learner(&s, &learner, 0.1, 1, &mut rng).unwrap();
    assert!(out.hypothesis().unwrap().is_consistent_with(&s));
}

#[test]
fn graph_kinds_learn_through_adjacency_bits() {
    let order = 4;
    let graphs = [
        parapac_core::Graph::cycle(4),
        parapac_core::Graph::path(4),
        parapac_core::Graph::empty(4),
        parapac_core::Graph::complete(4),
    ];
    let support: Vec<(Assignment, f64)> = graphs
        .iter()
        .map(|g| (g.to_adjacency_bits().unwrap(), 0.25))
        .collect();
    let concept = Hypothesis::DeletionSet {
        set: parapac_core::VertexSet::new(order, [1]).unwrap(),
        property: parapac_core::GraphProperty::Forest,
    };
    let scenario = HiddenScenario::with_computed_params(
        ConceptKind::Fvs,
        concept,
        FiniteDistribution::new(16, support).unwrap(),
    )
    .unwrap();
    let cfg = LearnerConfig::new(16, 0.2, 0.2, scenario.params(), 3).unwrap();
    let rec = pac_learn_scenario(
        &cfg,
        &scenario,
        &ConsistencyLearner(ConceptKind::Fvs),
        &mut RandomSource::new(3),
    )
    .unwrap();
    assert_eq!(rec.exact_err, 0.0);
}
