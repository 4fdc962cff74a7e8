use parapac_core::consistency::{
    brute_force_consistency, check, kclause_cnf_consistency, kterm_dnf_consistency,
    kterm_dnf_consistency_with, kterm_dnf_kernelize, Kernel, TermSearch,
};
use parapac_core::formula::Formula;
use parapac_core::params::{is_backdoor, lambda_backdoor};
use parapac_core::{
    Assignment, ConceptKind, ConsistencyInstance, InstanceSamples, LabeledSample, SampleSet,
};
use proptest::prelude::*;

/// Distinct assignments of width `n` with labels.
fn samples_strategy(max_n: usize, max_t: usize) -> impl Strategy<Value = SampleSet> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::btree_map(0..1u64 << n, any::<bool>(), 0..=max_t).prop_map(move |m| {
            SampleSet::new(
                n,
                m.into_iter()
                    .map(|(i, l)| LabeledSample::new(Assignment::from_index(n, i).unwrap(), l)),
            )
            .unwrap()
        })
    })
}

/// Samples with a planted backdoor of size `s`: each row has random bits on
/// the first `s` variables and at most one fresh variable set to 1 elsewhere.
fn planted_strategy() -> impl Strategy<Value = (SampleSet, usize)> {
    (0usize..=3, 0usize..=3, 4usize..=12).prop_flat_map(|(s, k, n)| {
        let rows = prop::collection::vec(
            (0u64..1 << s, any::<bool>(), any::<bool>()),
            0..=(n - s + 4),
        );
        rows.prop_map(move |rows| {
            let mut next = s + 1;
            let mut out = Vec::new();
            for (head, single, label) in rows {
                let mut x = Assignment::zeros(n).unwrap();
                for v in 1..=s {
                    x.set(v, head >> (v - 1) & 1 == 1);
                }
                if single && next <= n {
                    x.set(next, true);
                    next += 1;
                }
                if out.iter().all(|y: &LabeledSample| y.assignment != x) {
                    out.push(LabeledSample::new(x, label));
                }
            }
            (SampleSet::new(n, out).unwrap(), k)
        })
    })
}

fn exhaustive_min_backdoor(s: &SampleSet, pivot: bool) -> usize {
    let n = s.width();
    (0u32..1 << n)
        .filter(|mask| {
            let vars: Vec<usize> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            is_backdoor(n, s.assignments(), pivot, &vars)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

fn instance(kind: ConceptKind, s: &SampleSet, k: usize) -> ConsistencyInstance {
    ConsistencyInstance::new(kind, InstanceSamples::Boolean(s.clone()), k).unwrap()
}

#[test]
fn all_tiny_instances_match_brute_force() {
    // Every labeled set of at most 3 distinct assignments over 1..=3 variables.
    for n in 1..=3usize {
        let points = 1u64 << n;
        let mut subsets = vec![vec![]];
        for size in 1..=3usize {
            let mut stack: Vec<Vec<u64>> = (0..points).map(|p| vec![p]).collect();
            while let Some(c) = stack.pop() {
                if c.len() == size {
                    subsets.push(c);
                    continue;
                }
                for p in c[c.len() - 1] + 1..points {
                    let mut d = c.clone();
                    d.push(p);
                    stack.push(d);
                }
            }
        }
        for subset in subsets {
            for labels in 0..1u32 << subset.len() {
                let s = SampleSet::new(
                    n,
                    subset.iter().enumerate().map(|(i, &p)| {
                        LabeledSample::new(
                            Assignment::from_index(n, p).unwrap(),
                            labels >> i & 1 == 1,
                        )
                    }),
                )
                .unwrap();
                for k in 0..=2 {
                    for kind in [
                        ConceptKind::KTermDnf,
                        ConceptKind::KClauseCnf,
                        ConceptKind::KCnf,
                        ConceptKind::KDnf,
                    ] {
                        let inst = instance(kind.clone(), &s, k.min(n));
                        let fast = check(&inst).unwrap();
                        let slow = brute_force_consistency(&inst).unwrap();
                        assert_eq!(
                            fast.is_consistent(),
                            slow.is_consistent(),
                            "{kind} k={k} {s:?}"
                        );
                        if let Some(h) = fast.hypothesis() {
                            assert!(h.is_consistent_with(&s));
                            assert!(kind.kappa(h).unwrap() <= k.min(n));
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn kterm_and_kclause_match_brute_force(s in samples_strategy(4, 6), k in 0usize..=2) {
        for kind in [ConceptKind::KTermDnf, ConceptKind::KClauseCnf] {
            let inst = instance(kind.clone(), &s, k);
            let fast = check(&inst).unwrap();
            let slow = brute_force_consistency(&inst).unwrap();
            prop_assert_eq!(fast.is_consistent(), slow.is_consistent());
            if let Some(h) = fast.hypothesis() {
                prop_assert!(h.is_consistent_with(&s));
                prop_assert!(kind.kappa(h).unwrap() <= k);
            }
        }
    }

    #[test]
    fn searches_agree(s in samples_strategy(5, 8), k in 0usize..=3) {
        let a = kterm_dnf_consistency_with(&s, k, TermSearch::Partition).unwrap();
        let b = kterm_dnf_consistency_with(&s, k, TermSearch::Enumerate).unwrap();
        prop_assert_eq!(a.is_consistent(), b.is_consistent());
    }

    #[test]
    fn greedy_backdoor_is_minimum(s in samples_strategy(6, 8), pivot in any::<bool>()) {
        let b = lambda_backdoor(&s, pivot);
        prop_assert!(is_backdoor(s.width(), s.assignments(), pivot, &b.vars));
        prop_assert_eq!(b.ell(), exhaustive_min_backdoor(&s, pivot));
    }

    #[test]
    fn backdoor_size_is_monotone(s in samples_strategy(6, 8), drop in any::<prop::sample::Index>()) {
        if s.is_empty() {
            return Ok(());
        }
        let i = drop.index(s.len());
        let smaller = SampleSet::new(
            s.width(),
            s.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()),
        ).unwrap();
        prop_assert!(lambda_backdoor(&smaller, true).ell() <= lambda_backdoor(&s, true).ell());
    }

    #[test]
    fn kernel_respects_bounds_and_is_safe((s, k) in planted_strategy()) {
        let backdoor = lambda_backdoor(&s, true);
        let sz = backdoor.ell();
        prop_assert!(sz <= 3);
        let kernel = kterm_dnf_kernelize(&s, k, &backdoor.vars).unwrap();
        prop_assert!(kernel.reduced.len() <= Kernel::sample_bound(sz, k));
        prop_assert!(kernel.reduced.width() <= Kernel::variable_bound(sz, k));
        let reduced = kterm_dnf_consistency_with(&kernel.reduced, k, TermSearch::Enumerate);
        let full = kterm_dnf_consistency(&s, k).unwrap();
        if let Ok(reduced) = reduced {
            prop_assert_eq!(reduced.is_consistent(), full.is_consistent());
            if let Some(h) = reduced.hypothesis() {
                let lifted = kernel.lift(h).unwrap();
                prop_assert!(lifted.len() <= k);
                prop_assert!(lifted.is_consistent_with(&s));
            }
        }
    }

    #[test]
    fn kclause_hypotheses_verify(s in samples_strategy(8, 12), k in 0usize..=3) {
        if let Some(h) = kclause_cnf_consistency(&s, k).unwrap().hypothesis() {
            prop_assert!(h.len() <= k);
            prop_assert!(h.is_consistent_with(&s));
        }
    }
}
