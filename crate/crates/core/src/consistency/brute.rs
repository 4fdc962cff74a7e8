//! Exhaustive search over the whole hypothesis space, for tiny instances.
//! Used as the ground truth the real checkers are compared against.

use alloc::vec;
use alloc::vec::Vec;

use super::kcnf::all_short_clauses;
use super::kterm::term_from_index;
use super::{
    binomial, enforce_size_bound, Combinations, ConsistencyInstance, ConsistencyOutcome,
    InstanceSamples,
};
use crate::assignment::SampleSet;
use crate::error::{Error, Result};
use crate::formula::{Clause, CnfFormula, DnfFormula, Term};
use crate::graph::{GraphSampleSet, VertexSet};
use crate::hypothesis::{ConceptKind, GraphProperty, Hypothesis};

pub const BRUTE_FORCE_GUARD: u128 = 10_000_000;

fn guard(count: u128) -> Result<()> {
    if count > BRUTE_FORCE_GUARD {
        Err(Error::GuardExceeded(count))
    } else {
        Ok(())
    }
}

/// Returns the first consistent hypothesis in a fixed enumeration order, or
/// `Inconsistent` after exhausting the space.
///
/// Orders: subsets of the short-clause list by increasing bitmask for
/// kcnf/kdnf; sets of `j = 0..=k` distinct base-3-indexed parts in
/// lexicographic order for kterm_dnf/kclause_cnf; vertex subsets by size
/// then lexicographically for graph kinds.
pub fn brute_force_consistency(inst: &ConsistencyInstance) -> Result<ConsistencyOutcome> {
    let outcome = match (&inst.kind, &inst.samples) {
        (ConceptKind::KCnf, InstanceSamples::Boolean(s)) => short_parts(s, inst.k, false)?,
        (ConceptKind::KDnf, InstanceSamples::Boolean(s)) => short_parts(s, inst.k, true)?,
        (ConceptKind::KTermDnf, InstanceSamples::Boolean(s)) => bounded_parts(s, inst.k, true)?,
        (ConceptKind::KClauseCnf, InstanceSamples::Boolean(s)) => bounded_parts(s, inst.k, false)?,
        (kind, InstanceSamples::Graph(g)) if kind.is_graph() => {
            let property = kind.graph_property().ok_or(Error::Internal("graph kind"))?;
            subsets(g, inst.k, property)?
        }
        _ => return Err(Error::KindMismatch(inst.kind.name())),
    };
    enforce_size_bound(inst, outcome)
}

/// `sat[j]` = bitset of samples on which part `j` evaluates true.
fn sat_sets<P>(
    samples: &SampleSet,
    parts: &[P],
    eval: impl Fn(&P, &crate::Assignment) -> bool,
) -> Vec<Vec<u64>> {
    let words = samples.len().div_ceil(64).max(1);
    parts
        .iter()
        .map(|p| {
            let mut bits = vec![0u64; words];
            for (i, s) in samples.iter().enumerate() {
                if eval(p, &s.assignment) {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect()
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

/// Any subset of the parts of length `1..=k`. For a DNF, sample `i` is
/// labeled true iff some chosen term is true on it; for a CNF iff every
/// chosen clause is.
fn short_parts(samples: &SampleSet, k: usize, dnf: bool) -> Result<ConsistencyOutcome> {
    let n = samples.width();
    let clauses = all_short_clauses(n, k);
    let m = clauses.len();
    if m >= 127 {
        return Err(Error::GuardExceeded(u128::MAX));
    }
    guard(1u128 << m)?;
    let terms: Vec<Term> = clauses
        .iter()
        .map(|c| Term::new(c.literals().iter().copied()).expect("valid literal set"))
        .collect();
    let sat = if dnf {
        sat_sets(samples, &terms, |t, x| t.satisfied_by(x))
    } else {
        sat_sets(samples, &clauses, |c, x| c.satisfied_by(x))
    };
    for mask in 0u128..(1u128 << m) {
        let chosen = (0..m).filter(|&j| mask >> j & 1 == 1);
        let ok = samples.iter().enumerate().all(|(i, s)| {
            let value = if dnf {
                chosen.clone().any(|j| bit(&sat[j], i))
            } else {
                chosen.clone().all(|j| bit(&sat[j], i))
            };
            value == s.label
        });
        if ok {
            let picked: Vec<usize> = chosen.collect();
            return Ok(ConsistencyOutcome::Consistent(if dnf {
                Hypothesis::Dnf(DnfFormula::new(
                    n,
                    picked.iter().map(|&j| terms[j].clone()).collect(),
                )?)
            } else {
                Hypothesis::Cnf(CnfFormula::new(
                    n,
                    picked.iter().map(|&j| clauses[j].clone()).collect(),
                )?)
            }));
        }
    }
    Ok(ConsistencyOutcome::Inconsistent)
}

/// Sets of at most `k` distinct parts out of all `3^n`.
fn bounded_parts(samples: &SampleSet, k: usize, dnf: bool) -> Result<ConsistencyOutcome> {
    let n = samples.width();
    let total = 3u128
        .checked_pow(n as u32)
        .ok_or(Error::GuardExceeded(u128::MAX))?;
    let space = (0..=k as u128).fold(0u128, |acc, j| acc.saturating_add(binomial(total, j)));
    guard(space)?;
    let total = total as usize;
    let terms: Vec<Term> = (0..total).map(|i| term_from_index(n, i)).collect();
    let clauses: Vec<Clause> = terms
        .iter()
        .map(|t| Clause::new(t.literals().iter().copied()).expect("valid literal set"))
        .collect();
    let sat = if dnf {
        sat_sets(samples, &terms, |t, x| t.satisfied_by(x))
    } else {
        sat_sets(samples, &clauses, |c, x| c.satisfied_by(x))
    };
    let words = samples.len().div_ceil(64).max(1);
    // A DNF must make every negative false under each term and cover every
    // positive; a CNF must keep every positive true under each clause and
    // falsify every negative somewhere.
    let mut target = vec![0u64; words];
    let mut forbidden = vec![0u64; words];
    for (i, s) in samples.iter().enumerate() {
        let needs_cover = s.label == dnf;
        if needs_cover {
            target[i / 64] |= 1 << (i % 64);
        } else {
            forbidden[i / 64] |= 1 << (i % 64);
        }
    }
    // For a CNF "covering" a negative means being false on it.
    let effect: Vec<Vec<u64>> = sat
        .iter()
        .map(|bits| {
            if dnf {
                bits.clone()
            } else {
                bits.iter().map(|b| !b).collect()
            }
        })
        .collect();
    // Parts touching a forbidden sample can never be chosen; enumerating
    // combinations of the rest visits the surviving sets in the same order.
    let usable: Vec<usize> = (0..total)
        .filter(|&j| effect[j].iter().zip(&forbidden).all(|(e, f)| e & f == 0))
        .collect();

    for size in 0..=k.min(usable.len()) {
        for combo in Combinations::new(usable.len(), size) {
            let combo: Vec<usize> = combo.iter().map(|&i| usable[i]).collect();
            let mut covered = vec![0u64; words];
            for &j in &combo {
                for (c, e) in covered.iter_mut().zip(&effect[j]) {
                    *c |= e;
                }
            }
            if covered.iter().zip(&target).all(|(c, t)| c & t == *t) {
                return Ok(ConsistencyOutcome::Consistent(if dnf {
                    Hypothesis::Dnf(DnfFormula::new(
                        n,
                        combo.iter().map(|&j| terms[j].clone()).collect(),
                    )?)
                } else {
                    Hypothesis::Cnf(CnfFormula::new(
                        n,
                        combo.iter().map(|&j| clauses[j].clone()).collect(),
                    )?)
                }));
            }
        }
    }
    Ok(ConsistencyOutcome::Inconsistent)
}

fn subsets(
    samples: &GraphSampleSet,
    k: usize,
    property: GraphProperty,
) -> Result<ConsistencyOutcome> {
    let order = samples.order();
    let k = k.min(order);
    let space = (0..=k as u128).fold(0u128, |acc, j| {
        acc.saturating_add(binomial(order as u128, j))
    });
    guard(space)?;
    for size in 0..=k {
        for combo in Combinations::new(order, size) {
            let set = VertexSet::new(order, combo.iter().map(|v| v + 1))?;
            let mask = set.mask();
            if samples
                .samples()
                .iter()
                .all(|s| property.holds(&s.graph, &mask) == s.label)
            {
                return Ok(ConsistencyOutcome::Consistent(Hypothesis::DeletionSet {
                    set,
                    property,
                }));
            }
        }
    }
    Ok(ConsistencyOutcome::Inconsistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn inst(kind: ConceptKind, pairs: &[(&str, bool)], k: usize) -> ConsistencyInstance {
        ConsistencyInstance::new(
            kind,
            InstanceSamples::Boolean(SampleSet::from_strs(pairs).unwrap()),
            k,
        )
        .unwrap()
    }

    #[test]
    fn no_samples_gives_first_hypothesis() {
        let i = ConsistencyInstance::new(
            ConceptKind::KTermDnf,
            InstanceSamples::Boolean(SampleSet::empty(2).unwrap()),
            1,
        )
        .unwrap();
        let h = brute_force_consistency(&i)
            .unwrap()
            .into_hypothesis()
            .unwrap();
        assert_eq!(h.to_string(), "FALSE");
    }

    #[test]
    fn one_term_on_one_variable() {
        let i = inst(ConceptKind::KTermDnf, &[("1", true), ("0", false)], 1);
        let h = brute_force_consistency(&i)
            .unwrap()
            .into_hypothesis()
            .unwrap();
        assert_eq!(h.to_string(), "(x1)");
    }

    #[test]
    fn guard_trips_on_large_spaces() {
        let i = inst(ConceptKind::KCnf, &[("11110000", true)], 2);
        assert!(matches!(
            brute_force_consistency(&i),
            Err(Error::GuardExceeded(_))
        ));
        let i = inst(ConceptKind::KTermDnf, &[("1111000011", true)], 2);
        assert!(matches!(
            brute_force_consistency(&i),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn clause_variant_matches_semantics() {
        let i = inst(
            ConceptKind::KClauseCnf,
            &[("10", false), ("01", false), ("11", true)],
            1,
        );
        assert!(!brute_force_consistency(&i).unwrap().is_consistent());
        let i = inst(
            ConceptKind::KClauseCnf,
            &[("10", false), ("01", false), ("11", true)],
            2,
        );
        let h = brute_force_consistency(&i)
            .unwrap()
            .into_hypothesis()
            .unwrap();
        assert!(h.is_consistent_with(
            &SampleSet::from_strs(&[("10", false), ("01", false), ("11", true)]).unwrap()
        ));
    }
}
