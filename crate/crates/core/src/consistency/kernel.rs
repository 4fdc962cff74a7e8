//! Kernelization for k-term DNF consistency parameterized by `k` and the
//! size `s` of a pivot-1 backdoor `S`.
//!
//! Three rules are applied until none fires, re-scanning after every
//! application, with priority merge > negative > positive:
//!
//! * **merge**: two variables with identical columns over the current samples
//!   are merged; the higher index is dropped.
//! * **negative**: a negative sample whose only true variable outside `S` is
//!   true in no other sample is removed. Lifting appends that variable's
//!   negative literal to every term.
//! * **positive**: within a class of samples agreeing on `S`, if at least
//!   `k + 2` positive samples each have exactly one true variable outside `S`
//!   (true in no other sample), the last of them is removed. Lifting drops
//!   the removed sample's negative pivot literal from a term whose other
//!   literals it satisfies; such a term exists by pigeonhole over the
//!   remaining `k + 1` class members.
//!
//! Afterwards at most `2^s (k + 2)` samples remain, on at most
//! `s + 2^s (k + 2) + 1` variables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::assignment::{Assignment, LabeledSample, SampleSet};
use crate::error::{Error, Result};
use crate::formula::{DnfFormula, Formula, Literal, Term};
use crate::params::is_backdoor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelRule {
    /// Positive sample removed; `pivot` is its single true variable outside `S`.
    RemovedPositive { sample: Assignment, pivot: usize },
    /// Negative sample removed; `pivot` is its single true variable outside `S`.
    RemovedNegative { sample: Assignment, pivot: usize },
    /// `removed` had the same column as `kept`.
    MergedVariables { kept: usize, removed: usize },
}

/// Rules in application order. Variables and samples are in the original
/// numbering and width.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KernelTrace {
    pub rules: Vec<KernelRule>,
}

impl KernelTrace {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// A kernelized instance together with what is needed to lift solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    /// Samples restricted to the surviving variables, renumbered `1..=V`.
    pub reduced: SampleSet,
    pub trace: KernelTrace,
    /// `variables[j - 1]` is the original index of reduced variable `j`.
    pub variables: Vec<usize>,
    /// Surviving backdoor variables, original numbering.
    pub backdoor: Vec<usize>,
    original_width: usize,
}

impl Kernel {
    pub fn original_width(&self) -> usize {
        self.original_width
    }

    /// `2^s (k + 2)`, saturating.
    pub fn sample_bound(s: usize, k: usize) -> usize {
        1usize
            .checked_shl(s as u32)
            .and_then(|p| p.checked_mul(k + 2))
            .unwrap_or(usize::MAX)
    }

    /// `s + 2^s (k + 2) + 1`, saturating.
    pub fn variable_bound(s: usize, k: usize) -> usize {
        Self::sample_bound(s, k).saturating_add(s + 1)
    }

    /// Turns a formula consistent with the reduced samples into one over the
    /// original variables consistent with the original samples, with no more
    /// terms.
    pub fn lift(&self, reduced: &DnfFormula) -> Result<DnfFormula> {
        if reduced.width() != self.reduced.width() {
            return Err(Error::WidthMismatch {
                expected: self.reduced.width(),
                found: reduced.width(),
            });
        }
        let mut terms: Vec<Term> = reduced
            .terms()
            .iter()
            .map(|t| {
                Term::new(t.literals().iter().map(|l| Literal {
                    var: self.variables[l.var - 1],
                    positive: l.positive,
                }))
            })
            .collect::<Result<_>>()?;

        for rule in self.trace.rules.iter().rev() {
            match rule {
                KernelRule::MergedVariables { .. } => {}
                KernelRule::RemovedNegative { pivot, .. } => {
                    terms = terms
                        .into_iter()
                        .filter(|t| t.literal_on(*pivot) != Some(Literal::pos(*pivot)))
                        .map(|t| t.with_literal(Literal::neg(*pivot)))
                        .collect::<Result<_>>()?;
                }
                KernelRule::RemovedPositive { sample, pivot } => {
                    if terms.iter().any(|t| t.satisfied_by(sample)) {
                        continue;
                    }
                    let slot = terms
                        .iter()
                        .position(|t| {
                            t.literal_on(*pivot) == Some(Literal::neg(*pivot))
                                && t.without_var(*pivot).satisfied_by(sample)
                        })
                        .ok_or(Error::Internal(
                            "no term to relax when lifting a removed positive",
                        ))?;
                    terms[slot] = terms[slot].without_var(*pivot);
                }
            }
        }
        DnfFormula::new(self.original_width, terms)
    }
}

struct State {
    n: usize,
    samples: Vec<LabeledSample>,
    active: Vec<usize>,
    in_s: Vec<bool>,
}

impl State {
    fn outside_true<'a>(&'a self, x: &'a Assignment) -> impl Iterator<Item = usize> + 'a {
        self.active
            .iter()
            .copied()
            .filter(move |&v| !self.in_s[v] && x.get(v))
    }

    /// Single true variable outside `S`, if exactly one.
    fn single_pivot(&self, x: &Assignment) -> Option<usize> {
        let mut it = self.outside_true(x);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    fn pivot_counts(&self) -> Vec<usize> {
        let mut count = vec![0; self.n + 1];
        for s in &self.samples {
            for v in self.outside_true(&s.assignment) {
                count[v] += 1;
            }
        }
        count
    }

    fn find_merge(&self) -> Option<(usize, usize)> {
        let mut columns: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
        for &v in &self.active {
            let col: Vec<bool> = self.samples.iter().map(|s| s.assignment.get(v)).collect();
            if let Some(&kept) = columns.get(&col) {
                return Some((kept, v));
            }
            columns.insert(col, v);
        }
        None
    }

    fn find_negative(&self, counts: &[usize]) -> Option<(usize, usize)> {
        self.samples.iter().enumerate().find_map(|(i, s)| {
            if s.label {
                return None;
            }
            self.single_pivot(&s.assignment)
                .filter(|&v| counts[v] == 1)
                .map(|v| (i, v))
        })
    }

    fn find_positive(&self, k: usize, counts: &[usize]) -> Option<(usize, usize)> {
        let s_vars: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&v| self.in_s[v])
            .collect();
        let mut classes: BTreeMap<Vec<bool>, Vec<(usize, usize)>> = BTreeMap::new();
        let mut order: Vec<Vec<bool>> = Vec::new();
        for (i, s) in self.samples.iter().enumerate() {
            if !s.label {
                continue;
            }
            let Some(v) = self.single_pivot(&s.assignment).filter(|&v| counts[v] == 1) else {
                continue;
            };
            let key: Vec<bool> = s_vars.iter().map(|&u| s.assignment.get(u)).collect();
            let members = classes.entry(key.clone()).or_insert_with(|| {
                order.push(key);
                Vec::new()
            });
            members.push((i, v));
        }
        order.into_iter().find_map(|key| {
            let members = &classes[&key];
            (members.len() >= k + 2).then(|| members[members.len() - 1])
        })
    }
}

/// Applies the three rules to exhaustion. `backdoor` must satisfy both
/// pivot-1 backdoor conditions for `samples`.
pub fn kterm_dnf_kernelize(samples: &SampleSet, k: usize, backdoor: &[usize]) -> Result<Kernel> {
    let n = samples.width();
    if !is_backdoor(n, samples.assignments(), true, backdoor) {
        return Err(Error::InvalidBackdoor);
    }
    let mut in_s = vec![false; n + 1];
    for &v in backdoor {
        in_s[v] = true;
    }
    let s = backdoor.iter().filter(|&&v| v >= 1).count();
    let mut state = State {
        n,
        samples: samples.samples().to_vec(),
        active: (1..=n).collect(),
        in_s,
    };
    let mut trace = KernelTrace::default();

    loop {
        if let Some((kept, removed)) = state.find_merge() {
            state.active.retain(|&v| v != removed);
            state.in_s[removed] = false;
            trace
                .rules
                .push(KernelRule::MergedVariables { kept, removed });
            continue;
        }
        let counts = state.pivot_counts();
        if let Some((i, pivot)) = state.find_negative(&counts) {
            let sample = state.samples.remove(i).assignment;
            trace
                .rules
                .push(KernelRule::RemovedNegative { sample, pivot });
            continue;
        }
        if let Some((i, pivot)) = state.find_positive(k, &counts) {
            let sample = state.samples.remove(i).assignment;
            trace
                .rules
                .push(KernelRule::RemovedPositive { sample, pivot });
            continue;
        }
        break;
    }

    let reduced = SampleSet::new(
        state.active.len(),
        state
            .samples
            .iter()
            .map(|s| {
                s.assignment
                    .project(&state.active)
                    .map(|x| LabeledSample::new(x, s.label))
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    if reduced.len() != state.samples.len() {
        return Err(Error::Internal("kernel merged two samples"));
    }
    if reduced.len() > Kernel::sample_bound(s, k) || reduced.width() > Kernel::variable_bound(s, k)
    {
        return Err(Error::Internal("kernel exceeds its size bound"));
    }
    Ok(Kernel {
        reduced,
        trace,
        backdoor: state
            .active
            .iter()
            .copied()
            .filter(|&v| state.in_s[v])
            .collect(),
        variables: state.active,
        original_width: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::lambda_backdoor;

    fn unit(n: usize, i: usize) -> Assignment {
        let mut x = Assignment::zeros(n).unwrap();
        x.set(i, true);
        x
    }

    #[test]
    fn positive_rule_fires_on_unit_vectors() {
        // s = 0, k = 1: the bound is 2^0 * 3 = 3 samples.
        let samples =
            SampleSet::new(4, (1..=4).map(|i| LabeledSample::new(unit(4, i), true))).unwrap();
        let kernel = kterm_dnf_kernelize(&samples, 1, &[]).unwrap();
        assert!(kernel.reduced.len() <= 3);
        assert!(kernel.reduced.width() <= 4);
        assert!(kernel
            .trace
            .rules
            .iter()
            .any(|r| matches!(r, KernelRule::RemovedPositive { .. })));

        let reduced_h = DnfFormula::new(kernel.reduced.width(), vec![Term::empty()]).unwrap();
        assert!(reduced_h.is_consistent_with(&kernel.reduced));
        let lifted = kernel.lift(&reduced_h).unwrap();
        assert!(lifted.is_consistent_with(&samples));
    }

    #[test]
    fn small_instance_is_unchanged() {
        let trivial = SampleSet::from_strs(&[("10", true), ("01", true)]).unwrap();
        let kernel = kterm_dnf_kernelize(&trivial, 1, &[]).unwrap();
        assert!(kernel.trace.is_empty());
        assert_eq!(kernel.reduced, trivial);
    }

    #[test]
    fn negative_rule_lifts_by_appending_negation() {
        let samples = SampleSet::from_strs(&[("100", true), ("010", false)]).unwrap();
        let kernel = kterm_dnf_kernelize(&samples, 1, &[]).unwrap();
        assert!(matches!(
            kernel.trace.rules[0],
            KernelRule::RemovedNegative { pivot: 2, .. }
        ));
        let everything = DnfFormula::new(kernel.reduced.width(), vec![Term::empty()]).unwrap();
        let lifted = kernel.lift(&everything).unwrap();
        assert!(lifted.is_consistent_with(&samples));
    }

    #[test]
    fn invalid_backdoor_rejected() {
        let samples = SampleSet::from_strs(&[("110", true)]).unwrap();
        assert_eq!(
            kterm_dnf_kernelize(&samples, 1, &[]),
            Err(Error::InvalidBackdoor)
        );
        let b = lambda_backdoor(&samples, true);
        assert!(kterm_dnf_kernelize(&samples, 1, &b.vars).is_ok());
    }

    #[test]
    fn empty_sample_set_collapses_to_one_variable() {
        let samples = SampleSet::empty(5).unwrap();
        let kernel = kterm_dnf_kernelize(&samples, 2, &[]).unwrap();
        assert_eq!(kernel.reduced.width(), 1);
        assert_eq!(kernel.trace.len(), 4);
    }
}
