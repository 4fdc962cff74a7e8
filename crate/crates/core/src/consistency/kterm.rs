//! k-term DNF and k-clause CNF consistency via the backdoor kernel.

use alloc::vec;
use alloc::vec::Vec;

use super::kernel::kterm_dnf_kernelize;
use super::ConsistencyOutcome;
use crate::assignment::{Assignment, SampleSet};
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, DnfFormula, Formula, Literal, Term};
use crate::params::lambda_backdoor;

/// Largest `3^V` the term-enumeration search accepts.
pub const ENUMERATION_LIMIT: usize = 3usize.pow(12);

/// How the kernelized instance is solved.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TermSearch {
    /// Assign positives to at most `k` groups; each group is represented by
    /// the most specific term covering it, which must reject every negative.
    #[default]
    Partition,
    /// List all `3^V` terms, keep those rejecting every negative, and search
    /// for at most `k` of them covering the positives.
    Enumerate,
}

pub fn kterm_dnf_consistency(
    samples: &SampleSet,
    k: usize,
) -> Result<ConsistencyOutcome<DnfFormula>> {
    kterm_dnf_consistency_with(samples, k, TermSearch::Partition)
}

/// Computes a minimum pivot-1 backdoor, kernelizes, solves the kernel with
/// `search`, and lifts the answer back to the original samples.
pub fn kterm_dnf_consistency_with(
    samples: &SampleSet,
    k: usize,
    search: TermSearch,
) -> Result<ConsistencyOutcome<DnfFormula>> {
    if samples.is_empty() {
        return Ok(ConsistencyOutcome::Consistent(DnfFormula::empty(
            samples.width(),
        )?));
    }
    let backdoor = lambda_backdoor(samples, true);
    let kernel = kterm_dnf_kernelize(samples, k, &backdoor.vars)?;
    let reduced = match search {
        TermSearch::Partition => partition_search(&kernel.reduced, k)?,
        TermSearch::Enumerate => enumeration_search(&kernel.reduced, k)?,
    };
    let Some(reduced) = reduced else {
        return Ok(ConsistencyOutcome::Inconsistent);
    };
    let lifted = kernel.lift(&reduced)?;
    if lifted.len() > k || !lifted.is_consistent_with(samples) {
        return Err(Error::Internal("lifted k-term DNF does not verify"));
    }
    Ok(ConsistencyOutcome::Consistent(lifted))
}

/// Complements assignments and flips labels, solves k-term DNF, then maps the
/// answer back by flipping literals and dualizing.
pub fn kclause_cnf_consistency(
    samples: &SampleSet,
    k: usize,
) -> Result<ConsistencyOutcome<CnfFormula>> {
    let transformed = samples
        .with_flipped_labels()
        .with_complemented_assignments();
    Ok(kterm_dnf_consistency(&transformed, k)?.map(|dnf| dnf.flip_polarity().dualize()))
}

/// Bits fixed to 1 / fixed to 0 across a group of assignments.
#[derive(Clone)]
struct Generalization {
    ones: Vec<u64>,
    zeros: Vec<u64>,
}

impl Generalization {
    fn of(x: &Assignment) -> Self {
        Self {
            ones: x.words().to_vec(),
            zeros: x.complement().words().to_vec(),
        }
    }

    fn absorb(&self, x: &Assignment) -> Self {
        let xc = x.complement();
        Self {
            ones: self
                .ones
                .iter()
                .zip(x.words())
                .map(|(a, b)| a & b)
                .collect(),
            zeros: self
                .zeros
                .iter()
                .zip(xc.words())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn satisfied_by(&self, x: &Assignment) -> bool {
        self.ones
            .iter()
            .zip(&self.zeros)
            .zip(x.words())
            .all(|((o, z), w)| o & !w == 0 && z & w == 0)
    }

    fn to_term(&self, n: usize) -> Term {
        let lits = (1..=n).filter_map(|v| {
            let (w, b) = ((v - 1) / 64, (v - 1) % 64);
            if self.ones[w] >> b & 1 == 1 {
                Some(Literal::pos(v))
            } else if self.zeros[w] >> b & 1 == 1 {
                Some(Literal::neg(v))
            } else {
                None
            }
        });
        Term::new(lits).expect("a bit is never both fixed to 1 and to 0")
    }
}

fn partition_search(samples: &SampleSet, k: usize) -> Result<Option<DnfFormula>> {
    let positives: Vec<&Assignment> = samples.positives().collect();
    let negatives: Vec<&Assignment> = samples.negatives().collect();
    let mut groups: Vec<Generalization> = Vec::new();

    fn extend(
        i: usize,
        positives: &[&Assignment],
        negatives: &[&Assignment],
        k: usize,
        groups: &mut Vec<Generalization>,
    ) -> bool {
        let Some(&x) = positives.get(i) else {
            return true;
        };
        if groups.iter().any(|g| g.satisfied_by(x)) {
            return extend(i + 1, positives, negatives, k, groups);
        }
        for g in 0..groups.len() {
            let widened = groups[g].absorb(x);
            if negatives.iter().any(|y| widened.satisfied_by(y)) {
                continue;
            }
            let saved = core::mem::replace(&mut groups[g], widened);
            if extend(i + 1, positives, negatives, k, groups) {
                return true;
            }
            groups[g] = saved;
        }
        if groups.len() < k {
            groups.push(Generalization::of(x));
            if extend(i + 1, positives, negatives, k, groups) {
                return true;
            }
            groups.pop();
        }
        false
    }

    if !extend(0, &positives, &negatives, k, &mut groups) {
        return Ok(None);
    }
    let n = samples.width();
    DnfFormula::new(n, groups.iter().map(|g| g.to_term(n)).collect()).map(Some)
}

/// The `index`-th term in base-3 order: digit `v - 1` is absent / positive /
/// negative for variable `v`.
pub(crate) fn term_from_index(n: usize, mut index: usize) -> Term {
    let mut lits = Vec::new();
    for v in 1..=n {
        match index % 3 {
            1 => lits.push(Literal::pos(v)),
            2 => lits.push(Literal::neg(v)),
            _ => {}
        }
        index /= 3;
    }
    Term::new(lits).expect("one literal per variable")
}

fn enumeration_search(samples: &SampleSet, k: usize) -> Result<Option<DnfFormula>> {
    let n = samples.width();
    let total = 3usize
        .checked_pow(n as u32)
        .filter(|&t| t <= ENUMERATION_LIMIT)
        .ok_or(Error::GuardExceeded(3u128.saturating_pow(n as u32)))?;
    let positives: Vec<&Assignment> = samples.positives().collect();
    let words = positives.len().div_ceil(64).max(1);

    let mut kept: Vec<(Term, Vec<u64>)> = Vec::new();
    for index in 0..total {
        let t = term_from_index(n, index);
        if samples.negatives().any(|y| t.satisfied_by(y)) {
            continue;
        }
        let mut cover = vec![0u64; words];
        for (i, x) in positives.iter().enumerate() {
            if t.satisfied_by(x) {
                cover[i / 64] |= 1 << (i % 64);
            }
        }
        kept.push((t, cover));
    }

    fn pick(
        covered: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        kept: &[(Term, Vec<u64>)],
        n_pos: usize,
        k: usize,
    ) -> bool {
        let Some(first) = (0..n_pos).find(|&i| covered[i / 64] >> (i % 64) & 1 == 0) else {
            return true;
        };
        if chosen.len() == k {
            return false;
        }
        for (j, (_, cover)) in kept.iter().enumerate() {
            if cover[first / 64] >> (first % 64) & 1 == 0 {
                continue;
            }
            let saved = covered.clone();
            for (c, m) in covered.iter_mut().zip(cover) {
                *c |= m;
            }
            chosen.push(j);
            if pick(covered, chosen, kept, n_pos, k) {
                return true;
            }
            chosen.pop();
            *covered = saved;
        }
        false
    }

    let mut covered = vec![0u64; words];
    let mut chosen = Vec::new();
    if !pick(&mut covered, &mut chosen, &kept, positives.len(), k) {
        return Ok(None);
    }
    DnfFormula::new(n, chosen.into_iter().map(|j| kept[j].0.clone()).collect()).map(Some)
}
