//! k-CNF / k-DNF (bounded clause or term length) by survivor elimination.

use alloc::vec::Vec;

use super::{Combinations, ConsistencyOutcome};
use crate::assignment::SampleSet;
use crate::error::{Error, Result};
use crate::formula::{Clause, CnfFormula, DnfFormula, Formula, Literal};

/// Every clause with `1..=k` literals on distinct variables, ordered by
/// length, then variable combination, then polarity pattern.
pub fn all_short_clauses(n: usize, k: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for len in 1..=k.min(n) {
        for vars in Combinations::new(n, len) {
            for signs in 0u32..(1 << len) {
                let lits = vars.iter().enumerate().map(|(i, &v)| Literal {
                    var: v + 1,
                    positive: signs >> (len - 1 - i) & 1 == 0,
                });
                out.push(Clause::new(lits).expect("distinct variables"));
            }
        }
    }
    out
}

/// Keeps every short clause satisfied by all positive samples; their
/// conjunction is the most specific k-CNF over the positives, so it rejects
/// every negative iff some k-CNF is consistent.
pub fn kcnf_consistency(samples: &SampleSet, k: usize) -> Result<ConsistencyOutcome<CnfFormula>> {
    let n = samples.width();
    if k > n {
        return Err(Error::ParameterTooLarge { k, limit: n });
    }
    let survivors: Vec<Clause> = all_short_clauses(n, k)
        .into_iter()
        .filter(|c| samples.positives().all(|x| c.satisfied_by(x)))
        .collect();
    let phi = CnfFormula::new(n, survivors)?;
    if samples.negatives().any(|x| phi.eval_unchecked(x)) {
        Ok(ConsistencyOutcome::Inconsistent)
    } else {
        Ok(ConsistencyOutcome::Consistent(phi))
    }
}

/// Negates labels, solves the k-CNF problem, negates the answer.
pub fn kdnf_consistency(samples: &SampleSet, k: usize) -> Result<ConsistencyOutcome<DnfFormula>> {
    Ok(kcnf_consistency(&samples.with_flipped_labels(), k)?.map(|cnf| cnf.dualize()))
}
