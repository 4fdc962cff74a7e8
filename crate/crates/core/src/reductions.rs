//! Hitting Set reductions to k-CNF consistency and to FVS consistency.

use alloc::vec;
use alloc::vec::Vec;

use crate::assignment::{Assignment, LabeledSample, SampleSet};
use crate::consistency::BRUTE_FORCE_GUARD;
use crate::consistency::{binomial, Combinations, ConsistencyInstance, InstanceSamples};
use crate::error::{Error, Result};
use crate::formula::{Clause, CnfFormula, Literal};
use crate::graph::{Graph, GraphSampleSet};
use crate::hypothesis::ConceptKind;

/// Universe `1..=n`, a family of nonempty subsets, and a budget `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    n: usize,
    family: Vec<Vec<usize>>,
    k: usize,
}

impl HittingSetInstance {
    /// Sets are sorted and deduplicated internally.
    pub fn new(n: usize, family: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWidth);
        }
        let mut normalized = Vec::with_capacity(family.len());
        for (i, mut set) in family.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() || set[0] == 0 || set[set.len() - 1] > n {
                return Err(Error::InvalidSet(i + 1));
            }
            normalized.push(set);
        }
        Ok(Self {
            n,
            family: normalized,
            k,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_hit_by(&self, h: &[usize]) -> bool {
        self.family.iter().all(|f| f.iter().any(|v| h.contains(v)))
    }
}

/// A minimum hitting set of size at most `k`, smallest then
/// lexicographically first.
pub fn brute_force_hitting_set(inst: &HittingSetInstance) -> Result<Option<Vec<usize>>> {
    let k = inst.k.min(inst.n);
    let space = (0..=k as u128).fold(0u128, |acc, j| {
        acc.saturating_add(binomial(inst.n as u128, j))
    });
    if space > BRUTE_FORCE_GUARD {
        return Err(Error::GuardExceeded(space));
    }
    for size in 0..=k {
        for combo in Combinations::new(inst.n, size) {
            let h: Vec<usize> = combo.iter().map(|v| v + 1).collect();
            if inst.is_hit_by(&h) {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

/// One positive sample per set (its characteristic vector) and the zero
/// vector as the single negative. Repeated sets collapse to one sample.
pub fn hitting_set_to_kcnf(inst: &HittingSetInstance) -> Result<ConsistencyInstance> {
    let mut samples = Vec::with_capacity(inst.family.len() + 1);
    for set in &inst.family {
        let mut x = Assignment::zeros(inst.n)?;
        for &v in set {
            x.set(v, true);
        }
        samples.push(LabeledSample::new(x, true));
    }
    samples.push(LabeledSample::new(Assignment::zeros(inst.n)?, false));
    ConsistencyInstance::new(
        ConceptKind::KCnf,
        InstanceSamples::Boolean(SampleSet::new(inst.n, samples)?),
        inst.k,
    )
}

/// One yes-graph per set: a cycle through the set's elements in increasing
/// order, closed by an edge from the largest back to the smallest.
pub fn hitting_set_to_fvs(inst: &HittingSetInstance) -> Result<ConsistencyInstance> {
    let mut graphs = Vec::with_capacity(inst.family.len());
    for (i, set) in inst.family.iter().enumerate() {
        if set.len() < 3 {
            return Err(Error::SetTooSmall {
                index: i + 1,
                size: set.len(),
            });
        }
        let mut edges: Vec<(usize, usize)> = set.windows(2).map(|w| (w[0], w[1])).collect();
        edges.push((set[set.len() - 1], set[0]));
        graphs.push((Graph::new(inst.n, edges)?, true));
    }
    ConsistencyInstance::new(
        ConceptKind::Fvs,
        InstanceSamples::Graph(GraphSampleSet::new(inst.n, graphs)?),
        inst.k,
    )
}

/// The clause `∨_{v ∈ h} x_v`.
pub fn hitting_set_clause(n: usize, h: &[usize]) -> Result<CnfFormula> {
    let clause = Clause::new(h.iter().map(|&v| Literal::pos(v)))?;
    CnfFormula::new(n, vec![clause])
}

/// Variables of the first all-positive clause. Such a clause exists in any
/// CNF that rejects the zero vector.
pub fn extract_hitting_set(phi: &CnfFormula) -> Option<Vec<usize>> {
    phi.clauses()
        .iter()
        .find(|c| c.literals().iter().all(|l| l.positive))
        .map(|c| c.literals().iter().map(|l| l.var).collect())
}
