//! Parameterized consistency checking: given labeled samples and `k`, find a
//! hypothesis of parameter at most `k` that agrees with every sample.

mod brute;
mod combinations;
mod graph;
mod kcnf;
pub mod kernel;
mod kterm;

use alloc::string::ToString;

pub use brute::{brute_force_consistency, BRUTE_FORCE_GUARD};
pub(crate) use combinations::{binomial, Combinations};
pub use graph::{fvs_consistency, hdeletion_consistency, is_minimal_deletion_set};
pub use kcnf::{all_short_clauses, kcnf_consistency, kdnf_consistency};
pub use kernel::{kterm_dnf_kernelize, Kernel, KernelRule, KernelTrace};
pub use kterm::{
    kclause_cnf_consistency, kterm_dnf_consistency, kterm_dnf_consistency_with, TermSearch,
};

use crate::assignment::SampleSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSampleSet};
use crate::hypothesis::{graph_order, ConceptKind, Hypothesis};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistencyOutcome<H = Hypothesis> {
    Consistent(H),
    Inconsistent,
}

impl<H> ConsistencyOutcome<H> {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Self::Consistent(_))
    }

    pub fn hypothesis(&self) -> Option<&H> {
        match self {
            Self::Consistent(h) => Some(h),
            Self::Inconsistent => None,
        }
    }

    pub fn into_hypothesis(self) -> Option<H> {
        match self {
            Self::Consistent(h) => Some(h),
            Self::Inconsistent => None,
        }
    }

    pub fn map<G>(self, f: impl FnOnce(H) -> G) -> ConsistencyOutcome<G> {
        match self {
            Self::Consistent(h) => ConsistencyOutcome::Consistent(f(h)),
            Self::Inconsistent => ConsistencyOutcome::Inconsistent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSamples {
    Boolean(SampleSet),
    Graph(GraphSampleSet),
}

impl InstanceSamples {
    /// Reads boolean samples of width `N²` as adjacency matrices when `kind`
    /// is a graph kind.
    pub fn for_kind(kind: &ConceptKind, samples: SampleSet) -> Result<Self> {
        if !kind.is_graph() {
            return Ok(Self::Boolean(samples));
        }
        let order = graph_order(samples.width())?;
        let graphs = samples
            .iter()
            .map(|s| Graph::from_adjacency_bits(order, &s.assignment).map(|g| (g, s.label)))
            .collect::<Result<alloc::vec::Vec<_>>>()?;
        GraphSampleSet::new(order, graphs).map(Self::Graph)
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Boolean(s) => s.len(),
            Self::Graph(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Samples plus parameter for one concept kind. `size_bound`, when present,
/// caps the length of the returned hypothesis's canonical text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyInstance {
    pub kind: ConceptKind,
    pub samples: InstanceSamples,
    pub k: usize,
    pub size_bound: Option<usize>,
}

impl ConsistencyInstance {
    pub fn new(kind: ConceptKind, samples: InstanceSamples, k: usize) -> Result<Self> {
        match (&samples, kind.is_graph()) {
            (InstanceSamples::Boolean(_), false) | (InstanceSamples::Graph(_), true) => Ok(Self {
                kind,
                samples,
                k,
                size_bound: None,
            }),
            _ => Err(Error::KindMismatch(kind.name())),
        }
    }

    pub fn with_size_bound(mut self, bound: usize) -> Self {
        self.size_bound = Some(bound);
        self
    }

    /// Assignment width: `n` for formulas, `N²` for graphs.
    pub fn width(&self) -> usize {
        match &self.samples {
            InstanceSamples::Boolean(s) => s.width(),
            InstanceSamples::Graph(g) => g.order() * g.order(),
        }
    }
}

/// Runs the exact checker for the instance's kind.
pub fn check(inst: &ConsistencyInstance) -> Result<ConsistencyOutcome> {
    let outcome = match (&inst.kind, &inst.samples) {
        (ConceptKind::KCnf, InstanceSamples::Boolean(s)) => {
            kcnf_consistency(s, inst.k)?.map(Hypothesis::Cnf)
        }
        (ConceptKind::KDnf, InstanceSamples::Boolean(s)) => {
            kdnf_consistency(s, inst.k)?.map(Hypothesis::Dnf)
        }
        (ConceptKind::KTermDnf, InstanceSamples::Boolean(s)) => {
            kterm_dnf_consistency(s, inst.k)?.map(Hypothesis::Dnf)
        }
        (ConceptKind::KClauseCnf, InstanceSamples::Boolean(s)) => {
            kclause_cnf_consistency(s, inst.k)?.map(Hypothesis::Cnf)
        }
        (ConceptKind::HDeletion(family), InstanceSamples::Graph(g)) => {
            let property = inst
                .kind
                .graph_property()
                .ok_or(Error::Internal("graph kind"))?;
            hdeletion_consistency(g, inst.k, family)?
                .map(|set| Hypothesis::DeletionSet { set, property })
        }
        (ConceptKind::Fvs, InstanceSamples::Graph(g)) => {
            fvs_consistency(g, inst.k)?.map(|set| Hypothesis::DeletionSet {
                set,
                property: crate::hypothesis::GraphProperty::Forest,
            })
        }
        _ => return Err(Error::KindMismatch(inst.kind.name())),
    };
    enforce_size_bound(inst, outcome)
}

pub(crate) fn enforce_size_bound(
    inst: &ConsistencyInstance,
    outcome: ConsistencyOutcome,
) -> Result<ConsistencyOutcome> {
    if let (Some(bound), ConsistencyOutcome::Consistent(h)) = (inst.size_bound, &outcome) {
        let length = h.to_string().len();
        if length > bound {
            return Err(Error::SizeBoundExceeded { length, bound });
        }
    }
    Ok(outcome)
}

/// A consistency checker usable inside the PAC meta-learner.
pub trait ConsistencyChecker {
    fn kind(&self) -> &ConceptKind;

    fn check_samples(&self, samples: &SampleSet, k: usize) -> Result<ConsistencyOutcome>;
}

impl ConsistencyChecker for ConceptKind {
    fn kind(&self) -> &ConceptKind {
        self
    }

    fn check_samples(&self, samples: &SampleSet, k: usize) -> Result<ConsistencyOutcome> {
        let inst = ConsistencyInstance::new(
            self.clone(),
            InstanceSamples::for_kind(self, samples.clone())?,
            k,
        )?;
        check(&inst)
    }
}

/// Exhaustive enumeration behind the [`ConsistencyChecker`] interface.
#[derive(Debug, Clone)]
pub struct BruteForce(pub ConceptKind);

impl ConsistencyChecker for BruteForce {
    fn kind(&self) -> &ConceptKind {
        &self.0
    }

    fn check_samples(&self, samples: &SampleSet, k: usize) -> Result<ConsistencyOutcome> {
        let inst = ConsistencyInstance::new(
            self.0.clone(),
            InstanceSamples::for_kind(&self.0, samples.clone())?,
            k,
        )?;
        brute_force_consistency(&inst)
    }
}
