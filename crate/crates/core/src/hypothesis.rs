//! Concept classes and the hypotheses that represent their members.

use core::fmt;

use crate::assignment::{Assignment, SampleSet};
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, DnfFormula, Formula};
use crate::graph::{ForbiddenFamily, Graph, VertexSet};
use crate::params::{self, Backdoor};

/// The graph class `H` a deletion set must reach.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphProperty {
    /// No induced copy of any family member.
    InducedFree(ForbiddenFamily),
    /// Acyclic.
    Forest,
}

impl GraphProperty {
    pub fn holds(&self, g: &Graph, removed: &[bool]) -> bool {
        match self {
            Self::InducedFree(family) => family.is_free(g, removed),
            Self::Forest => g.is_forest_without(removed),
        }
    }
}

/// Which parameterized learning problem an instance belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConceptKind {
    /// CNF with clauses of at most `k` literals.
    KCnf,
    /// DNF with terms of at most `k` literals.
    KDnf,
    /// DNF with at most `k` terms.
    KTermDnf,
    /// CNF with at most `k` clauses.
    KClauseCnf,
    /// Vertex sets of size at most `k` whose removal avoids the family.
    HDeletion(ForbiddenFamily),
    /// Feedback vertex sets of size at most `k`.
    Fvs,
}

impl ConceptKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::KCnf => "kcnf",
            Self::KDnf => "kdnf",
            Self::KTermDnf => "kterm_dnf",
            Self::KClauseCnf => "kclause_cnf",
            Self::HDeletion(_) => "hdeletion",
            Self::Fvs => "fvs",
        }
    }

    pub fn is_graph(&self) -> bool {
        matches!(self, Self::HDeletion(_) | Self::Fvs)
    }

    pub fn graph_property(&self) -> Option<GraphProperty> {
        match self {
            Self::HDeletion(f) => Some(GraphProperty::InducedFree(f.clone())),
            Self::Fvs => Some(GraphProperty::Forest),
            _ => None,
        }
    }

    /// The representation parameter of `h` under this kind.
    pub fn kappa(&self, h: &Hypothesis) -> Result<usize> {
        match (self, h) {
            (Self::KCnf, Hypothesis::Cnf(f)) => Ok(f.max_part_len()),
            (Self::KDnf, Hypothesis::Dnf(f)) => Ok(params::kappa_max_term_len(f)),
            (Self::KTermDnf, Hypothesis::Dnf(f)) => Ok(params::kappa_term_count(f)),
            (Self::KClauseCnf, Hypothesis::Cnf(f)) => Ok(f.len()),
            (Self::HDeletion(_) | Self::Fvs, Hypothesis::DeletionSet { set, .. }) => {
                Ok(params::kappa_subset_size(set))
            }
            _ => Err(Error::KindMismatch(self.name())),
        }
    }

    /// The distribution parameter of a sample support: the backdoor size for
    /// the term/clause-bounded kinds, a constant otherwise (0 for formulas,
    /// 1 for graphs).
    pub fn lambda<'a>(&self, n: usize, support: impl IntoIterator<Item = &'a Assignment>) -> usize {
        match self {
            Self::KTermDnf => params::lambda_backdoor_of(n, support, true).ell(),
            Self::KClauseCnf => params::lambda_backdoor_of(n, support, false).ell(),
            Self::KCnf | Self::KDnf => 0,
            Self::HDeletion(_) | Self::Fvs => 1,
        }
    }

    pub fn backdoor(&self, samples: &SampleSet) -> Option<Backdoor> {
        match self {
            Self::KTermDnf => Some(params::lambda_backdoor(samples, true)),
            Self::KClauseCnf => Some(params::lambda_backdoor(samples, false)),
            _ => None,
        }
    }

    /// The hypothesis returned for an empty sample set. `n` is the
    /// assignment width (`N²` for graph kinds).
    pub fn canonical_empty(&self, n: usize) -> Result<Hypothesis> {
        Ok(match self {
            Self::KCnf | Self::KClauseCnf => Hypothesis::Cnf(CnfFormula::empty(n)?),
            Self::KDnf | Self::KTermDnf => Hypothesis::Dnf(DnfFormula::empty(n)?),
            Self::HDeletion(_) | Self::Fvs => Hypothesis::DeletionSet {
                set: VertexSet::empty(graph_order(n)?),
                property: self.graph_property().ok_or(Error::Internal("graph kind"))?,
            },
        })
    }
}

impl fmt::Display for ConceptKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `N` such that `N² = n`.
pub fn graph_order(n: usize) -> Result<usize> {
    let order = libm::sqrt(n as f64) as usize;
    (order.saturating_sub(1)..=order + 1)
        .find(|o| o * o == n)
        .ok_or(Error::NotAdjacencyMatrix)
}

/// A learned or hidden representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    Dnf(DnfFormula),
    Cnf(CnfFormula),
    /// Concept: an `N`-vertex graph (as its `N²` adjacency bits) is positive
    /// iff removing `set` leaves a graph with `property`.
    DeletionSet {
        set: VertexSet,
        property: GraphProperty,
    },
}

impl Hypothesis {
    pub fn width(&self) -> usize {
        match self {
            Self::Dnf(f) => f.width(),
            Self::Cnf(f) => f.width(),
            Self::DeletionSet { set, .. } => set.order() * set.order(),
        }
    }

    pub fn eval(&self, x: &Assignment) -> Result<bool> {
        match self {
            Self::Dnf(f) => f.eval(x),
            Self::Cnf(f) => f.eval(x),
            Self::DeletionSet { set, .. } => {
                let g = Graph::from_adjacency_bits(set.order(), x)?;
                self.eval_graph(&g)
            }
        }
    }

    pub fn eval_graph(&self, g: &Graph) -> Result<bool> {
        match self {
            Self::DeletionSet { set, property } => {
                if g.order() != set.order() {
                    return Err(Error::OrderMismatch {
                        expected: set.order(),
                        found: g.order(),
                    });
                }
                Ok(property.holds(g, &set.mask()))
            }
            _ => Err(Error::KindMismatch("graph")),
        }
    }

    pub fn is_consistent_with(&self, samples: &SampleSet) -> bool {
        samples
            .iter()
            .all(|s| self.eval(&s.assignment).ok() == Some(s.label))
    }

    pub fn as_dnf(&self) -> Option<&DnfFormula> {
        match self {
            Self::Dnf(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_cnf(&self) -> Option<&CnfFormula> {
        match self {
            Self::Cnf(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_vertex_set(&self) -> Option<&VertexSet> {
        match self {
            Self::DeletionSet { set, .. } => Some(set),
            _ => None,
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Dnf(d) => d.fmt(f),
            Self::Cnf(c) => c.fmt(f),
            Self::DeletionSet { set, .. } => set.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_order_inverts_square() {
        assert_eq!(graph_order(49), Ok(7));
        assert_eq!(graph_order(1), Ok(1));
        assert!(graph_order(10).is_err());
    }

    #[test]
    fn deletion_set_evaluates_on_adjacency_bits() {
        let h = Hypothesis::DeletionSet {
            set: VertexSet::new(3, [1]).unwrap(),
            property: GraphProperty::Forest,
        };
        let tri = Graph::cycle(3).to_adjacency_bits().unwrap();
        assert_eq!(h.eval(&tri), Ok(true));
        let h0 = Hypothesis::DeletionSet {
            set: VertexSet::empty(3),
            property: GraphProperty::Forest,
        };
        assert_eq!(h0.eval(&tri), Ok(false));
    }

    #[test]
    fn kappa_requires_matching_representation() {
        let d = Hypothesis::Dnf(DnfFormula::empty(2).unwrap());
        assert_eq!(ConceptKind::KTermDnf.kappa(&d), Ok(0));
        assert!(ConceptKind::KCnf.kappa(&d).is_err());
        let e = ConceptKind::Fvs.canonical_empty(9).unwrap();
        assert_eq!(e.as_vertex_set(), Some(&VertexSet::empty(3)));
    }
}
