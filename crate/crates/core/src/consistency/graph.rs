//! Deletion-set consistency on graph samples.

use alloc::vec::Vec;

use super::{Combinations, ConsistencyOutcome};
use crate::error::{Error, Result};
use crate::graph::{ForbiddenFamily, GraphSampleSet, VertexSet};

fn check_k(samples: &GraphSampleSet, k: usize) -> Result<()> {
    if k > samples.order() {
        return Err(Error::ParameterTooLarge {
            k,
            limit: samples.order(),
        });
    }
    Ok(())
}

/// Whether removing `set` makes every yes-graph free of the family and no
/// proper subset does.
pub fn is_minimal_deletion_set(
    samples: &GraphSampleSet,
    family: &ForbiddenFamily,
    set: &VertexSet,
) -> bool {
    let mut mask = set.mask();
    if !samples.yes_graphs().all(|g| family.is_free(g, &mask)) {
        return false;
    }
    for &v in set.vertices() {
        mask[v] = false;
        let still_free = samples.yes_graphs().all(|g| family.is_free(g, &mask));
        mask[v] = true;
        if still_free {
            return false;
        }
    }
    true
}

/// Bounded search tree over inclusion-minimal deletion sets of the
/// yes-graphs. At each node the first induced forbidden copy in the first
/// offending yes-graph is located and each of its vertices is tried in
/// increasing order. Leaves that are not minimal are skipped: their minimal
/// subsets appear as leaves of their own. A minimal leaf is accepted when no
/// no-graph becomes free of the family; shrinking a set only keeps more of
/// each no-graph, so checking minimal sets alone is complete.
pub fn hdeletion_consistency(
    samples: &GraphSampleSet,
    k: usize,
    family: &ForbiddenFamily,
) -> Result<ConsistencyOutcome<VertexSet>> {
    check_k(samples, k)?;
    let order = samples.order();
    let yes: Vec<_> = samples.yes_graphs().collect();
    let no: Vec<_> = samples.no_graphs().collect();
    let mut mask = alloc::vec![false; order + 1];
    let mut chosen = Vec::new();

    struct Search<'a> {
        samples: &'a GraphSampleSet,
        family: &'a ForbiddenFamily,
        yes: &'a [&'a crate::graph::Graph],
        no: &'a [&'a crate::graph::Graph],
        k: usize,
        order: usize,
    }

    impl Search<'_> {
        fn run(&self, mask: &mut Vec<bool>, chosen: &mut Vec<usize>) -> Option<VertexSet> {
            let copy = self.yes.iter().find_map(|g| self.family.find_copy(g, mask));
            match copy {
                Some(vertices) => {
                    if chosen.len() == self.k {
                        return None;
                    }
                    for v in vertices {
                        mask[v] = true;
                        chosen.push(v);
                        let found = self.run(mask, chosen);
                        chosen.pop();
                        mask[v] = false;
                        if found.is_some() {
                            return found;
                        }
                    }
                    None
                }
                None => {
                    let set = VertexSet::new(self.order, chosen.iter().copied()).ok()?;
                    if !is_minimal_deletion_set(self.samples, self.family, &set) {
                        return None;
                    }
                    self.no
                        .iter()
                        .all(|g| !self.family.is_free(g, mask))
                        .then_some(set)
                }
            }
        }
    }

    let search = Search {
        samples,
        family,
        yes: &yes,
        no: &no,
        k,
        order,
    };
    Ok(match search.run(&mut mask, &mut chosen) {
        Some(set) => ConsistencyOutcome::Consistent(set),
        None => ConsistencyOutcome::Inconsistent,
    })
}

/// Tries every vertex subset of size at most `k`, smallest first and
/// lexicographically within a size.
pub fn fvs_consistency(
    samples: &GraphSampleSet,
    k: usize,
) -> Result<ConsistencyOutcome<VertexSet>> {
    check_k(samples, k)?;
    let order = samples.order();
    for size in 0..=k {
        for combo in Combinations::new(order, size) {
            let set = VertexSet::new(order, combo.iter().map(|v| v + 1))?;
            let mask = set.mask();
            if samples
                .samples()
                .iter()
                .all(|s| s.graph.is_forest_without(&mask) == s.label)
            {
                return Ok(ConsistencyOutcome::Consistent(set));
            }
        }
    }
    Ok(ConsistencyOutcome::Inconsistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use alloc::vec;

    #[test]
    fn vertex_cover_of_triangle_against_edge() {
        let tri = Graph::new(5, [(1, 2), (2, 3), (3, 1)]).unwrap();
        let edge = Graph::new(5, [(4, 5)]).unwrap();
        let samples = GraphSampleSet::new(5, [(tri, true), (edge, false)]).unwrap();
        let family = ForbiddenFamily::vertex_cover();
        let out = hdeletion_consistency(&samples, 2, &family).unwrap();
        let set = out.into_hypothesis().unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.vertices().iter().all(|v| (1..=3).contains(v)));
        assert!(is_minimal_deletion_set(&samples, &family, &set));
        assert_eq!(
            hdeletion_consistency(&samples, 1, &family).unwrap(),
            ConsistencyOutcome::Inconsistent
        );
    }

    #[test]
    fn already_free_yes_graphs_need_nothing() {
        let samples = GraphSampleSet::new(4, [(Graph::complete(4), true)]).unwrap();
        let out = hdeletion_consistency(&samples, 0, &ForbiddenFamily::cluster()).unwrap();
        assert_eq!(out, ConsistencyOutcome::Consistent(VertexSet::empty(4)));
    }

    #[test]
    fn fvs_triangle_takes_first_vertex() {
        let samples = GraphSampleSet::new(3, [(Graph::cycle(3), true)]).unwrap();
        let out = fvs_consistency(&samples, 1).unwrap();
        assert_eq!(
            out,
            ConsistencyOutcome::Consistent(VertexSet::new(3, [1]).unwrap())
        );
    }

    #[test]
    fn fvs_forests_with_k_zero() {
        let samples = GraphSampleSet::new(4, [(Graph::path(4), true)]).unwrap();
        assert_eq!(
            fvs_consistency(&samples, 0).unwrap(),
            ConsistencyOutcome::Consistent(VertexSet::empty(4))
        );
    }

    #[test]
    fn no_graph_label_requires_a_surviving_cycle() {
        let c4 = Graph::cycle(4);
        let samples = GraphSampleSet::new(4, vec![(c4, false)]).unwrap();
        assert!(fvs_consistency(&samples, 2).unwrap().is_consistent());
        let samples = GraphSampleSet::new(4, [(Graph::path(4), false)]).unwrap();
        assert_eq!(
            fvs_consistency(&samples, 2).unwrap(),
            ConsistencyOutcome::Inconsistent
        );
    }

    #[test]
    fn k_above_order_rejected() {
        let samples = GraphSampleSet::new(2, [(Graph::empty(2), true)]).unwrap();
        assert!(fvs_consistency(&samples, 3).is_err());
    }
}
