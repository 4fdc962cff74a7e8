//! Simple undirected graphs on vertices `1..=N`, vertex subsets, forbidden
//! induced-subgraph families, and the two graph tests the checkers need:
//! induced-copy search and acyclicity.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::assignment::Assignment;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    order: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            adj: vec![false; order * order],
        }
    }

    /// Rejects self-loops, out-of-range endpoints and repeated pairs.
    pub fn new(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(order);
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v || g.has_edge(u, v) {
                return Err(Error::InvalidEdge(u, v));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Self::empty(order);
        for u in 1..=order {
            for v in u + 1..=order {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn path(order: usize) -> Self {
        let mut g = Self::empty(order);
        for u in 1..order {
            g.set_edge(u, u + 1);
        }
        g
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = Self::path(order);
        if order >= 3 {
            g.set_edge(order, 1);
        }
        g
    }

    /// `K_{1,3}`: vertex 1 joined to 2, 3, 4.
    pub fn claw() -> Self {
        let mut g = Self::empty(4);
        for v in 2..=4 {
            g.set_edge(1, v);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[(u - 1) * self.order + (v - 1)]
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        let n = self.order;
        self.adj[(u - 1) * n + (v - 1)] = true;
        self.adj[(v - 1) * n + (u - 1)] = true;
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.order {
            for v in u + 1..=self.order {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Row-major adjacency matrix as an assignment of width `N²`.
    pub fn to_adjacency_bits(&self) -> Result<Assignment> {
        Assignment::from_bools(&self.adj)
    }

    /// Inverse of [`Graph::to_adjacency_bits`]; the matrix must be symmetric
    /// with an empty diagonal.
    pub fn from_adjacency_bits(order: usize, x: &Assignment) -> Result<Self> {
        if x.width() != order * order {
            return Err(Error::WidthMismatch {
                expected: order * order,
                found: x.width(),
            });
        }
        let adj: Vec<bool> = x.bits().collect();
        for u in 0..order {
            if adj[u * order + u] {
                return Err(Error::NotAdjacencyMatrix);
            }
            for v in u + 1..order {
                if adj[u * order + v] != adj[v * order + u] {
                    return Err(Error::NotAdjacencyMatrix);
                }
            }
        }
        Ok(Self { order, adj })
    }

    /// Lexicographically first injective map from `pattern`'s vertices
    /// (in order `1..=q`) onto vertices of `self` outside `removed` that
    /// induces a copy of `pattern`. Entry `i` is the image of pattern vertex `i + 1`.
    pub fn find_induced_copy(&self, pattern: &Graph, removed: &[bool]) -> Option<Vec<usize>> {
        let q = pattern.order;
        if q == 0 {
            return Some(Vec::new());
        }
        let mut image = Vec::with_capacity(q);
        let mut used = vec![false; self.order + 1];
        if self.extend_copy(pattern, removed, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    fn extend_copy(
        &self,
        pattern: &Graph,
        removed: &[bool],
        image: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let next = image.len() + 1;
        if next > pattern.order {
            return true;
        }
        for cand in 1..=self.order {
            if removed[cand] || used[cand] {
                continue;
            }
            let fits = image
                .iter()
                .enumerate()
                .all(|(i, &w)| pattern.has_edge(i + 1, next) == self.has_edge(w, cand));
            if !fits {
                continue;
            }
            image.push(cand);
            used[cand] = true;
            if self.extend_copy(pattern, removed, image, used) {
                return true;
            }
            used[cand] = false;
            image.pop();
        }
        false
    }

    /// Whether `self` minus the `removed` vertices has no cycle.
    pub fn is_forest_without(&self, removed: &[bool]) -> bool {
        let mut parent: Vec<usize> = (0..=self.order).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for (u, v) in self.edges() {
            if removed[u] || removed[v] {
                continue;
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(N={}, {:?})", self.order, self.edges())
    }
}

/// A subset of the vertices `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    order: usize,
    vertices: Vec<usize>,
}

impl VertexSet {
    pub fn new(order: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut vs: Vec<usize> = vertices.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > order) {
            return Err(Error::VertexOutOfRange { vertex: v, order });
        }
        Ok(Self {
            order,
            vertices: vs,
        })
    }

    pub fn empty(order: usize) -> Self {
        Self {
            order,
            vertices: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Membership mask indexed `0..=N` (index 0 unused).
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.order + 1];
        for &v in &self.vertices {
            m[v] = true;
        }
        m
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// The graphs `H_1..H_p` whose induced copies are forbidden.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForbiddenFamily {
    members: Vec<Graph>,
}

impl ForbiddenFamily {
    pub fn new(members: Vec<Graph>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(Self { members })
    }

    /// `{K2}`: deletion sets are vertex covers.
    pub fn vertex_cover() -> Self {
        Self {
            members: vec![Graph::complete(2)],
        }
    }

    /// `{P3}`: deletion sets leave a disjoint union of cliques.
    pub fn cluster() -> Self {
        Self {
            members: vec![Graph::path(3)],
        }
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn p(&self) -> usize {
        self.members.len()
    }

    pub fn q(&self) -> usize {
        self.members.iter().map(Graph::order).max().unwrap_or(0)
    }

    /// First induced copy (scanning members in order) in `g` minus `removed`,
    /// returned as its sorted vertex set.
    pub fn find_copy(&self, g: &Graph, removed: &[bool]) -> Option<Vec<usize>> {
        self.members.iter().find_map(|h| {
            g.find_induced_copy(h, removed).map(|mut vs| {
                vs.sort_unstable();
                vs
            })
        })
    }

    pub fn is_free(&self, g: &Graph, removed: &[bool]) -> bool {
        self.find_copy(g, removed).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSample {
    pub graph: Graph,
    pub label: bool,
}

/// Labeled graphs over a common vertex set, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSampleSet {
    order: usize,
    samples: Vec<GraphSample>,
}

impl GraphSampleSet {
    /// Same deduplication rule as [`crate::SampleSet::new`].
    pub fn new(order: usize, samples: impl IntoIterator<Item = (Graph, bool)>) -> Result<Self> {
        let mut seen: BTreeMap<Graph, bool> = BTreeMap::new();
        let mut out = Vec::new();
        for (graph, label) in samples {
            if graph.order() != order {
                return Err(Error::OrderMismatch {
                    expected: order,
                    found: graph.order(),
                });
            }
            match seen.get(&graph) {
                Some(&l) if l == label => continue,
                Some(_) => {
                    return Err(Error::ConflictingLabels(
                        graph
                            .to_adjacency_bits()
                            .map(|x| x.to_string())
                            .unwrap_or_default(),
                    ))
                }
                None => {
                    seen.insert(graph.clone(), label);
                    out.push(GraphSample { graph, label });
                }
            }
        }
        Ok(Self {
            order,
            samples: out,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn samples(&self) -> &[GraphSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn yes_graphs(&self) -> impl Iterator<Item = &Graph> {
        self.samples.iter().filter(|s| s.label).map(|s| &s.graph)
    }

    pub fn no_graphs(&self) -> impl Iterator<Item = &Graph> {
        self.samples.iter().filter(|s| !s.label).map(|s| &s.graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none_removed(g: &Graph) -> Vec<bool> {
        vec![false; g.order() + 1]
    }

    #[test]
    fn triangle_contains_k2_but_not_p3() {
        let tri = Graph::cycle(3);
        let r = none_removed(&tri);
        assert_eq!(
            tri.find_induced_copy(&Graph::complete(2), &r),
            Some(vec![1, 2])
        );
        assert_eq!(tri.find_induced_copy(&Graph::path(3), &r), None);
    }

    #[test]
    fn induced_copy_respects_non_edges() {
        // Path 1-2-3-4 contains P3 at (1,2,3); K3 is absent.
        let p = Graph::path(4);
        let r = none_removed(&p);
        assert_eq!(
            p.find_induced_copy(&Graph::path(3), &r),
            Some(vec![1, 2, 3])
        );
        assert!(p.find_induced_copy(&Graph::complete(3), &r).is_none());
        let mut r2 = r.clone();
        r2[2] = true;
        assert!(p.find_induced_copy(&Graph::path(3), &r2).is_none());
    }

    #[test]
    fn forest_detection() {
        let c = Graph::cycle(4);
        let mut r = none_removed(&c);
        assert!(!c.is_forest_without(&r));
        r[3] = true;
        assert!(c.is_forest_without(&r));
    }

    #[test]
    fn adjacency_roundtrip() {
        let g = Graph::new(4, [(1, 3), (2, 4)]).unwrap();
        let x = g.to_adjacency_bits().unwrap();
        assert_eq!(x.width(), 16);
        assert_eq!(Graph::from_adjacency_bits(4, &x).unwrap(), g);
        let mut bad = x.clone();
        bad.set(2, true);
        assert_eq!(
            Graph::from_adjacency_bits(4, &bad),
            Err(Error::NotAdjacencyMatrix)
        );
    }

    #[test]
    fn invalid_edges_rejected() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::InvalidEdge(1, 1)));
        assert_eq!(
            Graph::new(3, [(1, 2), (2, 1)]),
            Err(Error::InvalidEdge(2, 1))
        );
        assert!(Graph::new(3, [(1, 4)]).is_err());
    }

    #[test]
    fn vertex_set_and_family_basics() {
        let s = VertexSet::new(6, [5, 2]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "{2,5}");
        assert!(VertexSet::new(3, [4]).is_err());
        assert!(ForbiddenFamily::new(Vec::new()).is_err());
        let fam = ForbiddenFamily::new(vec![Graph::complete(2), Graph::path(3)]).unwrap();
        assert_eq!((fam.p(), fam.q()), (2, 3));
    }
}
