//! The auxiliary graph `L_n^H(G)` and its joint matching.
//!
//! Every edge `e = xy` of `G` becomes two end-copies `f(x,e)`, `f(y,e)`
//! joined by a path through `n - 2` intermediate vertices (a single edge when
//! `n = 2`). End-copies at the same vertex `u` are adjacent when their edges
//! have `H`-adjacent colors, so the copies at `u` induce `G_u`. For parallel
//! edges `e != g` between `x` and `y`, `f(x,e)` is adjacent to `f(y,g)`.
//!
//! Vertex ids are stable across `n`: the end-copies of edge `e` are `2e`
//! (at the smaller-positioned endpoint) and `2e + 1`, and intermediates come
//! after all end-copies.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::model::{EdgeId, Instance, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxVertex {
    /// `f(u, e)`.
    EndCopy { vertex: VertexId, edge: EdgeId },
    /// The `index`-th interior vertex (1-based) of the path for `edge`,
    /// counted from the smaller-positioned endpoint.
    Intermediate { edge: EdgeId, index: usize },
}

impl AuxVertex {
    pub fn edge(self) -> EdgeId {
        match self {
            AuxVertex::EndCopy { edge, .. } | AuxVertex::Intermediate { edge, .. } => edge,
        }
    }

    pub fn is_end_copy(self) -> bool {
        matches!(self, AuxVertex::EndCopy { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxGraph {
    n: usize,
    edge_count: usize,
    vertices: Vec<AuxVertex>,
    graph: SimpleGraph,
}

/// Number of vertices of `L_n^H(G)` for a graph with `edges` edges.
pub fn vertex_count(edges: usize, n: usize) -> usize {
    n * edges
}

pub fn build_aux(inst: &Instance, n: usize) -> Result<AuxGraph> {
    if n < 2 {
        return Err(Error::InvalidPathLength(n));
    }
    let g = &inst.graph;
    let q = g.edge_count();
    let mut vertices = Vec::with_capacity(n * q);
    for e in g.edge_ids() {
        let (a, b) = g.edge(e).sorted_ends();
        vertices.push(AuxVertex::EndCopy { vertex: a, edge: e });
        vertices.push(AuxVertex::EndCopy { vertex: b, edge: e });
    }
    for e in g.edge_ids() {
        for index in 1..n - 1 {
            vertices.push(AuxVertex::Intermediate { edge: e, index });
        }
    }
    let mut graph = SimpleGraph::new(vertices.len());
    let copy = |u: VertexId, e: EdgeId| end_copy_index(inst, u, e);

    // copies of G_u at every vertex
    for u in g.vertices() {
        let inc = g.incident(u);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                if inst.colors_adjacent(e, f) {
                    graph.add_edge(copy(u, e), copy(u, f));
                }
            }
        }
    }
    // parallel classes
    for class in g.parallel_classes() {
        for &e in &class.edges {
            for &f in &class.edges {
                if e != f {
                    graph.add_edge(copy(class.x, e), copy(class.y, f));
                }
            }
        }
    }
    // the path of each edge
    for e in g.edge_ids() {
        let mut prev = 2 * e.0;
        for index in 1..n - 1 {
            let mid = 2 * q + e.0 * (n - 2) + (index - 1);
            graph.add_edge(prev, mid);
            prev = mid;
        }
        graph.add_edge(prev, 2 * e.0 + 1);
    }
    Ok(AuxGraph { n, edge_count: q, vertices, graph })
}

fn end_copy_index(inst: &Instance, u: VertexId, e: EdgeId) -> usize {
    let (a, _) = inst.graph.edge(e).sorted_ends();
    2 * e.0 + usize::from(u != a)
}

impl AuxGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[AuxVertex] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> AuxVertex {
        self.vertices[i]
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    /// Number of edges of the underlying `G`.
    pub fn source_edge_count(&self) -> usize {
        self.edge_count
    }

    /// Index of the end-copy `f(u, e)`, if `u` is an endpoint of `e`.
    pub fn end_copy(&self, u: VertexId, e: EdgeId) -> Option<usize> {
        if e.0 >= self.edge_count {
            return None;
        }
        (0..2).map(|s| 2 * e.0 + s).find(|&i| self.vertices[i] == AuxVertex::EndCopy { vertex: u, edge: e })
    }

    /// Index of the other end-copy of the same edge.
    #[inline]
    pub fn partner(&self, i: usize) -> usize {
        debug_assert!(i < 2 * self.edge_count);
        i ^ 1
    }

    /// The joint matching `{f(x,e) f(y,e)}`, present only for `n = 2`.
    pub fn joint_matching(&self) -> Option<Vec<(usize, usize)>> {
        (self.n == 2).then(|| (0..self.edge_count).map(|e| (2 * e, 2 * e + 1)).collect())
    }

    #[inline]
    pub fn is_joint_edge(&self, a: usize, b: usize) -> bool {
        self.n == 2 && a < 2 * self.edge_count && b == (a ^ 1)
    }

    /// The graph without its joint matching (`n = 2` only).
    pub fn without_joint_matching(&self) -> Result<SimpleGraph> {
        let Some(mj) = self.joint_matching() else {
            return Err(Error::Precondition("the joint matching exists only for n = 2".into()));
        };
        let mut g = self.graph.clone();
        for (a, b) in mj {
            g.remove_edge(a, b);
        }
        Ok(g)
    }

    pub fn label(&self, inst: &Instance, i: usize) -> String {
        match self.vertices[i] {
            AuxVertex::EndCopy { vertex, edge } => {
                format!("f({},{})", inst.graph.vertex_name(vertex), inst.graph.edge(edge).id)
            }
            AuxVertex::Intermediate { edge, index } => format!("m{index}({})", inst.graph.edge(edge).id),
        }
    }

    /// Replaces every edge path by a single edge, giving `L_2^H(G)`.
    pub fn contract_paths(&self) -> Result<AuxGraph> {
        if self.n < 3 {
            return Err(Error::Precondition(format!("path contraction needs n >= 3, got n = {}", self.n)));
        }
        let ends = 2 * self.edge_count;
        let mut graph = SimpleGraph::new(ends);
        for (a, b) in self.graph.edges() {
            if a < ends && b < ends {
                graph.add_edge(a, b);
            }
        }
        for e in 0..self.edge_count {
            graph.add_edge(2 * e, 2 * e + 1);
        }
        Ok(AuxGraph { n: 2, edge_count: self.edge_count, vertices: self.vertices[..ends].to_vec(), graph })
    }

    /// Maps a Hamiltonian cycle of this graph to one of the contracted graph
    /// by dropping intermediates.
    pub fn contract_cycle(&self, cycle: &[usize]) -> Vec<usize> {
        let ends = 2 * self.edge_count;
        cycle.iter().copied().filter(|&v| v < ends).collect()
    }
}

impl fmt::Display for AuxVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxVertex::EndCopy { vertex, edge } => write!(f, "f(#{},#{})", vertex.0, edge.0),
            AuxVertex::Intermediate { edge, index } => write!(f, "m{index}(#{})", edge.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::local::build_local_graph;
    use crate::model::InstanceDef;

    #[test]
    fn vertex_counts_match_the_figures() {
        assert_eq!(build_aux(&fixtures::figure1(), 3).unwrap().vertex_count(), 18);
        assert_eq!(build_aux(&fixtures::figure2(), 2).unwrap().vertex_count(), 16);
        assert_eq!(vertex_count(6, 3), 18);
        assert_eq!(vertex_count(0, 5), 0);
    }

    #[test]
    fn n_below_two_is_rejected() {
        assert_eq!(build_aux(&fixtures::figure1(), 1), Err(Error::InvalidPathLength(1)));
    }

    #[test]
    fn single_edge_is_one_joint_edge() {
        let inst = InstanceDef::default()
            .colors(["a"])
            .vertices(["x", "y"])
            .edge("e", "x", "y", "a")
            .build()
            .unwrap();
        let a = build_aux(&inst, 2).unwrap();
        assert_eq!(a.graph().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(a.joint_matching().unwrap(), vec![(0, 1)]);
        assert!(a.without_joint_matching().unwrap().edge_count() == 0);
        let a3 = build_aux(&inst, 3).unwrap();
        assert_eq!(a3.contract_paths().unwrap(), a);
    }

    #[test]
    fn contraction_recovers_n_two() {
        let inst = fixtures::figure1();
        let a2 = build_aux(&inst, 2).unwrap();
        assert_eq!(build_aux(&inst, 3).unwrap().contract_paths().unwrap(), a2);
        assert_eq!(build_aux(&inst, 5).unwrap().contract_paths().unwrap(), a2);
        assert!(a2.contract_paths().is_err());
    }

    #[test]
    fn no_direct_end_copy_edge_for_longer_paths() {
        let a = build_aux(&fixtures::figure1(), 3).unwrap();
        for e in 0..6 {
            assert!(!a.graph().has_edge(2 * e, 2 * e + 1));
            assert_eq!(a.graph().degree(12 + e), 2);
        }
        assert!(a.joint_matching().is_none());
    }

    #[test]
    fn end_copies_at_a_vertex_induce_its_local_graph() {
        let inst = fixtures::figure3();
        let a = build_aux(&inst, 2).unwrap();
        for u in inst.graph.vertices() {
            let l = build_local_graph(&inst, u).unwrap();
            for (i, &e) in l.nodes().iter().enumerate() {
                for (j, &f) in l.nodes().iter().enumerate() {
                    if i != j {
                        let (p, q) = (a.end_copy(u, e).unwrap(), a.end_copy(u, f).unwrap());
                        assert_eq!(a.graph().has_edge(p, q), l.adjacent(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn labels() {
        let inst = fixtures::figure1();
        let a = build_aux(&inst, 3).unwrap();
        assert_eq!(a.label(&inst, 0), "f(v1,e1)");
        assert_eq!(a.label(&inst, 1), "f(v2,e1)");
        assert_eq!(a.label(&inst, 12), "m1(e1)");
    }
}
