//! Local graphs `G_u`, complete multipartite recognition and the color
//! degree condition.
//!
//! `G_u` has the edges of `G` at `u` as its nodes; two distinct nodes are
//! adjacent iff their colors are adjacent in `H`. A graph is complete
//! multipartite iff non-adjacency (on distinct nodes, plus reflexivity) is an
//! equivalence relation, and then the parts are its classes.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::model::{ColorId, EdgeId, Instance, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGraph {
    pub center: VertexId,
    nodes: Vec<EdgeId>,
    adj: Vec<Vec<bool>>,
}

impl LocalGraph {
    pub fn nodes(&self) -> &[EdgeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Adjacency by node position.
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Position of edge `e` among the nodes.
    pub fn position(&self, e: EdgeId) -> Option<usize> {
        self.nodes.iter().position(|&x| x == e)
    }

    pub fn to_simple_graph(&self) -> SimpleGraph {
        let k = self.nodes.len();
        let mut g = SimpleGraph::new(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.adj[i][j] {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

pub fn build_local_graph(inst: &Instance, u: VertexId) -> Result<LocalGraph> {
    if !inst.graph.contains_vertex(u) {
        return Err(Error::UnknownVertex(format!("#{}", u.0)));
    }
    let nodes = inst.graph.incident(u).to_vec();
    let k = nodes.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            adj[i][j] = i != j && inst.colors_adjacent(nodes[i], nodes[j]);
        }
    }
    Ok(LocalGraph { center: u, nodes, adj })
}

/// The parts of a complete multipartite local graph, as edge lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteWitness {
    pub parts: Vec<Vec<EdgeId>>,
    pub complete: bool,
}

impl MultipartiteWitness {
    /// `k_u`, the number of parts.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, e: EdgeId) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multipartite {
    Complete(MultipartiteWitness),
    /// `a` and `c` are adjacent, yet both are non-adjacent to `b`, so they
    /// would have to share a part with `b`.
    Refused { a: EdgeId, b: EdgeId, c: EdgeId },
}

impl Multipartite {
    pub fn witness(&self) -> Option<&MultipartiteWitness> {
        match self {
            Multipartite::Complete(w) => Some(w),
            Multipartite::Refused { .. } => None,
        }
    }

    /// Complete multipartite with at least two parts.
    pub fn has_two_parts(&self) -> bool {
        self.witness().is_some_and(|w| w.part_count() >= 2)
    }
}

/// Recognizes complete multipartite local graphs. The candidate partition is
/// the set of components of the complement; it is accepted iff every
/// component is independent.
#[allow(clippy::needless_range_loop)]
pub fn detect_complete_multipartite(l: &LocalGraph) -> Multipartite {
    let k = l.len();
    let mut part_of = vec![usize::MAX; k];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if part_of[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        part_of[s] = id;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in 0..k {
                if w != v && !l.adjacent(v, w) && part_of[w] == usize::MAX {
                    part_of[w] = id;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        parts.push(comp);
    }
    for part in &parts {
        for (x, &i) in part.iter().enumerate() {
            for &j in &part[x + 1..] {
                if l.adjacent(i, j) {
                    let (b, c) = complement_triple(l, part, i, j);
                    return Multipartite::Refused { a: l.nodes[i], b: l.nodes[b], c: l.nodes[c] };
                }
            }
        }
    }
    Multipartite::Complete(MultipartiteWitness {
        parts: parts.iter().map(|p| p.iter().map(|&i| l.nodes[i]).collect()).collect(),
        complete: true,
    })
}

// Walks a shortest complement path from `i` towards `j`; its first three
// vertices form a non-transitive triple.
fn complement_triple(l: &LocalGraph, part: &[usize], i: usize, j: usize) -> (usize, usize) {
    let k = l.len();
    let mut prev = vec![usize::MAX; k];
    let mut queue = std::collections::VecDeque::from([i]);
    prev[i] = i;
    while let Some(v) = queue.pop_front() {
        for &w in part {
            if w != v && !l.adjacent(v, w) && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![j];
    while *path.last().unwrap() != i {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    // consecutive nodes are non-adjacent and i, j are adjacent, so the path
    // has at least three nodes; being shortest, i and path[2] are adjacent
    (path[1], path[2])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KotzigReport {
    /// `(color, number of edges of that color at the vertex)`, colors present
    /// only, in color order.
    pub degrees: Vec<(ColorId, usize)>,
    pub holds: bool,
}

/// Whether no color covers more than half of the edges at `x`.
pub fn kotzig_condition(inst: &Instance, x: VertexId) -> Result<KotzigReport> {
    if !inst.graph.contains_vertex(x) {
        return Err(Error::UnknownVertex(format!("#{}", x.0)));
    }
    let mut counts = vec![0usize; inst.pattern.len()];
    for &e in inst.graph.incident(x) {
        counts[inst.color(e).0] += 1;
    }
    let total: usize = counts.iter().sum();
    let degrees: Vec<(ColorId, usize)> =
        counts.iter().enumerate().filter(|(_, &d)| d > 0).map(|(c, &d)| (ColorId(c), d)).collect();
    let holds = degrees.iter().all(|&(_, d)| d <= total - d);
    Ok(KotzigReport { degrees, holds })
}

/// Part sizes of each part versus the sum of the others, at one vertex.
pub fn part_size_condition(witness: &MultipartiteWitness) -> bool {
    let total: usize = witness.parts.iter().map(Vec::len).sum();
    witness.parts.iter().all(|p| p.len() <= total - p.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::InstanceDef;

    fn local_from_adjacency(k: usize, edges: &[(usize, usize)]) -> LocalGraph {
        let mut adj = vec![vec![false; k]; k];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        LocalGraph { center: VertexId(0), nodes: (0..k).map(EdgeId).collect(), adj }
    }

    #[test]
    fn figure_one_local_graph_at_v1() {
        let inst = fixtures::figure1();
        let l = build_local_graph(&inst, inst.graph.vertex("v1").unwrap()).unwrap();
        let ids: Vec<&str> = l.nodes().iter().map(|&e| inst.graph.edge(e).id.as_str()).collect();
        assert_eq!(ids, ["e1", "e2", "e3"]);
        assert_eq!(l.to_simple_graph().edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn isolated_vertex_has_empty_local_graph() {
        let inst = InstanceDef::default().colors(["a"]).vertices(["x"]).build().unwrap();
        let l = build_local_graph(&inst, VertexId(0)).unwrap();
        assert!(l.is_empty());
        assert_eq!(detect_complete_multipartite(&l).witness().unwrap().part_count(), 0);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let inst = fixtures::figure1();
        assert!(matches!(build_local_graph(&inst, VertexId(9)), Err(Error::UnknownVertex(_))));
        assert!(kotzig_condition(&inst, VertexId(9)).is_err());
    }

    #[test]
    fn complete_bipartite_two_three() {
        let edges: Vec<(usize, usize)> = (0..2).flat_map(|a| (2..5).map(move |b| (a, b))).collect();
        let l = local_from_adjacency(5, &edges);
        let w = detect_complete_multipartite(&l);
        let parts = &w.witness().unwrap().parts;
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].len(), 2);
        assert_eq!(parts[1].len(), 3);
    }

    #[test]
    fn path_on_three_nodes_is_a_star() {
        // a-b-c is K_{1,2}
        let l = local_from_adjacency(3, &[(0, 1), (1, 2)]);
        let w = detect_complete_multipartite(&l);
        assert_eq!(w.witness().unwrap().parts, vec![vec![EdgeId(0), EdgeId(2)], vec![EdgeId(1)]]);
    }

    #[test]
    fn edge_plus_isolated_node_is_refused() {
        let l = local_from_adjacency(3, &[(0, 1)]);
        assert_eq!(
            detect_complete_multipartite(&l),
            Multipartite::Refused { a: EdgeId(0), b: EdgeId(2), c: EdgeId(1) }
        );
    }

    #[test]
    fn edgeless_local_graph_has_one_part() {
        let l = local_from_adjacency(3, &[]);
        let w = detect_complete_multipartite(&l);
        assert_eq!(w.witness().unwrap().part_count(), 1);
        assert!(!w.has_two_parts());
    }

    #[test]
    fn figure_three_recognition() {
        let inst = fixtures::figure3();
        for v in inst.graph.vertices() {
            let l = build_local_graph(&inst, v).unwrap();
            let verdict = detect_complete_multipartite(&l);
            let name = inst.graph.vertex_name(v);
            assert_eq!(verdict.has_two_parts(), name != "x4", "vertex {name}");
        }
        let x4 = build_local_graph(&inst, inst.graph.vertex("x4").unwrap()).unwrap();
        assert_eq!(x4.len(), 6);
    }

    #[test]
    fn kotzig_examples() {
        let inst = fixtures::figure1();
        let r = kotzig_condition(&inst, inst.graph.vertex("v1").unwrap()).unwrap();
        assert_eq!(r.degrees, vec![(ColorId(0), 2), (ColorId(1), 1)]);
        assert!(!r.holds);

        let inst = InstanceDef::default()
            .colors(["a", "b"])
            .adjacent("a", "b")
            .vertices(["x", "y", "z"])
            .edge("1", "x", "y", "a")
            .edge("2", "x", "y", "a")
            .edge("3", "x", "z", "b")
            .edge("4", "x", "z", "b")
            .edge("5", "x", "z", "b")
            .build()
            .unwrap();
        let x = inst.graph.vertex("x").unwrap();
        assert!(!kotzig_condition(&inst, x).unwrap().holds);
        let y = inst.graph.vertex("y").unwrap();
        // (2, 0): a single color is never balanced
        assert!(!kotzig_condition(&inst, y).unwrap().holds);

        let balanced = InstanceDef::default()
            .colors(["a", "b"])
            .vertices(["x", "y"])
            .edge("1", "x", "y", "a")
            .edge("2", "x", "y", "a")
            .edge("3", "x", "y", "b")
            .edge("4", "x", "y", "b")
            .build()
            .unwrap();
        assert!(kotzig_condition(&balanced, VertexId(0)).unwrap().holds);
    }

    #[test]
    fn part_size_condition_examples() {
        let w = |sizes: &[usize]| MultipartiteWitness {
            parts: sizes.iter().map(|&s| (0..s).map(EdgeId).collect()).collect(),
            complete: true,
        };
        assert!(!part_size_condition(&w(&[3, 1])));
        assert!(part_size_condition(&w(&[1, 1, 1])));
        assert!(part_size_condition(&w(&[2, 2])));
    }
}
