//! Pattern graphs, H-colored multigraphs and their validation.
//!
//! A [`PatternGraph`] `H` (loops allowed) lists the colors and which color
//! transitions are permitted. A [`ColoredMultigraph`] `G` is a loopless
//! multigraph whose every edge carries one color of `H`. Both are built from
//! the serializable [`InstanceDef`] description, which may be malformed;
//! [`validate_instance`] reports every problem instead of stopping at the
//! first one.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

macro_rules! index_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl From<usize> for $name {
            fn from(i: usize) -> Self {
                $name(i)
            }
        }
    };
}

index_newtype!(
    /// Position of a vertex of `G` in insertion order.
    VertexId
);
index_newtype!(
    /// Position of an edge of `G` in insertion order. Edge order is the
    /// canonical order used everywhere (rotations, search, output).
    EdgeId
);
index_newtype!(
    /// Position of a color (a vertex of `H`) in insertion order.
    ColorId
);

/// The graph `H` of permitted color transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    names: Vec<String>,
    index: HashMap<String, ColorId>,
    adj: Vec<Vec<bool>>,
}

impl PatternGraph {
    /// Builds a pattern graph from color names and adjacent name pairs.
    /// A pair `(c, c)` is a loop.
    pub fn new<S, P>(colors: impl IntoIterator<Item = S>, pairs: impl IntoIterator<Item = (P, P)>) -> Result<Self, ValidationReport>
    where
        S: Into<String>,
        P: AsRef<str>,
    {
        let def = PatternDef {
            colors: colors.into_iter().map(Into::into).collect(),
            adjacent: pairs
                .into_iter()
                .map(|(a, b)| [a.as_ref().to_string(), b.as_ref().to_string()])
                .collect(),
        };
        let mut report = ValidationReport::default();
        check_pattern(&def, &mut report);
        if report.is_ok() {
            Ok(Self::from_checked(&def))
        } else {
            Err(report)
        }
    }

    /// The complete graph on `k` colors named `c0..c{k-1}`, with or without
    /// loops.
    pub fn complete(k: usize, loops: bool) -> Self {
        let colors: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
        let mut pairs = Vec::new();
        for a in 0..k {
            for b in a..k {
                if a != b || loops {
                    pairs.push((colors[a].clone(), colors[b].clone()));
                }
            }
        }
        Self::new(colors.clone(), pairs).expect("generated pattern is well-formed")
    }

    fn from_checked(def: &PatternDef) -> Self {
        let names = def.colors.clone();
        let index: HashMap<String, ColorId> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), ColorId(i))).collect();
        let k = names.len();
        let mut adj = vec![vec![false; k]; k];
        for [a, b] in &def.adjacent {
            let (a, b) = (index[a].0, index[b].0);
            adj[a][b] = true;
            adj[b][a] = true;
        }
        PatternGraph { names, index, adj }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn colors(&self) -> impl Iterator<Item = ColorId> + '_ {
        (0..self.names.len()).map(ColorId)
    }

    pub fn color(&self, name: &str) -> Option<ColorId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, c: ColorId) -> &str {
        &self.names[c.0]
    }

    /// Whether `a` and `b` are adjacent in `H` (for `a == b`: whether `a`
    /// carries a loop).
    #[inline]
    pub fn adjacent(&self, a: ColorId, b: ColorId) -> bool {
        self.adj[a.0][b.0]
    }

    /// Adjacent pairs `(a, b)` with `a <= b`, in color order.
    pub fn pairs(&self) -> impl Iterator<Item = (ColorId, ColorId)> + '_ {
        let k = self.len();
        (0..k).flat_map(move |a| (a..k).filter(move |&b| self.adj[a][b]).map(move |b| (ColorId(a), ColorId(b))))
    }
}

/// One edge of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: [VertexId; 2],
    pub color: ColorId,
}

impl Edge {
    /// The endpoint of this edge that is not `v`.
    ///
    /// # Panics
    ///
    /// Panics if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            assert_eq!(self.ends[1], v, "vertex is not an endpoint of edge {}", self.id);
            self.ends[0]
        }
    }

    pub fn is_incident(&self, v: VertexId) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }

    /// Endpoints ordered by vertex position.
    pub fn sorted_ends(&self) -> (VertexId, VertexId) {
        let [a, b] = self.ends;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Same unordered endpoint pair. An edge counts as parallel to itself.
    pub fn same_ends(&self, other: &Edge) -> bool {
        self.sorted_ends() == other.sorted_ends()
    }
}

/// A loopless multigraph with a total edge coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredMultigraph {
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    incident: Vec<Vec<EdgeId>>,
}

impl ColoredMultigraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_id(&self, id: &str) -> Option<EdgeId> {
        self.edge_index.get(id).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertex_names.len()
    }

    /// Edges incident with `v`, in edge order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v.0].len()
    }

    /// Distinct edges with the same endpoints.
    pub fn parallel(&self, e: EdgeId, g: EdgeId) -> bool {
        e != g && self.edge(e).same_ends(self.edge(g))
    }

    /// The parallel classes `E_xy`, each listed in edge order, classes
    /// ordered by their first edge.
    pub fn parallel_classes(&self) -> Vec<ParallelClass> {
        let mut by_pair: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        let mut classes: Vec<ParallelClass> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let (x, y) = e.sorted_ends();
            let slot = *by_pair.entry((x, y)).or_insert_with(|| {
                classes.push(ParallelClass { x, y, edges: Vec::new() });
                classes.len() - 1
            });
            classes[slot].edges.push(EdgeId(i));
        }
        classes
    }

    /// Connected components (vertex lists) of the whole graph, isolated
    /// vertices included.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![VertexId(s)];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &e in self.incident(v) {
                    let w = self.edge(e).other(v);
                    if !seen[w.0] {
                        seen[w.0] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Number of components that contain at least one edge.
    pub fn edge_components(&self) -> usize {
        self.components().iter().filter(|c| c.iter().any(|&v| self.degree(v) > 0)).count()
    }
}

/// The set `E_xy` of all edges joining `x` and `y` (`x < y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelClass {
    pub x: VertexId,
    pub y: VertexId,
    pub edges: Vec<EdgeId>,
}

/// A validated pattern graph together with a graph colored by it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub pattern: PatternGraph,
    pub graph: ColoredMultigraph,
}

impl Instance {
    pub fn from_def(def: &InstanceDef) -> Result<Self, ValidationReport> {
        let report = validate_instance(&def.pattern, &def.graph);
        if !report.is_ok() {
            return Err(report);
        }
        let pattern = PatternGraph::from_checked(&def.pattern);
        let vertex_names = def.graph.vertices.clone();
        let vertex_index: HashMap<String, VertexId> =
            vertex_names.iter().enumerate().map(|(i, n)| (n.clone(), VertexId(i))).collect();
        let mut incident = vec![Vec::new(); vertex_names.len()];
        let mut edges = Vec::with_capacity(def.graph.edges.len());
        let mut edge_index = HashMap::new();
        for (i, e) in def.graph.edges.iter().enumerate() {
            let ends = [vertex_index[&e.ends[0]], vertex_index[&e.ends[1]]];
            incident[ends[0].0].push(EdgeId(i));
            incident[ends[1].0].push(EdgeId(i));
            edge_index.insert(e.id.clone(), EdgeId(i));
            edges.push(Edge { id: e.id.clone(), ends, color: pattern.index[&e.color] });
        }
        Ok(Instance {
            pattern,
            graph: ColoredMultigraph { vertex_names, vertex_index, edges, edge_index, incident },
        })
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> ColorId {
        self.graph.edge(e).color
    }

    /// Whether the colors of `e` and `g` are adjacent in `H`.
    #[inline]
    pub fn colors_adjacent(&self, e: EdgeId, g: EdgeId) -> bool {
        self.pattern.adjacent(self.color(e), self.color(g))
    }

    /// Serializable description of this instance.
    pub fn to_def(&self) -> InstanceDef {
        let pattern = PatternDef {
            colors: self.pattern.names.clone(),
            adjacent: self
                .pattern
                .pairs()
                .map(|(a, b)| [self.pattern.name(a).to_string(), self.pattern.name(b).to_string()])
                .collect(),
        };
        let graph = GraphDef {
            vertices: self.graph.vertex_names.clone(),
            edges: self
                .graph
                .edges
                .iter()
                .map(|e| EdgeDef {
                    id: e.id.clone(),
                    ends: [
                        self.graph.vertex_name(e.ends[0]).to_string(),
                        self.graph.vertex_name(e.ends[1]).to_string(),
                    ],
                    color: self.pattern.name(e.color).to_string(),
                })
                .collect(),
        };
        InstanceDef { pattern, graph }
    }
}

/// Serializable description of `H`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDef {
    pub colors: Vec<String>,
    #[serde(default)]
    pub adjacent: Vec<[String; 2]>,
}

/// Serializable description of `G`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDef {
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDef {
    pub id: String,
    pub ends: [String; 2],
    pub color: String,
}

/// Unvalidated instance description, with a small builder API.
///
/// ```
/// use dyntrail::model::InstanceDef;
///
/// let inst = InstanceDef::default()
///     .colors(["blue", "red"])
///     .adjacent("blue", "blue")
///     .vertices(["x", "y"])
///     .edge("e", "x", "y", "blue")
///     .build()
///     .unwrap();
/// assert_eq!(inst.graph.edge_count(), 1);
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceDef {
    pub pattern: PatternDef,
    pub graph: GraphDef,
}

impl InstanceDef {
    pub fn colors<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.pattern.colors.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn adjacent(mut self, a: &str, b: &str) -> Self {
        self.pattern.adjacent.push([a.to_string(), b.to_string()]);
        self
    }

    pub fn vertices<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.graph.vertices.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(mut self, id: &str, u: &str, v: &str, color: &str) -> Self {
        self.graph.edges.push(EdgeDef {
            id: id.to_string(),
            ends: [u.to_string(), v.to_string()],
            color: color.to_string(),
        });
        self
    }

    pub fn build(&self) -> Result<Instance, ValidationReport> {
        Instance::from_def(self)
    }
}

/// One well-formedness problem, positioned by the field path of the
/// offending item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateColor { index: usize, name: String },
    UnknownPatternColor { index: usize, name: String },
    DuplicateVertex { index: usize, name: String },
    DuplicateEdgeId { index: usize, id: String },
    UnknownEndpoint { index: usize, id: String, vertex: String },
    LoopEdge { index: usize, id: String, vertex: String },
    UnknownColor { index: usize, id: String, color: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateColor { index, name } => {
                write!(f, "pattern.colors[{index}]: duplicate color '{name}'")
            }
            Violation::UnknownPatternColor { index, name } => {
                write!(f, "pattern.adjacent[{index}]: unknown color '{name}'")
            }
            Violation::DuplicateVertex { index, name } => {
                write!(f, "graph.vertices[{index}]: duplicate vertex '{name}'")
            }
            Violation::DuplicateEdgeId { index, id } => {
                write!(f, "graph.edges[{index}]: duplicate edge id '{id}'")
            }
            Violation::UnknownEndpoint { index, id, vertex } => {
                write!(f, "graph.edges[{index}] ('{id}'): unknown vertex '{vertex}'")
            }
            Violation::LoopEdge { index, id, vertex } => {
                write!(f, "graph.edges[{index}] ('{id}'): loop at vertex '{vertex}'")
            }
            Violation::UnknownColor { index, id, color } => {
                write!(f, "graph.edges[{index}] ('{id}'): unknown color '{color}'")
            }
        }
    }
}

/// All violations found in an instance description; empty iff well-formed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "well-formed");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

fn check_pattern(def: &PatternDef, report: &mut ValidationReport) {
    let mut seen = HashSet::new();
    for (i, c) in def.colors.iter().enumerate() {
        if !seen.insert(c.as_str()) {
            report.violations.push(Violation::DuplicateColor { index: i, name: c.clone() });
        }
    }
    for (i, pair) in def.adjacent.iter().enumerate() {
        for c in pair {
            if !seen.contains(c.as_str()) {
                report.violations.push(Violation::UnknownPatternColor { index: i, name: c.clone() });
            }
        }
    }
}

/// Reports every problem with `H` and `G`: duplicate ids, unknown colors or
/// vertices, and loops.
pub fn validate_instance(pattern: &PatternDef, graph: &GraphDef) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_pattern(pattern, &mut report);
    let colors: HashSet<&str> = pattern.colors.iter().map(String::as_str).collect();

    let mut vertices = HashSet::new();
    for (i, v) in graph.vertices.iter().enumerate() {
        if !vertices.insert(v.as_str()) {
            report.violations.push(Violation::DuplicateVertex { index: i, name: v.clone() });
        }
    }
    let mut ids = HashSet::new();
    for (i, e) in graph.edges.iter().enumerate() {
        if !ids.insert(e.id.as_str()) {
            report.violations.push(Violation::DuplicateEdgeId { index: i, id: e.id.clone() });
        }
        for v in &e.ends {
            if !vertices.contains(v.as_str()) {
                report.violations.push(Violation::UnknownEndpoint {
                    index: i,
                    id: e.id.clone(),
                    vertex: v.clone(),
                });
            }
        }
        if e.ends[0] == e.ends[1] {
            report.violations.push(Violation::LoopEdge { index: i, id: e.id.clone(), vertex: e.ends[0].clone() });
        }
        if !colors.contains(e.color.as_str()) {
            report.violations.push(Violation::UnknownColor {
                index: i,
                id: e.id.clone(),
                color: e.color.clone(),
            });
        }
    }
    report
}
