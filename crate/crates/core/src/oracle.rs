//! Exhaustive reference searches for small instances.
//!
//! Nothing here reuses the constructive machinery: transitions are checked
//! inline against `H`, and the searches only share the plain data types.
//! Every search refuses inputs above its [`SearchCap`] instead of running
//! unboundedly.

use std::time::{Duration, Instant};

use crate::auxiliary::AuxGraph;
use crate::bijection::AlternatingCycle;
use crate::error::{CapKind, Error, Result};
use crate::graph::SimpleGraph;
use crate::matching::Matching;
use crate::model::{EdgeId, Instance};
use crate::trail::Step;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCap {
    /// Largest `|E(G)|` for trail and partition enumeration.
    pub max_edges: usize,
    /// Largest graph for Hamiltonian and matching enumeration.
    pub max_aux_vertices: usize,
    pub time_budget: Duration,
    /// Node budget for backtracking searches.
    pub max_search_nodes: u64,
}

impl Default for SearchCap {
    fn default() -> Self {
        SearchCap {
            max_edges: 10,
            max_aux_vertices: 30,
            time_budget: Duration::from_secs(60),
            max_search_nodes: 200_000_000,
        }
    }
}

impl SearchCap {
    pub fn check_edges(&self, actual: usize) -> Result<()> {
        if actual > self.max_edges {
            return Err(Error::CapExceeded(CapKind::Edges { limit: self.max_edges, actual }));
        }
        Ok(())
    }

    pub fn check_vertices(&self, actual: usize) -> Result<()> {
        if actual > self.max_aux_vertices {
            return Err(Error::CapExceeded(CapKind::AuxVertices { limit: self.max_aux_vertices, actual }));
        }
        Ok(())
    }
}

/// Counts search nodes and watches the clock.
pub(crate) struct Budget {
    start: Instant,
    limit: Duration,
    nodes: u64,
    max_nodes: u64,
}

impl Budget {
    pub(crate) fn new(cap: &SearchCap) -> Self {
        Budget { start: Instant::now(), limit: cap.time_budget, nodes: 0, max_nodes: cap.max_search_nodes }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::CapExceeded(CapKind::SearchNodes { limit: self.max_nodes }));
        }
        if self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.limit {
            return Err(Error::CapExceeded(CapKind::Time { limit_ms: self.limit.as_millis() }));
        }
        Ok(())
    }
}

/// A closed trail in canonical rotation (starting at its smallest edge).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FoundTrail {
    pub steps: Vec<Step>,
    pub euler: bool,
}

impl FoundTrail {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    fn mask(&self) -> u64 {
        self.edges().fold(0, |m, e| m | 1 << e.0)
    }
}

/// Which consecutive traversals are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrailKind {
    /// Continuations and lane changes.
    Dynamic,
    /// Continuations only.
    Plain,
}

fn follows(inst: &Instance, kind: TrailKind, a: Step, b: Step) -> bool {
    if a.edge == b.edge {
        return false;
    }
    if b.from == a.to {
        let (ca, cb) = (inst.graph.edge(a.edge).color, inst.graph.edge(b.edge).color);
        return inst.pattern.adjacent(ca, cb);
    }
    kind == TrailKind::Dynamic && b.from == a.from && b.to == a.to
}

fn step(inst: &Instance, e: EdgeId, from: crate::model::VertexId) -> Step {
    let edge = inst.graph.edge(e);
    Step { edge: e, from, to: if edge.ends[0] == from { edge.ends[1] } else { edge.ends[0] } }
}

struct TrailSearch<'a> {
    inst: &'a Instance,
    kind: TrailKind,
    used: Vec<bool>,
    path: Vec<Step>,
    budget: Budget,
    euler_only: bool,
    stop_at_first: bool,
    found: Vec<FoundTrail>,
}

impl TrailSearch<'_> {
    fn extend(&mut self, min_edge: usize) -> Result<bool> {
        self.budget.tick()?;
        let q = self.inst.graph.edge_count();
        let last = *self.path.last().unwrap();
        let first = self.path[0];
        if self.path.len() >= 2 && follows(self.inst, self.kind, last, first) {
            let euler = self.path.len() == q;
            if euler || !self.euler_only {
                self.found.push(FoundTrail { steps: self.path.clone(), euler });
                if self.stop_at_first {
                    return Ok(true);
                }
            }
        }
        // a lane change keeps the anchor, a continuation moves to `last.to`
        for &from in &[last.to, last.from] {
            for &e in self.inst.graph.incident(from) {
                if e.0 <= min_edge || self.used[e.0] {
                    continue;
                }
                let s = step(self.inst, e, from);
                if !follows(self.inst, self.kind, last, s) {
                    continue;
                }
                self.used[e.0] = true;
                self.path.push(s);
                let stop = self.extend(min_edge)?;
                self.path.pop();
                self.used[e.0] = false;
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

fn search_trails(
    inst: &Instance,
    cap: &SearchCap,
    kind: TrailKind,
    euler_only: bool,
    stop_at_first: bool,
) -> Result<Vec<FoundTrail>> {
    let q = inst.graph.edge_count();
    cap.check_edges(q)?;
    let mut s = TrailSearch {
        inst,
        kind,
        used: vec![false; q],
        path: Vec::new(),
        budget: Budget::new(cap),
        euler_only,
        stop_at_first,
        found: Vec::new(),
    };
    // an Euler trail contains edge 0, which is then its canonical start
    let starts = if euler_only { q.min(1) } else { q };
    for e0 in 0..starts {
        let ends = inst.graph.edge(EdgeId(e0)).ends;
        for from in ends {
            s.used[e0] = true;
            s.path.push(step(inst, EdgeId(e0), from));
            let stop = s.extend(e0)?;
            s.path.pop();
            s.used[e0] = false;
            if stop {
                return Ok(s.found);
            }
        }
    }
    Ok(s.found)
}

/// Every closed dynamic H-trail of `G`, each once, in canonical rotation.
/// A trail and its reversal are both listed.
pub fn enumerate_closed_dynamic_h_trails(inst: &Instance, cap: &SearchCap) -> Result<Vec<FoundTrail>> {
    search_trails(inst, cap, TrailKind::Dynamic, false, false)
}

/// Every closed trail of the given kind.
pub fn enumerate_closed_trails(inst: &Instance, cap: &SearchCap, kind: TrailKind) -> Result<Vec<FoundTrail>> {
    search_trails(inst, cap, kind, false, false)
}

/// Some closed Euler trail of the given kind, if one exists. A graph without
/// edges has none.
pub fn find_closed_euler_trail(inst: &Instance, cap: &SearchCap, kind: TrailKind) -> Result<Option<FoundTrail>> {
    Ok(search_trails(inst, cap, kind, true, true)?.into_iter().next())
}

/// A partition of `E(G)` into closed trails of the given kind, if one
/// exists. The empty graph has the empty partition.
pub fn all_edge_partitions_into_closed_trails(
    inst: &Instance,
    cap: &SearchCap,
    kind: TrailKind,
) -> Result<Option<Vec<FoundTrail>>> {
    let q = inst.graph.edge_count();
    cap.check_edges(q)?;
    if q > 63 {
        return Err(Error::CapExceeded(CapKind::Edges { limit: 63, actual: q }));
    }
    let trails = enumerate_closed_trails(inst, cap, kind)?;
    // trails grouped by their smallest edge, which is where they start
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); q];
    for (i, t) in trails.iter().enumerate() {
        by_first[t.steps[0].edge.0].push(i);
    }
    let masks: Vec<u64> = trails.iter().map(FoundTrail::mask).collect();
    let mut budget = Budget::new(cap);
    let mut chosen = Vec::new();
    let full = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
    if cover(0, full, &by_first, &masks, &mut chosen, &mut budget)? {
        return Ok(Some(chosen.into_iter().map(|i| trails[i].clone()).collect()));
    }
    Ok(None)
}

fn cover(
    covered: u64,
    full: u64,
    by_first: &[Vec<usize>],
    masks: &[u64],
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick()?;
    if covered == full {
        return Ok(true);
    }
    // the smallest uncovered edge must be the smallest edge of its trail
    let e = (!covered).trailing_zeros() as usize;
    for &t in &by_first[e] {
        if masks[t] & covered == 0 {
            chosen.push(t);
            if cover(covered | masks[t], full, by_first, masks, chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// Every oriented alternating cycle of `L_2^H(G)`.
pub fn enumerate_alternating_cycles(aux: &AuxGraph, cap: &SearchCap) -> Result<Vec<AlternatingCycle>> {
    if aux.n() != 2 {
        return Err(Error::Precondition("alternating cycles live in L_2".into()));
    }
    cap.check_edges(aux.source_edge_count())?;
    let g = aux.graph();
    let mut budget = Budget::new(cap);
    let mut out = Vec::new();
    let mut used = vec![false; aux.vertex_count()];
    let mut path = Vec::new();
    for e0 in 0..aux.source_edge_count() {
        for (a, b) in [(2 * e0, 2 * e0 + 1), (2 * e0 + 1, 2 * e0)] {
            used[a] = true;
            used[b] = true;
            path.extend([a, b]);
            alternate(aux, g, e0, &mut used, &mut path, &mut out, &mut budget)?;
            path.clear();
            used[a] = false;
            used[b] = false;
        }
    }
    Ok(out)
}

// `path` ends on a joint edge; continue along a non-joint edge to a fresh
// end-copy of an edge larger than `e0`, then across its joint edge.
fn alternate(
    aux: &AuxGraph,
    g: &SimpleGraph,
    e0: usize,
    used: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<AlternatingCycle>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    let last = *path.last().unwrap();
    let first = path[0];
    if path.len() >= 4 && g.has_edge(last, first) && last ^ 1 != first {
        out.push(AlternatingCycle::new(aux, path.clone())?);
    }
    for &w in g.neighbors(last) {
        if w ^ 1 == last || used[w] || w / 2 <= e0 {
            continue;
        }
        let partner = w ^ 1;
        used[w] = true;
        used[partner] = true;
        path.extend([w, partner]);
        alternate(aux, g, e0, used, path, out, budget)?;
        path.truncate(path.len() - 2);
        used[w] = false;
        used[partner] = false;
    }
    Ok(())
}

/// A Hamiltonian cycle of `g` as a vertex order starting at 0, or `None`.
/// Graphs with fewer than three vertices have none.
pub fn hamiltonian_cycle(g: &SimpleGraph, cap: &SearchCap) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    cap.check_vertices(n)?;
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) || !g.is_connected() {
        return Ok(None);
    }
    let mut h = Hamilton { g, n, on_path: vec![false; n], path: vec![0], budget: Budget::new(cap) };
    h.on_path[0] = true;
    Ok(h.search()?.then_some(h.path))
}

struct Hamilton<'a> {
    g: &'a SimpleGraph,
    n: usize,
    on_path: Vec<bool>,
    path: Vec<usize>,
    budget: Budget,
}

impl Hamilton<'_> {
    fn search(&mut self) -> Result<bool> {
        self.budget.tick()?;
        let last = *self.path.last().unwrap();
        if self.path.len() == self.n {
            return Ok(self.g.has_edge(last, 0));
        }
        if !self.feasible(last) {
            return Ok(false);
        }
        // fewest onward options first
        let mut next: Vec<(usize, usize)> = self
            .g
            .neighbors(last)
            .iter()
            .filter(|&&w| !self.on_path[w])
            .map(|&w| (self.free_degree(w), w))
            .collect();
        next.sort_unstable();
        for (_, w) in next {
            self.on_path[w] = true;
            self.path.push(w);
            if self.search()? {
                return Ok(true);
            }
            self.path.pop();
            self.on_path[w] = false;
        }
        Ok(false)
    }

    fn free_degree(&self, w: usize) -> usize {
        self.g.neighbors(w).iter().filter(|&&x| !self.on_path[x]).count()
    }

    /// Every vertex off the path still has two usable neighbors (path ends
    /// count), and the vertices off the path are connected and reachable
    /// from both ends, since the rest of the cycle runs through all of them
    /// without touching the path.
    #[allow(clippy::needless_range_loop)]
    fn feasible(&self, last: usize) -> bool {
        let mut rest = vec![false; self.n];
        for v in 0..self.n {
            if self.on_path[v] {
                continue;
            }
            rest[v] = true;
            let usable = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&x| !self.on_path[x] || x == last || x == 0)
                .count();
            if usable < 2 {
                return false;
            }
        }
        let comps = self.g.components_within(&rest);
        comps.len() == 1 && {
            let c = &comps[0];
            c.iter().any(|&v| self.g.has_edge(v, 0)) && c.iter().any(|&v| self.g.has_edge(v, last))
        }
    }
}

/// Every perfect matching of `g`.
pub fn all_perfect_matchings(g: &SimpleGraph, cap: &SearchCap) -> Result<Vec<Matching>> {
    let n = g.vertex_count();
    cap.check_vertices(n)?;
    let mut out = Vec::new();
    let mut m = Matching::new(n);
    let mut budget = Budget::new(cap);
    perfect(g, &mut m, &mut out, &mut budget)?;
    Ok(out)
}

fn perfect(g: &SimpleGraph, m: &mut Matching, out: &mut Vec<Matching>, budget: &mut Budget) -> Result<()> {
    budget.tick()?;
    let Some(v) = (0..g.vertex_count()).find(|&v| m.mate(v).is_none()) else {
        out.push(m.clone());
        return Ok(());
    };
    for &w in g.neighbors(v) {
        if m.mate(w).is_none() {
            let mut next = m.clone();
            next.insert(v, w)?;
            perfect(g, &mut next, out, budget)?;
        }
    }
    Ok(())
}

/// Size of a largest matching, by trying every choice.
pub fn max_matching_size(g: &SimpleGraph, cap: &SearchCap) -> Result<usize> {
    cap.check_vertices(g.vertex_count())?;
    let mut used = vec![false; g.vertex_count()];
    Ok(best(g, 0, &mut used))
}

fn best(g: &SimpleGraph, from: usize, used: &mut [bool]) -> usize {
    let Some(v) = (from..g.vertex_count()).find(|&v| !used[v]) else {
        return 0;
    };
    used[v] = true;
    let mut top = best(g, v + 1, used);
    for &w in g.neighbors(v) {
        if !used[w] {
            used[w] = true;
            top = top.max(1 + best(g, v + 1, used));
            used[w] = false;
        }
    }
    used[v] = false;
    top
}
