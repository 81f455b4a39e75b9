//! Matchings in simple graphs: maximum matching, perfect matchings avoiding
//! the joint matching, cycle decomposition of a union of two perfect
//! matchings, and the Tutte condition.

use crate::auxiliary::AuxGraph;
use crate::error::{CapKind, Error, Result};
use crate::graph::SimpleGraph;

const NONE: usize = usize::MAX;

/// A set of pairwise disjoint vertex pairs over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<usize>,
}

impl Matching {
    pub fn new(n: usize) -> Self {
        Matching { mate: vec![NONE; n] }
    }

    /// Fails if two pairs share a vertex or a pair is a loop.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut m = Matching::new(n);
        for (a, b) in edges {
            m.insert(a, b)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b || a >= self.mate.len() || b >= self.mate.len() {
            return Err(Error::Precondition(format!("({a}, {b}) is not a valid matching edge")));
        }
        if self.mate[a] != NONE || self.mate[b] != NONE {
            return Err(Error::Precondition(format!("({a}, {b}) meets an already matched vertex")));
        }
        self.mate[a] = b;
        self.mate[b] = a;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    #[inline]
    pub fn mate(&self, v: usize) -> Option<usize> {
        let m = self.mate[v];
        (m != NONE).then_some(m)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.mate.len() && self.mate[a] == b
    }

    /// Pairs `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.mate.len()).filter(|&a| self.mate[a] != NONE && a < self.mate[a]).map(|a| (a, self.mate[a])).collect()
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&m| m != NONE)
    }

    /// Whether every pair is an edge of `g`.
    pub fn is_matching_in(&self, g: &SimpleGraph) -> bool {
        self.mate.len() == g.vertex_count() && self.edges().iter().all(|&(a, b)| g.has_edge(a, b))
    }
}

/// Maximum-cardinality matching by augmenting paths with blossom shrinking.
/// Roots are scanned in vertex order, so the result is deterministic.
pub fn maximum_matching(g: &SimpleGraph) -> Matching {
    let n = g.vertex_count();
    let mut s = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: Vec::new(),
    };
    for root in 0..n {
        if s.mate[root] == NONE {
            if let Some(mut v) = s.find_path(root) {
                while v != NONE {
                    let pv = s.parent[v];
                    let next = s.mate[pv];
                    s.mate[v] = pv;
                    s.mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    Matching { mate: s.mate }
}

struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the free vertex that
    /// ends an augmenting path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push(m);
                }
            }
        }
        None
    }
}

/// A perfect matching of `L_2^H(G)` using no joint-matching edge, or `None`
/// if the maximum matching of that subgraph is not perfect.
pub fn perfect_matching_avoiding(aux: &AuxGraph) -> Result<Option<Matching>> {
    let g = aux.without_joint_matching()?;
    let m = maximum_matching(&g);
    Ok(m.is_perfect().then_some(m))
}

/// Splits the union of two disjoint perfect matchings into alternating
/// cycles. Each cycle starts at its smallest vertex and leaves it along
/// `m1`.
pub fn decompose_union(m1: &Matching, m2: &Matching) -> Result<Vec<Vec<usize>>> {
    let n = m1.vertex_count();
    if m2.vertex_count() != n || !m1.is_perfect() || !m2.is_perfect() {
        return Err(Error::Precondition("both matchings must be perfect on the same vertex set".into()));
    }
    if let Some(v) = (0..n).find(|&v| m1.mate[v] == m2.mate[v]) {
        return Err(Error::Precondition(format!("the matchings share the edge ({v}, {})", m1.mate[v])));
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = s;
        loop {
            seen[v] = true;
            cycle.push(v);
            let w = m1.mate[v];
            seen[w] = true;
            cycle.push(w);
            v = m2.mate[w];
            if v == s {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Checks `o(G - S) <= |S|` for every proper subset `S` of the vertices by
/// enumeration. Refuses graphs with more than `cap` vertices.
pub fn tutte_check(g: &SimpleGraph, cap: usize) -> Result<bool> {
    let n = g.vertex_count();
    if n > cap || n >= 63 {
        return Err(Error::CapExceeded(CapKind::AuxVertices { limit: cap.min(62), actual: n }));
    }
    let full: u64 = (1u64 << n) - 1;
    for s in 0..full {
        let size = s.count_ones() as usize;
        let keep: Vec<bool> = (0..n).map(|v| s >> v & 1 == 0).collect();
        let odd = g.components_within(&keep).iter().filter(|c| c.len() % 2 == 1).count();
        if odd > size {
            return Ok(false);
        }
    }
    Ok(true)
}
