//! Simple undirected graphs over `0..n`, the host type for matchings and
//! Hamiltonian search.

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    ///
    /// # Panics
    ///
    /// Panics on a loop or an endpoint `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "simple graphs have no loops");
        assert!(u < self.adj.len() && v < self.adj.len(), "vertex out of range");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Connected components of the subgraph induced by `keep`, as vertex
    /// lists.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !keep[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&vec![true; self.adj.len()]).len() <= 1
    }

    /// Whether `cycle` (vertex order, closing edge implied) is a cycle of
    /// this graph visiting every vertex exactly once.
    pub fn is_hamiltonian_cycle(&self, cycle: &[usize]) -> bool {
        let n = self.adj.len();
        if n < 3 || cycle.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in cycle {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        (0..n).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % n]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_edges_collapse() {
        let g = SimpleGraph::from_edges(3, [(0, 1), (1, 0), (1, 2)]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn components_respect_the_mask() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let comps = g.components_within(&[true, false, true, true]);
        assert_eq!(comps, vec![vec![0], vec![2, 3]]);
    }

    #[test]
    fn hamiltonian_cycle_check() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(g.is_hamiltonian_cycle(&[0, 1, 2, 3]));
        assert!(!g.is_hamiltonian_cycle(&[0, 2, 1, 3]));
    }
}
