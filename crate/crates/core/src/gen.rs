//! Seeded random instances for tests, benchmarks and the `generate` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::SimpleGraph;
use crate::model::{Instance, InstanceDef};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub vertices: usize,
    pub edges: usize,
    pub colors: usize,
    /// Probability of each pair (and loop) of colors being adjacent in `H`.
    pub density: f64,
    /// Upper bound on parallel edges between one pair of vertices.
    pub max_multiplicity: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { vertices: 5, edges: 7, colors: 2, density: 0.5, max_multiplicity: 2 }
    }
}

fn color_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("c{i}")).collect()
}

fn random_pattern<R: Rng>(rng: &mut R, k: usize, density: f64, def: InstanceDef) -> InstanceDef {
    let names = color_names(k);
    let mut def = def.colors(names.iter().cloned());
    for a in 0..k {
        for b in a..k {
            if rng.gen_bool(density) {
                def = def.adjacent(&names[a], &names[b]);
            }
        }
    }
    def
}

/// A random instance. Fewer edges than requested are produced when the
/// multiplicity bound leaves no room.
pub fn random_instance<R: Rng>(rng: &mut R, p: &GenParams) -> Instance {
    assert!(p.colors >= 1, "need at least one color");
    let names = color_names(p.colors);
    let mut def = random_pattern(rng, p.colors, p.density, InstanceDef::default())
        .vertices((1..=p.vertices).map(|i| format!("v{i}")));
    let mut pairs = Vec::new();
    for a in 1..=p.vertices {
        for b in a + 1..=p.vertices {
            pairs.extend(std::iter::repeat_n((a, b), p.max_multiplicity));
        }
    }
    pairs.shuffle(rng);
    pairs.truncate(p.edges);
    pairs.sort_unstable();
    for (i, (a, b)) in pairs.into_iter().enumerate() {
        let c = &names[rng.gen_range(0..p.colors)];
        def = def.edge(&format!("e{}", i + 1), &format!("v{a}"), &format!("v{b}"), c);
    }
    def.build().expect("generated instances are well formed")
}

/// A connected graph in which every degree is even, made from one random
/// closed walk of at most `length` steps over `vertices` vertices. Only visited
/// vertices are kept.
pub fn random_closed_walk_instance<R: Rng>(
    rng: &mut R,
    vertices: usize,
    length: usize,
    colors: usize,
    density: f64,
) -> Instance {
    assert!(vertices >= 2 && length >= 2, "a closed walk needs two vertices and two steps");
    let names = color_names(colors);
    let mut walk = vec![0usize];
    for _ in 0..length - 1 {
        let cur = *walk.last().unwrap();
        let mut next = rng.gen_range(0..vertices - 1);
        if next >= cur {
            next += 1;
        }
        walk.push(next);
    }
    if *walk.last().unwrap() == 0 {
        walk.pop();
    }
    walk.push(0);
    let mut visited: Vec<usize> = walk.clone();
    visited.sort_unstable();
    visited.dedup();
    let name = |v: usize| format!("v{}", visited.binary_search(&v).unwrap() + 1);
    let mut def = random_pattern(rng, colors, density, InstanceDef::default())
        .vertices((1..=visited.len()).map(|i| format!("v{i}")));
    for (i, w) in walk.windows(2).enumerate() {
        let c = &names[rng.gen_range(0..colors)];
        def = def.edge(&format!("e{}", i + 1), &name(w[0]), &name(w[1]), c);
    }
    def.build().expect("generated instances are well formed")
}

/// Erdos-Renyi `G(n, p)`.
pub fn random_simple_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let p = GenParams::default();
        assert_eq!(random_instance(&mut rng(7), &p), random_instance(&mut rng(7), &p));
    }

    #[test]
    fn multiplicity_is_bounded() {
        let p = GenParams { vertices: 3, edges: 50, max_multiplicity: 2, ..GenParams::default() };
        let inst = random_instance(&mut rng(1), &p);
        assert_eq!(inst.graph.edge_count(), 6);
        for class in inst.graph.parallel_classes() {
            assert!(class.edges.len() <= 2);
        }
    }

    #[test]
    fn closed_walks_give_even_connected_graphs() {
        let mut r = rng(3);
        for _ in 0..200 {
            let n = r.gen_range(2..6);
            let len = r.gen_range(2..9);
            let inst = random_closed_walk_instance(&mut r, n, len, 2, 0.6);
            let g = &inst.graph;
            assert!(g.is_connected());
            assert!(g.vertices().all(|v| g.degree(v) % 2 == 0 && g.degree(v) > 0));
        }
    }
}
