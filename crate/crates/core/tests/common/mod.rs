#![allow(dead_code)]

use dyntrail::gen::{self, GenParams};
use dyntrail::model::{Instance, InstanceDef};
use rand::Rng;

const VERTICES: [&str; 4] = ["a", "b", "c", "d"];

/// Every instance on four labelled vertices with at most `max_edges` edges,
/// two colors and any of the eight patterns on them. Edges are listed in
/// pair order, so each multigraph appears once per coloring.
pub fn exhaustive_family(max_edges: usize) -> Vec<Instance> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
    let mut multisets: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_edges {
        let mut next = Vec::new();
        for m in &frontier {
            let from = m.last().copied().unwrap_or(0);
            for p in from..pairs.len() {
                let mut m = m.clone();
                m.push(p);
                next.push(m);
            }
        }
        multisets.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for h in 0..8u8 {
        for m in &multisets {
            for coloring in 0..1u32 << m.len() {
                let mut def = InstanceDef::default().colors(["p", "q"]).vertices(VERTICES);
                if h & 1 != 0 {
                    def = def.adjacent("p", "p");
                }
                if h & 2 != 0 {
                    def = def.adjacent("p", "q");
                }
                if h & 4 != 0 {
                    def = def.adjacent("q", "q");
                }
                for (i, &p) in m.iter().enumerate() {
                    let (a, b) = pairs[p];
                    let color = if coloring >> i & 1 == 0 { "p" } else { "q" };
                    def = def.edge(&format!("e{}", i + 1), VERTICES[a], VERTICES[b], color);
                }
                out.push(def.build().unwrap());
            }
        }
    }
    out
}

/// A random instance with at most `max_edges` edges.
pub fn random_small<R: Rng>(rng: &mut R, max_edges: usize) -> Instance {
    let p = GenParams {
        vertices: rng.gen_range(2..=5),
        edges: rng.gen_range(1..=max_edges),
        colors: rng.gen_range(1..=3),
        density: rng.gen_range(0.3..=1.0),
        max_multiplicity: rng.gen_range(1..=3),
    };
    gen::random_instance(rng, &p)
}

/// Replaces the pattern by the complete graph without loops on the same
/// colors, so that trails are properly colored.
pub fn with_loopless_complete_pattern(inst: &Instance) -> Instance {
    let mut def = inst.to_def();
    let colors = def.pattern.colors.clone();
    def.pattern.adjacent.clear();
    for (i, a) in colors.iter().enumerate() {
        for b in &colors[i + 1..] {
            def.pattern.adjacent.push([a.clone(), b.clone()]);
        }
    }
    def.build().unwrap()
}
