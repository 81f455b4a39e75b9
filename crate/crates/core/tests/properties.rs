mod common;

use std::collections::BTreeSet;

use dyntrail::auxiliary::{self, build_aux};
use dyntrail::bijection::{cycle_to_trail, trail_to_cycle, AlternatingCycle};
use dyntrail::gen;
use dyntrail::io::{parse_document, serialize_document};
use dyntrail::local::{build_local_graph, detect_complete_multipartite, Multipartite};
use dyntrail::matching::{maximum_matching, perfect_matching_avoiding, tutte_check};
use dyntrail::model::{Instance, InstanceDef};
use dyntrail::oracle::{self, SearchCap, TrailKind};
use dyntrail::saturation::{classify_saturation, extend_matching, find_local_matching, local_part};
use dyntrail::solver::{self, hamiltonicity_equivalence_check, matching_from_partition, partition_from_matching};
use dyntrail::trail::{
    canonical_form, check_dynamic_h_trail, normalize_closed_b, ClosedTrail, Closure, LaneGroup, TrailVerdict,
};
use dyntrail::{DynamicHTrail, EdgeId, SimpleGraph};
use proptest::prelude::*;

fn instance(seed: u64, max_edges: usize) -> Instance {
    common::random_small(&mut gen::rng(seed), max_edges)
}

fn closed_trails(inst: &Instance, kind: TrailKind) -> Vec<ClosedTrail> {
    oracle::enumerate_closed_trails(inst, &SearchCap::default(), kind)
        .unwrap()
        .into_iter()
        .map(|t| ClosedTrail::new(inst, t.steps).unwrap())
        .collect()
}

fn edge_set(w: &DynamicHTrail) -> Vec<EdgeId> {
    let mut v: Vec<EdgeId> = w.edges().collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn trails_without_lane_changes_are_dynamic_trails(seed in any::<u64>()) {
        let inst = instance(seed, 7);
        for t in closed_trails(&inst, TrailKind::Plain) {
            let w = t.to_dynamic(&inst);
            prop_assert_eq!(check_dynamic_h_trail(&inst, &w).unwrap(), TrailVerdict::Valid);
        }
    }

    #[test]
    fn blocks_need_parallel_edges(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let p = gen::GenParams { max_multiplicity: 1, ..gen::GenParams::default() };
        let inst = gen::random_instance(&mut rng, &p);
        let g = &inst.graph;
        for v in g.vertices() {
            let inc = g.incident(v);
            if inc.len() >= 2 {
                let w = DynamicHTrail {
                    groups: vec![LaneGroup { anchor: v, block: vec![inc[0], inc[1]] }],
                    terminal: g.edge(inc[1]).other(v),
                    closure: Closure::Open,
                };
                prop_assert!(check_dynamic_h_trail(&inst, &w).is_err());
            }
        }
    }

    #[test]
    fn canonical_form_ignores_rotation(seed in any::<u64>()) {
        let inst = instance(seed, 7);
        for t in closed_trails(&inst, TrailKind::Dynamic) {
            let w = t.to_dynamic(&inst);
            let canon = canonical_form(&inst, &w).unwrap();
            for r in 0..t.len() {
                prop_assert_eq!(&t.rotated(r).canonical().steps().to_vec(), &canon);
            }
        }
    }

    #[test]
    fn closed_b_normalization_keeps_edges_and_validity(seed in any::<u64>()) {
        let inst = instance(seed, 7);
        for t in closed_trails(&inst, TrailKind::Dynamic) {
            for r in 0..t.len() {
                let w = t.rotated(r).to_dynamic(&inst);
                let (n, _) = normalize_closed_b(&inst, &w).unwrap();
                prop_assert_eq!(edge_set(&n), edge_set(&w));
                prop_assert_eq!(check_dynamic_h_trail(&inst, &n).unwrap(), TrailVerdict::Valid);
            }
        }
    }

    /// A star with one color per edge realizes any simple graph as a local
    /// graph: `G_u` is `H` itself.
    #[test]
    fn multipartite_recognition_matches_equivalence_test(k in 1usize..7, mask in any::<u32>()) {
        let colors: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
        let mut def = InstanceDef::default().colors(colors.iter().cloned()).vertices(["u"]);
        let mut adj = vec![vec![false; k]; k];
        let mut bit = 0;
        for a in 0..k {
            for b in a + 1..k {
                if mask >> bit & 1 == 1 {
                    def = def.adjacent(&colors[a], &colors[b]);
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
                bit += 1;
            }
        }
        def = def.vertices((0..k).map(|i| format!("w{i}")));
        for (i, c) in colors.iter().enumerate() {
            def = def.edge(&format!("e{i}"), "u", &format!("w{i}"), c);
        }
        let inst = def.build().unwrap();
        let l = build_local_graph(&inst, inst.graph.vertex("u").unwrap()).unwrap();
        // non-adjacency (with reflexivity) must be transitive
        let equivalence = (0..k).all(|a| {
            (0..k).all(|b| (0..k).all(|c| a == c || adj[a][b] || adj[b][c] || !adj[a][c]))
        });
        match detect_complete_multipartite(&l) {
            Multipartite::Complete(w) => {
                prop_assert!(equivalence);
                for p in &w.parts {
                    for &x in p {
                        for &y in p {
                            prop_assert!(x == y || !l.adjacent(l.position(x).unwrap(), l.position(y).unwrap()));
                        }
                    }
                }
            }
            Multipartite::Refused { a, b, c } => {
                prop_assert!(!equivalence);
                let (a, b, c) = (a.0, b.0, c.0);
                prop_assert!(adj[a][c] && !adj[a][b] && !adj[b][c]);
            }
        }
    }

    #[test]
    fn loopless_complete_pattern_gives_color_classes(seed in any::<u64>()) {
        let inst = common::with_loopless_complete_pattern(&instance(seed, 8));
        let g = &inst.graph;
        for u in g.vertices() {
            let l = build_local_graph(&inst, u).unwrap();
            let Multipartite::Complete(w) = detect_complete_multipartite(&l) else {
                return Err(TestCaseError::fail("refused"));
            };
            let mut parts: Vec<BTreeSet<EdgeId>> = w.parts.iter().map(|p| p.iter().copied().collect()).collect();
            parts.sort();
            let mut classes: Vec<BTreeSet<EdgeId>> = inst
                .pattern
                .colors()
                .map(|c| g.incident(u).iter().copied().filter(|&e| g.edge(e).color == c).collect::<BTreeSet<_>>())
                .filter(|s| !s.is_empty())
                .collect();
            classes.sort();
            prop_assert_eq!(parts, classes);
        }
    }

    #[test]
    fn aux_graph_invariants(seed in any::<u64>(), n in 2usize..5) {
        let inst = instance(seed, 8);
        let g = &inst.graph;
        let aux = build_aux(&inst, n).unwrap();
        prop_assert_eq!(aux.vertex_count(), auxiliary::vertex_count(g.edge_count(), n));
        let l2 = build_aux(&inst, 2).unwrap();
        if n >= 3 {
            prop_assert_eq!(aux.contract_paths().unwrap(), l2.clone());
        }
        let mj = l2.joint_matching().unwrap();
        let mut covered = vec![0; l2.vertex_count()];
        for (a, b) in mj {
            covered[a] += 1;
            covered[b] += 1;
        }
        prop_assert!(covered.iter().all(|&c| c == 1));
        for u in g.vertices() {
            let l = build_local_graph(&inst, u).unwrap();
            for (i, &e) in g.incident(u).iter().enumerate() {
                let fe = l2.end_copy(u, e).unwrap();
                let adjacent = g.incident(u).iter().filter(|&&h| h != e && inst.colors_adjacent(e, h)).count();
                let parallel = g.edge_ids().filter(|&h| h != e && g.parallel(e, h)).count();
                prop_assert_eq!(l2.graph().degree(fe), adjacent + parallel + 1);
                for (j, &h) in g.incident(u).iter().enumerate() {
                    let fh = aux.end_copy(u, h).unwrap();
                    let fe = aux.end_copy(u, e).unwrap();
                    let li = l.position(e).unwrap();
                    let lj = l.position(h).unwrap();
                    prop_assert_eq!(i != j && aux.graph().has_edge(fe, fh), i != j && l.adjacent(li, lj));
                }
            }
        }
    }

    #[test]
    fn trail_cycle_round_trips(seed in any::<u64>()) {
        let inst = instance(seed, 7);
        let aux = build_aux(&inst, 2).unwrap();
        for t in closed_trails(&inst, TrailKind::Dynamic) {
            let w = t.to_dynamic(&inst);
            let c = trail_to_cycle(&inst, &aux, &w).unwrap();
            prop_assert_eq!(c.len(), 2 * t.len());
            let back = cycle_to_trail(&inst, &aux, &c).unwrap();
            prop_assert_eq!(check_dynamic_h_trail(&inst, &back).unwrap(), TrailVerdict::Valid);
            prop_assert!(back.closure != Closure::Open);
            prop_assert_eq!(canonical_form(&inst, &back).unwrap(), canonical_form(&inst, &w).unwrap());
        }
        for c in oracle::enumerate_alternating_cycles(&aux, &SearchCap::default()).unwrap() {
            let w = cycle_to_trail(&inst, &aux, &c).unwrap();
            let again: AlternatingCycle = trail_to_cycle(&inst, &aux, &w).unwrap();
            prop_assert_eq!(again, c);
        }
    }

    #[test]
    fn blossom_matches_brute_force(n in 0usize..=12, p in 0.05f64..0.95, seed in any::<u64>()) {
        let g = gen::random_simple_graph(&mut gen::rng(seed), n, p);
        let m = maximum_matching(&g);
        prop_assert!(m.is_matching_in(&g));
        let cap = SearchCap { max_aux_vertices: 12, ..SearchCap::default() };
        prop_assert_eq!(m.len(), oracle::max_matching_size(&g, &cap).unwrap());
        if n <= 10 {
            prop_assert_eq!(tutte_check(&g, 10).unwrap(), m.is_perfect());
        }
    }

    #[test]
    fn engine_and_enumeration_agree_on_perfect_matchings(seed in any::<u64>()) {
        let inst = instance(seed, 7);
        let aux = build_aux(&inst, 2).unwrap();
        let engine = perfect_matching_avoiding(&aux).unwrap();
        let all = oracle::all_perfect_matchings(&aux.without_joint_matching().unwrap(), &SearchCap::default()).unwrap();
        prop_assert_eq!(engine.is_some(), !all.is_empty());
        for m in &all {
            let p = partition_from_matching(&inst, &aux, m).unwrap();
            prop_assert_eq!(&matching_from_partition(&inst, &aux, &p).unwrap(), m);
        }
    }

    #[test]
    fn extension_is_perfect_and_keeps_local_blocks(seed in any::<u64>()) {
        let inst = instance(seed, 8);
        let aux = build_aux(&inst, 2).unwrap();
        let Some(m) = find_local_matching(&inst, &aux, &SearchCap::default()).unwrap() else {
            return Ok(());
        };
        let classes = classify_saturation(&inst, &aux, &m).unwrap();
        for c in &classes {
            let total = c.x_only.len() + c.y_only.len() + c.both.len() + c.neither.len();
            prop_assert_eq!(total, inst.graph.parallel_classes().iter().find(|p| p.x == c.x && p.y == c.y).unwrap().edges.len());
        }
        let full = extend_matching(&inst, &aux, &m).unwrap();
        prop_assert!(full.is_perfect());
        prop_assert!(full.is_matching_in(&aux.without_joint_matching().unwrap()));
        for (a, b) in local_part(&aux, &m).edges() {
            prop_assert!(full.contains(a, b));
        }
    }

    #[test]
    fn euler_trail_implies_hamiltonian_aux(seed in any::<u64>(), n in 2usize..5) {
        let inst = instance(seed, 6);
        let cap = SearchCap::default();
        let r = hamiltonicity_equivalence_check(&inst, n, &cap).unwrap();
        prop_assert!(r.consistent(), "{:?}", r);
    }

    #[test]
    fn solver_is_sound(seed in any::<u64>()) {
        let inst = instance(seed, 8);
        let outcome = solver::find_closed_euler_dynamic_h_trail(&inst, &SearchCap::default()).unwrap();
        let oracle = oracle::find_closed_euler_trail(&inst, &SearchCap::default(), TrailKind::Dynamic).unwrap();
        match outcome.trail() {
            Some(w) => {
                prop_assert_eq!(check_dynamic_h_trail(&inst, w).unwrap(), TrailVerdict::Valid);
                prop_assert_eq!(edge_set(w), inst.graph.edge_ids().collect::<Vec<_>>());
            }
            None => prop_assert!(oracle.is_none()),
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let inst = instance(seed, 8);
        let trails: Vec<DynamicHTrail> = closed_trails(&inst, TrailKind::Dynamic).iter().take(3).map(|t| t.to_dynamic(&inst)).collect();
        let text = serialize_document(&inst, &trails);
        let doc = parse_document(&text).unwrap();
        prop_assert_eq!(&doc.instance, &inst);
        prop_assert_eq!(&doc.trails, &trails);
        prop_assert_eq!(serialize_document(&doc.instance, &doc.trails), text);
    }
}

/// Few random instances split into several trails, so this sweeps seeds
/// instead of sampling.
#[test]
fn merging_keeps_every_edge() {
    let mut merges = 0;
    for seed in 0..2000 {
        let inst = instance(seed, 8);
        let Some(witnesses) = solver::multipartite_hypotheses(&inst).unwrap() else {
            continue;
        };
        let aux = build_aux(&inst, 2).unwrap();
        let Some(m) = find_local_matching(&inst, &aux, &SearchCap::default()).unwrap() else {
            continue;
        };
        let p = partition_from_matching(&inst, &aux, &extend_matching(&inst, &aux, &m).unwrap()).unwrap();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let (t1, t2) = (&p.trails[i], &p.trails[j]);
                if t1.is_degenerate(&inst) || t2.is_degenerate(&inst) {
                    continue;
                }
                let Some(v) = t1.vertices().into_iter().find(|v| t2.vertices().contains(v)) else {
                    continue;
                };
                let merged = solver::merge_trails(&inst, t1, t2, v, &witnesses[v.index()]).unwrap();
                let mut got: Vec<EdgeId> = merged.edges().collect();
                got.sort();
                let mut want: Vec<EdgeId> = t1.edges().chain(t2.edges()).collect();
                want.sort();
                assert_eq!(got, want, "seed {seed}");
                merges += 1;
            }
        }
    }
    assert!(merges > 10, "only {merges} merges exercised");
}

#[test]
fn empty_graph_has_no_matching_work() {
    let g = SimpleGraph::new(0);
    assert!(maximum_matching(&g).is_perfect());
}
