//! Partitions into closed trails, merging, and the closed Euler trail
//! decision.
//!
//! A perfect matching `M` of `L_2^H(G)` that avoids the joint matching `J`
//! splits, together with `J`, into alternating cycles, and each cycle reads
//! as a closed trail; conversely a partition of `E(G)` into closed trails
//! gives such a matching. When every `G_u` is complete multipartite, closed
//! trails through a common vertex can always be spliced into one, so an
//! Euler trail exists iff the trails can be chosen without any that is a
//! single block of parallel edges.

use crate::auxiliary::{build_aux, AuxGraph};
use crate::bijection::{closed_trail_to_cycle, cycle_to_closed_trail, AlternatingCycle};
use crate::error::{CapKind, Error, Result};
use crate::local::{build_local_graph, detect_complete_multipartite, part_size_condition, MultipartiteWitness};
use crate::matching::{decompose_union, maximum_matching, Matching};
use crate::model::{EdgeId, Instance, VertexId};
use crate::oracle::{self, SearchCap, TrailKind};
use crate::saturation::{extend_matching, find_local_matching};
use crate::trail::{is_euler, ClosedTrail, DynamicHTrail, Step, Transition};

/// Closed trails whose edge sets partition `E(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailPartition {
    pub trails: Vec<ClosedTrail>,
    /// Per trail: whether it is a single block of parallel edges.
    pub degenerate: Vec<bool>,
}

impl TrailPartition {
    /// Validates disjointness and coverage.
    pub fn new(inst: &Instance, trails: Vec<ClosedTrail>) -> Result<Self> {
        let mut seen = vec![false; inst.graph.edge_count()];
        for t in &trails {
            for e in t.edges() {
                if std::mem::replace(&mut seen[e.0], true) {
                    return Err(Error::Precondition(format!("edge {} is in two trails", inst.graph.edge(e).id)));
                }
            }
        }
        if let Some(e) = seen.iter().position(|s| !s) {
            return Err(Error::Precondition(format!("edge {} is in no trail", inst.graph.edge(EdgeId(e)).id)));
        }
        let degenerate = trails.iter().map(|t| t.is_degenerate(inst)).collect();
        Ok(TrailPartition { trails, degenerate })
    }

    pub fn len(&self) -> usize {
        self.trails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trails.is_empty()
    }

    pub fn dynamic(&self, inst: &Instance) -> Vec<DynamicHTrail> {
        self.trails.iter().map(|t| t.to_dynamic(inst)).collect()
    }
}

/// Reads the closed trails off the alternating cycles of `M ∪ J`.
pub fn partition_from_matching(inst: &Instance, aux: &AuxGraph, m: &Matching) -> Result<TrailPartition> {
    let without_joint = aux.without_joint_matching()?;
    if !m.is_perfect() || !m.is_matching_in(&without_joint) {
        return Err(Error::Precondition("expected a perfect matching of L_2 without joint edges".into()));
    }
    let joint = Matching::from_edges(aux.vertex_count(), aux.joint_matching().unwrap_or_default())?;
    let mut trails = Vec::new();
    for cycle in decompose_union(&joint, m)? {
        let c = AlternatingCycle::new(aux, cycle)?;
        trails.push(cycle_to_closed_trail(inst, aux, &c)?);
    }
    TrailPartition::new(inst, trails)
}

/// The non-joint edges of the cycles of the trails.
pub fn matching_from_partition(inst: &Instance, aux: &AuxGraph, p: &TrailPartition) -> Result<Matching> {
    let p = TrailPartition::new(inst, p.trails.clone())?;
    let mut m = Matching::new(aux.vertex_count());
    for t in &p.trails {
        for (a, b) in closed_trail_to_cycle(aux, t)?.non_joint_edges() {
            m.insert(a, b)?;
        }
    }
    Ok(m)
}

/// Rotation of `t` that starts by leaving `v` right after a continuation
/// into `v`, so that the wrap-around is that continuation.
fn open_at(inst: &Instance, t: &ClosedTrail, v: VertexId) -> Option<ClosedTrail> {
    let kinds = t.transitions(inst);
    let k = t.len();
    (0..k)
        .find(|&i| kinds[i] == Transition::Continuation && t.steps()[i].to == v)
        .map(|i| t.rotated((i + 1) % k))
}

/// Splices two edge-disjoint closed trails at a common vertex whose local
/// graph is complete multipartite. The second trail is appended as is when
/// both junctions are allowed, and reversed otherwise.
pub fn merge_trails(
    inst: &Instance,
    p1: &ClosedTrail,
    p2: &ClosedTrail,
    shared: VertexId,
    witness: &MultipartiteWitness,
) -> Result<ClosedTrail> {
    let (Some(a), Some(b)) = (open_at(inst, p1, shared), open_at(inst, p2, shared)) else {
        return Err(Error::Precondition(format!(
            "both trails must pass through {} with a continuation there",
            inst.graph.vertex_name(shared)
        )));
    };
    let (e1, em) = (a.steps()[0].edge, a.steps()[a.len() - 1].edge);
    let (f1, fn_) = (b.steps()[0].edge, b.steps()[b.len() - 1].edge);
    let same_part = |x: EdgeId, y: EdgeId| witness.part_of(x).is_some() && witness.part_of(x) == witness.part_of(y);
    let direct_predicted = same_part(e1, f1) || same_part(em, fn_);

    let splice = |second: &ClosedTrail| -> Result<ClosedTrail> {
        let steps: Vec<Step> = a.steps().iter().chain(second.steps()).copied().collect();
        ClosedTrail::new(inst, steps)
    };
    let direct = splice(&b);
    if direct_predicted || direct.is_ok() {
        return direct.map_err(|_| Error::Precondition("part structure does not match the colors at the shared vertex".into()));
    }
    let rev = b.reversed();
    splice(&rev).map_err(|_| Error::Precondition("neither orientation of the second trail can be spliced in".into()))
}

/// Turns a single block `(x, e_1, ..., e_k, y)`, `k >= 2`, into a closed
/// trail with a continuation, using an `H`-adjacent pair of its edges.
pub fn repair_degenerate(inst: &Instance, t: &ClosedTrail) -> Result<ClosedTrail> {
    if !t.is_degenerate(inst) {
        return Ok(t.clone());
    }
    let edges: Vec<EdgeId> = {
        let mut e: Vec<EdgeId> = t.edges().collect();
        e.sort();
        e
    };
    let (x, y) = inst.graph.edge(edges[0]).sorted_ends();
    let k = edges.len();
    for i in 0..k {
        for j in 0..k {
            if i == j || !inst.colors_adjacent(edges[i], edges[j]) {
                continue;
            }
            let (first, second) = (edges[i], edges[j]);
            let rest: Vec<EdgeId> = edges.iter().copied().filter(|&e| e != first && e != second).collect();
            // x -e1-> y -[e2, rest]-> x
            let mut a = vec![Step { edge: first, from: x, to: y }, Step { edge: second, from: y, to: x }];
            a.extend(rest.iter().map(|&edge| Step { edge, from: y, to: x }));
            // x -[e1, rest]-> y -e2-> x
            let mut b = vec![Step { edge: first, from: x, to: y }];
            b.extend(rest.iter().map(|&edge| Step { edge, from: x, to: y }));
            b.push(Step { edge: second, from: y, to: x });
            for steps in [a, b] {
                if let Ok(c) = ClosedTrail::new(inst, steps) {
                    return Ok(c);
                }
            }
        }
    }
    Err(Error::Precondition("no pair of colors allows leaving the block".into()))
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Decided without search (no edges, or edges in several components).
    Structure,
    /// Local matching search, extension and merging.
    LocalMatching,
    /// Hamiltonian search in `L_3^H(G)`.
    Hamiltonian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Found { trail: DynamicHTrail, route: Route },
    None { route: Route },
    Undecided { reason: String },
}

impl SolveOutcome {
    pub fn trail(&self) -> Option<&DynamicHTrail> {
        match self {
            SolveOutcome::Found { trail, .. } => Some(trail),
            _ => None,
        }
    }

    pub fn route(&self) -> Option<Route> {
        match self {
            SolveOutcome::Found { route, .. } | SolveOutcome::None { route } => Some(*route),
            SolveOutcome::Undecided { .. } => None,
        }
    }
}

/// The multipartite witness of every `G_u` if `G` is connected and each
/// `G_u` is complete multipartite with at least two parts.
pub fn multipartite_hypotheses(inst: &Instance) -> Result<Option<Vec<MultipartiteWitness>>> {
    if !inst.graph.is_connected() {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(inst.graph.vertex_count());
    for u in inst.graph.vertices() {
        let verdict = detect_complete_multipartite(&build_local_graph(inst, u)?);
        if !verdict.has_two_parts() {
            return Ok(None);
        }
        out.push(verdict.witness().cloned().expect("complete"));
    }
    Ok(Some(out))
}

/// Decides whether `G` has a closed Euler dynamic H-trail and builds one.
///
/// With the multipartite hypotheses the answer comes from the local matching
/// search; otherwise from a Hamiltonian cycle search in `L_3^H(G)`, which is
/// refused above `cap.max_aux_vertices` vertices.
pub fn find_closed_euler_dynamic_h_trail(inst: &Instance, cap: &SearchCap) -> Result<SolveOutcome> {
    let g = &inst.graph;
    if g.edge_count() == 0 || g.edge_components() >= 2 {
        return Ok(SolveOutcome::None { route: Route::Structure });
    }
    if let Some(witnesses) = multipartite_hypotheses(inst)? {
        let aux = build_aux(inst, 2)?;
        match find_local_matching(inst, &aux, cap) {
            Ok(Some(m)) => {
                let n = extend_matching(inst, &aux, &m)?;
                let p = partition_from_matching(inst, &aux, &n)?;
                let trail = merge_partition(inst, p, &witnesses)?;
                return Ok(SolveOutcome::Found { trail: checked(inst, &trail)?, route: Route::LocalMatching });
            }
            Ok(None) => return Ok(SolveOutcome::None { route: Route::LocalMatching }),
            Err(Error::CapExceeded(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let aux3 = build_aux(inst, 3)?;
    if aux3.vertex_count() > cap.max_aux_vertices {
        return Ok(SolveOutcome::Undecided {
            reason: CapKind::AuxVertices { limit: cap.max_aux_vertices, actual: aux3.vertex_count() }.to_string(),
        });
    }
    match oracle::hamiltonian_cycle(aux3.graph(), cap) {
        Ok(Some(cycle)) => {
            let aux2 = aux3.contract_paths()?;
            let c = AlternatingCycle::new(&aux2, aux3.contract_cycle(&cycle))?;
            let trail = cycle_to_closed_trail(inst, &aux2, &c)?;
            Ok(SolveOutcome::Found { trail: checked(inst, &trail)?, route: Route::Hamiltonian })
        }
        Ok(None) => Ok(SolveOutcome::None { route: Route::Hamiltonian }),
        Err(Error::CapExceeded(kind)) => Ok(SolveOutcome::Undecided { reason: kind.to_string() }),
        Err(e) => Err(e),
    }
}

fn checked(inst: &Instance, t: &ClosedTrail) -> Result<DynamicHTrail> {
    let w = t.to_dynamic(inst);
    if !crate::trail::is_dynamic_h_trail(inst, &w)? || !is_euler(inst, &w).covers_all {
        return Err(Error::Precondition("constructed trail failed validation".into()));
    }
    Ok(w)
}

/// Merges a partition into one trail, always attaching the trail that meets
/// the growing trail at the smallest vertex.
fn merge_partition(inst: &Instance, p: TrailPartition, witnesses: &[MultipartiteWitness]) -> Result<ClosedTrail> {
    let mut rest = p.trails;
    if rest.len() == 1 {
        return repair_degenerate(inst, &rest[0]);
    }
    if let Some(i) = p.degenerate.iter().position(|&d| d) {
        return Err(Error::Precondition(format!("trail {i} is a single block and cannot be spliced")));
    }
    let mut q = rest.remove(0);
    while !rest.is_empty() {
        let on_q = q.vertices();
        let (idx, v) = rest
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.vertices().into_iter().find(|v| on_q.binary_search(v).is_ok()).map(|v| (i, v)))
            .min_by_key(|&(i, v)| (v, i))
            .ok_or_else(|| Error::Precondition("the trails do not form a connected family".into()))?;
        let next = rest.remove(idx);
        q = merge_trails(inst, &q, &next, v, &witnesses[v.0])?;
    }
    Ok(q)
}

/// Result of comparing a Hamiltonian cycle of `L_n^H(G)` with a closed Euler
/// trail of `G`, both found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonReport {
    pub n: usize,
    pub hamiltonian: bool,
    pub euler_trail: bool,
    /// An Euler trail implies a Hamiltonian cycle.
    pub forward_holds: bool,
    /// Whether the converse is asserted, which is the case for `n >= 3`.
    pub converse_checked: bool,
    pub converse_holds: bool,
}

impl HamiltonReport {
    pub fn consistent(&self) -> bool {
        self.forward_holds && (!self.converse_checked || self.converse_holds)
    }
}

pub fn hamiltonicity_equivalence_check(inst: &Instance, n: usize, cap: &SearchCap) -> Result<HamiltonReport> {
    let aux = build_aux(inst, n)?;
    let hamiltonian = oracle::hamiltonian_cycle(aux.graph(), cap)?.is_some();
    let euler_trail = oracle::find_closed_euler_trail(inst, cap, TrailKind::Dynamic)?.is_some();
    Ok(HamiltonReport {
        n,
        hamiltonian,
        euler_trail,
        forward_holds: !euler_trail || hamiltonian,
        converse_checked: n >= 3,
        converse_holds: !hamiltonian || euler_trail,
    })
}

/// A partition into closed trails without lane changes, from a perfect
/// matching of every `G_x`; `None` if some `G_x` has none.
pub fn partition_into_closed_h_trails(inst: &Instance) -> Result<Option<TrailPartition>> {
    let aux = build_aux(inst, 2)?;
    let mut m = Matching::new(aux.vertex_count());
    for u in inst.graph.vertices() {
        let l = build_local_graph(inst, u)?;
        let local = maximum_matching(&l.to_simple_graph());
        if !local.is_perfect() {
            return Ok(None);
        }
        for (i, j) in local.edges() {
            let a = aux.end_copy(u, l.nodes()[i]).expect("endpoint");
            let b = aux.end_copy(u, l.nodes()[j]).expect("endpoint");
            m.insert(a, b)?;
        }
    }
    partition_from_matching(inst, &aux, &m).map(Some)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartSizeVerdict {
    /// `G` is not eulerian or some `G_u` is not complete multipartite.
    Inapplicable(String),
    Holds,
    /// The first vertex where a part outweighs the others.
    Fails(VertexId),
}

/// For eulerian `G` with complete multipartite local graphs: whether at every
/// vertex no part has more members than all other parts together.
pub fn check_part_size_condition(inst: &Instance) -> Result<PartSizeVerdict> {
    let g = &inst.graph;
    if g.edge_count() == 0 || !g.is_connected() {
        return Ok(PartSizeVerdict::Inapplicable("graph is not connected or has no edges".into()));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return Ok(PartSizeVerdict::Inapplicable(format!("vertex {} has odd degree", g.vertex_name(v))));
    }
    let mut first_failure = None;
    for u in g.vertices() {
        let verdict = detect_complete_multipartite(&build_local_graph(inst, u)?);
        let Some(w) = verdict.witness() else {
            return Ok(PartSizeVerdict::Inapplicable(format!(
                "local graph at {} is not complete multipartite",
                g.vertex_name(u)
            )));
        };
        if first_failure.is_none() && !part_size_condition(w) {
            first_failure = Some(u);
        }
    }
    Ok(first_failure.map_or(PartSizeVerdict::Holds, PartSizeVerdict::Fails))
}
