//! Dynamic H-trails: lane groups, validation, closure and canonical form.
//!
//! A [`DynamicHTrail`] is the grouped presentation: a sequence of lane
//! groups, each group a block of parallel edges traversed from its anchor
//! vertex. A closed trail also has a cyclic presentation, [`ClosedTrail`],
//! a cyclic sequence of oriented edge traversals ([`Step`]s) in which every
//! consecutive pair (wrap-around included) is either
//!
//! * a *continuation*: the second step leaves the vertex where the first
//!   arrived, and the two colors are adjacent in `H`, or
//! * a *lane change*: both steps traverse parallel edges in the same
//!   direction; no color condition applies.
//!
//! Two closed trails are the same trail iff their cyclic step sequences agree
//! up to rotation. A trail and its reversal are different trails.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::model::{EdgeId, Instance, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Closure {
    #[serde(rename = "open")]
    Open,
    /// Returns to the start vertex with an `H`-adjacent wrap-around.
    #[serde(rename = "closed-a")]
    ClosedA,
    /// Ends on an edge parallel to the first one, at the second vertex.
    #[serde(rename = "closed-b")]
    ClosedB,
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Closure::Open => "open",
            Closure::ClosedA => "closed-a",
            Closure::ClosedB => "closed-b",
        })
    }
}

/// A block of parallel edges traversed from `anchor` to the other shared
/// endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaneGroup {
    pub anchor: VertexId,
    pub block: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynamicHTrail {
    pub groups: Vec<LaneGroup>,
    pub terminal: VertexId,
    pub closure: Closure,
}

/// Shape errors: the groups do not describe a walk at all.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("group {group} has an empty block")]
    EmptyBlock { group: usize },
    #[error("group {group} refers to a vertex or edge outside the graph")]
    OutOfRange { group: usize },
    #[error("group {group}: edge {edge} is not incident with the anchor")]
    NotIncident { group: usize, edge: usize },
    #[error("group {group}: edge {edge} is not parallel to the first edge of the block")]
    NotParallel { group: usize, edge: usize },
    #[error("group {group}: edge {edge} repeats inside its block")]
    RepeatedInBlock { group: usize, edge: usize },
    #[error("group {group} does not start where group {} ends", group - 1)]
    BrokenChain { group: usize },
    #[error("terminal vertex does not match the end of the last group")]
    TerminalMismatch,
}

/// Semantic failures of a well-shaped trail.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TrailViolation {
    #[error("edge {edge} is used twice")]
    RepeatedEdge { edge: usize },
    #[error("colors of edges {from} and {to} are not adjacent in H (between groups {group} and {})", group + 1)]
    ForbiddenTransition { group: usize, from: usize, to: usize },
    #[error("closed-a trail does not return to its start vertex")]
    NotReturning,
    #[error("wrap-around colors of edges {from} and {to} are not adjacent in H")]
    ForbiddenWrap { from: usize, to: usize },
    #[error("closed-b trail does not end at the second vertex")]
    WrongTerminal,
    #[error("closed-b trail: last edge {last} is not parallel to first edge {first}")]
    NotParallelWrap { first: usize, last: usize },
    #[error("trail with fewer than two edges cannot be closed")]
    TooShort,
    #[error("steps {at} and {next} are neither a continuation nor a lane change")]
    BadStep { at: usize, next: usize },
}

/// Result of checking a well-shaped trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrailVerdict {
    Valid,
    Invalid(TrailViolation),
}

impl TrailVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, TrailVerdict::Valid)
    }
}

impl DynamicHTrail {
    /// Open trail from a group list; the terminal is derived.
    pub fn open(inst: &Instance, groups: Vec<LaneGroup>) -> Result<Self> {
        let terminal = derive_terminal(inst, &groups)?;
        Ok(DynamicHTrail { groups, terminal, closure: Closure::Open })
    }

    pub fn edge_count(&self) -> usize {
        self.groups.iter().map(|g| g.block.len()).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.groups.iter().flat_map(|g| g.block.iter().copied())
    }

    pub fn is_closed(&self) -> bool {
        self.closure != Closure::Open
    }

    /// Empty trails and single-edge trails never count as closed.
    pub fn is_degenerate(&self) -> bool {
        self.edge_count() <= 1
    }

    /// Steps in traversal order (no wrap-around).
    pub fn steps(&self, inst: &Instance) -> Vec<Step> {
        let mut out = Vec::with_capacity(self.edge_count());
        for g in &self.groups {
            for &e in &g.block {
                let to = inst.graph.edge(e).other(g.anchor);
                out.push(Step { edge: e, from: g.anchor, to });
            }
        }
        out
    }

    pub fn reversed(&self, inst: &Instance) -> Result<DynamicHTrail> {
        check_structure(inst, self)?;
        let mut groups: Vec<LaneGroup> = Vec::with_capacity(self.groups.len());
        for g in self.groups.iter().rev() {
            let first = g.block[0];
            let end = inst.graph.edge(first).other(g.anchor);
            groups.push(LaneGroup { anchor: end, block: g.block.iter().rev().copied().collect() });
        }
        let terminal = self.groups.first().map(|g| g.anchor).unwrap_or(self.terminal);
        Ok(DynamicHTrail { groups, terminal, closure: self.closure })
    }
}

fn derive_terminal(inst: &Instance, groups: &[LaneGroup]) -> Result<VertexId> {
    let Some(last) = groups.last() else {
        return Err(Error::Precondition("a trail needs at least one group".into()));
    };
    let Some(&e) = last.block.first() else {
        return Err(StructureError::EmptyBlock { group: groups.len() - 1 }.into());
    };
    if e.0 >= inst.graph.edge_count() || !inst.graph.edge(e).is_incident(last.anchor) {
        return Err(StructureError::NotIncident { group: groups.len() - 1, edge: e.0 }.into());
    }
    Ok(inst.graph.edge(e).other(last.anchor))
}

/// Checks the shape of `w`: non-empty blocks of distinct parallel edges
/// leaving each anchor, chained end to start, ending at `terminal`.
pub fn check_structure(inst: &Instance, w: &DynamicHTrail) -> Result<(), StructureError> {
    let g = &inst.graph;
    let mut prev_end: Option<VertexId> = None;
    for (i, group) in w.groups.iter().enumerate() {
        if !g.contains_vertex(group.anchor) || group.block.iter().any(|e| e.0 >= g.edge_count()) {
            return Err(StructureError::OutOfRange { group: i });
        }
        let Some(&first) = group.block.first() else {
            return Err(StructureError::EmptyBlock { group: i });
        };
        if let Some(end) = prev_end {
            if end != group.anchor {
                return Err(StructureError::BrokenChain { group: i });
            }
        }
        let mut seen = HashSet::new();
        for &e in &group.block {
            let edge = g.edge(e);
            if !edge.is_incident(group.anchor) {
                return Err(StructureError::NotIncident { group: i, edge: e.0 });
            }
            if !edge.same_ends(g.edge(first)) {
                return Err(StructureError::NotParallel { group: i, edge: e.0 });
            }
            if !seen.insert(e) {
                return Err(StructureError::RepeatedInBlock { group: i, edge: e.0 });
            }
        }
        prev_end = Some(g.edge(first).other(group.anchor));
    }
    match prev_end {
        Some(end) if end != w.terminal => Err(StructureError::TerminalMismatch),
        _ => Ok(()),
    }
}

/// Whether `w` is a dynamic H-trail, including the closure condition it
/// declares. Shape problems are returned as `Err`, semantic ones as
/// [`TrailVerdict::Invalid`] naming the first violated condition.
pub fn check_dynamic_h_trail(inst: &Instance, w: &DynamicHTrail) -> Result<TrailVerdict> {
    check_structure(inst, w)?;
    Ok(match semantic_violation(inst, w) {
        None => TrailVerdict::Valid,
        Some(v) => TrailVerdict::Invalid(v),
    })
}

pub fn is_dynamic_h_trail(inst: &Instance, w: &DynamicHTrail) -> Result<bool> {
    Ok(check_dynamic_h_trail(inst, w)?.is_valid())
}

fn semantic_violation(inst: &Instance, w: &DynamicHTrail) -> Option<TrailViolation> {
    let mut used = HashSet::new();
    for e in w.edges() {
        if !used.insert(e) {
            return Some(TrailViolation::RepeatedEdge { edge: e.0 });
        }
    }
    for (i, pair) in w.groups.windows(2).enumerate() {
        let from = *pair[0].block.last().unwrap();
        let to = pair[1].block[0];
        if !inst.colors_adjacent(from, to) {
            return Some(TrailViolation::ForbiddenTransition { group: i, from: from.0, to: to.0 });
        }
    }
    if w.closure == Closure::Open {
        return None;
    }
    if w.edge_count() < 2 {
        return Some(TrailViolation::TooShort);
    }
    let first_group = &w.groups[0];
    let first = first_group.block[0];
    let last = *w.groups.last().unwrap().block.last().unwrap();
    match w.closure {
        Closure::ClosedA => {
            if w.terminal != first_group.anchor {
                return Some(TrailViolation::NotReturning);
            }
            if !inst.colors_adjacent(last, first) {
                return Some(TrailViolation::ForbiddenWrap { from: last.0, to: first.0 });
            }
        }
        Closure::ClosedB => {
            let second = inst.graph.edge(first).other(first_group.anchor);
            if w.terminal != second {
                return Some(TrailViolation::WrongTerminal);
            }
            if !inst.graph.parallel(last, first) {
                return Some(TrailViolation::NotParallelWrap { first: first.0, last: last.0 });
            }
        }
        Closure::Open => unreachable!(),
    }
    None
}

/// Result of [`is_euler`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub covers_all: bool,
    /// Set when both the graph and the trail have no edges.
    pub degenerate: bool,
}

/// Whether the edges of `w` are exactly `E(G)`.
pub fn is_euler(inst: &Instance, w: &DynamicHTrail) -> EulerCheck {
    let q = inst.graph.edge_count();
    let mut seen = vec![false; q];
    let mut count = 0;
    for e in w.edges() {
        if e.0 >= q || seen[e.0] {
            return EulerCheck { covers_all: false, degenerate: false };
        }
        seen[e.0] = true;
        count += 1;
    }
    EulerCheck { covers_all: count == q, degenerate: q == 0 && count == 0 }
}

/// Rewrites a closed-b trail into closed-a form by merging the last and
/// first blocks. Returns the trail and whether it was degenerate (a single
/// block, which has no closed-a form and is returned unchanged). Closed-a
/// trails are returned unchanged.
pub fn normalize_closed_b(inst: &Instance, w: &DynamicHTrail) -> Result<(DynamicHTrail, bool)> {
    if w.closure == Closure::Open {
        return Err(Error::OpenTrail);
    }
    if let TrailVerdict::Invalid(v) = check_dynamic_h_trail(inst, w)? {
        return Err(Error::InvalidTrail(v));
    }
    if w.closure == Closure::ClosedA {
        return Ok((w.clone(), false));
    }
    let n = w.groups.len();
    if n == 1 {
        return Ok((w.clone(), true));
    }
    let mut groups: Vec<LaneGroup> = w.groups[1..n - 1].to_vec();
    let last = &w.groups[n - 1];
    let mut block = last.block.clone();
    block.extend_from_slice(&w.groups[0].block);
    groups.push(LaneGroup { anchor: last.anchor, block });
    let terminal = groups[0].anchor;
    Ok((DynamicHTrail { groups, terminal, closure: Closure::ClosedA }, false))
}

/// One traversal of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
}

impl Step {
    pub fn new(inst: &Instance, edge: EdgeId, from: VertexId) -> Step {
        Step { edge, from, to: inst.graph.edge(edge).other(from) }
    }

    pub fn reversed(self) -> Step {
        Step { edge: self.edge, from: self.to, to: self.from }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transition {
    Continuation,
    LaneChange,
}

/// How step `b` may follow step `a`, if at all.
pub fn transition(inst: &Instance, a: Step, b: Step) -> Option<Transition> {
    if a.edge == b.edge {
        return None;
    }
    if b.from == a.to {
        inst.colors_adjacent(a.edge, b.edge).then_some(Transition::Continuation)
    } else if b.from == a.from && b.to == a.to {
        Some(Transition::LaneChange)
    } else {
        None
    }
}

/// A closed dynamic H-trail as a cyclic sequence of steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedTrail {
    steps: Vec<Step>,
}

impl ClosedTrail {
    /// Validates a cyclic step sequence: at least two distinct edges, steps
    /// consistent with the edges, every cyclic transition allowed.
    pub fn new(inst: &Instance, steps: Vec<Step>) -> Result<Self> {
        if steps.len() < 2 {
            return Err(Error::InvalidTrail(TrailViolation::TooShort));
        }
        let mut seen = HashSet::new();
        for s in &steps {
            if s.edge.0 >= inst.graph.edge_count() {
                return Err(Error::UnknownEdge(format!("#{}", s.edge.0)));
            }
            let e = inst.graph.edge(s.edge);
            if !e.is_incident(s.from) || e.other(s.from) != s.to {
                return Err(Error::Precondition(format!("step on edge {} has wrong endpoints", e.id)));
            }
            if !seen.insert(s.edge) {
                return Err(Error::InvalidTrail(TrailViolation::RepeatedEdge { edge: s.edge.0 }));
            }
        }
        let k = steps.len();
        for i in 0..k {
            let j = (i + 1) % k;
            if transition(inst, steps[i], steps[j]).is_none() {
                return Err(Error::InvalidTrail(TrailViolation::BadStep { at: i, next: j }));
            }
        }
        Ok(ClosedTrail { steps })
    }

    /// The cyclic form of a closed grouped trail.
    pub fn from_dynamic(inst: &Instance, w: &DynamicHTrail) -> Result<Self> {
        if w.closure == Closure::Open {
            return Err(Error::OpenTrail);
        }
        if let TrailVerdict::Invalid(v) = check_dynamic_h_trail(inst, w)? {
            return Err(Error::InvalidTrail(v));
        }
        ClosedTrail::new(inst, w.steps(inst))
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    /// Vertices met by the trail, ascending.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.steps.iter().flat_map(|s| [s.from, s.to]).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Kinds of the transitions `i -> i+1`, wrap-around last.
    pub fn transitions(&self, inst: &Instance) -> Vec<Transition> {
        let k = self.steps.len();
        (0..k)
            .map(|i| transition(inst, self.steps[i], self.steps[(i + 1) % k]).expect("validated trail"))
            .collect()
    }

    /// All transitions are lane changes: the trail is a single block
    /// `(x, e_0, ..., e_k, y)` of parallel edges.
    pub fn is_degenerate(&self, inst: &Instance) -> bool {
        self.transitions(inst).iter().all(|t| *t == Transition::LaneChange)
    }

    pub fn has_lane_change(&self, inst: &Instance) -> bool {
        self.transitions(inst).contains(&Transition::LaneChange)
    }

    pub fn rotated(&self, start: usize) -> ClosedTrail {
        let mut steps = self.steps.clone();
        steps.rotate_left(start % self.steps.len());
        ClosedTrail { steps }
    }

    /// The rotation starting at the smallest edge. Orientation is part of the
    /// form; reversal is not identified.
    pub fn canonical(&self) -> ClosedTrail {
        let start = (0..self.steps.len()).min_by_key(|&i| self.steps[i].edge).unwrap_or(0);
        self.rotated(start)
    }

    pub fn reversed(&self) -> ClosedTrail {
        ClosedTrail { steps: self.steps.iter().rev().map(|s| s.reversed()).collect() }
    }

    /// Grouped presentation: closed-a, starting at the first group boundary
    /// at or after the canonical start; closed-b single block if the trail
    /// is degenerate.
    pub fn to_dynamic(&self, inst: &Instance) -> DynamicHTrail {
        let canon = self.canonical();
        let k = canon.steps.len();
        let kinds = canon.transitions(inst);
        // kinds[i] is the transition i -> i+1, so step j starts a group when
        // kinds[j-1] is a continuation
        let start = (0..k).find(|&j| kinds[(j + k - 1) % k] == Transition::Continuation);
        let Some(start) = start else {
            let s0 = canon.steps[0];
            return DynamicHTrail {
                groups: vec![LaneGroup { anchor: s0.from, block: canon.edges().collect() }],
                terminal: s0.to,
                closure: Closure::ClosedB,
            };
        };
        let rot = canon.rotated(start);
        let kinds = rot.transitions(inst);
        let mut groups: Vec<LaneGroup> = Vec::new();
        for (i, s) in rot.steps.iter().enumerate() {
            let opens = i == 0 || kinds[i - 1] == Transition::Continuation;
            if opens {
                groups.push(LaneGroup { anchor: s.from, block: vec![s.edge] });
            } else {
                groups.last_mut().unwrap().block.push(s.edge);
            }
        }
        DynamicHTrail { terminal: groups[0].anchor, groups, closure: Closure::ClosedA }
    }
}

/// The canonical rotation of a closed trail as a step sequence.
pub fn canonical_form(inst: &Instance, w: &DynamicHTrail) -> Result<Vec<Step>> {
    Ok(ClosedTrail::from_dynamic(inst, w)?.canonical().steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e(inst: &Instance, id: &str) -> EdgeId {
        inst.graph.edge_by_id(id).unwrap()
    }

    fn v(inst: &Instance, id: &str) -> VertexId {
        inst.graph.vertex(id).unwrap()
    }

    fn group(inst: &Instance, anchor: &str, block: &[&str]) -> LaneGroup {
        LaneGroup { anchor: v(inst, anchor), block: block.iter().map(|b| e(inst, b)).collect() }
    }

    fn figure1_trail(inst: &Instance) -> DynamicHTrail {
        DynamicHTrail {
            groups: vec![
                group(inst, "v1", &["e1"]),
                group(inst, "v2", &["e6", "e5"]),
                group(inst, "v4", &["e4"]),
                group(inst, "v3", &["e3", "e2"]),
            ],
            terminal: v(inst, "v1"),
            closure: Closure::ClosedA,
        }
    }

    #[test]
    fn figure_one_trail_is_valid_and_euler() {
        let inst = fixtures::figure1();
        let p = figure1_trail(&inst);
        assert_eq!(check_dynamic_h_trail(&inst, &p).unwrap(), TrailVerdict::Valid);
        let euler = is_euler(&inst, &p);
        assert!(euler.covers_all && !euler.degenerate);
    }

    #[test]
    fn swapped_lanes_break_the_color_transition() {
        let inst = fixtures::figure1();
        let mut p = figure1_trail(&inst);
        p.groups[1] = group(&inst, "v2", &["e5", "e6"]);
        // e1 (blue) then e5 (red)
        assert_eq!(
            check_dynamic_h_trail(&inst, &p).unwrap(),
            TrailVerdict::Invalid(TrailViolation::ForbiddenTransition { group: 0, from: 0, to: 4 })
        );
    }

    #[test]
    fn single_group_open_trail_is_valid() {
        let inst = fixtures::figure1();
        let w = DynamicHTrail::open(&inst, vec![group(&inst, "v1", &["e1"])]).unwrap();
        assert!(is_dynamic_h_trail(&inst, &w).unwrap());
        assert!(w.is_degenerate());
    }

    #[test]
    fn broken_chain_is_structural() {
        let inst = fixtures::figure1();
        let w = DynamicHTrail {
            groups: vec![group(&inst, "v1", &["e1"]), group(&inst, "v3", &["e4"])],
            terminal: v(&inst, "v4"),
            closure: Closure::Open,
        };
        assert_eq!(
            check_dynamic_h_trail(&inst, &w),
            Err(Error::Structure(StructureError::BrokenChain { group: 1 }))
        );
    }

    #[test]
    fn non_parallel_block_is_structural() {
        let inst = fixtures::figure1();
        let w = DynamicHTrail {
            groups: vec![group(&inst, "v1", &["e1", "e2"])],
            terminal: v(&inst, "v2"),
            closure: Closure::Open,
        };
        assert!(matches!(
            check_dynamic_h_trail(&inst, &w),
            Err(Error::Structure(StructureError::NotParallel { .. }))
        ));
    }

    #[test]
    fn five_of_six_edges_is_not_euler() {
        let inst = fixtures::figure1();
        let w = DynamicHTrail::open(
            &inst,
            vec![
                group(&inst, "v1", &["e1"]),
                group(&inst, "v2", &["e6", "e5"]),
                group(&inst, "v4", &["e4"]),
                group(&inst, "v3", &["e3"]),
            ],
        )
        .unwrap();
        assert!(is_dynamic_h_trail(&inst, &w).unwrap());
        assert!(!is_euler(&inst, &w).covers_all);
    }

    #[test]
    fn empty_graph_and_trail_is_vacuously_euler() {
        let inst = crate::model::InstanceDef::default().colors(["a"]).build().unwrap();
        let w = DynamicHTrail { groups: vec![], terminal: VertexId(0), closure: Closure::Open };
        assert_eq!(is_euler(&inst, &w), EulerCheck { covers_all: true, degenerate: true });
        assert!(w.is_degenerate());
    }

    #[test]
    fn closed_b_normalizes_to_closed_a() {
        let inst = fixtures::figure1();
        let p = ClosedTrail::from_dynamic(&inst, &figure1_trail(&inst)).unwrap();
        // start in the middle of the v2 block: e5 e4 e3 e2 e1 e6
        let rot = p.rotated(2);
        let groups = vec![
            group(&inst, "v2", &["e5"]),
            group(&inst, "v4", &["e4"]),
            group(&inst, "v3", &["e3", "e2"]),
            group(&inst, "v1", &["e1"]),
            group(&inst, "v2", &["e6"]),
        ];
        let w = DynamicHTrail { groups, terminal: v(&inst, "v4"), closure: Closure::ClosedB };
        assert!(is_dynamic_h_trail(&inst, &w).unwrap());
        assert_eq!(ClosedTrail::from_dynamic(&inst, &w).unwrap(), rot);

        let (norm, degenerate) = normalize_closed_b(&inst, &w).unwrap();
        assert!(!degenerate);
        assert_eq!(norm.closure, Closure::ClosedA);
        assert!(is_dynamic_h_trail(&inst, &norm).unwrap());
        assert_eq!(norm.groups.last().unwrap().block, vec![e(&inst, "e6"), e(&inst, "e5")]);
        assert_eq!(canonical_form(&inst, &norm).unwrap(), canonical_form(&inst, &w).unwrap());
    }

    #[test]
    fn single_block_closed_b_is_degenerate() {
        let inst = fixtures::figure1();
        let w = DynamicHTrail {
            groups: vec![group(&inst, "v1", &["e2", "e3"])],
            terminal: v(&inst, "v3"),
            closure: Closure::ClosedB,
        };
        let (out, degenerate) = normalize_closed_b(&inst, &w).unwrap();
        assert!(degenerate);
        assert_eq!(out, w);
    }

    #[test]
    fn normalizing_an_open_trail_fails() {
        let inst = fixtures::figure1();
        let w = DynamicHTrail::open(&inst, vec![group(&inst, "v1", &["e1"])]).unwrap();
        assert_eq!(normalize_closed_b(&inst, &w), Err(Error::OpenTrail));
    }

    #[test]
    fn canonical_form_is_rotation_invariant_and_starts_at_min_edge() {
        let inst = fixtures::figure1();
        let p = ClosedTrail::from_dynamic(&inst, &figure1_trail(&inst)).unwrap();
        let c = p.canonical();
        for r in 0..p.len() {
            assert_eq!(p.rotated(r).canonical(), c);
        }
        assert_eq!(c.steps()[0].edge, EdgeId(0));
        // rotation starting at v4 in grouped form
        let at_v4 = DynamicHTrail {
            groups: vec![
                group(&inst, "v4", &["e4"]),
                group(&inst, "v3", &["e3", "e2"]),
                group(&inst, "v1", &["e1"]),
                group(&inst, "v2", &["e6", "e5"]),
            ],
            terminal: v(&inst, "v4"),
            closure: Closure::ClosedA,
        };
        assert_eq!(canonical_form(&inst, &at_v4).unwrap(), c.steps().to_vec());
    }

    #[test]
    fn lane_order_changes_canonical_form() {
        // H with every transition allowed so both lane orders are valid
        let inst = crate::model::InstanceDef::default()
            .colors(["a"])
            .adjacent("a", "a")
            .vertices(["x", "y", "z"])
            .edge("p", "x", "y", "a")
            .edge("q", "x", "y", "a")
            .edge("r", "y", "z", "a")
            .edge("s", "z", "x", "a")
            .build()
            .unwrap();
        let one = DynamicHTrail {
            groups: vec![group(&inst, "x", &["p", "q"]), group(&inst, "y", &["r"]), group(&inst, "z", &["s"])],
            terminal: v(&inst, "x"),
            closure: Closure::ClosedA,
        };
        let two = DynamicHTrail {
            groups: vec![group(&inst, "x", &["q", "p"]), group(&inst, "y", &["r"]), group(&inst, "z", &["s"])],
            ..one.clone()
        };
        assert_ne!(canonical_form(&inst, &one).unwrap(), canonical_form(&inst, &two).unwrap());
    }

    #[test]
    fn to_dynamic_round_trips() {
        let inst = fixtures::figure1();
        let p = figure1_trail(&inst);
        let c = ClosedTrail::from_dynamic(&inst, &p).unwrap();
        assert_eq!(c.to_dynamic(&inst), p);
        for r in 0..c.len() {
            let w = c.rotated(r).to_dynamic(&inst);
            assert_eq!(w, p);
        }
    }

    #[test]
    fn reversal_is_a_different_valid_trail() {
        let inst = fixtures::figure1();
        let p = figure1_trail(&inst);
        let rev = p.reversed(&inst).unwrap();
        assert!(is_dynamic_h_trail(&inst, &rev).unwrap());
        assert_ne!(canonical_form(&inst, &rev).unwrap(), canonical_form(&inst, &p).unwrap());
        let c = ClosedTrail::from_dynamic(&inst, &p).unwrap();
        assert_eq!(ClosedTrail::from_dynamic(&inst, &rev).unwrap().canonical(), c.reversed().canonical());
    }
}
