//! Saturation classes of parallel edges, and matchings built from local
//! pieces.
//!
//! For a matching `M` of `L_2^H(G)`, let `M_x` be its edges inside the copy
//! of `G_x`. Each edge `e` of a parallel class `E_xy` falls in one of four
//! sets by which of its end-copies `f(x,e)`, `f(y,e)` are covered by
//! `M_x`, `M_y`. A class is *settled* if both ends of all its edges are
//! covered, and *balanced* if not all are but the `x`-only and `y`-only sets
//! have the same positive size. A matching whose classes are all settled or
//! balanced can be completed with cross edges into a perfect matching
//! avoiding the joint matching ([`extend_matching`]), and the closed trails
//! read from it never consist of a single block of parallel edges.
//!
//! [`find_local_matching`] looks for such a matching by backtracking over
//! the matchings of every `G_u`.

use std::collections::BTreeMap;

use crate::auxiliary::{AuxGraph, AuxVertex};
use crate::error::{CapKind, Error, Result};
use crate::local::build_local_graph;
use crate::matching::Matching;
use crate::model::{EdgeId, Instance, VertexId};
use crate::oracle::{Budget, SearchCap};

/// The four saturation sets of one parallel class `E_xy`, `x < y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassSaturation {
    pub x: VertexId,
    pub y: VertexId,
    /// `f(x,e)` covered, `f(y,e)` not.
    pub x_only: Vec<EdgeId>,
    /// `f(y,e)` covered, `f(x,e)` not.
    pub y_only: Vec<EdgeId>,
    pub both: Vec<EdgeId>,
    pub neither: Vec<EdgeId>,
}

impl ClassSaturation {
    pub fn len(&self) -> usize {
        self.x_only.len() + self.y_only.len() + self.both.len() + self.neither.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn verdict(&self) -> ClassVerdict {
        if self.both.len() == self.len() {
            ClassVerdict::Settled
        } else if !self.x_only.is_empty() && self.x_only.len() == self.y_only.len() {
            ClassVerdict::Balanced
        } else {
            ClassVerdict::Violated
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    /// Every end-copy is covered.
    Settled,
    /// Some end-copy is uncovered and `|x_only| = |y_only| >= 1`.
    Balanced,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    pub holds: bool,
    pub verdicts: Vec<ClassVerdict>,
}

/// Whether `(a, b)` lies inside a single local copy `G_u`.
fn is_local(aux: &AuxGraph, a: usize, b: usize) -> bool {
    matches!(
        (aux.vertex(a), aux.vertex(b)),
        (AuxVertex::EndCopy { vertex: u, .. }, AuxVertex::EndCopy { vertex: v, .. }) if u == v
    )
}

/// The local part `∪ M_x` of a matching.
pub fn local_part(aux: &AuxGraph, m: &Matching) -> Matching {
    let edges = m.edges().into_iter().filter(|&(a, b)| is_local(aux, a, b));
    Matching::from_edges(m.vertex_count(), edges).expect("subset of a matching")
}

/// Saturation sets of every parallel class, in class order. Only the local
/// part of `m` counts.
pub fn classify_saturation(inst: &Instance, aux: &AuxGraph, m: &Matching) -> Result<Vec<ClassSaturation>> {
    if aux.n() != 2 || m.vertex_count() != aux.vertex_count() {
        return Err(Error::Precondition("expected a matching of L_2".into()));
    }
    let local = local_part(aux, m);
    let covered = |u: VertexId, e: EdgeId| local.mate(aux.end_copy(u, e).expect("endpoint")).is_some();
    Ok(inst
        .graph
        .parallel_classes()
        .into_iter()
        .map(|class| {
            let mut s = ClassSaturation { x: class.x, y: class.y, ..Default::default() };
            for e in class.edges {
                match (covered(class.x, e), covered(class.y, e)) {
                    (true, false) => s.x_only.push(e),
                    (false, true) => s.y_only.push(e),
                    (true, true) => s.both.push(e),
                    (false, false) => s.neither.push(e),
                }
            }
            s
        })
        .collect())
}

pub fn check_saturation_conditions(classes: &[ClassSaturation]) -> SaturationReport {
    let verdicts: Vec<ClassVerdict> = classes.iter().map(ClassSaturation::verdict).collect();
    SaturationReport { holds: verdicts.iter().all(|v| *v != ClassVerdict::Violated), verdicts }
}

/// Completes the local part of `m` with cross edges inside every balanced
/// class. The result is a perfect matching of `L_2^H(G)` without joint
/// edges.
pub fn extend_matching(inst: &Instance, aux: &AuxGraph, m: &Matching) -> Result<Matching> {
    let classes = classify_saturation(inst, aux, m)?;
    if !check_saturation_conditions(&classes).holds {
        return Err(Error::Precondition("some parallel class is neither settled nor balanced".into()));
    }
    let mut n = local_part(aux, m);
    let f = |u: VertexId, e: EdgeId| aux.end_copy(u, e).expect("endpoint");
    for c in &classes {
        if c.verdict() != ClassVerdict::Balanced {
            continue;
        }
        let (x, y) = (c.x, c.y);
        let (a, b, d) = (&c.x_only, &c.y_only, &c.neither);
        if d.is_empty() {
            for (&e, &g) in a.iter().zip(b) {
                n.insert(f(y, e), f(x, g))?;
            }
        } else {
            let s = d.len();
            n.insert(f(y, a[0]), f(x, d[0]))?;
            n.insert(f(x, b[0]), f(y, d[s - 1]))?;
            for (&e, &g) in a.iter().zip(b).skip(1) {
                n.insert(f(y, e), f(x, g))?;
            }
            for j in 0..s - 1 {
                n.insert(f(y, d[j]), f(x, d[j + 1]))?;
            }
        }
    }
    let without_joint = aux.without_joint_matching()?;
    if !n.is_perfect() || !n.is_matching_in(&without_joint) {
        return Err(Error::Precondition("extension did not produce a perfect matching".into()));
    }
    Ok(n)
}

/// Per vertex: covered-set mask of a local matching, and its edges.
type Options = BTreeMap<VertexId, Vec<(u64, Vec<(usize, usize)>)>>;

/// Searches for a matching made of local pieces `M_u` whose classes are all
/// settled or balanced. `Ok(None)` means the search was exhaustive.
pub fn find_local_matching(inst: &Instance, aux: &AuxGraph, cap: &SearchCap) -> Result<Option<Matching>> {
    if aux.n() != 2 {
        return Err(Error::Precondition("expected L_2".into()));
    }
    let g = &inst.graph;
    if g.edge_count() == 0 {
        return Ok(None);
    }
    let mut order: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) > 0).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let classes = g.parallel_classes();

    // options per vertex: distinct covered sets of the matchings of G_u, each
    // meeting every class at u
    let mut options: Options = BTreeMap::new();
    let mut budget = Budget::new(cap);
    for &u in &order {
        let l = build_local_graph(inst, u)?;
        if l.len() > 63 {
            return Err(Error::CapExceeded(CapKind::Edges { limit: 63, actual: l.len() }));
        }
        let class_masks: Vec<u64> = classes
            .iter()
            .filter(|c| c.x == u || c.y == u)
            .map(|c| {
                c.edges.iter().fold(0u64, |m, e| m | 1 << l.position(*e).unwrap())
            })
            .collect();
        let mut seen: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
        let mut pairs = Vec::new();
        local_matchings(&l, 0, 0, &mut pairs, &mut seen, &mut budget)?;
        let opts: Vec<(u64, Vec<(usize, usize)>)> = seen
            .into_iter()
            .filter(|(mask, _)| class_masks.iter().all(|c| c & mask != 0))
            .map(|(mask, pairs)| {
                let aux_pairs = pairs
                    .into_iter()
                    .map(|(i, j)| (aux.end_copy(u, l.nodes()[i]).unwrap(), aux.end_copy(u, l.nodes()[j]).unwrap()))
                    .collect();
                (mask, aux_pairs)
            })
            .collect();
        if opts.is_empty() {
            return Ok(None);
        }
        options.insert(u, opts);
    }

    let mut s = LocalSearch {
        inst,
        order: &order,
        options: &options,
        classes: &classes,
        chosen: vec![None; g.vertex_count()],
        budget,
    };
    if !s.search(0)? {
        return Ok(None);
    }
    let mut m = Matching::new(aux.vertex_count());
    for &u in &order {
        for &(a, b) in &options[&u][s.chosen[u.0].unwrap()].1 {
            m.insert(a, b)?;
        }
    }
    Ok(Some(m))
}

// Enumerates the matchings of `l` by deciding node `i` in order; records the
// first matching found for each covered set.
fn local_matchings(
    l: &crate::local::LocalGraph,
    i: usize,
    covered: u64,
    pairs: &mut Vec<(usize, usize)>,
    seen: &mut BTreeMap<u64, Vec<(usize, usize)>>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    if i == l.len() {
        seen.entry(covered).or_insert_with(|| pairs.clone());
        return Ok(());
    }
    if covered >> i & 1 == 1 {
        return local_matchings(l, i + 1, covered, pairs, seen, budget);
    }
    local_matchings(l, i + 1, covered, pairs, seen, budget)?;
    for j in i + 1..l.len() {
        if covered >> j & 1 == 0 && l.adjacent(i, j) {
            pairs.push((i, j));
            local_matchings(l, i + 1, covered | 1 << i | 1 << j, pairs, seen, budget)?;
            pairs.pop();
        }
    }
    Ok(())
}

struct LocalSearch<'a> {
    inst: &'a Instance,
    order: &'a [VertexId],
    options: &'a Options,
    classes: &'a [crate::model::ParallelClass],
    chosen: Vec<Option<usize>>,
    budget: Budget,
}

impl LocalSearch<'_> {
    fn covered(&self, u: VertexId, e: EdgeId) -> bool {
        let pos = self.inst.graph.incident(u).iter().position(|&x| x == e).unwrap();
        let mask = self.options[&u][self.chosen[u.0].unwrap()].0;
        mask >> pos & 1 == 1
    }

    fn search(&mut self, depth: usize) -> Result<bool> {
        self.budget.tick()?;
        if depth == self.order.len() {
            return Ok(true);
        }
        let u = self.order[depth];
        for k in 0..self.options[&u].len() {
            self.chosen[u.0] = Some(k);
            if self.consistent(u) && self.search(depth + 1)? {
                return Ok(true);
            }
        }
        self.chosen[u.0] = None;
        Ok(false)
    }

    /// Checks the classes at `u` whose other end is already decided.
    fn consistent(&self, u: VertexId) -> bool {
        self.classes.iter().filter(|c| (c.x == u || c.y == u) && self.chosen[c.x.0].is_some() && self.chosen[c.y.0].is_some()).all(|c| {
            let mut s = ClassSaturation { x: c.x, y: c.y, ..Default::default() };
            for &e in &c.edges {
                match (self.covered(c.x, e), self.covered(c.y, e)) {
                    (true, false) => s.x_only.push(e),
                    (false, true) => s.y_only.push(e),
                    (true, true) => s.both.push(e),
                    (false, false) => s.neither.push(e),
                }
            }
            s.verdict() != ClassVerdict::Violated
        })
    }
}
