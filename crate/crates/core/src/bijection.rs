//! Closed dynamic H-trails of `G` versus alternating cycles of `L_2^H(G)`.
//!
//! Traversing edge `e` from `x` to `y` corresponds to walking the joint
//! edge `f(x,e) f(y,e)` in that direction. A continuation at `y` is a local
//! edge `f(y,e) f(y,g)`; a lane change between parallel edges is a cross
//! edge `f(y,e) f(x,g)`. A closed trail therefore becomes a cycle that
//! alternates between joint and non-joint edges, and every such cycle reads
//! back as a closed trail.
//!
//! Since a trail and its reversal are different trails, cycles are oriented:
//! an [`AlternatingCycle`] is a cyclic vertex sequence whose first edge is a
//! joint edge, identified up to rotations that keep that property.

use crate::auxiliary::AuxGraph;
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::oracle::{self, SearchCap};
use crate::trail::{ClosedTrail, DynamicHTrail, Step};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternatingCycle {
    vertices: Vec<usize>,
}

impl AlternatingCycle {
    /// Validates and canonicalizes an oriented cycle of `L_2^H(G)` given as
    /// a vertex sequence. The sequence may start on either kind of edge.
    pub fn new(aux: &AuxGraph, vertices: Vec<usize>) -> Result<Self> {
        if aux.n() != 2 {
            return Err(Error::Precondition("alternating cycles live in L_2".into()));
        }
        let k = vertices.len();
        if k < 4 || k % 2 == 1 {
            return Err(Error::NotAlternating(format!("length {k} is not an even number >= 4")));
        }
        let mut seen = vec![false; aux.vertex_count()];
        for &v in &vertices {
            if v >= aux.vertex_count() {
                return Err(Error::NotAlternating(format!("vertex {v} is out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAlternating(format!("vertex {v} repeats")));
            }
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !aux.graph().has_edge(a, b) {
                return Err(Error::NotAlternating(format!("{a}-{b} is not an edge")));
            }
        }
        let offset = usize::from(!aux.is_joint_edge(vertices[0], vertices[1]));
        for i in 0..k {
            let (a, b) = (vertices[(i + offset) % k], vertices[(i + offset + 1) % k]);
            if aux.is_joint_edge(a, b) != (i % 2 == 0) {
                return Err(Error::NotAlternating(format!("alternation breaks at {a}-{b}")));
            }
        }
        let start = (0..k / 2).map(|i| (2 * i + offset) % k).min_by_key(|&i| vertices[i]).unwrap();
        let mut vertices = vertices;
        vertices.rotate_left(start);
        Ok(AlternatingCycle { vertices })
    }

    /// Vertices, starting with the smallest vertex that is followed by a
    /// joint edge.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The same cycle walked the other way.
    pub fn reversed(&self, aux: &AuxGraph) -> AlternatingCycle {
        let mut v: Vec<usize> = self.vertices.iter().rev().copied().collect();
        v.rotate_right(1);
        AlternatingCycle::new(aux, v).expect("reversal of an alternating cycle")
    }

    /// Non-joint edges of the cycle.
    pub fn non_joint_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k / 2).map(move |i| {
            let (a, b) = (self.vertices[2 * i + 1], self.vertices[(2 * i + 2) % k]);
            (a.min(b), a.max(b))
        })
    }
}

/// The oriented cycle of a closed trail.
pub fn closed_trail_to_cycle(aux: &AuxGraph, trail: &ClosedTrail) -> Result<AlternatingCycle> {
    let mut vertices = Vec::with_capacity(2 * trail.len());
    for s in trail.steps() {
        let out_of = aux.end_copy(s.from, s.edge).ok_or_else(|| Error::UnknownEdge(format!("#{}", s.edge.0)))?;
        vertices.push(out_of);
        vertices.push(aux.partner(out_of));
    }
    AlternatingCycle::new(aux, vertices)
}

pub fn trail_to_cycle(inst: &Instance, aux: &AuxGraph, w: &DynamicHTrail) -> Result<AlternatingCycle> {
    closed_trail_to_cycle(aux, &ClosedTrail::from_dynamic(inst, w)?)
}

/// The closed trail read off an alternating cycle: every joint edge is one
/// traversal, in the direction the cycle walks it.
pub fn cycle_to_closed_trail(inst: &Instance, aux: &AuxGraph, c: &AlternatingCycle) -> Result<ClosedTrail> {
    use crate::auxiliary::AuxVertex;
    let v = c.vertices();
    let mut steps = Vec::with_capacity(v.len() / 2);
    for pair in v.chunks(2) {
        let (AuxVertex::EndCopy { vertex: from, edge }, AuxVertex::EndCopy { vertex: to, .. }) =
            (aux.vertex(pair[0]), aux.vertex(pair[1]))
        else {
            return Err(Error::NotAlternating("intermediate vertex in an L_2 cycle".into()));
        };
        steps.push(Step { edge, from, to });
    }
    ClosedTrail::new(inst, steps).map_err(|e| Error::NotAlternating(format!("cycle does not read as a trail: {e}")))
}

pub fn cycle_to_trail(inst: &Instance, aux: &AuxGraph, c: &AlternatingCycle) -> Result<DynamicHTrail> {
    Ok(cycle_to_closed_trail(inst, aux, c)?.to_dynamic(inst))
}

/// Outcome of comparing both sides of the correspondence exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub trails: usize,
    pub cycles: usize,
    /// Distinct trails have distinct images.
    pub injective: bool,
    /// Every enumerated cycle is the image of some trail.
    pub surjective: bool,
    /// Every image is one of the enumerated cycles and every rotation of a
    /// trail has the same image.
    pub well_defined: bool,
    /// Both compositions give back their input.
    pub round_trips: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.trails == self.cycles && self.injective && self.surjective && self.well_defined && self.round_trips
    }
}

/// Enumerates both sides by brute force and checks the correspondence.
pub fn verify_bijection(inst: &Instance, cap: &SearchCap) -> Result<BijectionReport> {
    use std::collections::BTreeSet;
    let aux = crate::auxiliary::build_aux(inst, 2)?;
    let trails = oracle::enumerate_closed_dynamic_h_trails(inst, cap)?;
    let cycles: BTreeSet<AlternatingCycle> = oracle::enumerate_alternating_cycles(&aux, cap)?.into_iter().collect();

    let mut images = BTreeSet::new();
    let mut well_defined = true;
    let mut round_trips = true;
    for t in &trails {
        let closed = ClosedTrail::new(inst, t.steps.clone())?;
        let image = closed_trail_to_cycle(&aux, &closed)?;
        for r in 1..closed.len() {
            well_defined &= closed_trail_to_cycle(&aux, &closed.rotated(r))? == image;
        }
        well_defined &= cycles.contains(&image);
        round_trips &= cycle_to_closed_trail(inst, &aux, &image)?.canonical() == closed.canonical();
        images.insert(image);
    }
    for c in &cycles {
        let back = cycle_to_closed_trail(inst, &aux, c)?;
        round_trips &= closed_trail_to_cycle(&aux, &back)? == *c;
    }
    Ok(BijectionReport {
        trails: trails.len(),
        cycles: cycles.len(),
        injective: images.len() == trails.len(),
        surjective: cycles.iter().all(|c| images.contains(c)),
        well_defined,
        round_trips,
    })
}
