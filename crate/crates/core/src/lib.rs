//! Closed Euler dynamic `H`-trails in `H`-colored multigraphs.
//!
//! An `H`-colored multigraph `G` has every edge colored by a vertex of a
//! pattern graph `H`; a walk may pass from one edge to the next only if their
//! colors are adjacent in `H`. A *dynamic* trail may additionally cross
//! several parallel edges at once, one after the other, before moving on.
//!
//! The crate decides whether `G` has a closed dynamic trail through every
//! edge. It builds an auxiliary graph `L_n^H(G)` whose perfect matchings and
//! Hamiltonian cycles encode trails, and solves the problem through either
//! a local matching construction or a bounded Hamiltonian search.
//!
//! ```
//! use dyntrail::{fixtures, solve, SearchCap, SolveOutcome};
//!
//! let inst = fixtures::figure1();
//! match solve(&inst, &SearchCap::default()).unwrap() {
//!     SolveOutcome::Found { trail, .. } => {
//!         assert!(dyntrail::trail::is_euler(&inst, &trail).covers_all)
//!     }
//!     other => panic!("{other:?}"),
//! }
//! ```

pub mod auxiliary;
pub mod bijection;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod io;
pub mod local;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod saturation;
pub mod solver;
pub mod trail;

pub use auxiliary::{build_aux, AuxGraph, AuxVertex};
pub use bijection::AlternatingCycle;
pub use error::{CapKind, Error, Result};
pub use graph::SimpleGraph;
pub use matching::Matching;
pub use model::{ColorId, EdgeId, Instance, InstanceDef, VertexId};
pub use oracle::SearchCap;
pub use solver::{find_closed_euler_dynamic_h_trail as solve, Route, SolveOutcome};
pub use trail::{ClosedTrail, Closure, DynamicHTrail, LaneGroup};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/trails.md")]
    mod trails {}
    #[doc = include_str!("../../../book/src/local-graphs.md")]
    mod local_graphs {}
    #[doc = include_str!("../../../book/src/auxiliary.md")]
    mod auxiliary {}
    #[doc = include_str!("../../../book/src/bijection.md")]
    mod bijection {}
    #[doc = include_str!("../../../book/src/matchings.md")]
    mod matchings {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
