//! The three worked example instances, bundled as JSON documents.
//!
//! Figure 1 carries a closed Euler dynamic trail; figures 2 and 3 admit none.

use crate::io::parse_document;
use crate::model::{Instance, InstanceDef};
use crate::trail::DynamicHTrail;

pub const FIGURE1_JSON: &str = include_str!("../../../fixtures/fig1.json");
pub const FIGURE2_JSON: &str = include_str!("../../../fixtures/fig2.json");
pub const FIGURE3_JSON: &str = include_str!("../../../fixtures/fig3.json");

pub fn figure1_def() -> InstanceDef {
    figure1().to_def()
}

pub fn figure1() -> Instance {
    parse_document(FIGURE1_JSON).expect("bundled fixture").instance
}

pub fn figure2() -> Instance {
    parse_document(FIGURE2_JSON).expect("bundled fixture").instance
}

pub fn figure3() -> Instance {
    parse_document(FIGURE3_JSON).expect("bundled fixture").instance
}

/// The closed trail stored with figure 1, resolved against `inst`.
pub fn figure1_trail(inst: &Instance) -> DynamicHTrail {
    let doc = parse_document(FIGURE1_JSON).expect("bundled fixture");
    assert_eq!(&doc.instance, inst, "trail belongs to figure 1");
    doc.trails.into_iter().next().expect("figure 1 has a trail")
}
