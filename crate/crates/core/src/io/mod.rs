//! Instance documents and DOT rendering.

mod dot;
mod format;

pub use dot::{aux_to_dot, graph_to_dot, pattern_to_dot};
pub use format::{
    parse_document, parse_instance, serialize_document, trail_from_def, trail_to_def, DocumentError,
    GroupDef, InstanceDocument, TrailDef,
};
