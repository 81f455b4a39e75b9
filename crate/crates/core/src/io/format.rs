//! The JSON instance format.
//!
//! ```json
//! {
//!   "pattern": { "colors": ["blue"], "adjacent": [["blue", "blue"]] },
//!   "graph": {
//!     "vertices": ["x", "y"],
//!     "edges": [{ "id": "e", "ends": ["x", "y"], "color": "blue" }]
//!   },
//!   "trails": [
//!     { "closure": "open", "groups": [{ "vertex": "x", "edges": ["e"] }] }
//!   ]
//! }
//! ```
//!
//! The `trails` section is optional. A trail's `terminal` may be omitted and
//! is then derived from the last group.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{GraphDef, Instance, InstanceDef, PatternDef, ValidationReport};
use crate::trail::{Closure, DynamicHTrail, LaneGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDef {
    pub vertex: String,
    pub edges: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrailDef {
    pub closure: Closure,
    pub groups: Vec<GroupDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminal: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    pattern: Option<PatternDef>,
    graph: Option<GraphDef>,
    #[serde(default)]
    trails: Vec<TrailDef>,
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    pattern: &'a PatternDef,
    graph: &'a GraphDef,
    #[serde(skip_serializing_if = "<[TrailDef]>::is_empty")]
    trails: &'a [TrailDef],
}

/// A parsed, validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub instance: Instance,
    pub trails: Vec<DynamicHTrail>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("missing {0} section")]
    MissingSection(&'static str),
    #[error("{0}")]
    Invalid(ValidationReport),
    #[error("{path}: {message}")]
    Trail { path: String, message: String },
}

fn raw(text: &str) -> Result<RawDocument, DocumentError> {
    if text.trim().is_empty() {
        return Err(DocumentError::MissingSection("pattern"));
    }
    serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })
}

fn instance_of(doc: &RawDocument) -> Result<Instance, DocumentError> {
    let pattern = doc.pattern.clone().ok_or(DocumentError::MissingSection("pattern"))?;
    let graph = doc.graph.clone().ok_or(DocumentError::MissingSection("graph"))?;
    InstanceDef { pattern, graph }.build().map_err(DocumentError::Invalid)
}

/// Parses and validates an instance, ignoring any trails.
pub fn parse_instance(text: &str) -> Result<Instance, DocumentError> {
    instance_of(&raw(text)?)
}

/// Parses an instance together with its trails. Trails are resolved against
/// the instance but not checked for the trail conditions.
pub fn parse_document(text: &str) -> Result<InstanceDocument, DocumentError> {
    let doc = raw(text)?;
    let instance = instance_of(&doc)?;
    let trails = doc
        .trails
        .iter()
        .enumerate()
        .map(|(i, t)| trail_from_def(&instance, t, &format!("trails[{i}]")))
        .collect::<Result<_, _>>()?;
    Ok(InstanceDocument { instance, trails })
}

/// Resolves vertex and edge names; `path` prefixes error positions.
pub fn trail_from_def(inst: &Instance, def: &TrailDef, path: &str) -> Result<DynamicHTrail, DocumentError> {
    let g = &inst.graph;
    let err = |p: String, m: String| DocumentError::Trail { path: p, message: m };
    if def.groups.is_empty() {
        return Err(err(format!("{path}.groups"), "a trail needs at least one group".into()));
    }
    let mut groups = Vec::with_capacity(def.groups.len());
    for (i, group) in def.groups.iter().enumerate() {
        let anchor = g
            .vertex(&group.vertex)
            .ok_or_else(|| err(format!("{path}.groups[{i}].vertex"), format!("unknown vertex '{}'", group.vertex)))?;
        if group.edges.is_empty() {
            return Err(err(format!("{path}.groups[{i}].edges"), "empty block".into()));
        }
        let mut block = Vec::with_capacity(group.edges.len());
        for (j, id) in group.edges.iter().enumerate() {
            let e = g
                .edge_by_id(id)
                .ok_or_else(|| err(format!("{path}.groups[{i}].edges[{j}]"), format!("unknown edge '{id}'")))?;
            if !g.edge(e).is_incident(anchor) {
                return Err(err(
                    format!("{path}.groups[{i}].edges[{j}]"),
                    format!("edge '{id}' does not leave '{}'", group.vertex),
                ));
            }
            block.push(e);
        }
        groups.push(LaneGroup { anchor, block });
    }
    let last = groups.last().unwrap();
    let derived = g.edge(last.block[0]).other(last.anchor);
    let terminal = match &def.terminal {
        None => derived,
        Some(name) => g
            .vertex(name)
            .ok_or_else(|| err(format!("{path}.terminal"), format!("unknown vertex '{name}'")))?,
    };
    Ok(DynamicHTrail { groups, terminal, closure: def.closure })
}

pub fn trail_to_def(inst: &Instance, w: &DynamicHTrail) -> TrailDef {
    let g = &inst.graph;
    TrailDef {
        closure: w.closure,
        groups: w
            .groups
            .iter()
            .map(|grp| GroupDef {
                vertex: g.vertex_name(grp.anchor).to_string(),
                edges: grp.block.iter().map(|&e| g.edge(e).id.clone()).collect(),
            })
            .collect(),
        terminal: Some(g.vertex_name(w.terminal).to_string()),
    }
}

/// Pretty JSON; deterministic, and parsed back by [`parse_document`].
pub fn serialize_document(inst: &Instance, trails: &[DynamicHTrail]) -> String {
    let def = inst.to_def();
    let trails: Vec<TrailDef> = trails.iter().map(|w| trail_to_def(inst, w)).collect();
    let out = DocumentOut { pattern: &def.pattern, graph: &def.graph, trails: &trails };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}
