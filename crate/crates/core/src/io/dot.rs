//! Graphviz output. All names are quoted and output order follows ids, so
//! the text is stable across runs.

use std::fmt::Write;

use crate::auxiliary::AuxGraph;
use crate::model::Instance;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// `G` with each edge labelled by its id and color.
pub fn graph_to_dot(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", quote(g.vertex_name(v))).unwrap();
    }
    for e in g.edges() {
        let [a, b] = e.ends;
        writeln!(
            out,
            "  {} -- {} [label={}, color={}];",
            quote(g.vertex_name(a)),
            quote(g.vertex_name(b)),
            quote(&e.id),
            quote(inst.pattern.name(e.color)),
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// `H`; loops are drawn as self-edges.
pub fn pattern_to_dot(inst: &Instance) -> String {
    let h = &inst.pattern;
    let mut out = String::from("graph H {\n");
    for c in h.colors() {
        writeln!(out, "  {};", quote(h.name(c))).unwrap();
    }
    for (a, b) in h.pairs() {
        writeln!(out, "  {} -- {};", quote(h.name(a)), quote(h.name(b))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The auxiliary graph. Joint edges are dashed.
pub fn aux_to_dot(inst: &Instance, aux: &AuxGraph) -> String {
    let mut out = format!("graph L{} {{\n", aux.n());
    for i in 0..aux.vertex_count() {
        writeln!(out, "  {};", quote(&aux.label(inst, i))).unwrap();
    }
    for (a, b) in aux.graph().edges() {
        let style = if aux.is_joint_edge(a, b) { " [style=dashed]" } else { "" };
        writeln!(out, "  {} -- {}{};", quote(&aux.label(inst, a)), quote(&aux.label(inst, b)), style).unwrap();
    }
    out.push_str("}\n");
    out
}
