//! Deterministic DOT output for finite categories.
//!
//! Identities and automorphisms are not drawn as edges; each node carries
//! its automorphism count instead.

use std::fmt::Write;

use crate::category::FiniteCategory;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Node label `"<object label> |Aut|=k"`.
pub fn node_label(cat: &FiniteCategory, object: usize) -> String {
    format!("{} |Aut|={}", cat.objects()[object].label, cat.aut_order(object))
}

pub fn export_dot(cat: &FiniteCategory) -> String {
    if cat.object_count() == 0 {
        return "digraph phi0 { }".to_string();
    }
    let mut nodes: Vec<usize> = (0..cat.object_count()).collect();
    nodes.sort_by_key(|&o| {
        let info = &cat.objects()[o];
        (info.subgroup_class, info.component, o)
    });
    let mut edges: Vec<(usize, usize, &str)> = cat
        .arrows()
        .iter()
        .enumerate()
        .filter(|&(i, a)| !cat.is_identity(i) && !(a.src == a.dst && cat.is_isomorphism(i)))
        .map(|(_, a)| (a.src, a.dst, a.label.as_str()))
        .collect();
    edges.sort();

    let mut out = String::from("digraph phi0 {\n");
    for o in nodes {
        writeln!(out, "  n{o} [label=\"{}\"];", escape(&node_label(cat, o))).unwrap();
    }
    for (s, d, label) in edges {
        writeln!(out, "  n{s} -> n{d} [label=\"{}\"];", escape(label)).unwrap();
    }
    out.push('}');
    out
}
