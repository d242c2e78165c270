//! Graphviz rendering of a covering: base simplices clustered by
//! dimension, face maps as edges, worlds as dashed annotation nodes.

use std::fmt::Write;

use episim_core::csets::{CoveringModel, Simplex};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn covering_dot(x: &CoveringModel) -> String {
    let cov = x.covering();
    let base = cov.base();
    let roster = cov.roster();
    let node = |s: Simplex| quote(&format!("s:{}", base.id(s)));

    let mut simplices: Vec<Simplex> = base.simplices().collect();
    simplices.sort_by_key(|s| (s.group.len(), s.group.bits(), s.index));

    let mut out = String::from("digraph covering {\n  rankdir=BT;\n  node [shape=ellipse];\n");
    let mut dims: Vec<usize> = simplices.iter().map(|s| s.group.len()).collect();
    dims.dedup();
    for d in dims {
        let dim = d as isize - 1;
        let name = if dim < 0 { "m1".to_string() } else { dim.to_string() };
        let _ = writeln!(out, "  subgraph cluster_dim_{name} {{");
        let _ = writeln!(out, "    label={};", quote(&format!("dimension {dim}")));
        for &s in simplices.iter().filter(|s| s.group.len() == d) {
            let label = format!("{}\n{}", base.id(s), roster.fmt_group(s.group));
            let _ = writeln!(out, "    {} [label={}];", node(s), quote(&label));
        }
        out.push_str("  }\n");
    }
    for &s in &simplices {
        for a in s.group.iter() {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                node(s),
                node(base.face(s, a)),
                quote(&roster.names()[a])
            );
        }
    }
    for &w in cov.id_order() {
        let tw = &cov.worlds()[w];
        let props: Vec<&str> = x.label(w).iter().map(|p| p.as_str()).collect();
        let label = format!("{}\n{{{}}}", tw.id, props.join(","));
        let id = quote(&format!("w:{}", tw.id));
        let _ = writeln!(out, "  {id} [shape=box, style=dashed, label={}];", quote(&label));
        let _ = writeln!(out, "  {id} -> {} [style=dotted, arrowhead=none];", node(cov.image(w)));
    }
    out.push_str("}\n");
    out
}
