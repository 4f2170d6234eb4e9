//! Graphviz output. Codomain vertices sit in the left column, domain vertices
//! in the right column.

use std::fmt::Write;

use crate::pbr::Pbr;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph for `p`. Node ids are `c<i>` and `d<i>`; labels carry the
/// vertex labels.
pub fn render(p: &Pbr) -> String {
    let d = p.dom_len();
    let id = |i: usize| if i < d { format!("d{i}") } else { format!("c{}", i - d) };
    let mut out = String::new();
    out.push_str("digraph pbr {\n  rankdir=LR;\n  node [shape=circle];\n");
    let column = |out: &mut String, rank: &str, name: &str, idx: &mut dyn Iterator<Item = usize>| {
        let _ = writeln!(
            out,
            "  subgraph {name} {{\n    label={};\n    rank={rank};",
            quote(name)
        );
        for i in idx {
            let _ = writeln!(out, "    {} [label={}];", id(i), quote(&p.vertex(i).label));
        }
        out.push_str("  }\n");
    };
    column(&mut out, "min", "codomain", &mut (d..p.len()));
    column(&mut out, "max", "domain", &mut (0..d));
    for (u, v) in p.index_edges() {
        let _ = writeln!(out, "  {} -> {};", id(u), id(v));
    }
    out.push_str("}\n");
    out
}
