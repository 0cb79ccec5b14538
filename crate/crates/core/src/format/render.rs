//! Plain-text rendering: one line per vertex, then one per bond.

use std::fmt::Write;

use crate::disconnect::Rule;
use crate::graph::{EdgeLabel, Graph, VertexLabel};
use crate::rewrite::Reaction;

fn symbol(l: VertexLabel) -> &'static str {
    match l {
        VertexLabel::Alpha => "*",
        other => other.as_str(),
    }
}

fn bond(l: EdgeLabel) -> &'static str {
    match l {
        EdgeLabel::Cov(1) => "-1-",
        EdgeLabel::Cov(2) => "=",
        EdgeLabel::Cov(3) => "≡",
        EdgeLabel::Cov(4) => "-4-",
        EdgeLabel::Ionic => "~",
        EdgeLabel::Cov(_) => " ",
    }
}

/// Vertices as `name: label`, then bonds as `X -1- Y  (u, v)`, both in name
/// order.
pub fn render_graph(g: &Graph) -> String {
    if g.is_empty() {
        return "(empty)\n".to_string();
    }
    let mut out = String::new();
    for (v, l) in g.vertices() {
        writeln!(out, "{v}: {}", symbol(l)).unwrap();
    }
    for (u, v, l) in g.edges() {
        let (lu, lv) = (symbol(g.label(u).unwrap()), symbol(g.label(v).unwrap()));
        writeln!(out, "{lu} {} {lv}  ({u}, {v})", bond(l)).unwrap();
    }
    let o = g.orientation();
    for t in o.triangle_orbits() {
        writeln!(out, "triangle {}", t.join(" ")).unwrap();
    }
    for q in o.tetrahedron_orbits() {
        writeln!(out, "tetrahedron {}", q.join(" ")).unwrap();
    }
    out
}

pub fn render_rules(rules: &[Rule]) -> String {
    if rules.is_empty() {
        return "(no rules)\n".to_string();
    }
    rules.iter().map(|r| format!("{r}\n")).collect()
}

pub fn render_reaction(r: &Reaction) -> String {
    let list = |xs: &mut dyn Iterator<Item = &String>| xs.cloned().collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    writeln!(out, "reacting source vertices: {{{}}}", list(&mut r.u_source.iter())).unwrap();
    writeln!(out, "reacting target vertices: {{{}}}", list(&mut r.u_target.iter())).unwrap();
    for (k, v) in &r.bijection {
        writeln!(out, "  {k} => {v}").unwrap();
    }
    writeln!(out, "target:").unwrap();
    out.push_str(&render_graph(&r.target));
    out
}
