use std::collections::BTreeMap;

use retrograph::format::graph_to_json;
use retrograph::graph::{Graph, VertexLabel};

use super::common::{collect, Case, Tally};

/// Atom symbols with multiplicity, counted directly from the vertex list.
fn atoms(g: &Graph) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for (_, l) in g.vertices() {
        if let VertexLabel::Atom(_) = l {
            *out.entry(l.as_str().to_string()).or_default() += 1;
        }
    }
    out
}

/// `+` minus `−`, counted directly.
fn charge(g: &Graph) -> i64 {
    g.vertices()
        .map(|(_, l)| match l {
            VertexLabel::Plus => 1,
            VertexLabel::Minus => -1,
            _ => 0,
        })
        .sum()
}

pub fn run(seed: u64, n: usize) -> Tally {
    collect(seed, n, |gen| {
        let c = gen.molecular_graph(12);
        if c.len() > 12 {
            return None;
        }
        let dpo = gen.scheme_instance(&c, 3)?;
        let e = &dpo.e;
        let mut why = Vec::new();
        if atoms(&c) != atoms(e) {
            why.push("atom multiset changed");
        }
        if charge(&c) != charge(e) {
            why.push("net charge changed");
        }
        if e.vertices().any(|(_, l)| l == VertexLabel::Alpha) {
            why.push("product has an alpha vertex");
        }
        let case =
            if why.is_empty() { Case::pass(graph_to_json(e)) } else { Case::fail(format!("{}: {}", why.join(", "), graph_to_json(e))) };
        Some(vec![case])
    })
}
