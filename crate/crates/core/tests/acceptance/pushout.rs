use std::collections::BTreeSet;

use retrograph::format::graph_to_json;
use retrograph::graph::{Graph, Name, VertexMap};
use retrograph::rewrite::{compose_maps, morphism_defect, Dpo};

use super::common::{collect, Case, Tally};

/// Every morphism `g → x`. Backtracking prunes on labels, chemical
/// injectivity and chemical bonds; `morphism_defect` has the final word.
fn homs(g: &Graph, x: &Graph) -> Vec<VertexMap> {
    let order: Vec<Name> = g.names().cloned().collect();
    let mut out = Vec::new();
    let mut cur = VertexMap::new();
    let mut used = BTreeSet::new();
    extend(g, x, &order, &mut cur, &mut used, &mut out);
    out
}

fn extend(g: &Graph, x: &Graph, order: &[Name], cur: &mut VertexMap, used: &mut BTreeSet<Name>, out: &mut Vec<VertexMap>) {
    let Some(v) = order.get(cur.len()) else {
        if morphism_defect(cur, g, x).is_none() {
            out.push(cur.clone());
        }
        return;
    };
    let l = g.label(v).unwrap();
    for (w, lw) in x.vertices() {
        let fits = if l.is_alpha() { lw.is_atom() || lw.is_alpha() } else { lw == l && !used.contains(w) };
        if !fits {
            continue;
        }
        if !l.is_alpha() {
            let clash = g.neighbours(v).any(|(u, e)| !g.label(u).unwrap().is_alpha() && cur.get(u).is_some_and(|fu| x.edge(w, fu) != e));
            if clash {
                continue;
            }
            used.insert(w.clone());
        }
        cur.insert(v.clone(), w.clone());
        extend(g, x, order, cur, used, out);
        cur.remove(v);
        if !l.is_alpha() {
            used.remove(w);
        }
    }
}

fn identity(g: &Graph) -> VertexMap {
    g.names().map(|v| (v.clone(), v.clone())).collect()
}

fn restrict(f: &VertexMap, g: &Graph) -> VertexMap {
    g.names().map(|v| (v.clone(), f[v].clone())).collect()
}

/// A commuting square `k → l → p`, `k → r → p` over apex `k`, with legs
/// `kl`, `kr` and the cocone `lp`, `rp` into `p`.
struct Square<'a> {
    k: &'a Graph,
    l: &'a Graph,
    r: &'a Graph,
    p: &'a Graph,
    kl: VertexMap,
    kr: VertexMap,
    lp: VertexMap,
    rp: VertexMap,
}

impl Square<'_> {
    fn commutes(&self) -> bool {
        self.k.names().all(|v| self.lp[&self.kl[v]] == self.rp[&self.kr[v]])
    }

    /// Why the map `p → x` glued from a cocone is not a morphism.
    fn glue(&self, f: &VertexMap, g: &VertexMap, x: &Graph) -> String {
        let mut h = VertexMap::new();
        for (src, leg, via) in [(self.l, &self.lp, f), (self.r, &self.rp, g)] {
            for v in src.names() {
                if let Some(prev) = h.insert(leg[v].clone(), via[v].clone()) {
                    if prev != via[v] {
                        return format!("legs disagree on {}", leg[v]);
                    }
                }
            }
        }
        match morphism_defect(&h, self.p, x) {
            Some(why) => why,
            None => "glued map is a morphism".into(),
        }
    }

    /// Problems with the universal property against test object `x`: every
    /// commuting cocone into `x` must factor through `p` exactly once.
    fn universal(&self, x: &Graph) -> Option<String> {
        let from_l = homs(self.l, x);
        let from_r = homs(self.r, x);
        let from_p = homs(self.p, x);
        let mut cocones = 0;
        for f in &from_l {
            for g in &from_r {
                if !self.k.names().all(|v| f[&self.kl[v]] == g[&self.kr[v]]) {
                    continue;
                }
                cocones += 1;
                let through = from_p.iter().filter(|h| compose_maps(&self.lp, h) == *f && compose_maps(&self.rp, h) == *g).count();
                if through != 1 {
                    return Some(format!("a cocone factors {through} times ({})", self.glue(f, g, x)));
                }
            }
        }
        // Distinct mediating maps must give distinct cocones.
        let mut seen = BTreeSet::new();
        for h in &from_p {
            seen.insert((compose_maps(&self.lp, h), compose_maps(&self.rp, h)));
        }
        if seen.len() != from_p.len() {
            return Some("two maps out of the pushout give the same cocone".into());
        }
        (seen.len() != cocones).then(|| format!("{cocones} cocones but {} maps out of the pushout", seen.len()))
    }
}

fn squares(d: &Dpo) -> [Square<'_>; 2] {
    let s = &d.scheme;
    let k_to_b: VertexMap = d.apex.names().map(|v| (v.clone(), s.bijection[v].clone())).collect();
    [
        Square {
            k: &d.apex,
            l: &s.left,
            r: &d.d,
            p: &d.c,
            kl: identity(&d.apex),
            kr: d.k_to_d.clone(),
            lp: restrict(&d.matching, &s.left),
            rp: identity(&d.d),
        },
        Square { k: &d.apex, l: &s.right, r: &d.d, p: &d.e, kl: k_to_b, kr: d.k_to_d.clone(), lp: d.b_to_e.clone(), rp: d.d_to_e.clone() },
    ]
}

pub fn run(seed: u64, n: usize) -> Tally {
    collect(seed, n, |gen| {
        let c = gen.molecular_graph(8);
        if c.len() > 8 {
            return None;
        }
        let d = gen.scheme_instance(&c, 2)?;
        let mut why = Vec::new();
        for (i, sq) in squares(&d).iter().enumerate() {
            if !sq.commutes() {
                why.push(format!("square {i} does not commute"));
                continue;
            }
            for (name, x) in [("C", &d.c), ("E", &d.e)] {
                if let Some(w) = sq.universal(x) {
                    why.push(format!("square {i} against {name}: {w}"));
                }
            }
        }
        let text = format!("{}{}", graph_to_json(&d.c), graph_to_json(&d.e));
        Some(vec![if why.is_empty() { Case::pass(text) } else { Case::fail(format!("{}; {text}", why.join("; "))) }])
    })
}
