//! Labelled-graph isomorphism by backtracking.
//!
//! Orientation is ignored here; [`crate::orientation`] classifies the maps
//! found.

use std::collections::BTreeMap;

use crate::graph::{EdgeLabel, Graph, Name, VertexLabel, VertexMap};

/// Dense index over a graph's vertices.
pub(crate) struct Indexed<'a> {
    pub names: Vec<&'a Name>,
    pub labels: Vec<VertexLabel>,
    pub adj: Vec<Vec<(usize, EdgeLabel)>>,
    edges: Vec<EdgeLabel>,
    pub signature: Vec<Vec<(VertexLabel, EdgeLabel)>>,
}

impl<'a> Indexed<'a> {
    pub fn new(g: &'a Graph) -> Indexed<'a> {
        let names: Vec<&Name> = g.names().collect();
        let index: BTreeMap<&Name, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let n = names.len();
        let labels = names.iter().map(|v| g.label(v).unwrap()).collect::<Vec<_>>();
        let mut edges = vec![EdgeLabel::NONE; n * n];
        let mut adj = vec![Vec::new(); n];
        for (i, v) in names.iter().enumerate() {
            for (w, l) in g.neighbours(v) {
                let j = index[w];
                edges[i * n + j] = l;
                adj[i].push((j, l));
            }
        }
        let signature = adj
            .iter()
            .map(|ns| {
                let mut s: Vec<_> = ns.iter().map(|&(j, l)| (labels[j], l)).collect();
                s.sort();
                s
            })
            .collect();
        Indexed { names, labels, adj, edges, signature }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn edge(&self, i: usize, j: usize) -> EdgeLabel {
        self.edges[i * self.len() + j]
    }
}

fn invariants_match(a: &Indexed, b: &Indexed) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let key = |x: &Indexed| {
        let mut k: Vec<(VertexLabel, &Vec<(VertexLabel, EdgeLabel)>)> = x.labels.iter().copied().zip(x.signature.iter()).collect();
        k.sort();
        k.into_iter().map(|(l, s)| (l, s.clone())).collect::<Vec<_>>()
    };
    key(a) == key(b)
}

/// Search order: start each component at its rarest label, then grow by
/// adjacency. Returns `(vertex, parent)` pairs, where the parent is an
/// earlier neighbour.
fn search_order(a: &Indexed) -> Vec<(usize, Option<usize>)> {
    let mut freq: BTreeMap<VertexLabel, usize> = BTreeMap::new();
    for l in &a.labels {
        *freq.entry(*l).or_default() += 1;
    }
    let mut starts: Vec<usize> = (0..a.len()).collect();
    starts.sort_by_key(|&i| (freq[&a.labels[i]], std::cmp::Reverse(a.adj[i].len()), i));
    let mut placed = vec![false; a.len()];
    let mut order = Vec::with_capacity(a.len());
    for s in starts {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push((s, None));
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head].0;
            head += 1;
            let mut next: Vec<usize> = a.adj[v].iter().map(|&(j, _)| j).filter(|&j| !placed[j]).collect();
            next.sort_by_key(|&j| (freq[&a.labels[j]], j));
            for j in next {
                if !placed[j] {
                    placed[j] = true;
                    order.push((j, Some(v)));
                }
            }
        }
    }
    order
}

struct Search<'s, 'a, F> {
    a: &'s Indexed<'a>,
    b: &'s Indexed<'a>,
    order: Vec<(usize, Option<usize>)>,
    map: Vec<usize>,
    used: Vec<bool>,
    visit: F,
}

const UNSET: usize = usize::MAX;

impl<'s, 'a, F: FnMut(&[usize]) -> bool> Search<'s, 'a, F> {
    fn consistent(&self, v: usize, w: usize) -> bool {
        if self.a.labels[v] != self.b.labels[w] || self.a.signature[v] != self.b.signature[w] {
            return false;
        }
        self.order.iter().all(|&(u, _)| {
            let x = self.map[u];
            x == UNSET || self.a.edge(v, u) == self.b.edge(w, x)
        })
    }

    /// Returns false once the visitor asks to stop.
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return (self.visit)(&self.map);
        }
        let (v, parent) = self.order[depth];
        let candidates: Vec<usize> = match parent {
            Some(p) => self.b.adj[self.map[p]].iter().map(|&(j, _)| j).collect(),
            None => (0..self.b.len()).collect(),
        };
        for w in candidates {
            if self.used[w] || !self.consistent(v, w) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            let go_on = self.extend(depth + 1);
            self.map[v] = UNSET;
            self.used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` with every labelled isomorphism `g1 → g2` in a fixed order
/// until it returns `false`.
pub fn for_each_isomorphism(g1: &Graph, g2: &Graph, mut visit: impl FnMut(&VertexMap) -> bool) {
    let a = Indexed::new(g1);
    let b = Indexed::new(g2);
    if !invariants_match(&a, &b) {
        return;
    }
    let order = search_order(&a);
    let n = a.len();
    let mut search = Search {
        a: &a,
        b: &b,
        order,
        map: vec![UNSET; n],
        used: vec![false; n],
        visit: |m: &[usize]| {
            let f: VertexMap = m.iter().enumerate().map(|(i, &j)| (a.names[i].clone(), b.names[j].clone())).collect();
            visit(&f)
        },
    };
    search.extend(0);
}

pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<VertexMap> {
    let mut out = None;
    for_each_isomorphism(g1, g2, |f| {
        out = Some(f.clone());
        false
    });
    out
}

pub fn all_isomorphisms(g1: &Graph, g2: &Graph) -> Vec<VertexMap> {
    let mut out = Vec::new();
    for_each_isomorphism(g1, g2, |f| {
        out.push(f.clone());
        true
    });
    out
}

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    find_isomorphism(g1, g2).is_some()
}

/// Why `f` fails to be a labelled isomorphism `m → n`, if it does.
pub fn isomorphism_defect(f: &VertexMap, m: &Graph, n: &Graph) -> Option<String> {
    if f.len() != m.len() || m.len() != n.len() {
        return Some(format!("map has {} entries for graphs of size {} and {}", f.len(), m.len(), n.len()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (v, l) in m.vertices() {
        let Some(w) = f.get(v) else { return Some(format!("{v} is unmapped")) };
        if !seen.insert(w) {
            return Some(format!("{w} is hit twice"));
        }
        match n.label(w) {
            None => return Some(format!("{w} is not a vertex of the target")),
            Some(lw) if lw != l => return Some(format!("label of {v} is {l}, of {w} is {lw}")),
            _ => {}
        }
    }
    let names: Vec<&Name> = m.names().collect();
    for (i, u) in names.iter().enumerate() {
        for v in &names[i + 1..] {
            if m.edge(u, v) != n.edge(&f[*u], &f[*v]) {
                return Some(format!("edge {u}-{v} is not preserved"));
            }
        }
    }
    None
}
