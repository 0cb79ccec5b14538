//! Morphisms of oriented pre-chemical graphs and matchings.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::graph::{validate_chemical, Graph, Name, VertexLabel, VertexMap};

/// First violated morphism condition of `f: A → B`, if any.
pub fn morphism_defect(f: &VertexMap, a: &Graph, b: &Graph) -> Option<String> {
    for v in a.names() {
        match f.get(v) {
            None => return Some(format!("{v} is unmapped")),
            Some(w) if !b.contains(w) => return Some(format!("{v} maps to {w}, which is not a vertex")),
            _ => {}
        }
    }
    let chem = a.chem_vertices();
    let mut hit = BTreeMap::new();
    for v in &chem {
        if let Some(prev) = hit.insert(&f[v], v) {
            return Some(format!("not injective on chemical vertices: {prev} and {v} both map to {}", f[v]));
        }
    }
    for (v, l) in a.vertices() {
        let lw = b.label(&f[v]).unwrap();
        if !l.is_alpha() && lw != l {
            return Some(format!("condition 1: {v} is {l} but {} is {lw}", f[v]));
        }
        if l.is_alpha() && !(lw.is_atom() || lw.is_alpha()) {
            return Some(format!("condition 2: alpha vertex {v} maps to {lw}"));
        }
    }
    for (u, v, l) in a.edges() {
        if chem.contains(u) && chem.contains(v) && b.edge(&f[u], &f[v]) != l {
            return Some(format!("condition 3: edge {u}-{v} is not preserved"));
        }
    }
    let mut fibres: BTreeMap<&Name, Vec<&Name>> = BTreeMap::new();
    for (v, w) in f {
        if a.contains(v) {
            fibres.entry(w).or_default().push(v);
        }
    }
    for v in a.alpha_vertices() {
        for (u, l) in a.neighbours(&v) {
            if l.cov() == 0 {
                continue;
            }
            let (fv, fu) = (&f[&v], &f[u]);
            if fv == fu {
                return Some(format!("condition 4: {v} and {u} are bonded but share an image"));
            }
            let total: u32 = fibres[fv].iter().flat_map(|w| fibres[fu].iter().map(move |z| a.edge(w, z).cov())).sum();
            if b.edge(fv, fu).cov() != total {
                return Some(format!("condition 4: bond order {fv}-{fu} is not the sum over its fibres"));
            }
        }
    }
    let img = |x: &Name| f[x].clone();
    for t in a.orientation().triangle_orbits() {
        if !b.orientation().contains_triangle(&img(&t[0]), &img(&t[1]), &img(&t[2])) {
            return Some(format!("condition 5: triangle {t:?} is not preserved"));
        }
    }
    for q in a.orientation().tetrahedron_orbits() {
        if !b.orientation().contains_tetrahedron(&img(&q[0]), &img(&q[1]), &img(&q[2]), &img(&q[3])) {
            return Some(format!("condition 6: tetrahedron {q:?} is not preserved"));
        }
    }
    None
}

pub fn is_morphism(f: &VertexMap, a: &Graph, b: &Graph) -> Result<(), String> {
    morphism_defect(f, a, b).map_or(Ok(()), Err)
}

/// A morphism between chemical graphs that adds no bonds between chemical
/// vertices.
pub fn is_matching(f: &VertexMap, a: &Graph, c: &Graph) -> Result<(), String> {
    if let Some(v) = validate_chemical(a).first() {
        return Err(format!("domain is not chemical: {v}"));
    }
    if let Some(v) = validate_chemical(c).first() {
        return Err(format!("codomain is not chemical: {v}"));
    }
    is_morphism(f, a, c)?;
    let chem: Vec<Name> = a.chem_vertices().into_iter().collect();
    for (i, u) in chem.iter().enumerate() {
        for v in &chem[i + 1..] {
            if a.edge(u, v) != c.edge(&f[u], &f[v]) {
                return Err(format!("matching adds a bond between {} and {}", f[u], f[v]));
            }
        }
    }
    Ok(())
}

/// `g ∘ f`.
pub fn compose_maps(f: &VertexMap, g: &VertexMap) -> VertexMap {
    f.iter().map(|(k, v)| (k.clone(), g.get(v).cloned().unwrap_or_else(|| v.clone()))).collect()
}

struct Enumerator<'a> {
    a: &'a Graph,
    c: &'a Graph,
    /// Chemical vertices of `a` in search order with an earlier neighbour.
    order: Vec<(Name, Option<Name>)>,
    alphas: Vec<Name>,
}

impl<'a> Enumerator<'a> {
    fn new(a: &'a Graph, c: &'a Graph) -> Enumerator<'a> {
        let chem = a.chem_vertices();
        let mut order: Vec<(Name, Option<Name>)> = Vec::new();
        let mut placed = BTreeSet::new();
        let mut rare: Vec<&Name> = chem.iter().collect();
        let freq = c.label_multiset();
        rare.sort_by_key(|v| (freq.get(&a.label(v).unwrap()).copied().unwrap_or(0), *v));
        for s in rare {
            if !placed.insert(s.clone()) {
                continue;
            }
            order.push((s.clone(), None));
            let mut head = order.len() - 1;
            while head < order.len() {
                let v = order[head].0.clone();
                head += 1;
                for (w, _) in a.neighbours(&v) {
                    if chem.contains(w) && placed.insert(w.clone()) {
                        order.push((w.clone(), Some(v.clone())));
                    }
                }
            }
        }
        Enumerator { a, c, order, alphas: a.alpha_vertices().into_iter().collect() }
    }

    fn chem_candidates(&self, depth: usize, f: &VertexMap) -> Vec<Name> {
        let (v, parent) = &self.order[depth];
        let label = self.a.label(v).unwrap();
        let pool: Vec<Name> = match parent {
            Some(p) => self.c.neighbours(&f[p]).map(|(w, _)| w.clone()).collect(),
            None => self.c.vertices().filter(|(_, l)| *l == label).map(|(w, _)| w.clone()).collect(),
        };
        let used: BTreeSet<&Name> = f.values().collect();
        pool.into_iter()
            .filter(|w| !used.contains(w) && self.c.label(w) == Some(label))
            .filter(|w| f.iter().all(|(u, x)| self.a.edge(v, u) == self.c.edge(w, x)))
            .collect()
    }

    fn alpha_candidates(&self, alpha: &Name, f: &VertexMap, chem_image: &BTreeSet<Name>) -> Vec<Name> {
        let Some((nb, _)) = self.a.neighbours(alpha).next() else {
            // An isolated α is not chemical; any atom or α outside the image will do.
            return self
                .c
                .vertices()
                .filter(|(w, l)| (l.is_atom() || l.is_alpha()) && !chem_image.contains(*w))
                .map(|(w, _)| w.clone())
                .collect();
        };
        let Some(target) = f.get(nb) else { return Vec::new() };
        self.c
            .neighbours(target)
            .filter(|(w, l)| l.cov() > 0 && !chem_image.contains(*w))
            .filter(|(w, _)| matches!(self.c.label(w), Some(VertexLabel::Atom(_) | VertexLabel::Alpha)))
            .map(|(w, _)| w.clone())
            .collect()
    }

    fn chem_maps(&self, depth: usize, f: &mut VertexMap, out: &mut Vec<VertexMap>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if depth == self.order.len() {
            out.push(f.clone());
            return;
        }
        for w in self.chem_candidates(depth, f) {
            let v = self.order[depth].0.clone();
            f.insert(v.clone(), w);
            self.chem_maps(depth + 1, f, out, limit);
            f.remove(&v);
        }
    }

    fn complete(&self, chem_map: &VertexMap, out: &mut Vec<VertexMap>, limit: usize) {
        let chem_image: BTreeSet<Name> = chem_map.values().cloned().collect();
        let options: Vec<Vec<Name>> = self.alphas.iter().map(|x| self.alpha_candidates(x, chem_map, &chem_image)).collect();
        if options.iter().any(Vec::is_empty) && !self.alphas.is_empty() {
            return;
        }
        let mut idx = vec![0usize; options.len()];
        loop {
            if out.len() >= limit {
                return;
            }
            let mut f = chem_map.clone();
            for (k, alpha) in self.alphas.iter().enumerate() {
                f.insert(alpha.clone(), options[k][idx[k]].clone());
            }
            if is_matching(&f, self.a, self.c).is_ok() {
                out.push(f);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return;
                }
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// All matchings `A → C` in a deterministic order, at most `limit` of them.
pub fn enumerate_matchings(a: &Graph, c: &Graph, limit: usize) -> Vec<VertexMap> {
    if !validate_chemical(a).is_empty() || !validate_chemical(c).is_empty() || limit == 0 {
        return Vec::new();
    }
    let en = Enumerator::new(a, c);
    if en.order.is_empty() {
        let mut out = Vec::new();
        en.complete(&VertexMap::new(), &mut out, limit);
        return out;
    }
    let first = en.chem_candidates(0, &VertexMap::new());
    let branches: Vec<Vec<VertexMap>> = first
        .par_iter()
        .map(|w| {
            let mut f = VertexMap::from([(en.order[0].0.clone(), w.clone())]);
            let mut chem = Vec::new();
            en.chem_maps(1, &mut f, &mut chem, usize::MAX);
            let mut out = Vec::new();
            for cm in chem {
                en.complete(&cm, &mut out, limit);
                if out.len() >= limit {
                    break;
                }
            }
            out
        })
        .collect();
    branches.into_iter().flatten().take(limit).collect()
}
