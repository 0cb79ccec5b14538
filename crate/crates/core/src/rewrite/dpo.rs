//! Double-pushout application of a reaction scheme along a matching, by the
//! explicit construction of the context graph `D` and the product `E`.

use std::collections::{BTreeMap, BTreeSet};

use super::morphism::{is_matching, morphism_defect};
use super::scheme::ReactionScheme;
use crate::error::{Error, Result};
use crate::graph::{validate_chemical, EdgeLabel, Graph, Name, NameGen, VertexMap};
use crate::orientation::Orientation;

/// A completed double-pushout diagram
///
/// ```text
///   A ← K → B
///   ↓   ↓   ↓
///   C ← D → E
/// ```
///
/// `D` is a subgraph of `C` under the same names. `d_to_e` and `b_to_e`
/// record the right-hand morphisms, so renaming `E` keeps them accurate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpo {
    pub scheme: ReactionScheme,
    pub apex: Graph,
    pub matching: VertexMap,
    pub c: Graph,
    pub d: Graph,
    pub e: Graph,
    /// `K → D`: the matching restricted to neutral vertices of `A`.
    pub k_to_d: VertexMap,
    /// `D → E`.
    pub d_to_e: VertexMap,
    /// `B → E`.
    pub b_to_e: VertexMap,
}

impl Dpo {
    /// Renames vertices of `E`, keeping the recorded morphisms in step.
    pub fn rename_product(&self, map: &VertexMap) -> Result<Dpo> {
        let f = |v: &Name| map.get(v).cloned().unwrap_or_else(|| v.clone());
        Ok(Dpo {
            e: self.e.rename(map)?,
            d_to_e: self.d_to_e.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
            b_to_e: self.b_to_e.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
            ..self.clone()
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Class {
    Context,
    NeuChem,
    AlphaImage,
    ChargeB,
}

fn sum_labels(labels: impl Iterator<Item = EdgeLabel>) -> Result<EdgeLabel> {
    let mut total = 0;
    for l in labels {
        if l == EdgeLabel::Ionic {
            return Err(Error::SchemeMismatch("ionic bond in a folded sum".into()));
        }
        total += l.cov();
    }
    EdgeLabel::covalent(total).ok_or_else(|| Error::SchemeMismatch(format!("bond order {total} exceeds 4")))
}

pub fn dpo_apply(s: &ReactionScheme, m: &VertexMap, c: &Graph) -> Result<Dpo> {
    let a = &s.left;
    let b = &s.right;
    if let Err(why) = is_matching(m, a, c) {
        return Err(Error::NotAMatching(why));
    }
    s.validate().map_err(|e| Error::SchemeMismatch(e.to_string()))?;

    let chem_image: BTreeSet<Name> = a.chem_vertices().iter().map(|v| m[v].clone()).collect();
    let alpha_image: BTreeSet<Name> = a.alpha_vertices().iter().map(|v| m[v].clone()).collect();
    if let Some(v) = alpha_image.intersection(&chem_image).next() {
        return Err(Error::SchemeMismatch(format!("alpha vertex mapped onto chemical image {v}")));
    }
    let neu_chem: BTreeSet<Name> = chem_image.iter().filter(|v| !c.label(v).unwrap().is_charge()).cloned().collect();
    let crg_chem: BTreeSet<Name> = chem_image.difference(&neu_chem).cloned().collect();
    let im_m: BTreeSet<Name> = m.values().cloned().collect();
    for v in &crg_chem {
        if let Some((w, _)) = c.neighbours(v).find(|(w, _)| !im_m.contains(*w)) {
            return Err(Error::SchemeMismatch(format!("no pushout complement, deleting {v} leaves its edge to {w} dangling")));
        }
    }

    // Charged vertices of B join E; rename any that collide with C.
    let mut gen = NameGen::default();
    let mut b_charge_name = VertexMap::new();
    let mut taken: BTreeSet<Name> = c.name_set();
    for q in b.charged_vertices() {
        let name = if taken.contains(&q) { gen.fresh_with(|x| taken.contains(x) || b.contains(x)) } else { q.clone() };
        taken.insert(name.clone());
        b_charge_name.insert(q, name);
    }
    let charge_b: BTreeSet<Name> = b_charge_name.values().cloned().collect();
    let b_charge_orig: VertexMap = b_charge_name.iter().map(|(k, v)| (v.clone(), k.clone())).collect();

    // Fibres of m on neutral vertices, pushed through b: w* = b m⁻¹(w).
    let mut star: BTreeMap<Name, Vec<Name>> = BTreeMap::new();
    for v in a.neutral_vertices() {
        star.entry(m[&v].clone()).or_default().push(s.bijection[&v].clone());
    }

    let apex = s.apex();
    let k_to_d: VertexMap = apex.names().map(|v| (v.clone(), m[v].clone())).collect();

    // D
    let keep: BTreeSet<Name> = c.names().filter(|v| !crg_chem.contains(*v)).cloned().collect();
    let mut d = c.induced(&keep).without_orientation();
    let pre: VertexMap = a.chem_vertices().into_iter().map(|v| (m[&v].clone(), v)).collect();
    let neu_list: Vec<&Name> = neu_chem.iter().collect();
    for (i, u) in neu_list.iter().enumerate() {
        for v in &neu_list[i + 1..] {
            d.set_edge(u, v, apex.edge(&pre[*u], &pre[*v]))?;
        }
    }
    d.set_orientation(transport(c, &d.name_set(), &im_m, apex.orientation(), &k_to_d)?)
        .map_err(|e| Error::SchemeMismatch(format!("context orientation: {e}")))?;

    // E
    let class = |v: &Name| -> Class {
        if charge_b.contains(v) {
            Class::ChargeB
        } else if neu_chem.contains(v) {
            Class::NeuChem
        } else if alpha_image.contains(v) {
            Class::AlphaImage
        } else {
            Class::Context
        }
    };
    let mut e = d.without_orientation();
    for q in &charge_b {
        e.add_vertex(q.clone(), b.label(&b_charge_orig[q]).unwrap())?;
    }
    let single = |v: &Name| -> Name {
        match class(v) {
            Class::ChargeB => b_charge_orig[v].clone(),
            _ => star[v][0].clone(),
        }
    };
    let names: Vec<Name> = e.names().cloned().collect();
    for (i, u) in names.iter().enumerate() {
        for v in &names[i + 1..] {
            let (cu, cv) = (class(u), class(v));
            let label = match (cu, cv) {
                (Class::Context, Class::ChargeB) | (Class::ChargeB, Class::Context) => EdgeLabel::NONE,
                (Class::Context, _) | (_, Class::Context) | (Class::AlphaImage, Class::AlphaImage) => c.edge(u, v),
                (Class::NeuChem, Class::NeuChem)
                | (Class::NeuChem, Class::ChargeB)
                | (Class::ChargeB, Class::NeuChem)
                | (Class::ChargeB, Class::ChargeB) => b.edge(&single(u), &single(v)),
                (Class::AlphaImage, _) => sum_labels(star[u].iter().map(|w| b.edge(&single(v), w)))?,
                (_, Class::AlphaImage) => sum_labels(star[v].iter().map(|w| b.edge(&single(u), w)))?,
            };
            e.set_edge(u, v, label)?;
        }
    }
    let mut b_to_e: VertexMap = VertexMap::new();
    for v in a.neutral_vertices() {
        b_to_e.insert(s.bijection[&v].clone(), m[&v].clone());
    }
    for (q, name) in &b_charge_name {
        b_to_e.insert(q.clone(), name.clone());
    }
    let e_orient = transport(c, &e.name_set(), &im_m, b.orientation(), &b_to_e)?;
    e.set_orientation(e_orient).map_err(|err| Error::SchemeMismatch(format!("product orientation: {err}")))?;

    if let Some(v) = validate_chemical(&e).first() {
        return Err(Error::SchemeMismatch(format!("product is not chemical: {v}")));
    }
    if !c.has_alpha() && e.has_alpha() {
        return Err(Error::SchemeMismatch("product gained an alpha vertex".into()));
    }
    let d_to_e: VertexMap = d.names().map(|v| (v.clone(), v.clone())).collect();
    // Folded α-vertices that the scheme treats differently leave no pushout
    // complement; the legs below then fail to be morphisms.
    for (map, from, to, what) in [(&k_to_d, &apex, &d, "K → D"), (&d_to_e, &d, &e, "D → E"), (&b_to_e, b, &e, "B → E")] {
        if let Some(why) = morphism_defect(map, from, to) {
            return Err(Error::SchemeMismatch(format!("no pushout complement, {what} is not a morphism: {why}")));
        }
    }
    Ok(Dpo { scheme: s.clone(), apex, matching: m.clone(), c: c.clone(), d, e, k_to_d, d_to_e, b_to_e })
}

/// Relations on `vertices`: tuples lying inside `im_m` are images of
/// `source` tuples under `into`, all others are inherited from `c`.
fn transport(c: &Graph, vertices: &BTreeSet<Name>, im_m: &BTreeSet<Name>, source: &Orientation, into: &VertexMap) -> Result<Orientation> {
    let mut o = Orientation::default();
    let inside = |xs: &[Name]| xs.iter().all(|x| im_m.contains(x));
    let present = |xs: &[Name]| xs.iter().all(|x| vertices.contains(x));
    for t in c.orientation().triangle_orbits() {
        if present(t) && !inside(t) {
            o.insert_triangle_unchecked(t);
        }
    }
    for q in c.orientation().tetrahedron_orbits() {
        if present(q) && !inside(q) {
            o.insert_tetrahedron_orbit(q);
        }
    }
    let img = |x: &Name| into.get(x).cloned();
    for t in source.triangle_orbits() {
        if let (Some(x), Some(y), Some(z)) = (img(&t[0]), img(&t[1]), img(&t[2])) {
            let t2 = [x, y, z];
            if present(&t2) && t2[0] != t2[1] && t2[1] != t2[2] && t2[0] != t2[2] {
                o.insert_triangle_unchecked(&t2);
            }
        }
    }
    for q in source.tetrahedron_orbits() {
        let imgs: Vec<Option<Name>> = q.iter().map(img).collect();
        if imgs.iter().all(Option::is_some) {
            let q2: [Name; 4] = std::array::from_fn(|i| imgs[i].clone().unwrap());
            let distinct = (0..4).all(|i| (i + 1..4).all(|j| q2[i] != q2[j]));
            if present(&q2) && distinct {
                o.insert_tetrahedron_orbit(&q2);
            }
        }
    }
    o.check_projection().map_err(|e| Error::SchemeMismatch(format!("orientation cannot be transported: {e}")))?;
    Ok(o)
}
