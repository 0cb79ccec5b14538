//! Reaction schemes, presented as a pair of chemical graphs with a labelled
//! bijection between their neutral vertices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{validate_chemical, Graph, Name, VertexMap};
use crate::orientation::Orientation;

/// Whether `b` is a label-preserving bijection from `domain` (vertices of
/// `a`) onto `codomain` (vertices of `c`).
pub fn labelled_bijection_defect(
    b: &VertexMap,
    a: &Graph,
    domain: &BTreeSet<Name>,
    c: &Graph,
    codomain: &BTreeSet<Name>,
) -> Option<String> {
    let keys: BTreeSet<Name> = b.keys().cloned().collect();
    if &keys != domain {
        return Some("domain of the bijection is not the expected vertex set".into());
    }
    let values: BTreeSet<Name> = b.values().cloned().collect();
    if values.len() != b.len() {
        return Some("bijection is not injective".into());
    }
    if &values != codomain {
        return Some("image of the bijection is not the expected vertex set".into());
    }
    for (x, y) in b {
        if a.label(x) != c.label(y) {
            return Some(format!("{x} and {y} carry different labels"));
        }
    }
    None
}

/// `A ∗_b C`: vertices and labels of `A`, keeping an edge or relation tuple
/// only where it agrees with `C` across `b`.
pub fn intersection_along_bijection(a: &Graph, c: &Graph, b: &VertexMap) -> Graph {
    let mut out = Graph::new();
    for (v, l) in a.vertices() {
        out.add_vertex(v.clone(), l).expect("names are unique");
    }
    for (u, v, l) in a.edges() {
        if c.edge(&b[u], &b[v]) == l {
            out.set_edge(u, v, l).expect("endpoints exist");
        }
    }
    let mut o = Orientation::default();
    let (oa, oc) = (a.orientation(), c.orientation());
    for t in oa.triangle_orbits() {
        if oc.contains_triangle(&b[&t[0]], &b[&t[1]], &b[&t[2]]) {
            o.insert_triangle_unchecked(t);
        }
    }
    for q in oa.tetrahedron_orbits() {
        if oc.contains_tetrahedron(&b[&q[0]], &b[&q[1]], &b[&q[2]], &b[&q[3]]) {
            o.insert_tetrahedron_orbit(q);
        }
    }
    if o.check_projection().is_ok() {
        out.set_orientation(o).expect("relations lie on neutral vertices of A");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionScheme {
    pub left: Graph,
    pub right: Graph,
    /// Labelled bijection `Neu left → Neu right`.
    pub bijection: VertexMap,
}

impl ReactionScheme {
    pub fn new(left: Graph, right: Graph, bijection: VertexMap) -> Result<ReactionScheme> {
        let s = ReactionScheme { left, right, bijection };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for (side, g) in [("left", &self.left), ("right", &self.right)] {
            if let Some(v) = validate_chemical(g).first() {
                return Err(Error::NotAScheme(format!("{side} graph is not chemical: {v}")));
            }
        }
        if self.left.net_charge() != self.right.net_charge() {
            return Err(Error::ChargeMismatch(self.left.net_charge(), self.right.net_charge()));
        }
        if let Some(why) = labelled_bijection_defect(
            &self.bijection,
            &self.left,
            &self.left.neutral_vertices(),
            &self.right,
            &self.right.neutral_vertices(),
        ) {
            return Err(Error::NotAScheme(why));
        }
        Ok(())
    }

    /// The apex `Neu A ∗_b Neu B`.
    pub fn apex(&self) -> Graph {
        let na = self.left.induced(&self.left.neutral_vertices());
        let nb = self.right.induced(&self.right.neutral_vertices());
        intersection_along_bijection(&na, &nb, &self.bijection)
    }

    /// The scheme read right to left.
    pub fn reversed(&self) -> ReactionScheme {
        ReactionScheme {
            left: self.right.clone(),
            right: self.left.clone(),
            bijection: self.bijection.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

/// A span `A ← K → B` with its legs as vertex maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub left: Graph,
    pub apex: Graph,
    pub right: Graph,
    pub left_leg: VertexMap,
    pub right_leg: VertexMap,
}

pub fn scheme_to_span(s: &ReactionScheme) -> Span {
    let apex = s.apex();
    Span {
        left: s.left.clone(),
        left_leg: apex.names().map(|v| (v.clone(), v.clone())).collect(),
        right_leg: s.bijection.clone(),
        right: s.right.clone(),
        apex,
    }
}

/// Reads `(A, B, g f⁻¹)` off a span, checking every defining condition
/// except terminality.
pub fn scheme_from_span(span: &Span) -> Result<ReactionScheme> {
    let bad = |m: &str| Err(Error::NotAScheme(m.to_string()));
    let k = &span.apex;
    if k.names().any(|v| k.label(v).unwrap().is_charge()) {
        return bad("apex has charged vertices");
    }
    for (leg, target, name) in [(&span.left_leg, &span.left, "left"), (&span.right_leg, &span.right, "right")] {
        if let Err(why) = super::morphism::is_morphism(leg, k, target) {
            return Err(Error::NotAScheme(format!("{name} leg is not a morphism: {why}")));
        }
        let image: BTreeSet<&Name> = leg.values().collect();
        if image.len() != k.len() {
            return Err(Error::NotAScheme(format!("{name} leg is not injective")));
        }
        if target.neutral_vertices().iter().any(|v| !image.contains(v)) {
            return Err(Error::NotAScheme(format!("{name} leg misses a neutral vertex")));
        }
        if leg.iter().any(|(x, y)| k.label(x) != target.label(y)) {
            return Err(Error::NotAScheme(format!("{name} leg does not preserve labels")));
        }
    }
    let inverse_left: VertexMap = span.left_leg.iter().map(|(k, a)| (a.clone(), k.clone())).collect();
    let bijection = inverse_left.iter().map(|(a, k)| (a.clone(), span.right_leg[k].clone())).collect();
    ReactionScheme::new(span.left.clone(), span.right.clone(), bijection)
}
