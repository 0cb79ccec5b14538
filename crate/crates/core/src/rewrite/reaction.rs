//! Reactions as tuples `(U_C, U_E, b, i)` and the category they form.
//!
//! The bijection `b` relates the atoms of the two chemical subgraphs. On
//! molecular graphs those are exactly the neutral vertices; the atom-only
//! reading also lets tuples between graphs with α-vertices compose.

use std::collections::BTreeSet;

use super::dpo::{dpo_apply, Dpo};
use super::scheme::{labelled_bijection_defect, ReactionScheme};
use crate::error::{Error, Result};
use crate::graph::{EdgeLabel, Graph, Name, NameGen, VertexLabel, VertexMap};
use crate::iso::isomorphism_defect;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reaction {
    pub source: Graph,
    pub target: Graph,
    pub u_source: BTreeSet<Name>,
    pub u_target: BTreeSet<Name>,
    /// Labelled bijection between the atoms of `u_source` and `u_target`.
    pub bijection: VertexMap,
    /// Isomorphism of the untouched remainders.
    pub context: VertexMap,
}

/// Closure of `seed` under the chemical-subgraph conditions, extended so
/// that every charge brings its atom and its ionic partner. A charge deleted
/// apart from its partner would leave a dangling ionic edge, and the rewrite
/// would not be a pushout.
pub fn smallest_chemical_subgraph(g: &Graph, seed: &BTreeSet<Name>) -> BTreeSet<Name> {
    let mut out = seed.clone();
    let mut stack: Vec<Name> = seed.iter().cloned().collect();
    while let Some(u) = stack.pop() {
        let lu = g.label(&u).unwrap();
        let next: Vec<&Name> = g
            .neighbours(&u)
            .filter(|(w, l)| match l {
                EdgeLabel::Cov(1) => lu.is_charge() || lu.is_alpha() || g.label(w).unwrap().is_charge(),
                EdgeLabel::Ionic => true,
                _ => false,
            })
            .map(|(w, _)| w)
            .collect();
        for w in next {
            if out.insert(w.clone()) {
                stack.push(w.clone());
            }
        }
    }
    out
}

pub fn is_chemical_subgraph(g: &Graph, u: &BTreeSet<Name>) -> bool {
    u.iter().all(|v| g.contains(v)) && &smallest_chemical_subgraph(g, u) == u
}

fn charge_of(g: &Graph, u: &BTreeSet<Name>) -> i64 {
    u.iter()
        .map(|v| match g.label(v) {
            Some(VertexLabel::Plus) => 1,
            Some(VertexLabel::Minus) => -1,
            _ => 0,
        })
        .sum()
}

fn atoms_of(g: &Graph, u: &BTreeSet<Name>) -> BTreeSet<Name> {
    u.iter().filter(|v| g.label(v).is_some_and(|l| l.is_atom())).cloned().collect()
}

fn complement(g: &Graph, u: &BTreeSet<Name>) -> BTreeSet<Name> {
    g.names().filter(|v| !u.contains(*v)).cloned().collect()
}

impl Reaction {
    /// `(∅, ∅, !, id)`.
    pub fn identity(g: &Graph) -> Reaction {
        Reaction {
            source: g.clone(),
            target: g.clone(),
            u_source: BTreeSet::new(),
            u_target: BTreeSet::new(),
            bijection: VertexMap::new(),
            context: g.names().map(|v| (v.clone(), v.clone())).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidReaction(m));
        for (g, u, side) in [(&self.source, &self.u_source, "source"), (&self.target, &self.u_target, "target")] {
            if !is_chemical_subgraph(g, u) {
                return Err(Error::NotChemicalSubgraph(format!("{side} subgraph is not closed")));
            }
        }
        let (qs, qt) = (charge_of(&self.source, &self.u_source), charge_of(&self.target, &self.u_target));
        if qs != qt {
            return Err(Error::ChargeMismatch(qs, qt));
        }
        if let Some(why) = labelled_bijection_defect(
            &self.bijection,
            &self.source,
            &atoms_of(&self.source, &self.u_source),
            &self.target,
            &atoms_of(&self.target, &self.u_target),
        ) {
            return bad(format!("bijection: {why}"));
        }
        let rest_s = self.source.induced(&complement(&self.source, &self.u_source)).without_orientation();
        let rest_t = self.target.induced(&complement(&self.target, &self.u_target)).without_orientation();
        if let Some(why) = isomorphism_defect(&self.context, &rest_s, &rest_t) {
            return bad(format!("context: {why}"));
        }
        Ok(())
    }

    /// `b + i` as one map, defined on the atoms of `U` and on the complement.
    pub fn vertex_map(&self) -> VertexMap {
        let mut out = self.bijection.clone();
        out.extend(self.context.iter().map(|(k, v)| (k.clone(), v.clone())));
        out
    }
}

/// `(m(Chem A), m''(Chem B), g'f'⁻¹, g'f'⁻¹)`.
pub fn reaction_from_dpo(dpo: &Dpo) -> Reaction {
    let a = &dpo.scheme.left;
    let b = &dpo.scheme.right;
    let u_source: BTreeSet<Name> = a.chem_vertices().iter().map(|v| dpo.matching[v].clone()).collect();
    let u_target: BTreeSet<Name> = b.chem_vertices().iter().map(|v| dpo.b_to_e[v].clone()).collect();
    let bijection = atoms_of(&dpo.c, &u_source).into_iter().map(|v| (v.clone(), dpo.d_to_e[&v].clone())).collect();
    let context = complement(&dpo.c, &u_source).into_iter().map(|v| (v.clone(), dpo.d_to_e[&v].clone())).collect();
    Reaction { source: dpo.c.clone(), target: dpo.e.clone(), u_source, u_target, bijection, context }
}

/// `U^α`: the chemical subgraph `u` of `g` with a fresh α-vertex for each
/// unit of bond order crossing its boundary. Returns the graph and, for each
/// outside vertex, its α-vertices in creation order.
pub fn alpha_closure(
    g: &Graph,
    u: &BTreeSet<Name>,
    names: &mut NameGen,
    avoid: &[&Graph],
) -> (Graph, std::collections::BTreeMap<Name, Vec<Name>>) {
    let mut out = g.induced(u).without_orientation();
    let mut boundary: std::collections::BTreeMap<Name, Vec<Name>> = std::collections::BTreeMap::new();
    for x in u {
        for (v, l) in g.neighbours(x) {
            if u.contains(v) {
                continue;
            }
            for _ in 0..l.cov() {
                let a = names.fresh_with(|n| out.contains(n) || avoid.iter().any(|h| h.contains(n)));
                out.add_vertex(a.clone(), VertexLabel::Alpha).expect("fresh");
                out.set_edge(x, &a, EdgeLabel::Cov(1)).expect("endpoints exist");
                boundary.entry(v.clone()).or_default().push(a);
            }
        }
    }
    (out, boundary)
}

/// Builds the double pushout presenting `t`, with the product named as
/// `t.target`.
pub fn reaction_to_dpo(t: &Reaction) -> Result<Dpo> {
    for g in [&t.source, &t.target] {
        if !g.is_molecular() {
            return Err(Error::NotMolecular("reaction endpoints must be molecular graphs".into()));
        }
    }
    t.validate()?;
    let mut names = NameGen::default();
    let avoid = [&t.source, &t.target];
    let (ua, bound_a) = alpha_closure(&t.source, &t.u_source, &mut names, &avoid);
    let (ub, bound_b) = alpha_closure(&t.target, &t.u_target, &mut names, &[&t.source, &t.target, &ua]);

    let mut bijection = t.bijection.clone();
    for (v, alphas) in &bound_a {
        let partner = &t.context[v];
        let theirs = bound_b.get(partner).cloned().unwrap_or_default();
        if theirs.len() != alphas.len() {
            return Err(Error::InvalidReaction(format!("boundary of {v} does not match that of {partner}")));
        }
        bijection.extend(alphas.iter().cloned().zip(theirs));
    }
    let scheme =
        ReactionScheme::new(ua.clone(), ub.clone(), bijection).map_err(|e| Error::InvalidReaction(format!("induced scheme: {e}")))?;
    let mut matching: VertexMap = t.u_source.iter().map(|v| (v.clone(), v.clone())).collect();
    for (v, alphas) in &bound_a {
        matching.extend(alphas.iter().map(|a| (a.clone(), v.clone())));
    }
    let dpo = dpo_apply(&scheme, &matching, &t.source)?;

    // Name the product as the tuple's target.
    let mut rename = VertexMap::new();
    for v in dpo.e.names() {
        let to = if let Some(w) = t.bijection.get(v) {
            w.clone()
        } else if let Some(w) = t.context.get(v) {
            w.clone()
        } else {
            let orig = dpo.b_to_e.iter().find(|(_, e)| *e == v).map(|(b, _)| b.clone());
            orig.ok_or_else(|| Error::InvalidReaction(format!("product vertex {v} has no preimage")))?
        };
        rename.insert(v.clone(), to);
    }
    let dpo = dpo.rename_product(&rename)?;
    if dpo.e != t.target {
        return Err(Error::InvalidReaction("the induced rewrite does not produce the target".into()));
    }
    Ok(dpo)
}

/// `(Z_A, Z_C, (c+j)(b+i), ji)`.
pub fn compose_reactions(r: &Reaction, s: &Reaction) -> Result<Reaction> {
    if r.target != s.source {
        return Err(Error::BoundaryMismatch("codomain of the first reaction is not the domain of the second".into()));
    }
    let inv_i: VertexMap = r.context.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
    let mut z_a = r.u_source.clone();
    for w in s.u_source.iter().filter(|w| !r.u_target.contains(*w)) {
        z_a.insert(inv_i[w].clone());
    }
    let mut z_c = s.u_target.clone();
    for w in r.u_target.iter().filter(|w| !s.u_source.contains(*w)) {
        z_c.insert(s.context[w].clone());
    }
    let first = r.vertex_map();
    let second = s.vertex_map();
    let bijection = atoms_of(&r.source, &z_a)
        .into_iter()
        .map(|v| {
            let mid = &first[&v];
            (v.clone(), second[mid].clone())
        })
        .collect();
    let context = complement(&r.source, &z_a).into_iter().map(|v| (v.clone(), s.context[&r.context[&v]].clone())).collect();
    let out = Reaction { source: r.source.clone(), target: s.target.clone(), u_source: z_a, u_target: z_c, bijection, context };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;
    use crate::rewrite::enumerate_matchings;
    use crate::samples;

    fn set(xs: &[&str]) -> BTreeSet<Name> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn closure_examples() {
        let g = samples::sodium_chloride();
        assert!(smallest_chemical_subgraph(&g, &BTreeSet::new()).is_empty());
        assert_eq!(smallest_chemical_subgraph(&samples::ethanol(), &set(&["c1"])), set(&["c1"]));
        assert_eq!(smallest_chemical_subgraph(&g, &set(&["p"])), set(&["p", "na", "m", "cl"]));
        assert_eq!(smallest_chemical_subgraph(&g, &set(&["cl"])), set(&["p", "na", "m", "cl"]));
        let s = samples::synthon();
        assert_eq!(smallest_chemical_subgraph(&s, &set(&["a"])), set(&["a", "c2"]));
    }

    fn substitution_dpo() -> Dpo {
        let s = samples::substitution_scheme();
        let (c, _, _) = disjoint_union(&samples::chloroethane(), &samples::water());
        let m = enumerate_matchings(&s.left, &c, 1).remove(0);
        dpo_apply(&s, &m, &c).unwrap()
    }

    #[test]
    fn tuple_round_trip() {
        let dpo = substitution_dpo();
        let t = reaction_from_dpo(&dpo);
        t.validate().unwrap();
        let back = reaction_to_dpo(&t).unwrap();
        assert_eq!(reaction_from_dpo(&back), t);
    }

    #[test]
    fn identity_laws() {
        let t = reaction_from_dpo(&substitution_dpo());
        assert_eq!(compose_reactions(&Reaction::identity(&t.source), &t).unwrap(), t);
        assert_eq!(compose_reactions(&t, &Reaction::identity(&t.target)).unwrap(), t);
        let id = Reaction::identity(&t.source);
        id.validate().unwrap();
        let dpo = reaction_to_dpo(&id).unwrap();
        assert!(dpo.scheme.left.is_empty() && dpo.scheme.right.is_empty());
    }

    #[test]
    fn boundary_mismatch() {
        let t = reaction_from_dpo(&substitution_dpo());
        assert!(matches!(compose_reactions(&t, &t), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn conservation_in_substitution() {
        let t = reaction_from_dpo(&substitution_dpo());
        let atoms = |g: &Graph| {
            let mut m = g.label_multiset();
            m.retain(|l, _| l.is_atom());
            m
        };
        assert_eq!(atoms(&t.source), atoms(&t.target));
        assert_eq!(t.source.net_charge(), t.target.net_charge());
    }
}
