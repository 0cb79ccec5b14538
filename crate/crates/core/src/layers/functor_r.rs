use std::collections::BTreeSet;

use super::{Environment, MDiscMorphism, MReactMorphism};
use crate::disconnect::{apply, Rule};
use crate::error::{Error, Result};
use crate::graph::{EdgeLabel, Graph, Name};
use crate::rewrite::{compose_reactions, smallest_chemical_subgraph, Reaction};

/// Adds the atom carrying each ionically bonded charge of `u`, so that the
/// α-closure of `u` stays chemical.
fn with_ionic_hosts(g: &Graph, mut u: BTreeSet<Name>) -> BTreeSet<Name> {
    let hosts: Vec<Name> = u
        .iter()
        .filter(|v| g.neighbours(v).any(|(_, l)| l == EdgeLabel::Ionic))
        .flat_map(|v| g.neighbours(v).filter(|(_, l)| l.cov() == 1).map(|(w, _)| w.clone()))
        .collect();
    u.extend(hosts);
    u
}

/// The reaction presented by one rule application `x → apply(rule, x)`:
/// the smallest chemical subgraph around the rule's vertices on both sides,
/// with identity bijection and context.
pub fn elementary_reaction(rule: &Rule, x: &Graph) -> Result<Reaction> {
    let y = apply(rule, x)?;
    let touched: BTreeSet<Name> = [Some(&rule.u), Some(&rule.v), rule.a.as_ref(), rule.b.as_ref()].into_iter().flatten().cloned().collect();
    let mut ux: BTreeSet<Name> = touched.iter().filter(|v| x.contains(v.as_str())).cloned().collect();
    let mut uy: BTreeSet<Name> = touched.iter().filter(|v| y.contains(v.as_str())).cloned().collect();
    // Grow both sides together until each is closed and they agree off the
    // fresh or removed pair.
    loop {
        let cx = with_ionic_hosts(x, smallest_chemical_subgraph(x, &ux));
        let cy = with_ionic_hosts(&y, smallest_chemical_subgraph(&y, &uy));
        let mut nx = cx.clone();
        nx.extend(cy.iter().filter(|v| x.contains(v)).cloned());
        let mut ny = cy.clone();
        ny.extend(cx.iter().filter(|v| y.contains(v)).cloned());
        if nx == ux && ny == uy {
            break;
        }
        ux = nx;
        uy = ny;
    }
    let atoms = |g: &Graph, u: &BTreeSet<Name>| -> BTreeSet<Name> {
        u.iter().filter(|v| g.label(v).is_some_and(|l| l.is_atom())).cloned().collect()
    };
    let bijection = atoms(x, &ux).into_iter().map(|v| (v.clone(), v)).collect();
    let context = x.names().filter(|v| !ux.contains(*v)).map(|v| (v.clone(), v.clone())).collect();
    let out = Reaction { source: x.clone(), target: y, u_source: ux, u_target: uy, bijection, context };
    out.validate()?;
    Ok(out)
}

/// The reaction presented by a rule sequence between molecular graphs.
pub fn functor_r(d: &MDiscMorphism, env: &Environment) -> Result<MReactMorphism> {
    let start = d.start(env)?;
    if !start.is_molecular() {
        return Err(Error::NotMolecularEndpoints("source is not a molecular graph".into()));
    }
    let mut cur = start.clone();
    let mut reaction = Reaction::identity(&start);
    for rule in &d.rules {
        let step = elementary_reaction(rule, &cur)?;
        cur = step.target.clone();
        reaction = compose_reactions(&reaction, &step)?;
    }
    if !cur.is_molecular() {
        return Err(Error::NotMolecularEndpoints("target is not a molecular graph".into()));
    }
    Ok(MReactMorphism { source: d.source.clone(), counts: d.counts.clone(), reaction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disconnect::apply_sequence;
    use crate::samples;

    #[test]
    fn empty_sequence_is_identity() {
        let g = samples::ethanol();
        let env = Environment::empty();
        let r = functor_r(&MDiscMorphism::identity(&g, &env), &env).unwrap();
        assert_eq!(r.reaction, Reaction::identity(&g));
    }

    /// Break and re-form the C–O bond of ethanol: the subgraphs are the two
    /// endpoints plus the fresh α-vertices, and everything maps to itself.
    #[test]
    fn break_and_join_sends_vertices_to_themselves() {
        let g = samples::ethanol();
        let env = Environment::empty();
        let c = Rule::c("c1", "o", "a", "b");
        let rules = vec![c.clone(), c.inverse()];
        let end = apply_sequence(&rules, &g).unwrap();
        let d = MDiscMorphism { source: g.clone(), target: end, counts: vec![], rules };
        let step = elementary_reaction(&c, &g).unwrap();
        let set = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<BTreeSet<Name>>();
        assert_eq!(step.u_source, set(&["c1", "o"]));
        assert_eq!(step.u_target, set(&["c1", "o", "a", "b"]));
        assert!(step.bijection.iter().all(|(k, v)| k == v));
        assert!(step.context.iter().all(|(k, v)| k == v));
        let r = functor_r(&d, &env).unwrap();
        assert_eq!(r.reaction.target, g);
        assert!(r.reaction.vertex_map().iter().all(|(k, v)| k == v));
    }

    #[test]
    fn non_molecular_endpoint_rejected() {
        let g = samples::ethanol();
        let env = Environment::empty();
        let rules = vec![Rule::c("c1", "o", "a", "b")];
        let end = apply_sequence(&rules, &g).unwrap();
        let d = MDiscMorphism { source: g, target: end, counts: vec![], rules };
        assert!(matches!(functor_r(&d, &env), Err(Error::NotMolecularEndpoints(_))));
    }
}
