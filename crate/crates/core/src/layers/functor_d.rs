use std::collections::{BTreeMap, BTreeSet};

use super::{Environment, MDiscMorphism, MMatchMorphism};
use crate::disconnect::{apply, Rule, RuleKind};
use crate::error::{Error, Result};
use crate::graph::{EdgeLabel, Graph, Name, NameGen, VertexLabel, VertexMap};
use crate::iso::is_isomorphic;

struct Builder {
    cur: Graph,
    rules: Vec<Rule>,
    names: NameGen,
    avoid: Graph,
}

impl Builder {
    fn push(&mut self, rule: Rule) -> Result<()> {
        self.cur = apply(&rule, &self.cur).map_err(|e| Error::InvariantViolation(format!("{rule}: {e}")))?;
        self.rules.push(rule);
        Ok(())
    }

    fn fresh(&mut self) -> Name {
        let (cur, avoid) = (&self.cur, &self.avoid);
        self.names.fresh(&[cur, avoid])
    }

    fn fresh_pair(&mut self) -> (Name, Name) {
        let a = self.fresh();
        let mut b = self.fresh();
        while b == a {
            b = self.fresh();
        }
        (a, b)
    }

    fn neighbours_labelled(&self, v: &str, label: VertexLabel) -> Vec<Name> {
        self.cur
            .neighbours(v)
            .filter(|(w, l)| *l == EdgeLabel::Cov(1) && self.cur.label(w) == Some(label))
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// A pendant α-vertex on `v`.
    fn alpha_on(&self, v: &str) -> Result<Name> {
        self.neighbours_labelled(v, VertexLabel::Alpha)
            .into_iter()
            .find(|a| self.cur.neighbours(a).count() == 1)
            .ok_or_else(|| Error::InvariantViolation(format!("no free α-vertex on {v}")))
    }
}

fn at_or_minus(l: VertexLabel) -> bool {
    l.is_atom() || l == VertexLabel::Minus
}

/// The rule sequence that builds the target of `f` from its source and the
/// environment copies: break the copies apart, move their positive charges
/// to the right atoms, then form the target's bonds.
pub fn functor_d(f: &MMatchMorphism, env: &Environment) -> Result<MDiscMorphism> {
    f.validate(env)?;
    let e = f.target.without_orientation();
    let (copies, _) = env.assemble(&f.counts)?;
    let start = f.source.without_orientation().union_disjoint(&copies)?;
    let mut b = Builder { cur: start, rules: Vec::new(), names: NameGen::new("#d"), avoid: e.clone() };

    // Carriers: vertices of the working graph standing for vertices of E.
    let mut star: VertexMap = f.source.chem_vertices().into_iter().map(|v| (v.clone(), f.matching[&v].clone())).collect();
    star.extend(f.injection.iter().map(|(k, v)| (k.clone(), v.clone())));

    // Ionic, then covalent bonds inside the copies.
    for (x, y, l) in copies.edges() {
        if l == EdgeLabel::Ionic {
            let (u, v) = if copies.label(x) == Some(VertexLabel::Plus) { (x, y) } else { (y, x) };
            b.push(Rule::new(RuleKind::I, u.clone(), v.clone(), None)?)?;
        }
    }
    for (x, y, l) in copies.edges() {
        if at_or_minus(copies.label(x).unwrap()) && at_or_minus(copies.label(y).unwrap()) {
            for _ in 0..l.cov() {
                let ab = b.fresh_pair();
                b.push(Rule::new(RuleKind::C, x.clone(), y.clone(), Some(ab))?)?;
            }
        }
    }

    // Positive charges of the copies sit on copy atoms; move them by count.
    let copy_atoms: Vec<Name> = copies.atom_vertices().into_iter().collect();
    let copy_plus: BTreeSet<&Name> =
        f.injection.iter().filter(|(k, _)| copies.label(k) == Some(VertexLabel::Plus)).map(|(_, v)| v).collect();
    let wanted: BTreeMap<Name, Vec<Name>> = copy_atoms
        .iter()
        .map(|v| {
            let hosted = e.neighbours(&star[v]).filter(|(w, l)| l.cov() == 1 && copy_plus.contains(w));
            (v.clone(), hosted.map(|(w, _)| w.clone()).collect())
        })
        .collect();
    let target_count: BTreeMap<Name, usize> = wanted.iter().map(|(v, w)| (v.clone(), w.len())).collect();
    loop {
        let count = |b: &Builder, v: &Name| b.neighbours_labelled(v, VertexLabel::Plus).len();
        let deficit = copy_atoms.iter().find(|v| count(&b, v) < target_count[*v]);
        let surplus = copy_atoms.iter().find(|v| count(&b, v) > target_count[*v]);
        let (v, w) = match (deficit, surplus) {
            (Some(v), Some(w)) => (v.clone(), w.clone()),
            (None, None) => break,
            _ => return Err(Error::InvariantViolation("positive charges cannot be balanced".into())),
        };
        let c = b.alpha_on(&v)?;
        let (plus, minus) = b.fresh_pair();
        b.push(Rule::new(RuleKind::E, v.clone(), c.clone(), Some((plus, minus.clone())))?)?;
        let old = b.neighbours_labelled(&w, VertexLabel::Plus).remove(0);
        b.push(Rule::new(RuleKind::Ebar, w, c, Some((old, minus)))?)?;
    }
    for v in &copy_atoms {
        let now = b.neighbours_labelled(v, VertexLabel::Plus);
        for (p, q) in now.into_iter().zip(wanted[v].clone()) {
            star.insert(p, q);
        }
    }
    star.retain(|k, _| b.cur.contains(k));

    // Covalent bonds of E between carriers.
    let carriers: Vec<Name> = star.keys().filter(|v| at_or_minus(b.cur.label(v).unwrap())).cloned().collect();
    for (i, x) in carriers.iter().enumerate() {
        for y in &carriers[i + 1..] {
            let want = e.edge(&star[x], &star[y]).cov();
            let have = b.cur.edge(x, y).cov();
            if have > want {
                return Err(Error::InvariantViolation(format!("{x}-{y} carries more bonds than the target")));
            }
            for _ in have..want {
                let ab = (b.alpha_on(x)?, b.alpha_on(y)?);
                b.push(Rule::new(RuleKind::Cbar, x.clone(), y.clone(), Some(ab))?)?;
            }
        }
    }

    // Ionic bonds of E between charge carriers.
    let of = |b: &Builder, label| -> Vec<Name> { star.keys().filter(|v| b.cur.label(v) == Some(label)).cloned().collect() };
    let (plus, minus) = (of(&b, VertexLabel::Plus), of(&b, VertexLabel::Minus));
    for p in &plus {
        for q in &minus {
            if e.edge(&star[p], &star[q]) == EdgeLabel::Ionic && b.cur.edge(p, q) != EdgeLabel::Ionic {
                b.push(Rule::new(RuleKind::Ibar, p.clone(), q.clone(), None)?)?;
            }
        }
    }

    if !is_isomorphic(&b.cur, &e) {
        return Err(Error::InvariantViolation("the emitted sequence does not rebuild the target".into()));
    }
    Ok(MDiscMorphism { source: f.source.clone(), target: f.target.clone(), counts: f.counts.clone(), rules: b.rules })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::disconnect::apply_sequence;
    use crate::graph::assembled_name;
    use crate::rewrite::alpha_closure;
    use crate::samples;

    #[test]
    fn isomorphism_without_copies_gives_no_rules() {
        let e = samples::ethanol();
        let env = Environment::empty();
        let f = MMatchMorphism::identity(&e, &env);
        assert!(functor_d(&f, &env).unwrap().rules.is_empty());
    }

    /// Chloroethane from an ethyl fragment with α on both carbons and one
    /// HCl copy covering the chlorine and one hydrogen: one break, two joins.
    #[test]
    fn chloroethane_from_hydrogen_chloride() {
        let e = samples::chloroethane();
        let env = Environment::new(vec![samples::hydrogen_chloride()]).unwrap();
        let injection: VertexMap = [(assembled_name(0, 0, "h"), "h5".to_string()), (assembled_name(0, 0, "cl"), "cl".to_string())].into();
        let u: BTreeSet<Name> = e.names().filter(|v| *v != "cl" && *v != "h5").cloned().collect();
        let (s, boundary) = alpha_closure(&e, &u, &mut NameGen::new("x"), &[&e]);
        let mut matching: VertexMap = u.iter().map(|v| (v.clone(), v.clone())).collect();
        for (w, alphas) in boundary {
            matching.extend(alphas.into_iter().map(|a| (a, w.clone())));
        }
        let f = MMatchMorphism { source: s, target: e.clone(), matching, counts: vec![1], injection };
        let d = functor_d(&f, &env).unwrap();
        let kinds: Vec<RuleKind> = d.rules.iter().map(|r| r.kind).collect();
        assert_eq!(kinds, vec![RuleKind::C, RuleKind::Cbar, RuleKind::Cbar]);
        let end = apply_sequence(&d.rules, &d.start(&env).unwrap()).unwrap();
        assert!(is_isomorphic(&end, &e));
    }

    /// A copy of Na–(+)~(−)–Na placed so that its + belongs on the other
    /// sodium: the + must be moved with E then Ē.
    #[test]
    fn positive_charge_is_relocated() {
        let salt = |a: &str, b: &str| {
            Graph::build(&[(a, "Na"), ("p", "+"), ("m", "-"), (b, "Na")], &[(a, "p", "1"), (b, "m", "1"), ("p", "m", "ionic")]).unwrap()
        };
        let env = Environment::new(vec![salt("a", "b")]).unwrap();
        let e2 = salt("y", "x");
        let injection: VertexMap =
            [("a", "x"), ("b", "y"), ("p", "p"), ("m", "m")].into_iter().map(|(k, v)| (assembled_name(0, 0, k), v.to_string())).collect();
        let f = MMatchMorphism { source: Graph::new(), target: e2.clone(), matching: VertexMap::new(), counts: vec![1], injection };
        let d = functor_d(&f, &env).unwrap();
        let kinds: Vec<RuleKind> = d.rules.iter().map(|r| r.kind).collect();
        assert!(kinds.contains(&RuleKind::E) && kinds.contains(&RuleKind::Ebar));
        assert_eq!(kinds.first(), Some(&RuleKind::I));
        assert_eq!(kinds.last(), Some(&RuleKind::Ibar));
        let end = apply_sequence(&d.rules, &d.start(&env).unwrap()).unwrap();
        assert!(is_isomorphic(&end, &e2));
    }
}
