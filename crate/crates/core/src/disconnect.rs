//! Disconnection rules: electron detachment `E`, ionic bond breaking `I` and
//! covalent bond breaking `C`, with their inverses.
//!
//! Rules act on unoriented chemical graphs; any orientation on the input is
//! stripped first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{validate_chemical, EdgeLabel, Graph, Name, NameGen, VertexLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleKind {
    E,
    I,
    C,
    Ebar,
    Ibar,
    Cbar,
}

impl RuleKind {
    pub fn inverse(self) -> RuleKind {
        match self {
            RuleKind::E => RuleKind::Ebar,
            RuleKind::I => RuleKind::Ibar,
            RuleKind::C => RuleKind::Cbar,
            RuleKind::Ebar => RuleKind::E,
            RuleKind::Ibar => RuleKind::I,
            RuleKind::Cbar => RuleKind::C,
        }
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, RuleKind::Ebar | RuleKind::Ibar | RuleKind::Cbar)
    }

    pub fn has_fresh_pair(self) -> bool {
        !matches!(self, RuleKind::I | RuleKind::Ibar)
    }

    /// `E`, `I` or `C`, forgetting direction.
    pub fn family(self) -> RuleKind {
        if self.is_inverse() {
            self.inverse()
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleKind::E => "E",
            RuleKind::I => "I",
            RuleKind::C => "C",
            RuleKind::Ebar => "Ebar",
            RuleKind::Ibar => "Ibar",
            RuleKind::Cbar => "Cbar",
        }
    }

    pub fn parse(s: &str) -> Result<RuleKind> {
        Ok(match s {
            "E" => RuleKind::E,
            "I" => RuleKind::I,
            "C" => RuleKind::C,
            "Ebar" => RuleKind::Ebar,
            "Ibar" => RuleKind::Ibar,
            "Cbar" => RuleKind::Cbar,
            _ => return Err(Error::MalformedRule(format!("unknown rule kind `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rule {
    pub kind: RuleKind,
    pub u: Name,
    pub v: Name,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Name>,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}", self.kind.as_str(), self.u, self.v)?;
        if let (Some(a), Some(b)) = (&self.a, &self.b) {
            write!(f, ";{a},{b}")?;
        }
        f.write_str("]")
    }
}

fn unmet(reason: impl Into<String>) -> Result<()> {
    Err(Error::NotApplicable(reason.into()))
}

impl Rule {
    pub fn new(kind: RuleKind, u: impl Into<Name>, v: impl Into<Name>, ab: Option<(Name, Name)>) -> Result<Rule> {
        let (a, b) = match ab {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        let rule = Rule { kind, u: u.into(), v: v.into(), a, b };
        rule.check_shape()?;
        Ok(rule)
    }

    pub fn e(u: &str, v: &str, a: &str, b: &str) -> Rule {
        Rule::new(RuleKind::E, u, v, Some((a.into(), b.into()))).expect("distinct names")
    }

    pub fn i(u: &str, v: &str) -> Rule {
        Rule::new(RuleKind::I, u, v, None).expect("distinct names")
    }

    pub fn c(u: &str, v: &str, a: &str, b: &str) -> Rule {
        Rule::new(RuleKind::C, u, v, Some((a.into(), b.into()))).expect("distinct names")
    }

    /// Presence of `a,b` matches the kind and all names are distinct.
    pub fn check_shape(&self) -> Result<()> {
        let names: Vec<&Name> = [Some(&self.u), Some(&self.v), self.a.as_ref(), self.b.as_ref()].into_iter().flatten().collect();
        let expected = if self.kind.has_fresh_pair() { 4 } else { 2 };
        if names.len() != expected || self.a.is_some() != self.b.is_some() {
            return Err(Error::MalformedRule(format!("{} takes {} vertex names", self.kind.as_str(), expected)));
        }
        if names.iter().enumerate().any(|(i, x)| names[i + 1..].contains(x)) {
            return Err(Error::MalformedRule(format!("{self}: names are not pairwise distinct")));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Rule {
        Rule { kind: self.kind.inverse(), ..self.clone() }
    }

    fn ab(&self) -> (&str, &str) {
        (self.a.as_deref().unwrap(), self.b.as_deref().unwrap())
    }

    /// Domain conditions of the rule, or for inverses the image conditions of
    /// the forward rule.
    fn domain(&self, g: &Graph) -> Result<()> {
        self.check_shape().map_err(|e| Error::NotApplicable(e.to_string()))?;
        let (u, v) = (self.u.as_str(), self.v.as_str());
        let (lu, lv) = match (g.label(u), g.label(v)) {
            (Some(lu), Some(lv)) => (lu, lv),
            _ => return unmet("u,v∉V"),
        };
        let at_or_minus = |l: VertexLabel| l.is_atom() || l == VertexLabel::Minus;
        match self.kind {
            RuleKind::E | RuleKind::C => {
                let (a, b) = self.ab();
                if g.contains(a) || g.contains(b) {
                    return unmet("a,b∉V");
                }
                if self.kind == RuleKind::E {
                    if !lu.is_atom() {
                        return unmet("τ(u)∉At");
                    }
                    if lv != VertexLabel::Alpha {
                        return unmet("τ(v)≠α");
                    }
                    if g.edge(u, v) != EdgeLabel::Cov(1) {
                        return unmet("m(u,v)≠1");
                    }
                } else {
                    if !at_or_minus(lu) || !at_or_minus(lv) {
                        return unmet("τ(u),τ(v)∉At⊔{−}");
                    }
                    if g.edge(u, v).cov() == 0 {
                        return unmet("m(u,v)∉{1,2,3,4}");
                    }
                }
            }
            RuleKind::I => {
                if lu != VertexLabel::Plus || lv != VertexLabel::Minus {
                    return unmet("τ(u)≠+ or τ(v)≠−");
                }
                if g.edge(u, v) != EdgeLabel::Ionic {
                    return unmet("m(u,v)≠ib");
                }
            }
            RuleKind::Ibar => {
                if lu != VertexLabel::Plus || lv != VertexLabel::Minus {
                    return unmet("τ(u)≠+ or τ(v)≠−");
                }
                if !g.edge(u, v).is_none() {
                    return unmet("m(u,v)≠0");
                }
                for x in [u, v] {
                    if g.neighbours(x).any(|(_, l)| l == EdgeLabel::Ionic) {
                        return unmet(format!("{x} already has an ionic bond"));
                    }
                    if g.neighbours(x).any(|(w, l)| l.cov() > 0 && !g.label(w).unwrap().is_atom()) {
                        return unmet(format!("{x} is not attached to an atom"));
                    }
                }
            }
            RuleKind::Ebar | RuleKind::Cbar => {
                let (a, b) = self.ab();
                let (la, lb) = match (g.label(a), g.label(b)) {
                    (Some(la), Some(lb)) => (la, lb),
                    _ => return unmet("a,b∉V"),
                };
                if self.kind == RuleKind::Ebar {
                    if !lu.is_atom() || lv != VertexLabel::Alpha {
                        return unmet("τ(u)∉At or τ(v)≠α");
                    }
                    if la != VertexLabel::Plus || lb != VertexLabel::Minus {
                        return unmet("τ(a)≠+ or τ(b)≠−");
                    }
                    if !g.edge(u, v).is_none() {
                        return unmet("m(u,v)≠0");
                    }
                } else {
                    if !at_or_minus(lu) || !at_or_minus(lv) {
                        return unmet("τ(u),τ(v)∉At⊔{−}");
                    }
                    if la != VertexLabel::Alpha || lb != VertexLabel::Alpha {
                        return unmet("τ(a),τ(b)≠α");
                    }
                    match g.edge(u, v) {
                        EdgeLabel::Cov(n) if n < 4 => {}
                        _ => return unmet("m(u,v)∉{0,1,2,3}"),
                    }
                }
                if g.edge(u, a) != EdgeLabel::Cov(1) || g.edge(v, b) != EdgeLabel::Cov(1) {
                    return unmet("m(u,a)≠1 or m(v,b)≠1");
                }
                if g.neighbours(a).count() != 1 || g.neighbours(b).count() != 1 {
                    return unmet("a or b has further edges");
                }
            }
        }
        Ok(())
    }

    fn apply_unchecked(&self, g: &Graph) -> Graph {
        let mut out = g.without_orientation();
        let (u, v) = (self.u.as_str(), self.v.as_str());
        let set = |out: &mut Graph, x: &str, y: &str, l| out.set_edge(x, y, l).expect("endpoints exist");
        match self.kind {
            RuleKind::E | RuleKind::C => {
                let (a, b) = self.ab();
                let (la, lb) = if self.kind == RuleKind::E {
                    (VertexLabel::Plus, VertexLabel::Minus)
                } else {
                    (VertexLabel::Alpha, VertexLabel::Alpha)
                };
                out.add_vertex(a, la).expect("a is fresh");
                out.add_vertex(b, lb).expect("b is fresh");
                let order = g.edge(u, v).cov() - 1;
                set(&mut out, u, v, EdgeLabel::Cov(order as u8));
                set(&mut out, u, a, EdgeLabel::Cov(1));
                set(&mut out, v, b, EdgeLabel::Cov(1));
            }
            RuleKind::I => set(&mut out, u, v, EdgeLabel::NONE),
            RuleKind::Ibar => set(&mut out, u, v, EdgeLabel::Ionic),
            RuleKind::Ebar | RuleKind::Cbar => {
                let (a, b) = self.ab();
                out.remove_vertex(a);
                out.remove_vertex(b);
                let order = g.edge(u, v).cov() + 1;
                set(&mut out, u, v, EdgeLabel::Cov(order as u8));
            }
        }
        out
    }

    /// Result of the rule, when it is defined and yields a chemical graph.
    fn try_apply(&self, g: &Graph) -> Result<Graph> {
        self.domain(g)?;
        let out = self.apply_unchecked(g);
        if let Some(v) = validate_chemical(&out).first() {
            return Err(Error::NotApplicable(format!("result is not chemical: {v}")));
        }
        Ok(out)
    }
}

/// Whether `rule` applies to `g`; on failure, the violated condition.
pub fn applicable(rule: &Rule, g: &Graph) -> std::result::Result<(), String> {
    rule.try_apply(g).map(|_| ()).map_err(|e| match e {
        Error::NotApplicable(r) => r,
        other => other.to_string(),
    })
}

pub fn apply(rule: &Rule, g: &Graph) -> Result<Graph> {
    rule.try_apply(g)
}

pub fn apply_sequence(seq: &[Rule], g: &Graph) -> Result<Graph> {
    let mut cur = g.without_orientation();
    for (index, rule) in seq.iter().enumerate() {
        cur = rule.try_apply(&cur).map_err(|e| Error::NotApplicableAtIndex {
            index,
            reason: match e {
                Error::NotApplicable(r) => r,
                other => other.to_string(),
            },
        })?;
    }
    Ok(cur)
}

/// A chain of rules together with whether orientation was discarded from
/// its source.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscSequence {
    pub rules: Vec<Rule>,
    #[serde(default)]
    pub orientation_dropped: bool,
}

impl DiscSequence {
    pub fn new(rules: Vec<Rule>, source: &Graph) -> DiscSequence {
        DiscSequence { rules, orientation_dropped: !source.orientation().is_empty() }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        apply_sequence(&self.rules, g)
    }
}

/// Cancels inverse pairs, commuting rules past each other where the swap
/// provably leaves the outcome unchanged.
pub fn simplify_sequence(seq: &[Rule], src: &Graph) -> Result<Vec<Rule>> {
    let target = apply_sequence(seq, src).map_err(|e| Error::NotApplicable(e.to_string()))?;
    let mut cur = seq.to_vec();
    'outer: loop {
        for i in 0..cur.len().saturating_sub(1) {
            if cur[i + 1] == cur[i].inverse() {
                cur.drain(i..i + 2);
                continue 'outer;
            }
        }
        // Bring a later inverse next to its partner by adjacent swaps, each
        // checked by replaying from the source.
        for i in 0..cur.len() {
            let Some(j) = (i + 2..cur.len()).find(|&j| cur[j] == cur[i].inverse()) else { continue };
            let mut candidate = cur.clone();
            let mut k = j;
            let mut ok = true;
            while k > i + 1 {
                candidate.swap(k - 1, k);
                if !swap_is_sound(&candidate, k - 1, src) {
                    ok = false;
                    break;
                }
                k -= 1;
            }
            if ok && apply_sequence(&candidate, src).as_ref() == Ok(&target) {
                cur = candidate;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// After swapping positions `k` and `k+1`, both orders must be defined on
/// the intermediate graph and agree.
fn swap_is_sound(seq: &[Rule], k: usize, src: &Graph) -> bool {
    let Ok(before) = apply_sequence(&seq[..k], src) else { return false };
    let swapped = apply_sequence(&seq[k..k + 2], &before);
    let original = apply_sequence(&[seq[k + 1].clone(), seq[k].clone()], &before);
    matches!((swapped, original), (Ok(x), Ok(y)) if x == y)
}

/// Every applicable instance of the given kinds on `g`, in a fixed order.
/// Fresh vertices are drawn from `names`.
pub fn instances(g: &Graph, kinds: &[RuleKind], names: &mut NameGen) -> Vec<Rule> {
    let g = g.without_orientation();
    let mut out = Vec::new();
    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    let fresh_pair = |names: &mut NameGen| {
        let a = names.fresh(&[&g]);
        let b = names.fresh(&[&g]);
        (a, b)
    };
    let at_or_minus = |x: &Name| g.label(x).is_some_and(|l| l.is_atom() || l == VertexLabel::Minus);
    for kind in kinds {
        let mut candidates: Vec<Rule> = Vec::new();
        match kind {
            RuleKind::E => {
                for u in g.atom_vertices() {
                    for (v, l) in g.neighbours(&u) {
                        if l == EdgeLabel::Cov(1) && g.label(v) == Some(VertexLabel::Alpha) {
                            let (a, b) = fresh_pair(names);
                            candidates.push(Rule { kind, u: u.clone(), v: v.clone(), a: Some(a), b: Some(b) });
                        }
                    }
                }
            }
            RuleKind::C => {
                for (u, v, l) in g.edges() {
                    if l.cov() > 0 && at_or_minus(u) && at_or_minus(v) {
                        let (a, b) = fresh_pair(names);
                        candidates.push(Rule { kind, u: u.clone(), v: v.clone(), a: Some(a), b: Some(b) });
                    }
                }
            }
            RuleKind::I => {
                for (x, y, l) in g.edges() {
                    if l == EdgeLabel::Ionic {
                        let (u, v) = if g.label(x) == Some(VertexLabel::Plus) { (x, y) } else { (y, x) };
                        candidates.push(Rule { kind, u: u.clone(), v: v.clone(), a: None, b: None });
                    }
                }
            }
            RuleKind::Ibar => {
                for (u, lu) in g.vertices() {
                    for (v, lv) in g.vertices() {
                        if lu == VertexLabel::Plus && lv == VertexLabel::Minus {
                            candidates.push(Rule { kind, u: u.clone(), v: v.clone(), a: None, b: None });
                        }
                    }
                }
            }
            RuleKind::Ebar | RuleKind::Cbar => {
                let (la, lb) =
                    if kind == RuleKind::Ebar { (VertexLabel::Plus, VertexLabel::Minus) } else { (VertexLabel::Alpha, VertexLabel::Alpha) };
                let sole = |x: &Name| {
                    let ns: Vec<_> = g.neighbours(x).collect();
                    (ns.len() == 1 && ns[0].1 == EdgeLabel::Cov(1)).then(|| ns[0].0.clone())
                };
                for (a, l1) in g.vertices() {
                    for (b, l2) in g.vertices() {
                        if l1 != la || l2 != lb || a == b || (la == lb && a > b) {
                            continue;
                        }
                        if let (Some(u), Some(v)) = (sole(a), sole(b)) {
                            candidates.push(Rule { kind, u, v, a: Some(a.clone()), b: Some(b.clone()) });
                        }
                    }
                }
            }
        }
        out.extend(candidates.into_iter().filter(|r| r.try_apply(&g).is_ok()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn ethane_cc() -> Rule {
        Rule::c("c1", "c2", "a", "b")
    }

    #[test]
    fn c_on_ethane_gives_two_methyl_synthons() {
        let g = samples::ethane();
        assert_eq!(applicable(&ethane_cc(), &g), Ok(()));
        let out = apply(&ethane_cc(), &g).unwrap();
        assert_eq!(out.components().len(), 2);
        assert_eq!(out.edge("c1", "a"), EdgeLabel::Cov(1));
        assert_eq!(out.edge("c2", "b"), EdgeLabel::Cov(1));
        assert_eq!(out.edge("c1", "c2"), EdgeLabel::NONE);
        assert!(validate_chemical(&out).is_empty());
    }

    #[test]
    fn c_on_ethene_keeps_single_bond() {
        let out = apply(&ethane_cc(), &samples::ethene()).unwrap();
        assert_eq!(out.edge("c1", "c2"), EdgeLabel::Cov(1));
        assert_eq!(out.alpha_vertices().len(), 2);
        assert!(out.is_connected());
    }

    #[test]
    fn e_on_synthon() {
        let g = samples::synthon();
        let out = apply(&Rule::e("c2", "a", "p", "m"), &g).unwrap();
        assert_eq!(out.label("p"), Some(VertexLabel::Plus));
        assert_eq!(out.label("m"), Some(VertexLabel::Minus));
        assert_eq!(out.edge("c2", "a"), EdgeLabel::NONE);
        assert_eq!(out.edge("c2", "p"), EdgeLabel::Cov(1));
        assert_eq!(out.edge("a", "m"), EdgeLabel::Cov(1));
        assert_eq!(out.net_charge(), 0);
    }

    #[test]
    fn i_requires_ionic_edge() {
        let g = samples::ethane();
        assert_eq!(applicable(&Rule::i("c1", "c2"), &g), Err("τ(u)≠+ or τ(v)≠−".into()));
        let nacl = samples::sodium_chloride();
        let mut broken = apply(&Rule::i("p", "m"), &nacl).unwrap();
        assert_eq!(applicable(&Rule::i("p", "m"), &broken), Err("m(u,v)≠ib".into()));
        broken = apply(&Rule::i("p", "m").inverse(), &broken).unwrap();
        assert_eq!(broken, nacl);
    }

    #[test]
    fn fresh_names_must_be_fresh() {
        let rule = Rule::e("c2", "a", "c1", "m");
        assert_eq!(applicable(&rule, &samples::synthon()), Err("a,b∉V".into()));
    }

    #[test]
    fn malformed_rules() {
        assert!(Rule::new(RuleKind::C, "x", "x", Some(("a".into(), "b".into()))).is_err());
        assert!(Rule::new(RuleKind::I, "x", "y", Some(("a".into(), "b".into()))).is_err());
        assert!(Rule::new(RuleKind::E, "x", "y", None).is_err());
    }

    #[test]
    fn sequences() {
        let g = samples::ethane();
        assert_eq!(apply_sequence(&[], &g).unwrap(), g);
        let seq = [ethane_cc(), ethane_cc().inverse()];
        assert_eq!(apply_sequence(&seq, &g).unwrap(), g);
        assert_eq!(simplify_sequence(&seq, &g).unwrap(), vec![]);
        assert_eq!(simplify_sequence(&[], &g).unwrap(), vec![]);
        let err = apply_sequence(&[ethane_cc(), ethane_cc()], &g).unwrap_err();
        assert!(matches!(err, Error::NotApplicableAtIndex { index: 1, .. }));
    }

    fn salt_and_ethane() -> Graph {
        samples::sodium_chloride().union_disjoint(&samples::ethane()).unwrap()
    }

    #[test]
    fn commuting_rules() {
        let g = salt_and_ethane();
        let i = Rule::i("p", "m");
        let c = ethane_cc();
        let ic = apply_sequence(&[i.clone(), c.clone()], &g).unwrap();
        let ci = apply_sequence(&[c, i], &g).unwrap();
        assert_eq!(ic, ci);
    }

    #[test]
    fn simplify_needs_commutation() {
        let g = salt_and_ethane();
        let (c, i) = (ethane_cc(), Rule::i("p", "m"));
        let seq = vec![c.clone(), i.clone(), i.inverse(), c.inverse()];
        assert_eq!(simplify_sequence(&seq, &g).unwrap(), vec![]);
        let seq = vec![c.clone(), i.clone(), c.inverse()];
        assert_eq!(simplify_sequence(&seq, &g).unwrap(), vec![i]);
    }

    #[test]
    fn rule_json_round_trip() {
        let r = Rule::c("u", "v", "a", "b");
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"kind":"C","u":"u","v":"v","a":"a","b":"b"}"#);
        assert_eq!(serde_json::from_str::<Rule>(&s).unwrap(), r);
        assert!(serde_json::from_str::<Rule>(r#"{"kind":"C","u":"u","v":"v","x":1}"#).is_err());
    }

    #[test]
    fn instances_of_ethane() {
        let g = samples::ethane();
        let c = instances(&g, &[RuleKind::C], &mut NameGen::default());
        assert_eq!(c.len(), 7);
        let cut = apply(&c[0], &g).unwrap();
        let back = instances(&cut, &[RuleKind::Cbar], &mut NameGen::default());
        assert!(back.contains(&c[0].inverse()));
    }
}
