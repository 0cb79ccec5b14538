use std::collections::BTreeSet;

use super::SearchConfig;
use crate::disconnect::{apply, instances, Rule, RuleKind};
use crate::graph::{EdgeLabel, Graph, Name, NameGen, VertexMap};
use crate::iso::is_isomorphic;
use crate::layers::{parse_assembled, rebase, Environment, MMatchMorphism};

/// Synthons `S` from a disconnection of the target, completed into molecular
/// equivalents `E` by an M-Match morphism `S → E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub rules: Vec<Rule>,
    pub synthons: Graph,
    pub environment: usize,
    pub matching: MMatchMorphism,
}

impl Candidate {
    pub fn equivalents(&self) -> &Graph {
        &self.matching.target
    }
}

/// Rule sequences of length `1..=depth` from `t`, breadth first.
fn disconnections(t: &Graph, kinds: &[RuleKind], depth: usize, limit: usize) -> Vec<(Vec<Rule>, Graph)> {
    let mut out = Vec::new();
    let mut frontier = vec![(Vec::new(), t.clone())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (rules, g) in &frontier {
            let mut names = NameGen::new("#s");
            for rule in instances(g, kinds, &mut names) {
                let Ok(s) = apply(&rule, g) else { continue };
                let mut seq: Vec<Rule> = rules.clone();
                seq.push(rule);
                next.push((seq, s));
                if out.len() + next.len() >= limit {
                    out.extend(next);
                    return out;
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Count vectors with total `1..=max`, by total and then lexicographically.
fn count_vectors(k: usize, max: usize) -> Vec<Vec<usize>> {
    fn fill(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == k {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            fill(k, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for total in 1..=max {
        fill(k, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Completions of `s` by copies of `env`: each α-vertex is sent to a copy atom,
/// which bonds to the α's neighbour and loses its own copy bonds. Every copy
/// must receive at least one α.
fn completions(s: &Graph, env: &Environment, limit: usize) -> Vec<MMatchMorphism> {
    let alphas: Vec<Name> = s.alpha_vertices().into_iter().collect();
    let chem = s.chem_vertices();
    let base = s.induced(&chem);
    let identity: VertexMap = chem.iter().map(|v| (v.clone(), v.clone())).collect();
    let mut out: Vec<MMatchMorphism> = Vec::new();
    if alphas.is_empty() {
        if s.is_molecular() {
            out.push(MMatchMorphism::identity(s, env));
        }
        return out;
    }
    let mut anchors = Vec::new();
    for a in &alphas {
        let n: Vec<&Name> = s.neighbours(a).map(|(v, _)| v).collect();
        match n.as_slice() {
            [u] if s.label(u).is_some_and(|l| l.is_atom()) => anchors.push((*u).clone()),
            _ => return out,
        }
    }
    for counts in count_vectors(env.len(), alphas.len()) {
        let Ok((copies, _)) = env.assemble(&counts) else { continue };
        let atoms: Vec<Name> = copies.atom_vertices().into_iter().collect();
        let copy_ids: BTreeSet<(usize, usize)> = copies.names().filter_map(|v| parse_assembled(v).map(|(e, c, _)| (e, c))).collect();
        if atoms.is_empty() {
            continue;
        }
        let mut idx = vec![0usize; alphas.len()];
        loop {
            let targets: Vec<&Name> = idx.iter().map(|&i| &atoms[i]).collect();
            let hit: BTreeSet<(usize, usize)> = targets.iter().filter_map(|w| parse_assembled(w).map(|(e, c, _)| (e, c))).collect();
            if hit == copy_ids {
                if let Some(f) = complete(&base, &copies, &alphas, &anchors, &targets, &identity, &counts, s) {
                    if f.validate(env).is_ok() && !out.iter().any(|g| g.counts == f.counts && is_isomorphic(&g.target, &f.target)) {
                        out.push(f);
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < atoms.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn complete(
    base: &Graph,
    copies: &Graph,
    alphas: &[Name],
    anchors: &[Name],
    targets: &[&Name],
    identity: &VertexMap,
    counts: &[usize],
    s: &Graph,
) -> Option<MMatchMorphism> {
    let targeted: BTreeSet<&Name> = targets.iter().copied().collect();
    let mut e = base.union_disjoint(copies).ok()?;
    for (x, y, _) in copies.edges() {
        if targeted.contains(x) || targeted.contains(y) {
            e.set_edge(x, y, EdgeLabel::NONE).ok()?;
        }
    }
    for (u, w) in anchors.iter().zip(targets) {
        let order = EdgeLabel::covalent(e.edge(u, w).cov() + 1)?;
        e.set_edge(u, w, order).ok()?;
    }
    if !e.is_molecular() {
        return None;
    }
    // Equivalents become the source of a reaction, so copies leave the
    // reserved name space.
    let (e, moved) = rebase(&e);
    let mut matching = identity.clone();
    for (a, w) in alphas.iter().zip(targets) {
        matching.insert(a.clone(), moved[*w].clone());
    }
    let injection = copies.names().map(|v| (v.clone(), moved[v].clone())).collect();
    Some(MMatchMorphism { source: s.clone(), target: e, matching, counts: counts.to_vec(), injection })
}

/// Candidates for one step, in a fixed order: disconnections outermost, then
/// environments, then completions. At most `cfg.max_candidates`.
pub fn candidates(target: &Graph, cfg: &SearchConfig) -> Vec<Candidate> {
    let mut out = Vec::new();
    let envs = cfg.environments();
    for (rules, s) in disconnections(target, &cfg.expanded_kinds(), cfg.max_disconnections, cfg.max_candidates) {
        for (i, env) in envs.iter().enumerate() {
            let left = cfg.max_candidates - out.len();
            for matching in completions(&s, env, left) {
                out.push(Candidate { rules: rules.clone(), synthons: s.clone(), environment: i, matching });
            }
            if out.len() >= cfg.max_candidates {
                return out;
            }
        }
    }
    out
}
