use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::mcs::label_deficit;
use super::{candidates, difference, embed_components, Candidate, SearchConfig};
use crate::error::Result;
use crate::graph::{Graph, Name, VertexLabel, VertexMap};
use crate::layers::{Environment, MDiscMorphism, MMatchMorphism, MReactMorphism};
use crate::rewrite::{dpo_apply, enumerate_matchings, reaction_from_dpo, Reaction};

/// Candidates evaluated together; fixed so the trace does not depend on the
/// thread count.
const CHUNK: usize = 16;
const HINTS_PER_CANDIDATE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "by", rename_all = "lowercase")]
pub enum Acceptance {
    Scheme { index: usize },
    Oracle,
}

/// One accepted step `T → S ← E → T + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetroStep {
    pub target: Graph,
    pub environment: Environment,
    pub disconnection: MDiscMorphism,
    pub matching: MMatchMorphism,
    pub reaction: MReactMorphism,
    pub byproduct: Graph,
    pub acceptance: Acceptance,
}

impl RetroStep {
    pub fn synthons(&self) -> &Graph {
        &self.matching.source
    }

    pub fn equivalents(&self) -> &Graph {
        &self.matching.target
    }
}

/// A scheme matching whose product misses part of the target; the matched
/// target atoms are the ones a protecting group would shield.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProtectionHint {
    pub scheme: usize,
    pub matching: Vec<(Name, Name)>,
    pub deficit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted { reaction: Reaction, byproduct: Graph, acceptance: Acceptance },
    Rejected { reason: String, closest: Option<(usize, Graph)>, hints: Vec<ProtectionHint> },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub rules: Vec<String>,
    pub environment: usize,
    pub counts: Vec<usize>,
    pub equivalents: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closest {
    pub equivalents: Graph,
    pub product: Graph,
    pub deficit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureReport {
    pub candidates: usize,
    pub closest: Option<Closest>,
    pub hints: Vec<ProtectionHint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub step: Option<RetroStep>,
    pub attempts: Vec<Attempt>,
    pub failure: Option<FailureReport>,
}

/// Hill-order formula per component, e.g. `C2H5Cl + H2O`.
pub(crate) fn formula(g: &Graph) -> String {
    let mut parts: Vec<String> = g
        .components()
        .iter()
        .map(|c| {
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for v in c {
                *counts.entry(g.label(v).unwrap().as_str().to_string()).or_default() += 1;
            }
            let mut out = String::new();
            for first in ["C", "H"] {
                if let Some(n) = counts.remove(first) {
                    out += first;
                    if n > 1 {
                        out += &n.to_string();
                    }
                }
            }
            for (s, n) in counts {
                out += &s;
                if n > 1 {
                    out += &n.to_string();
                }
            }
            out
        })
        .collect();
    parts.sort();
    if parts.is_empty() {
        return "(empty)".into();
    }
    parts.join(" + ")
}

fn atom_labels(g: &Graph) -> Vec<(VertexLabel, Name)> {
    let mut out: Vec<(VertexLabel, Name)> = g.atom_vertices().into_iter().map(|v| (g.label(&v).unwrap(), v)).collect();
    out.sort();
    out
}

/// The tuple that rewrites all of `e` into all of `p`; atoms are paired in
/// label and name order.
fn whole_reaction(e: &Graph, p: &Graph) -> Option<Reaction> {
    let (a, b) = (atom_labels(e), atom_labels(p));
    if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x.0 != y.0) || e.net_charge() != p.net_charge() {
        return None;
    }
    let r = Reaction {
        source: e.clone(),
        target: p.clone(),
        u_source: e.name_set(),
        u_target: p.name_set(),
        bijection: a.into_iter().zip(b).map(|(x, y)| (x.1, y.1)).collect(),
        context: VertexMap::new(),
    };
    r.validate().ok().map(|_| r)
}

/// Whether a scheme or the oracle turns `e` into `target` plus a molecular
/// byproduct. Schemes are tried first, in order.
pub fn evaluate(target: &Graph, e: &Graph, cfg: &SearchConfig) -> Result<Verdict> {
    let mut closest: Option<(usize, Graph)> = None;
    let mut hints = Vec::new();
    // The exact difference is costly; skip products that cannot beat the best.
    let consider = |p: &Graph, closest: &mut Option<(usize, Graph)>| {
        if closest.as_ref().is_some_and(|(best, _)| label_deficit(target, p) >= *best) {
            return;
        }
        let d = difference(target, p);
        if closest.as_ref().is_none_or(|(best, _)| d < *best) {
            *closest = Some((d, p.clone()));
        }
    };
    let mut matched = false;
    for (i, s) in cfg.schemes.iter().enumerate() {
        for m in enumerate_matchings(&s.left, e, cfg.max_matchings) {
            matched = true;
            let Ok(dpo) = dpo_apply(s, &m, e) else { continue };
            if !dpo.e.is_molecular() {
                continue;
            }
            if let Some((_, rest)) = embed_components(target, &dpo.e) {
                let byproduct = dpo.e.induced(&rest);
                return Ok(Verdict::Accepted { reaction: reaction_from_dpo(&dpo), byproduct, acceptance: Acceptance::Scheme { index: i } });
            }
            if hints.len() < HINTS_PER_CANDIDATE {
                let deficit = difference(target, &dpo.e);
                hints.push(ProtectionHint { scheme: i, matching: m.into_iter().collect(), deficit });
            }
            consider(&dpo.e, &mut closest);
        }
    }
    let mut proposed = false;
    if let Some(oracle) = &cfg.oracle {
        for p in oracle.query(e)? {
            proposed = true;
            if !p.is_molecular() {
                continue;
            }
            if let (Some((_, rest)), Some(reaction)) = (embed_components(target, &p), whole_reaction(e, &p)) {
                let byproduct = p.induced(&rest);
                return Ok(Verdict::Accepted { reaction, byproduct, acceptance: Acceptance::Oracle });
            }
            consider(&p, &mut closest);
        }
    }
    let reason = match (matched, proposed, &closest) {
        (false, false, _) => "no scheme matches and the oracle proposed nothing",
        (_, _, None) => "no molecular product",
        _ => "no product contains the target",
    };
    Ok(Verdict::Rejected { reason: reason.into(), closest, hints })
}

fn step_of(target: &Graph, c: &Candidate, env: &Environment, v: Verdict) -> Option<RetroStep> {
    let Verdict::Accepted { reaction, byproduct, acceptance } = v else { return None };
    let zero = vec![0; env.len()];
    Some(RetroStep {
        target: target.clone(),
        environment: env.clone(),
        disconnection: MDiscMorphism { source: target.clone(), target: c.synthons.clone(), counts: zero.clone(), rules: c.rules.clone() },
        matching: c.matching.clone(),
        reaction: MReactMorphism { source: c.equivalents().clone(), counts: zero, reaction },
        byproduct,
        acceptance,
    })
}

/// One retrosynthetic step. Candidates are evaluated in parallel but the
/// first accepted one in candidate order wins.
pub fn search_step(target: &Graph, cfg: &SearchConfig) -> Result<StepOutcome> {
    let envs = cfg.environments();
    let cands = candidates(target, cfg);
    let mut attempts = Vec::new();
    let mut closest: Option<Closest> = None;
    let mut hints = Vec::new();
    for chunk in cands.chunks(CHUNK) {
        let verdicts: Vec<Result<Verdict>> = chunk.par_iter().map(|c| evaluate(target, c.equivalents(), cfg)).collect();
        for (c, v) in chunk.iter().zip(verdicts) {
            let v = v?;
            let outcome = match &v {
                Verdict::Accepted { acceptance: Acceptance::Scheme { index }, .. } => format!("accepted by scheme {index}"),
                Verdict::Accepted { acceptance: Acceptance::Oracle, .. } => "accepted by the oracle".to_string(),
                Verdict::Rejected { reason, .. } => reason.clone(),
            };
            attempts.push(Attempt {
                rules: c.rules.iter().map(|r| r.to_string()).collect(),
                environment: c.environment,
                counts: c.matching.counts.clone(),
                equivalents: formula(c.equivalents()),
                outcome,
            });
            match v {
                Verdict::Rejected { closest: near, hints: h, .. } => {
                    if let Some((d, p)) = near {
                        if closest.as_ref().is_none_or(|x| d < x.deficit) {
                            closest = Some(Closest { equivalents: c.equivalents().clone(), product: p, deficit: d });
                        }
                    }
                    hints.extend(h);
                }
                accepted => {
                    let step = step_of(target, c, &envs[c.environment], accepted);
                    return Ok(StepOutcome { step, attempts, failure: None });
                }
            }
        }
    }
    hints.sort_by_key(|h| h.deficit);
    hints.truncate(16);
    Ok(StepOutcome { step: None, attempts, failure: Some(FailureReport { candidates: cands.len(), closest, hints }) })
}

/// Everything wrong with a step, as readable diagnostics; empty when valid.
pub fn validate_step(step: &RetroStep) -> Vec<String> {
    let mut out = Vec::new();
    let env = &step.environment;
    if !step.target.is_molecular() {
        out.push("target is not molecular".into());
    }
    if !step.byproduct.is_molecular() {
        out.push("byproduct is not molecular".into());
    }
    let e = step.equivalents();
    if e.has_alpha() {
        out.push("equivalents contain α".into());
    } else if !e.is_molecular() {
        out.push("equivalents are not chemical".into());
    }
    if let Err(err) = env.validate() {
        out.push(format!("environment: {err}"));
    }
    let d = &step.disconnection;
    if d.source != step.target {
        out.push("disconnection does not start at the target".into());
    }
    if d.counts.iter().any(|&n| n > 0) {
        out.push("disconnection uses environment copies".into());
    }
    match d.end(env) {
        Ok(end) if &end == step.synthons() && &d.target == step.synthons() => {}
        Ok(_) => out.push("disconnection does not end at the synthons".into()),
        Err(err) => out.push(format!("disconnection: {err}")),
    }
    if let Err(err) = step.matching.validate(env) {
        out.push(format!("matching: {err}"));
    }
    let r = &step.reaction;
    if &r.source != e {
        out.push("reaction does not start at the equivalents".into());
    }
    if let Err(err) = r.validate(env) {
        out.push(format!("reaction: {err}"));
    }
    match embed_components(&step.target, r.target()) {
        Some((_, rest)) => {
            if !crate::iso::is_isomorphic(&r.target().induced(&rest), &step.byproduct) {
                out.push("reaction product minus the target is not the byproduct".into());
            }
        }
        None => out.push("reaction product does not contain the target".into()),
    }
    out
}
