use std::collections::BTreeSet;

use serde::Serialize;

use super::search::formula;
use super::{embed_components, search_step, validate_step, Attempt, FailureReport, RetroStep, SearchConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, Name, NameGen, VertexMap};
use crate::iso::is_isomorphic;
use crate::layers::{rebase, Environment, MReactMorphism};
use crate::rewrite::{compose_maps, dpo_apply, reaction_to_dpo, Reaction};

/// `r_{i+1}: E_{i+1} → E_i + B_i`, with `E_0` the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceStep {
    pub environment: Environment,
    pub reaction: MReactMorphism,
    pub byproduct: Graph,
    /// The local step on the unknown part of `E_i`.
    pub step: RetroStep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetroSequence {
    pub target: Graph,
    pub steps: Vec<SequenceStep>,
}

impl RetroSequence {
    /// `E_n`: what the route starts from.
    pub fn starting_materials(&self) -> &Graph {
        self.steps.last().map_or(&self.target, |s| &s.reaction.source)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub depth: usize,
    pub target: String,
    pub attempts: Vec<Attempt>,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetroOutcome {
    pub sequence: RetroSequence,
    /// Every component of the starting materials is known.
    pub success: bool,
    pub trace: Vec<TraceEntry>,
    pub failure: Option<FailureReport>,
}

/// Extends a local reaction `E → P` by carrying `k` through unchanged.
fn carry(r: &Reaction, k: &Graph) -> Result<(Reaction, Graph)> {
    let mut names = NameGen::new("#k");
    let mut map = VertexMap::new();
    for v in k.names() {
        if r.source.contains(v) || r.target.contains(v) {
            let taken: BTreeSet<Name> = map.values().cloned().collect();
            let w = names.fresh_with(|x| r.source.contains(x) || r.target.contains(x) || k.contains(x) || taken.contains(x));
            map.insert(v.clone(), w);
        }
    }
    let k = k.rename(&map)?;
    let mut context = r.context.clone();
    context.extend(k.names().map(|v| (v.clone(), v.clone())));
    let full = Reaction { source: r.source.union_disjoint(&k)?, target: r.target.union_disjoint(&k)?, context, ..r.clone() };
    Ok((full, k))
}

/// Repeats single steps on the unknown components until every component is
/// known, a step fails, or the depth bound is reached.
pub fn run_retrosynthesis(target: &Graph, cfg: &SearchConfig) -> Result<RetroOutcome> {
    cfg.validate()?;
    if !target.is_molecular() {
        return Err(Error::NotMolecular("target".into()));
    }
    let mut current = rebase(target).0;
    let mut steps = Vec::new();
    let mut trace = Vec::new();
    let mut failure = None;
    let mut success = false;
    for depth in 0..=cfg.max_depth {
        let comps = current.components();
        let (known, unknown): (Vec<_>, Vec<_>) = comps.into_iter().partition(|c| cfg.is_known(&current.induced(c)));
        if unknown.is_empty() {
            success = true;
            break;
        }
        if depth == cfg.max_depth {
            break;
        }
        let t = current.induced(&unknown.into_iter().flatten().collect());
        let k = current.induced(&known.into_iter().flatten().collect());
        let out = search_step(&t, cfg)?;
        trace.push(TraceEntry { depth, target: formula(&t), attempts: out.attempts, accepted: out.step.is_some() });
        let Some(step) = out.step else {
            failure = out.failure;
            break;
        };
        let (reaction, _) = carry(&step.reaction.reaction, &k)?;
        let source = reaction.source.clone();
        let counts = vec![0; step.environment.len()];
        steps.push(SequenceStep {
            environment: step.environment.clone(),
            reaction: MReactMorphism { source: source.clone(), counts, reaction },
            byproduct: step.byproduct.clone(),
            step,
        });
        current = source;
    }
    Ok(RetroOutcome { sequence: RetroSequence { target: target.clone(), steps }, success, trace, failure })
}

/// Everything wrong with a sequence; empty when valid. The domain of each
/// reaction must be a union of components of the codomain of the next.
pub fn validate_sequence(seq: &RetroSequence) -> Vec<String> {
    let mut out = Vec::new();
    let mut inner = &seq.target;
    for (i, s) in seq.steps.iter().enumerate() {
        let n = i + 1;
        if let Err(e) = s.reaction.validate(&s.environment) {
            out.push(format!("reaction {n}: {e}"));
        }
        out.extend(validate_step(&s.step).into_iter().map(|d| format!("step {n}: {d}")));
        match embed_components(inner, s.reaction.target()) {
            Some((_, rest)) => {
                if !is_isomorphic(&s.reaction.target().induced(&rest), &s.byproduct) {
                    out.push(format!("reaction {n}: product minus the previous graph is not the byproduct"));
                }
            }
            None => out.push(format!("reaction {n}: product does not contain the previous graph")),
        }
        inner = &s.reaction.source;
    }
    out
}

/// Runs the route forwards from the starting materials and returns the
/// final graph: the target together with every byproduct.
pub fn forward_replay(seq: &RetroSequence) -> Result<Graph> {
    let mut cur = seq.starting_materials().clone();
    for s in seq.steps.iter().rev() {
        let r = &s.reaction.reaction;
        let (phi, _) = embed_components(&r.source, &cur)
            .ok_or_else(|| Error::BoundaryMismatch("reaction source is not part of the current graph".into()))?;
        let dpo = reaction_to_dpo(r)?;
        let m = compose_maps(&dpo.matching, &phi);
        cur = dpo_apply(&dpo.scheme, &m, &cur)?.e;
    }
    Ok(cur)
}
