//! Retrosynthetic search: disconnect a target, complete the synthons into
//! equivalents from an environment, and accept the equivalents when a scheme
//! or an oracle turns them into the target plus a byproduct.

mod candidates;
mod doc;
mod mcs;
mod oracle;
mod search;
mod sequence;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::disconnect::RuleKind;
use crate::error::{Error, Result};
use crate::graph::{Graph, Name, VertexMap};
use crate::iso::find_isomorphism;
use crate::layers::Environment;
use crate::rewrite::ReactionScheme;

pub use candidates::{candidates, Candidate};
pub use doc::{ConfigDoc, RouteDoc};
pub use mcs::{common_subgraph_size, difference};
pub use oracle::{FnOracle, Oracle, OracleSpec, ProcessOracle};
pub use search::{
    evaluate, search_step, validate_step, Acceptance, Attempt, FailureReport, ProtectionHint, RetroStep, StepOutcome, Verdict,
};
pub use sequence::{forward_replay, run_retrosynthesis, validate_sequence, RetroOutcome, RetroSequence, SequenceStep, TraceEntry};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Rule families; each also admits its inverse.
    pub rule_kinds: Vec<RuleKind>,
    pub schemes: Vec<ReactionScheme>,
    pub oracle: Option<Arc<dyn Oracle>>,
    /// Tried in order. An empty list means the empty environment alone.
    pub environments: Vec<Environment>,
    /// Molecular entities that end the search when every component is one.
    pub known: Vec<Graph>,
    pub max_depth: usize,
    /// Rule applications per disconnection.
    pub max_disconnections: usize,
    /// Candidate equivalents examined per step.
    pub max_candidates: usize,
    /// Matchings tried per scheme and candidate.
    pub max_matchings: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            rule_kinds: vec![RuleKind::C],
            schemes: Vec::new(),
            oracle: None,
            environments: Vec::new(),
            known: Vec::new(),
            max_depth: 3,
            max_disconnections: 1,
            max_candidates: 256,
            max_matchings: 64,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ConfigInvalid(m.into()));
        if self.schemes.is_empty() && self.oracle.is_none() {
            return bad("neither schemes nor an oracle are configured");
        }
        if self.rule_kinds.is_empty() {
            return bad("no rule kinds");
        }
        if self.max_disconnections == 0 || self.max_candidates == 0 || self.max_matchings == 0 {
            return bad("search bounds must be positive");
        }
        for (i, s) in self.schemes.iter().enumerate() {
            s.validate().map_err(|e| Error::ConfigInvalid(format!("scheme {i}: {e}")))?;
        }
        for (i, e) in self.environments.iter().enumerate() {
            e.validate().map_err(|e| Error::ConfigInvalid(format!("environment {i}: {e}")))?;
        }
        for (i, k) in self.known.iter().enumerate() {
            if !k.is_molecular() || !k.is_connected() {
                return Err(Error::ConfigInvalid(format!("known entry {i} is not a molecular entity")));
            }
        }
        Ok(())
    }

    /// Every kind together with its inverse.
    pub fn expanded_kinds(&self) -> Vec<RuleKind> {
        let set: BTreeSet<RuleKind> = self.rule_kinds.iter().flat_map(|k| [k.family(), k.family().inverse()]).collect();
        set.into_iter().collect()
    }

    pub fn environments(&self) -> Vec<Environment> {
        if self.environments.is_empty() {
            vec![Environment::empty()]
        } else {
            self.environments.clone()
        }
    }

    pub fn is_known(&self, g: &Graph) -> bool {
        self.known.iter().any(|k| k.len() == g.len() && find_isomorphism(k, g).is_some())
    }
}

/// Embeds `small` into `big` as a union of whole components. Returns the
/// vertex map and the vertices of `big` left over.
pub fn embed_components(small: &Graph, big: &Graph) -> Option<(VertexMap, BTreeSet<Name>)> {
    let parts: Vec<Graph> = small.components().iter().map(|c| small.induced(c)).collect();
    let hosts: Vec<Graph> = big.components().iter().map(|c| big.induced(c)).collect();
    let mut used = vec![false; hosts.len()];
    let mut map = VertexMap::new();
    if !assign(&parts, &hosts, 0, &mut used, &mut map) {
        return None;
    }
    let rest = big.names().filter(|v| !map.values().any(|w| &w == v)).cloned().collect();
    Some((map, rest))
}

fn assign(parts: &[Graph], hosts: &[Graph], i: usize, used: &mut [bool], map: &mut VertexMap) -> bool {
    if i == parts.len() {
        return true;
    }
    for j in 0..hosts.len() {
        if used[j] || hosts[j].len() != parts[i].len() {
            continue;
        }
        if let Some(f) = find_isomorphism(&parts[i], &hosts[j]) {
            used[j] = true;
            let keys: Vec<Name> = f.keys().cloned().collect();
            map.extend(f);
            if assign(parts, hosts, i + 1, used, map) {
                return true;
            }
            keys.iter().for_each(|k| {
                map.remove(k);
            });
            used[j] = false;
        }
    }
    false
}
