//! Search configuration and route documents.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::search::Closest;
use super::{Acceptance, FailureReport, OracleSpec, ProcessOracle, ProtectionHint, RetroOutcome, SearchConfig, TraceEntry};
use crate::disconnect::{Rule, RuleKind};
use crate::error::{Error, Result};
use crate::format::{parse, EntryDoc, EnvironmentDoc, GraphDoc, MorphismDoc, SchemeDoc};

fn defaults() -> SearchConfig {
    SearchConfig::default()
}

fn default_kinds() -> Vec<RuleKind> {
    defaults().rule_kinds
}
fn default_depth() -> usize {
    defaults().max_depth
}
fn default_disconnections() -> usize {
    defaults().max_disconnections
}
fn default_candidates() -> usize {
    defaults().max_candidates
}
fn default_matchings() -> usize {
    defaults().max_matchings
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    #[serde(default = "default_kinds")]
    pub rule_kinds: Vec<RuleKind>,
    #[serde(default)]
    pub schemes: Vec<SchemeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSpec>,
    #[serde(default)]
    pub environments: Vec<EnvironmentDoc>,
    #[serde(default)]
    pub known: Vec<EntryDoc>,
    #[serde(default = "default_depth")]
    pub max_depth: usize,
    #[serde(default = "default_disconnections")]
    pub max_disconnections: usize,
    #[serde(default = "default_candidates")]
    pub max_candidates: usize,
    #[serde(default = "default_matchings")]
    pub max_matchings: usize,
}

impl From<&SearchConfig> for ConfigDoc {
    fn from(c: &SearchConfig) -> ConfigDoc {
        ConfigDoc {
            rule_kinds: c.rule_kinds.clone(),
            schemes: c.schemes.iter().map(SchemeDoc::from).collect(),
            oracle: c.oracle.as_ref().and_then(|o| o.spec()),
            environments: c.environments.iter().map(EnvironmentDoc::from).collect(),
            known: c.known.iter().map(|g| EntryDoc::Inline(g.into())).collect(),
            max_depth: c.max_depth,
            max_disconnections: c.max_disconnections,
            max_candidates: c.max_candidates,
            max_matchings: c.max_matchings,
        }
    }
}

impl ConfigDoc {
    pub fn parse(bytes: &[u8]) -> Result<ConfigDoc> {
        parse(bytes)
    }

    /// Relative paths are resolved against `base`. Any failure, including a
    /// config that parses but fails validation, is `ConfigInvalid`.
    pub fn to_config(&self, base: Option<&Path>) -> Result<SearchConfig> {
        let wrap = |e: Error| match e {
            Error::ConfigInvalid(_) => e,
            other => Error::ConfigInvalid(other.to_string()),
        };
        let schemes = self.schemes.iter().map(SchemeDoc::to_scheme).collect::<Result<Vec<_>>>().map_err(wrap)?;
        let environments = self.environments.iter().map(|e| e.to_environment(base)).collect::<Result<Vec<_>>>().map_err(wrap)?;
        let mut graphs = Vec::new();
        for k in &self.known {
            let one = EnvironmentDoc { entries: vec![k.clone()] };
            graphs.extend(one.to_environment(base).map_err(wrap)?.entries);
        }
        let cfg = SearchConfig {
            rule_kinds: self.rule_kinds.clone(),
            schemes,
            oracle: self.oracle.clone().map(|s| Arc::new(ProcessOracle(s)) as Arc<dyn super::Oracle>),
            environments,
            known: graphs,
            max_depth: self.max_depth,
            max_disconnections: self.max_disconnections,
            max_candidates: self.max_candidates,
            max_matchings: self.max_matchings,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepDoc {
    pub acceptance: Acceptance,
    pub environment: EnvironmentDoc,
    pub rules: Vec<Rule>,
    pub synthons: GraphDoc,
    pub equivalents: GraphDoc,
    pub byproduct: GraphDoc,
    pub matching: MorphismDoc,
    pub reaction: MorphismDoc,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosestDoc {
    pub deficit: usize,
    pub equivalents: GraphDoc,
    pub product: GraphDoc,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureDoc {
    pub candidates: usize,
    pub closest: Option<ClosestDoc>,
    pub protection_hints: Vec<ProtectionHint>,
}

impl From<&FailureReport> for FailureDoc {
    fn from(f: &FailureReport) -> FailureDoc {
        FailureDoc {
            candidates: f.candidates,
            closest: f.closest.as_ref().map(|Closest { equivalents, product, deficit }| ClosestDoc {
                deficit: *deficit,
                equivalents: equivalents.into(),
                product: product.into(),
            }),
            protection_hints: f.hints.clone(),
        }
    }
}

/// A search result: the route found, if any, and the full trace.
#[derive(Clone, Debug, Serialize)]
pub struct RouteDoc {
    pub success: bool,
    pub target: GraphDoc,
    pub starting_materials: GraphDoc,
    pub steps: Vec<StepDoc>,
    pub trace: Vec<TraceEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDoc>,
}

impl From<&RetroOutcome> for RouteDoc {
    fn from(o: &RetroOutcome) -> RouteDoc {
        let steps = o
            .sequence
            .steps
            .iter()
            .map(|s| StepDoc {
                acceptance: s.step.acceptance.clone(),
                environment: (&s.environment).into(),
                rules: s.step.disconnection.rules.clone(),
                synthons: s.step.synthons().into(),
                equivalents: s.step.equivalents().into(),
                byproduct: (&s.byproduct).into(),
                matching: (&s.step.matching).into(),
                reaction: (&s.reaction).into(),
            })
            .collect();
        RouteDoc {
            success: o.success,
            target: (&o.sequence.target).into(),
            starting_materials: o.sequence.starting_materials().into(),
            steps,
            trace: o.trace.clone(),
            failure: o.failure.as_ref().map(FailureDoc::from),
        }
    }
}
