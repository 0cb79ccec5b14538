use std::path::Path;

use anyhow::{Context, Result};
use retrograph::format::{parse, EnvironmentDoc, GraphDoc};
use retrograph::graph::Graph;
use retrograph::layers::Environment;
use serde::de::DeserializeOwned;

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&bytes).with_context(|| format!("in {}", path.display()))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    read::<GraphDoc>(path)?.to_graph().with_context(|| format!("in {}", path.display()))
}

/// Entries given as paths are resolved against the environment file's directory.
pub fn read_env(path: Option<&Path>) -> Result<Environment> {
    let Some(path) = path else { return Ok(Environment::empty()) };
    read::<EnvironmentDoc>(path)?.to_environment(path.parent()).with_context(|| format!("in {}", path.display()))
}
