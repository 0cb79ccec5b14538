use std::fmt;
use std::io::Write;
use std::process::{Command, Stdio};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{graph_to_json, parse_graphs};
use crate::graph::Graph;

/// A black-box model proposing, for a molecular graph of equivalents, the
/// molecular graphs it may react to.
pub trait Oracle: Send + Sync + fmt::Debug {
    fn query(&self, equivalents: &Graph) -> Result<Vec<Graph>>;

    /// The serialisable description, if there is one.
    fn spec(&self) -> Option<OracleSpec> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub command: String,
    #[serde(default)]
    pub args: Vec<String>,
}

/// Runs `command args…` once per query: one graph document on stdin, a JSON
/// list of graph documents expected on stdout.
#[derive(Clone, Debug)]
pub struct ProcessOracle(pub OracleSpec);

impl Oracle for ProcessOracle {
    fn query(&self, equivalents: &Graph) -> Result<Vec<Graph>> {
        let mut child = Command::new(&self.0.command)
            .args(&self.0.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| Error::Oracle(format!("cannot start {}: {e}", self.0.command)))?;
        child
            .stdin
            .take()
            .expect("stdin is piped")
            .write_all(graph_to_json(equivalents).as_bytes())
            .map_err(|e| Error::Oracle(e.to_string()))?;
        let out = child.wait_with_output().map_err(|e| Error::Oracle(e.to_string()))?;
        if !out.status.success() {
            return Err(Error::Oracle(format!("{} exited with {}: {}", self.0.command, out.status, String::from_utf8_lossy(&out.stderr))));
        }
        parse_graphs(&out.stdout).map_err(|e| Error::Oracle(format!("bad oracle output: {e}")))
    }

    fn spec(&self) -> Option<OracleSpec> {
        Some(self.0.clone())
    }
}

/// An oracle backed by a function; for tests and embedding.
pub struct FnOracle<F>(pub F);

impl<F> fmt::Debug for FnOracle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnOracle")
    }
}

impl<F: Fn(&Graph) -> Vec<Graph> + Send + Sync> Oracle for FnOracle<F> {
    fn query(&self, equivalents: &Graph) -> Result<Vec<Graph>> {
        Ok((self.0)(equivalents))
    }
}
