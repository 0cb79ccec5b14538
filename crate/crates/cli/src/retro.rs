use std::path::Path;

use anyhow::{Context, Result};
use retrograph::format::{render_rules, to_canonical};
use retrograph::retro::{run_retrosynthesis, ConfigDoc, RouteDoc, SearchConfig};

use crate::io::read_graph;

pub const NO_ROUTE: i32 = 2;
pub const CONFIG_ERROR: i32 = 3;

/// Graph files in `dir`, in name order.
fn known_dir(dir: &Path) -> Result<Vec<retrograph::graph::Graph>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
    paths.sort();
    paths.iter().map(|p| read_graph(p)).collect()
}

fn load_config(config: &Path, known: Option<&Path>, max_depth: Option<usize>, max_candidates: Option<usize>) -> Result<SearchConfig> {
    let bytes = std::fs::read(config).with_context(|| format!("cannot read {}", config.display()))?;
    let mut cfg = ConfigDoc::parse(&bytes)?.to_config(config.parent())?;
    if let Some(dir) = known {
        cfg.known.extend(known_dir(dir)?);
    }
    if let Some(d) = max_depth {
        cfg.max_depth = d;
    }
    if let Some(n) = max_candidates {
        cfg.max_candidates = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn retro(
    target: &Path,
    config: &Path,
    known: Option<&Path>,
    max_depth: Option<usize>,
    max_candidates: Option<usize>,
    out: Option<&Path>,
) -> Result<i32> {
    let cfg = match load_config(config, known, max_depth, max_candidates) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e:#}");
            return Ok(CONFIG_ERROR);
        }
    };
    let t = read_graph(target)?;
    let outcome = run_retrosynthesis(&t, &cfg)?;
    let doc = to_canonical(&RouteDoc::from(&outcome));
    match out {
        Some(path) => std::fs::write(path, &doc).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{doc}"),
    }
    for (i, s) in outcome.sequence.steps.iter().enumerate() {
        eprint!("step {}: {}", i + 1, render_rules(&s.step.disconnection.rules));
    }
    if outcome.success {
        eprintln!("route found in {} step(s)", outcome.sequence.steps.len());
        Ok(0)
    } else {
        eprintln!("no route");
        Ok(NO_ROUTE)
    }
}
