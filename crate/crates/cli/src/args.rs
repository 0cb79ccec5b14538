use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "retrograph", version, about = "Chemical graphs, disconnection rules, reaction rewriting and retrosynthetic search")]
pub struct Cli {
    /// Seed for the sample generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for library-level parallelism (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Upper bound on enumerated matchings or search candidates.
    #[arg(long, global = true)]
    pub max_candidates: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a graph against the chemical constraints and classify it.
    Validate { graph: PathBuf },
    /// Decide whether two graphs are isomorphic; prints a witness.
    Iso { left: PathBuf, right: PathBuf },
    /// Decide whether two oriented graphs are chiral.
    Chiral { left: PathBuf, right: PathBuf },
    /// Apply a rule sequence to a graph.
    Disconnect {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        rules: PathBuf,
        /// Print a text rendering instead of JSON.
        #[arg(long)]
        render: bool,
    },
    /// Enumerate matchings of a pattern into a graph.
    Match {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Apply a reaction scheme to a graph.
    React {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// A matching as a list of pairs; when omitted the first one found is used.
        #[arg(long = "match")]
        matching: Option<PathBuf>,
        /// Print the reaction tuple instead of the product.
        #[arg(long)]
        tuple: bool,
    },
    /// Compose two morphisms of the same kind over an environment.
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Translate a matching into a disconnection (D) or a disconnection into a reaction (R).
    Translate {
        #[arg(long, value_enum)]
        functor: Functor,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Search for a route to a target.
    Retro {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        config: PathBuf,
        /// Directory of graph files added to the known set.
        #[arg(long)]
        known: Option<PathBuf>,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a seeded random molecular graph.
    Sample {
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Functor {
    #[value(name = "D")]
    D,
    #[value(name = "R")]
    R,
}
