mod args;
mod commands;
mod io;
mod retro;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status for malformed command lines; 2 and 3 belong to `retro`.
const USAGE: u8 = 64;

fn run(cli: Cli) -> anyhow::Result<i32> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global()?;
    }
    let limit = cli.max_candidates;
    match &cli.command {
        Command::Validate { graph } => commands::validate(graph),
        Command::Iso { left, right } => commands::iso(left, right),
        Command::Chiral { left, right } => commands::chiral(left, right),
        Command::Disconnect { graph, rules, render } => commands::disconnect(graph, rules, *render),
        Command::Match { pattern, graph } => commands::matchings(pattern, graph, limit),
        Command::React { scheme, graph, matching, tuple } => commands::react(scheme, graph, matching.as_deref(), *tuple, limit),
        Command::Compose { first, second, env } => commands::compose(first, second, env.as_deref()),
        Command::Translate { functor, input, env } => commands::translate(*functor, input, env.as_deref()),
        Command::Retro { target, config, known, max_depth, out } => {
            retro::retro(target, config, known.as_deref(), *max_depth, limit, out.as_deref())
        }
        Command::Sample { max_vertices } => commands::sample(cli.seed, *max_vertices),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
