use retrograph::format::to_canonical;
use retrograph::iso::is_isomorphic;
use retrograph::layers::Environment;
use retrograph::retro::{embed_components, forward_replay, run_retrosynthesis, validate_sequence, validate_step, RouteDoc, SearchConfig};
use retrograph::samples;

use super::common::{Case, Tally};

pub fn run(_seed: u64) -> Tally {
    let mut t = Tally::default();
    let cfg = SearchConfig {
        schemes: vec![samples::substitution_scheme()],
        environments: vec![Environment::new(vec![samples::hydrogen_chloride()]).unwrap()],
        known: vec![samples::chloroethane(), samples::water()],
        ..SearchConfig::default()
    };
    let target = samples::ethanol();
    let out = match run_retrosynthesis(&target, &cfg) {
        Ok(out) => out,
        Err(e) => {
            t.add(Case::fail(format!("search failed: {e}")));
            return t;
        }
    };
    t.add(Case::check(out.success && out.sequence.steps.len() == 1, to_canonical(&RouteDoc::from(&out))));
    for s in &out.sequence.steps {
        let problems = validate_step(&s.step);
        t.add(Case::check(problems.is_empty(), format!("step: {problems:?}")));
        t.add(Case::check(is_isomorphic(&s.byproduct, &samples::hydrogen_chloride()), "byproduct is HCl"));
    }
    let problems = validate_sequence(&out.sequence);
    t.add(Case::check(problems.is_empty(), format!("sequence: {problems:?}")));
    let replayed = forward_replay(&out.sequence).map(|end| embed_components(&target, &end).is_some());
    t.add(Case::check(matches!(replayed, Ok(true)), format!("replay contains the target: {replayed:?}")));
    t
}
