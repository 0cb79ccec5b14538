use retrograph::disconnect::apply_sequence;
use retrograph::format::{graph_to_json, render_rules, to_canonical, ReactionDoc};
use retrograph::iso::is_isomorphic;
use retrograph::layers::{functor_d, functor_r, mdisc_compose, Environment, MDiscMorphism};
use retrograph::rewrite::{compose_reactions, reaction_to_dpo};

use super::common::{collect, Case, Tally};

pub fn d_soundness(seed: u64, n: usize) -> Tally {
    collect(seed, n, |gen| {
        let (env, f) = gen.mmatch(14);
        let case = match functor_d(&f, &env).and_then(|d| Ok((d.start(&env)?, d))) {
            Err(e) => Case::fail(format!("functor D failed: {e}")),
            Ok((start, d)) => match apply_sequence(&d.rules, &start) {
                Ok(end) if is_isomorphic(&end, &f.target) => Case::pass(render_rules(&d.rules)),
                Ok(end) => Case::fail(format!("rebuilt {} instead of the target", graph_to_json(&end))),
                Err(e) => Case::fail(format!("sequence did not apply: {e}")),
            },
        };
        Some(vec![case])
    })
}

/// Composition is compared by equality of tuples, which implies isomorphism.
pub fn r_functoriality(seed: u64, n: usize) -> Tally {
    let env = Environment::empty();
    collect(seed, n, |gen| {
        let g = gen.molecular_graph(12);
        let (r1, mid) = gen.molecular_sequence(&g, 2);
        let (r2, end) = gen.molecular_sequence(&mid, 2);
        let d1 = MDiscMorphism { source: g.clone(), target: mid.clone(), counts: vec![], rules: r1 };
        let d2 = MDiscMorphism { source: mid, target: end.clone(), counts: vec![], rules: r2 };
        let run = || -> retrograph::error::Result<Case> {
            let whole = mdisc_compose(&d1, &d2, &env)?;
            let lhs = functor_r(&whole, &env)?.reaction;
            let rhs = compose_reactions(&functor_r(&d1, &env)?.reaction, &functor_r(&d2, &env)?.reaction)?;
            if lhs != rhs {
                return Ok(Case::fail("R does not preserve composition"));
            }
            let rewritten = reaction_to_dpo(&lhs)?.e;
            let applied = apply_sequence(&whole.rules, &g)?;
            Ok(Case::check(rewritten == applied && applied == end, to_canonical(&ReactionDoc::from(&lhs))))
        };
        Some(vec![run().unwrap_or_else(|e| Case::fail(format!("error: {e}")))])
    })
}
