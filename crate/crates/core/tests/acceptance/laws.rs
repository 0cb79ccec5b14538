use retrograph::format::{to_canonical, MorphismDoc, ReactionDoc};
use retrograph::gen::Gen;
use retrograph::layers::{mmatch_compose, mreact_compose, rebase, MMatchMorphism, MReactMorphism};
use retrograph::rewrite::{compose_reactions, Reaction};

use super::common::{collect, Case, Tally};

type Checks = retrograph::error::Result<Vec<Case>>;

/// Associativity, then left and right unit.
fn laws<T: PartialEq>(assoc: (T, T), left: (T, T), right: (T, T), text: String, what: &str) -> Vec<Case> {
    vec![
        Case::check(assoc.0 == assoc.1, format!("{what} associativity {text}")),
        Case::check(left.0 == left.1, format!("{what} left unit {text}")),
        Case::check(right.0 == right.1, format!("{what} right unit {text}")),
    ]
}

fn react(gen: &mut Gen) -> Option<Checks> {
    let c = gen.molecular_graph(12);
    let r = gen.reaction(&c, 3)?;
    let s = gen.reaction(&r.target, 3)?;
    let t = gen.reaction(&s.target, 3)?;
    Some((|| {
        let assoc = (compose_reactions(&compose_reactions(&r, &s)?, &t)?, compose_reactions(&r, &compose_reactions(&s, &t)?)?);
        let left = (compose_reactions(&Reaction::identity(&r.source), &r)?, r.clone());
        let right = (compose_reactions(&r, &Reaction::identity(&r.target))?, r.clone());
        Ok(laws(assoc, left, right, to_canonical(&ReactionDoc::from(&r)), "React"))
    })())
}

fn mmatch(gen: &mut Gen) -> Option<Checks> {
    let (env, h) = gen.mmatch(12);
    let g = gen.mmatch_into(&h.source, &env)?;
    let f = gen.mmatch_into(&g.source, &env)?;
    Some((|| {
        let assoc = (mmatch_compose(&mmatch_compose(&f, &g, &env)?, &h, &env)?, mmatch_compose(&f, &mmatch_compose(&g, &h, &env)?, &env)?);
        let left = (mmatch_compose(&MMatchMorphism::identity(&f.source, &env), &f, &env)?, f.clone());
        let right = (mmatch_compose(&f, &MMatchMorphism::identity(&f.target, &env), &env)?, f.clone());
        Ok(laws(assoc, left, right, to_canonical(&MorphismDoc::from(&f)), "M-Match"))
    })())
}

fn mreact(gen: &mut Gen) -> Option<Checks> {
    let a = gen.molecular_graph(10);
    let env = gen.environment_for(&a);
    let r = gen.mreact_on(&a, &env)?;
    let s = gen.mreact_on(&rebase(r.target()).0, &env)?;
    let t = gen.mreact_on(&rebase(s.target()).0, &env)?;
    Some((|| {
        let assoc = (mreact_compose(&mreact_compose(&r, &s, &env)?, &t, &env)?, mreact_compose(&r, &mreact_compose(&s, &t, &env)?, &env)?);
        let left = (mreact_compose(&MReactMorphism::identity(&r.source, &env), &r, &env)?, r.clone());
        let right = (mreact_compose(&r, &MReactMorphism::identity(r.target(), &env), &env)?, r.clone());
        Ok(laws(assoc, left, right, to_canonical(&MorphismDoc::from(&r)), "M-React"))
    })())
}

pub fn run(seed: u64, n: usize) -> Tally {
    let mut t = collect(seed, n, |gen| {
        let mut out = Vec::new();
        for (what, law) in [("React", react as fn(&mut Gen) -> Option<Checks>), ("M-Match", mmatch), ("M-React", mreact)] {
            match law(gen) {
                Some(Ok(cases)) => out.extend(cases.into_iter().map(|c| c.tagged(what))),
                Some(Err(e)) => out.push(Case::fail(format!("{what} composition failed: {e}"))),
                None => {}
            }
        }
        Some(out)
    });
    t.add(Case::check(t.tags.len() == 3, format!("categories covered: {:?}", t.tags)));
    t
}
