use proptest::prelude::*;
use retrograph::disconnect::apply_sequence;
use retrograph::gen::Gen;
use retrograph::iso::is_isomorphic;
use retrograph::layers::*;
use retrograph::rewrite::{compose_reactions, reaction_to_dpo};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn functor_d_rebuilds_the_target(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let (env, f) = gen.mmatch(14);
        let d = functor_d(&f, &env).unwrap();
        let end = apply_sequence(&d.rules, &d.start(&env).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&end, &f.target));
    }

    #[test]
    fn functor_r_agrees_with_rule_application(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let g = gen.molecular_graph(12);
        let (rules, end) = gen.molecular_sequence(&g, 3);
        let env = Environment::empty();
        let d = MDiscMorphism { source: g.clone(), target: end.clone(), counts: vec![], rules };
        let r = functor_r(&d, &env).unwrap();
        prop_assert_eq!(&r.reaction.target, &end);
        let dpo = reaction_to_dpo(&r.reaction).unwrap();
        prop_assert_eq!(dpo.e, end);
    }

    #[test]
    fn functor_r_preserves_composition(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let g = gen.molecular_graph(12);
        let env = Environment::empty();
        let (r1, mid) = gen.molecular_sequence(&g, 2);
        let (r2, end) = gen.molecular_sequence(&mid, 2);
        let d1 = MDiscMorphism { source: g.clone(), target: mid.clone(), counts: vec![], rules: r1 };
        let d2 = MDiscMorphism { source: mid.clone(), target: end.clone(), counts: vec![], rules: r2 };
        let whole = mdisc_compose(&d1, &d2, &env).unwrap();
        let lhs = functor_r(&whole, &env).unwrap().reaction;
        let rhs = compose_reactions(&functor_r(&d1, &env).unwrap().reaction, &functor_r(&d2, &env).unwrap().reaction).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mmatch_composition_is_associative_and_unital(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let (env, h) = gen.mmatch(12);
        let Some(g) = gen.mmatch_into(&h.source, &env) else { return Ok(()) };
        let Some(f) = gen.mmatch_into(&g.source, &env) else { return Ok(()) };
        let left = mmatch_compose(&mmatch_compose(&f, &g, &env).unwrap(), &h, &env).unwrap();
        let right = mmatch_compose(&f, &mmatch_compose(&g, &h, &env).unwrap(), &env).unwrap();
        prop_assert_eq!(&left, &right);
        let id = MMatchMorphism::identity(&f.source, &env);
        prop_assert_eq!(&mmatch_compose(&id, &f, &env).unwrap(), &f);
        let id = MMatchMorphism::identity(&f.target, &env);
        prop_assert_eq!(&mmatch_compose(&f, &id, &env).unwrap(), &f);
    }
}

fn react_chain(gen: &mut Gen, len: usize) -> Option<(Environment, Vec<MReactMorphism>)> {
    let a = gen.molecular_graph(10);
    let env = gen.environment_for(&a);
    let mut out: Vec<MReactMorphism> = Vec::new();
    let mut src = a;
    for _ in 0..len {
        let r = gen.mreact_on(&src, &env)?;
        src = rebase(r.target()).0;
        out.push(r);
    }
    Some((env, out))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn mreact_composition_is_associative_and_unital(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let Some((env, rs)) = react_chain(&mut gen, 3) else { return Ok(()) };
        for r in &rs {
            r.validate(&env).unwrap();
        }
        let (r, s, t) = (&rs[0], &rs[1], &rs[2]);
        let left = mreact_compose(&mreact_compose(r, s, &env).unwrap(), t, &env).unwrap();
        let right = mreact_compose(r, &mreact_compose(s, t, &env).unwrap(), &env).unwrap();
        left.validate(&env).unwrap();
        prop_assert_eq!(&left, &right);
        let id = MReactMorphism::identity(&r.source, &env);
        prop_assert_eq!(&mreact_compose(&id, r, &env).unwrap(), r);
        let id = MReactMorphism::identity(r.target(), &env);
        prop_assert_eq!(&mreact_compose(r, &id, &env).unwrap(), r);
    }

    #[test]
    fn inclusion_commutes_with_composition(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let Some((env, rs)) = react_chain(&mut gen, 2) else { return Ok(()) };
        let extra = gen.molecule("z", 3);
        let mut bigger = vec![extra];
        bigger.extend(env.entries.iter().rev().cloned());
        let Ok(big) = Environment::new(bigger) else { return Ok(()) };
        let inc = |x: &MReactMorphism| include_environment(x, &env, &big).unwrap();
        let composed = mreact_compose(&rs[0], &rs[1], &env).unwrap();
        let lhs = inc(&composed);
        let rhs = mreact_compose(&inc(&rs[0]), &inc(&rs[1]), &big).unwrap();
        lhs.validate(&big).unwrap();
        prop_assert_eq!(lhs, rhs);

        let (menv, f) = gen.mmatch(12);
        let Some(g) = gen.mmatch_into(&f.source, &menv) else { return Ok(()) };
        let mut bigger = vec![gen.molecule("z", 3)];
        bigger.extend(menv.entries.iter().cloned());
        let Ok(big) = Environment::new(bigger) else { return Ok(()) };
        let lhs = include_environment(&mmatch_compose(&g, &f, &menv).unwrap(), &menv, &big).unwrap();
        let rhs = mmatch_compose(
            &include_environment(&g, &menv, &big).unwrap(),
            &include_environment(&f, &menv, &big).unwrap(),
            &big,
        )
        .unwrap();
        lhs.validate(&big).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
