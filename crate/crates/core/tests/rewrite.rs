use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::IteratorRandom;
use retrograph::gen::Gen;
use retrograph::graph::{EdgeLabel, Graph, Name, NameGen, VertexLabel, VertexMap};
use retrograph::rewrite::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 96, ..ProptestConfig::default() }
}

fn covalent_neighbours(g: &Graph, v: &str) -> BTreeSet<Name> {
    g.neighbours(v).filter(|(_, l)| l.cov() != 0).map(|(u, _)| u.clone()).collect()
}

/// A scheme left side with every matching of it into a random graph.
fn matchings(seed: u64) -> Option<(Graph, Graph, Vec<VertexMap>)> {
    let mut gen = Gen::new(seed);
    let c = gen.molecular_graph(12);
    let d = gen.scheme_instance(&c, 3)?;
    let all = enumerate_matchings(&d.scheme.left, &c, 64);
    Some((d.scheme.left, c, all))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn matchings_keep_covalent_neighbourhoods(seed in any::<u64>()) {
        let Some((a, c, ms)) = matchings(seed) else { return Ok(()) };
        prop_assert!(!ms.is_empty());
        for m in &ms {
            for v in a.chem_vertices() {
                let image: BTreeSet<Name> = covalent_neighbours(&a, &v).iter().map(|u| m[u].clone()).collect();
                prop_assert_eq!(image, covalent_neighbours(&c, &m[&v]));
            }
            let chem_image: BTreeSet<Name> = a.chem_vertices().iter().map(|v| m[v].clone()).collect();
            // A `+` brings its atom; an atom brings its charges.
            for u in &chem_image {
                let lu = c.label(u).unwrap();
                for (v, l) in c.neighbours(u) {
                    let pulled = lu == VertexLabel::Plus || c.label(v).unwrap().is_charge();
                    prop_assert!(l != EdgeLabel::Cov(1) || !pulled || chem_image.contains(v), "{} -> {} left out", u, v);
                }
            }
        }
    }

    #[test]
    fn matchings_compose(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let c = gen.molecular_graph(12);
        let Some(d) = gen.scheme_instance(&c, 3) else { return Ok(()) };
        let a = &d.scheme.left;
        let atoms = a.atom_vertices();
        let pick: BTreeSet<Name> = atoms.iter().cloned().choose_multiple(&mut gen.rng, 1).into_iter().collect();
        let u = smallest_chemical_subgraph(a, &pick);
        let (inner, boundary) = alpha_closure(a, &u, &mut NameGen::new("#q"), &[a]);
        let mut m2: VertexMap = u.iter().map(|v| (v.clone(), v.clone())).collect();
        for (outside, alphas) in boundary {
            m2.extend(alphas.into_iter().map(|x| (x, outside.clone())));
        }
        prop_assert!(is_matching(&m2, &inner, a).is_ok());
        let m1: VertexMap = a.names().map(|v| (v.clone(), d.matching[v].clone())).collect();
        prop_assert_eq!(is_matching(&compose_maps(&m2, &m1), &inner, &c), Ok(()));
    }

    #[test]
    fn reactions_conserve_atoms_and_charge(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let c = gen.molecular_graph(14);
        let Some(d) = gen.scheme_instance(&c, 3) else { return Ok(()) };
        let atoms = |x: &Graph| {
            let mut m = x.label_multiset();
            m.retain(|l, _| l.is_atom());
            m
        };
        prop_assert_eq!(atoms(&d.e), atoms(&c));
        prop_assert_eq!(d.e.net_charge(), c.net_charge());
        prop_assert!(!d.e.has_alpha());
        prop_assert!(d.e.is_molecular());
    }

    #[test]
    fn tuples_survive_the_round_trip(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let c = gen.molecular_graph(14);
        let Some(t) = gen.reaction(&c, 3) else { return Ok(()) };
        t.validate().unwrap();
        prop_assert_eq!(reaction_from_dpo(&reaction_to_dpo(&t).unwrap()), t);
    }

    #[test]
    fn reaction_composition_is_associative(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let c = gen.molecular_graph(12);
        let Some(r) = gen.reaction(&c, 3) else { return Ok(()) };
        let Some(s) = gen.reaction(&r.target, 3) else { return Ok(()) };
        let Some(t) = gen.reaction(&s.target, 3) else { return Ok(()) };
        let left = compose_reactions(&compose_reactions(&r, &s).unwrap(), &t).unwrap();
        let right = compose_reactions(&r, &compose_reactions(&s, &t).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&compose_reactions(&Reaction::identity(&r.source), &r).unwrap(), &r);
        prop_assert_eq!(&compose_reactions(&r, &Reaction::identity(&r.target)).unwrap(), &r);
    }
}
