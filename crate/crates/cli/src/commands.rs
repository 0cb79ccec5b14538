use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use retrograph::disconnect::{apply_sequence, Rule};
use retrograph::format::{graph_to_json, render_graph, to_canonical, Morphism, MorphismDoc, ReactionDoc, SchemeDoc};
use retrograph::gen::Gen;
use retrograph::graph::{classify, validate_chemical, Classification, Name, VertexMap};
use retrograph::iso::find_isomorphism;
use retrograph::layers::{functor_d, functor_r, mdisc_compose, mmatch_compose, mreact_compose};
use retrograph::orientation::{are_chiral, Chirality};
use retrograph::rewrite::{dpo_apply, enumerate_matchings, reaction_from_dpo};

use crate::args::Functor;
use crate::io::{read, read_env, read_graph};

/// Matchings enumerated when no bound is given.
const DEFAULT_MATCH_LIMIT: usize = 10_000;

fn print_map(map: &VertexMap) {
    for (k, v) in map {
        println!("{k} -> {v}");
    }
}

pub fn validate(path: &Path) -> Result<i32> {
    let g = read_graph(path)?;
    let violations = validate_chemical(&g);
    if !violations.is_empty() {
        for v in &violations {
            println!("{v}");
        }
        return Ok(1);
    }
    let class = match classify(&g) {
        Classification::Synthon => "synthon",
        Classification::MolecularEntity => "molecular-entity",
        Classification::MolecularGraph => "molecular-graph",
        Classification::General => "chemical-graph",
    };
    println!("{class}");
    Ok(0)
}

pub fn iso(left: &Path, right: &Path) -> Result<i32> {
    match find_isomorphism(&read_graph(left)?, &read_graph(right)?) {
        Some(f) => {
            println!("isomorphic");
            print_map(&f);
        }
        None => println!("not-isomorphic"),
    }
    Ok(0)
}

pub fn chiral(left: &Path, right: &Path) -> Result<i32> {
    match are_chiral(&read_graph(left)?, &read_graph(right)?) {
        Chirality::Chiral { witness } => {
            println!("chiral");
            print_map(&witness);
        }
        Chirality::Achiral { witness } => {
            println!("achiral");
            print_map(&witness);
        }
        Chirality::NotIsomorphic => println!("not-isomorphic"),
    }
    Ok(0)
}

pub fn disconnect(graph: &Path, rules: &Path, render: bool) -> Result<i32> {
    let g = read_graph(graph)?;
    let rules: Vec<Rule> = read(rules)?;
    match apply_sequence(&rules, &g) {
        Ok(out) if render => print!("{}", render_graph(&out)),
        Ok(out) => print!("{}", graph_to_json(&out)),
        Err(e) => {
            eprintln!("{e}");
            return Ok(1);
        }
    }
    Ok(0)
}

pub fn matchings(pattern: &Path, graph: &Path, limit: Option<usize>) -> Result<i32> {
    let found = enumerate_matchings(&read_graph(pattern)?, &read_graph(graph)?, limit.unwrap_or(DEFAULT_MATCH_LIMIT));
    let lists: Vec<Vec<(Name, Name)>> = found.iter().map(|m| m.clone().into_iter().collect()).collect();
    print!("{}", to_canonical(&serde_json::json!({ "count": lists.len(), "matchings": lists })));
    Ok(0)
}

pub fn react(scheme: &Path, graph: &Path, matching: Option<&Path>, tuple: bool, limit: Option<usize>) -> Result<i32> {
    let s = read::<SchemeDoc>(scheme)?.to_scheme()?;
    let c = read_graph(graph)?;
    let m: VertexMap = match matching {
        Some(p) => read::<Vec<(Name, Name)>>(p)?.into_iter().collect(),
        None => {
            let all = enumerate_matchings(&s.left, &c, limit.unwrap_or(DEFAULT_MATCH_LIMIT));
            eprintln!("matchings: {}", all.len());
            all.into_iter().next().ok_or_else(|| anyhow!("the scheme does not match the graph"))?
        }
    };
    let dpo = dpo_apply(&s, &m, &c)?;
    if tuple {
        print!("{}", to_canonical(&ReactionDoc::from(&reaction_from_dpo(&dpo))));
    } else {
        print!("{}", graph_to_json(&dpo.e));
    }
    Ok(0)
}

fn read_morphism(path: &Path) -> Result<Morphism> {
    read::<MorphismDoc>(path)?.to_morphism().with_context(|| format!("in {}", path.display()))
}

pub fn compose(first: &Path, second: &Path, env: Option<&Path>) -> Result<i32> {
    let env = read_env(env)?;
    let out = match (read_morphism(first)?, read_morphism(second)?) {
        (Morphism::Match(f), Morphism::Match(g)) => Morphism::Match(mmatch_compose(&f, &g, &env)?),
        (Morphism::Disc(d), Morphism::Disc(e)) => Morphism::Disc(mdisc_compose(&d, &e, &env)?),
        (Morphism::React(r), Morphism::React(s)) => Morphism::React(mreact_compose(&r, &s, &env)?),
        _ => bail!("the two morphisms are of different kinds"),
    };
    print!("{}", to_canonical(&MorphismDoc::from(&out)));
    Ok(0)
}

pub fn translate(functor: Functor, input: &Path, env: Option<&Path>) -> Result<i32> {
    let env = read_env(env)?;
    let out = match (functor, read_morphism(input)?) {
        (Functor::D, Morphism::Match(f)) => {
            f.validate(&env)?;
            Morphism::Disc(functor_d(&f, &env)?)
        }
        (Functor::R, Morphism::Disc(d)) => Morphism::React(functor_r(&d, &env)?),
        (Functor::D, _) => bail!("D takes a matching morphism"),
        (Functor::R, _) => bail!("R takes a disconnection morphism"),
    };
    print!("{}", to_canonical(&MorphismDoc::from(&out)));
    Ok(0)
}

pub fn sample(seed: u64, max_vertices: usize) -> Result<i32> {
    print!("{}", graph_to_json(&Gen::new(seed).molecular_graph(max_vertices)));
    Ok(0)
}
