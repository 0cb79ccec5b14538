use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use retrograph::disconnect::Rule;
use retrograph::format::{graph_to_json, parse_graph, to_canonical, MorphismDoc, SchemeDoc};
use retrograph::gen::Gen;
use retrograph::graph::Graph;
use retrograph::iso::is_isomorphic;
use retrograph::layers::{Environment, MMatchMorphism};
use retrograph::retro::{ConfigDoc, SearchConfig};
use retrograph::samples;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_retrograph")).args(args).output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn put(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn put_graph(dir: &Path, name: &str, g: &Graph) -> String {
    put(dir, name, &graph_to_json(g)).to_str().unwrap().to_string()
}

#[test]
fn validate_classifies_and_rejects() {
    let d = TempDir::new().unwrap();
    let w = put_graph(d.path(), "w.json", &samples::water());
    let out = run(&["validate", &w]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout).trim(), "molecular-entity");
    let bad = put(
        d.path(),
        "bad.json",
        r#"{"vertices":[{"name":"h","label":"H"},{"name":"o","label":"O"}],"edges":[{"u":"h","v":"o","label":2}]}"#,
    );
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).contains("valence"));
}

#[test]
fn dangling_edge_is_reported() {
    let d = TempDir::new().unwrap();
    let p = put(d.path(), "g.json", r#"{"vertices":[{"name":"h","label":"H"}],"edges":[{"u":"h","v":"x","label":1}]}"#);
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains('x'));
}

#[test]
fn chiral_and_iso_verdicts() {
    let d = TempDir::new().unwrap();
    let (a, b) = samples::butan_2_ol_pair();
    let (a, b) = (put_graph(d.path(), "a.json", &a), put_graph(d.path(), "b.json", &b));
    let out = run(&["chiral", &a, &b]);
    assert_eq!(text(&out.stdout).lines().next(), Some("chiral"));
    let w = put_graph(d.path(), "w.json", &samples::water());
    assert_eq!(text(&run(&["chiral", &a, &w]).stdout).trim(), "not-isomorphic");
    assert_eq!(text(&run(&["iso", &a, &b]).stdout).lines().next(), Some("isomorphic"));
}

#[test]
fn disconnect_prints_the_graph_or_the_failing_index() {
    let d = TempDir::new().unwrap();
    let g = put_graph(d.path(), "g.json", &samples::ethanol());
    let rules = vec![Rule::c("c1", "o", "a", "b")];
    let r = put(d.path(), "r.json", &serde_json::to_string(&rules).unwrap());
    let out = run(&["disconnect", "--graph", &g, "--rules", r.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let s = parse_graph(&out.stdout).unwrap();
    assert_eq!(s.alpha_vertices().len(), 2);
    let twice = vec![rules[0].clone(), rules[0].clone()];
    let r = put(d.path(), "r2.json", &serde_json::to_string(&twice).unwrap());
    let out = run(&["disconnect", "--graph", &g, "--rules", r.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains('1'), "{}", text(&out.stderr));
}

#[test]
fn react_enumerates_and_applies_the_first_matching() {
    let d = TempDir::new().unwrap();
    let s = put(d.path(), "s.json", &to_canonical(&SchemeDoc::from(&samples::substitution_scheme())));
    let water = samples::water()
        .rename(&[("o", "wo"), ("h1", "wh1"), ("h2", "wh2")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
        .unwrap();
    let c = samples::chloroethane().union_disjoint(&water).unwrap();
    let c = put_graph(d.path(), "c.json", &c);
    let out = run(&["react", "--scheme", s.to_str().unwrap(), "--graph", &c]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    assert!(text(&out.stderr).starts_with("matchings: "));
    let p = parse_graph(&out.stdout).unwrap();
    let want = samples::ethanol()
        .union_disjoint(
            &samples::hydrogen_chloride()
                .rename(&[("h", "xh"), ("cl", "xcl")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
                .unwrap(),
        )
        .unwrap();
    assert!(is_isomorphic(&p, &want));
}

#[test]
fn translate_d_then_compose() {
    let d = TempDir::new().unwrap();
    let (env, f) = Gen::new(3).mmatch(10);
    let e = put(d.path(), "env.json", &to_canonical(&retrograph::format::EnvironmentDoc::from(&env)));
    let m = put(d.path(), "m.json", &to_canonical(&MorphismDoc::from(&f)));
    let (e, m) = (e.to_str().unwrap(), m.to_str().unwrap());
    let out = run(&["translate", "--functor", "D", "--input", m, "--env", e]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    assert!(text(&out.stdout).contains("\"disc\""));
    let id = put(d.path(), "id.json", &to_canonical(&MorphismDoc::from(&MMatchMorphism::identity(&f.target, &env))));
    let out = run(&["compose", m, id.to_str().unwrap(), "--env", e]);
    assert_eq!(text(&out.stdout), to_canonical(&MorphismDoc::from(&f)));
    let out = run(&["translate", "--functor", "R", "--input", m, "--env", e]);
    assert_eq!(out.status.code(), Some(1));
}

fn ethanol_config_doc(d: &Path) -> String {
    let cfg = SearchConfig {
        schemes: vec![samples::substitution_scheme()],
        environments: vec![Environment::new(vec![samples::hydrogen_chloride()]).unwrap()],
        ..SearchConfig::default()
    };
    put(d, "cfg.json", &to_canonical(&ConfigDoc::from(&cfg))).to_str().unwrap().to_string()
}

#[test]
fn retro_exit_codes() {
    let d = TempDir::new().unwrap();
    let t = put_graph(d.path(), "t.json", &samples::ethanol());
    let cfg = ethanol_config_doc(d.path());
    let known = d.path().join("known");
    std::fs::create_dir(&known).unwrap();
    put_graph(&known, "a.json", &samples::chloroethane());
    put_graph(&known, "b.json", &samples::water());
    let route = d.path().join("route.json");
    let args = ["retro", "--target", &t, "--config", &cfg, "--out", route.to_str().unwrap()];
    let mut with_known = args.to_vec();
    with_known.extend(["--known", known.to_str().unwrap()]);
    let out = run(&with_known);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&route).unwrap()).unwrap();
    assert_eq!(doc["success"], true);
    assert_eq!(doc["steps"].as_array().unwrap().len(), 1);
    let first = std::fs::read(&route).unwrap();
    run(&with_known);
    assert_eq!(std::fs::read(&route).unwrap(), first);

    let mut shallow = args.to_vec();
    shallow.extend(["--max-depth", "0"]);
    assert_eq!(run(&shallow).status.code(), Some(2));

    let bad = put(d.path(), "bad.json", r#"{"schemes": [], "depth": 1}"#);
    let out = run(&["retro", "--target", &t, "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let empty = put(d.path(), "empty.json", "{}");
    assert_eq!(run(&["retro", "--target", &t, "--config", empty.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn seeded_samples_repeat() {
    let a = run(&["--seed", "9", "sample"]);
    assert_eq!(a.stdout, run(&["--seed", "9", "sample"]).stdout);
    assert!(parse_graph(&a.stdout).unwrap().is_molecular());
}

#[test]
fn usage_errors_have_their_own_status() {
    assert_eq!(run(&["retro"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
