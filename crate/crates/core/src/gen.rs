//! Seeded random generators for graphs, rule walks, scheme instances and
//! reactions. Used by property tests, the acceptance suite and the CLI.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disconnect::{apply, instances, Rule, RuleKind};
use crate::element::{Element, ValenceTable};
use crate::graph::{assembled_name, validate_chemical, EdgeLabel, Graph, Name, NameGen, VertexLabel, VertexMap};
use crate::iso::find_isomorphism;
use crate::layers::{Environment, MMatchMorphism, MReactMorphism};
use crate::rewrite::{alpha_closure, dpo_apply, reaction_from_dpo, smallest_chemical_subgraph, Dpo, Reaction, ReactionScheme};

const HEAVY: &[&str] = &["C", "C", "C", "N", "O", "O", "Cl", "F"];
const METALS: &[&str] = &["Li", "Na", "K"];
const HALIDES: &[&str] = &["F", "Cl", "Br", "I"];
const ALL_KINDS: [RuleKind; 6] = [RuleKind::E, RuleKind::I, RuleKind::C, RuleKind::Ebar, RuleKind::Ibar, RuleKind::Cbar];

fn atom(symbol: &str) -> VertexLabel {
    VertexLabel::Atom(Element::from_symbol(symbol).expect("known symbol"))
}

fn free_valence(g: &Graph, v: &str) -> u32 {
    let l = g.label(v).unwrap();
    l.valence(ValenceTable::global()).saturating_sub(g.cov_degree(v))
}

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A connected, hydrogen-filled molecule with `heavy` non-hydrogen atoms
    /// at most. Vertices are named `{prefix}{i}` and `{prefix}h{k}`.
    pub fn molecule(&mut self, prefix: &str, heavy: usize) -> Graph {
        let mut g = Graph::new();
        let mut atoms: Vec<Name> = Vec::new();
        for i in 0..heavy.max(1) {
            let name = format!("{prefix}{i}");
            let symbol = if i == 0 { "C" } else { *HEAVY.choose(&mut self.rng).unwrap() };
            let open: Vec<&Name> = atoms.iter().filter(|v| free_valence(&g, v) > 0).collect();
            if i > 0 && open.is_empty() {
                break;
            }
            let parent = open.choose(&mut self.rng).map(|v| (*v).clone());
            g.add_vertex(name.clone(), atom(symbol)).unwrap();
            if let Some(p) = parent {
                g.set_edge(&p, &name, EdgeLabel::Cov(1)).unwrap();
            }
            atoms.push(name);
        }
        // Extra bond units: raise an existing bond or close a ring.
        for _ in 0..self.rng.gen_range(0..=atoms.len() / 2) {
            let u = atoms.choose(&mut self.rng).unwrap().clone();
            let v = atoms.choose(&mut self.rng).unwrap().clone();
            if u == v || free_valence(&g, &u) == 0 || free_valence(&g, &v) == 0 {
                continue;
            }
            let order = g.edge(&u, &v).cov();
            if order < 3 {
                g.set_edge(&u, &v, EdgeLabel::Cov(order as u8 + 1)).unwrap();
            }
        }
        let mut k = 0;
        for a in &atoms {
            for _ in 0..free_valence(&g, a) {
                let h = format!("{prefix}h{k}");
                k += 1;
                g.add_vertex(h.clone(), atom("H")).unwrap();
                g.set_edge(a, &h, EdgeLabel::Cov(1)).unwrap();
            }
        }
        g
    }

    /// `M–(+)~(−)–X` for a random alkali metal and halide.
    pub fn salt(&mut self, prefix: &str) -> Graph {
        let m = *METALS.choose(&mut self.rng).unwrap();
        let x = *HALIDES.choose(&mut self.rng).unwrap();
        let n = |s: &str| format!("{prefix}{s}");
        let mut g = Graph::new();
        g.add_vertex(n("m"), atom(m)).unwrap();
        g.add_vertex(n("p"), VertexLabel::Plus).unwrap();
        g.add_vertex(n("q"), VertexLabel::Minus).unwrap();
        g.add_vertex(n("x"), atom(x)).unwrap();
        g.set_edge(&n("m"), &n("p"), EdgeLabel::Cov(1)).unwrap();
        g.set_edge(&n("q"), &n("x"), EdgeLabel::Cov(1)).unwrap();
        g.set_edge(&n("p"), &n("q"), EdgeLabel::Ionic).unwrap();
        g
    }

    /// A molecular graph of at most `max_vertices` vertices built from random
    /// molecules and, occasionally, a salt. Never empty.
    pub fn molecular_graph(&mut self, max_vertices: usize) -> Graph {
        let mut g = Graph::new();
        let mut i = 0;
        loop {
            let part = if self.rng.gen_bool(0.2) {
                self.salt(&format!("s{i}"))
            } else {
                let heavy = self.rng.gen_range(1..=4);
                self.molecule(&format!("m{i}a"), heavy)
            };
            i += 1;
            if !g.is_empty() && g.len() + part.len() > max_vertices {
                return g;
            }
            g = g.union_disjoint(&part).expect("prefixes are distinct");
            if g.len() >= max_vertices || self.rng.gen_bool(0.4) {
                return g;
            }
        }
    }

    /// A random applicable rule of the given kinds, with fresh names drawn
    /// from `names`.
    pub fn applicable_rule(&mut self, g: &Graph, kinds: &[RuleKind], names: &mut NameGen) -> Option<Rule> {
        instances(g, kinds, names).choose(&mut self.rng).cloned()
    }

    /// Walk of up to `steps` random applicable rules of any kind. Returns the
    /// rules and the graph reached.
    pub fn rule_walk(&mut self, g: &Graph, steps: usize) -> (Vec<Rule>, Graph) {
        let mut names = NameGen::new("#w");
        let mut cur = g.without_orientation();
        let mut rules = Vec::new();
        for _ in 0..steps {
            let Some(r) = self.applicable_rule(&cur, &ALL_KINDS, &mut names) else { break };
            cur = apply(&r, &cur).expect("instances are applicable");
            rules.push(r);
        }
        (rules, cur)
    }

    /// A rule sequence between molecular graphs: `breaks` random forward
    /// rules, then random reconnection until no α-vertex is left.
    pub fn molecular_sequence(&mut self, g: &Graph, breaks: usize) -> (Vec<Rule>, Graph) {
        let mut names = NameGen::new("#s");
        let forward = [RuleKind::E, RuleKind::I, RuleKind::C];
        let backward = [RuleKind::Ebar, RuleKind::Ibar, RuleKind::Cbar];
        let mut cur = g.without_orientation();
        let mut rules = Vec::new();
        for _ in 0..breaks {
            let Some(r) = self.applicable_rule(&cur, &forward, &mut names) else { break };
            cur = apply(&r, &cur).unwrap();
            rules.push(r);
        }
        let broken = rules.clone();
        for _ in 0..8 * (breaks + 1) {
            if !cur.has_alpha() {
                return (rules, cur);
            }
            let kinds: &[RuleKind] = if self.rng.gen_bool(0.7) { &[RuleKind::Cbar] } else { &backward };
            if let Some(r) = self.applicable_rule(&cur, kinds, &mut names) {
                cur = apply(&r, &cur).unwrap();
                rules.push(r);
            }
        }
        // Stuck: undo the breaks exactly.
        let mut rules = broken.clone();
        let mut cur = apply_all(&broken, g);
        for r in broken.iter().rev() {
            let inv = r.inverse();
            cur = apply(&inv, &cur).expect("inverse of an applied rule applies");
            rules.push(inv);
        }
        (rules, cur)
    }

    /// A random scheme applied along a matching into `c`. The scheme's left
    /// side is the α-closure of a random chemical subgraph of `c`; its right
    /// side rewires that closure by valence-preserving swaps.
    pub fn scheme_instance(&mut self, c: &Graph, max_seed: usize) -> Option<Dpo> {
        let names: Vec<Name> = c.chem_vertices().into_iter().filter(|v| c.label(v).unwrap().is_atom()).collect();
        if names.is_empty() {
            return None;
        }
        for _ in 0..32 {
            let k = self.rng.gen_range(1..=max_seed.min(names.len()));
            let seed: BTreeSet<Name> = names.choose_multiple(&mut self.rng, k).cloned().collect();
            let u = smallest_chemical_subgraph(c, &seed);
            let mut gen = NameGen::new("#x");
            let (a, boundary) = alpha_closure(c, &u, &mut gen, &[c]);
            let Some(b) = self.rewire(&a) else { continue };
            let mut matching: VertexMap = u.iter().map(|v| (v.clone(), v.clone())).collect();
            for (outside, alphas) in &boundary {
                for x in alphas {
                    matching.insert(x.clone(), outside.clone());
                }
            }
            let (b, bijection) = self.rename_right(&a, b);
            let Ok(s) = ReactionScheme::new(a, b, bijection) else { continue };
            if let Ok(d) = dpo_apply(&s, &matching, c) {
                return Some(d);
            }
        }
        None
    }

    pub fn reaction(&mut self, c: &Graph, max_seed: usize) -> Option<Reaction> {
        self.scheme_instance(c, max_seed).map(|d| reaction_from_dpo(&d))
    }

    /// An environment drawn from the components of `g` plus a small random
    /// molecule, without isomorphic repeats.
    pub fn environment_for(&mut self, g: &Graph) -> Environment {
        let mut entries: Vec<Graph> = Vec::new();
        let mut candidates: Vec<Graph> = g.components().iter().map(|c| g.induced(c).without_orientation()).collect();
        candidates.shuffle(&mut self.rng);
        candidates.truncate(self.rng.gen_range(0..=2));
        let heavy = self.rng.gen_range(1..=2);
        candidates.push(self.molecule("env", heavy));
        for c in candidates {
            if entries.iter().all(|e| find_isomorphism(e, &c).is_none()) {
                entries.push(c);
            }
        }
        Environment::new(entries).expect("entries are molecular and distinct")
    }

    /// A random M-Match morphism into `e`: environment copies are placed by
    /// a random labelled injection (or, at random, onto an isomorphic
    /// component), and the source is the α-closure of what they leave.
    pub fn mmatch_into(&mut self, e: &Graph, env: &Environment) -> Option<MMatchMorphism> {
        let mut used: BTreeSet<Name> = BTreeSet::new();
        let mut counts = vec![0; env.len()];
        let mut injection = VertexMap::new();
        for (i, m) in env.entries.iter().enumerate() {
            for _ in 0..self.rng.gen_range(0..=2) {
                let k = counts[i];
                let placed = if self.rng.gen_bool(0.5) { self.place_on_component(m, e, &used) } else { None };
                let placed = placed.or_else(|| self.place_by_label(m, e, &used));
                let Some(f) = placed else { continue };
                for (v, w) in f {
                    used.insert(w.clone());
                    injection.insert(assembled_name(i, k, &v), w);
                }
                counts[i] += 1;
            }
        }
        let u: BTreeSet<Name> = e.names().filter(|v| !used.contains(*v)).cloned().collect();
        let mut names = NameGen::new("#a");
        let (source, boundary) = alpha_closure(e, &u, &mut names, &[e]);
        let mut matching: VertexMap = u.iter().map(|v| (v.clone(), v.clone())).collect();
        for (outside, alphas) in boundary {
            matching.extend(alphas.into_iter().map(|a| (a, outside.clone())));
        }
        let f = MMatchMorphism { source, target: e.clone(), matching, counts, injection };
        f.validate(env).is_ok().then_some(f)
    }

    fn place_on_component(&mut self, m: &Graph, e: &Graph, used: &BTreeSet<Name>) -> Option<VertexMap> {
        let mut comps = e.components();
        comps.shuffle(&mut self.rng);
        comps.into_iter().filter(|c| c.iter().all(|v| !used.contains(v))).find_map(|c| find_isomorphism(m, &e.induced(&c)))
    }

    fn place_by_label(&mut self, m: &Graph, e: &Graph, used: &BTreeSet<Name>) -> Option<VertexMap> {
        let mut taken = used.clone();
        let mut out = VertexMap::new();
        for (v, l) in m.vertices() {
            let free: Vec<&Name> = e.vertices().filter(|(w, lw)| *lw == l && !taken.contains(*w)).map(|(w, _)| w).collect();
            let w = (*free.choose(&mut self.rng)?).clone();
            taken.insert(w.clone());
            out.insert(v.clone(), w);
        }
        Some(out)
    }

    /// A random target, environment and M-Match morphism into the target.
    pub fn mmatch(&mut self, max_vertices: usize) -> (Environment, MMatchMorphism) {
        loop {
            let e = self.molecular_graph(max_vertices);
            let env = self.environment_for(&e);
            if let Some(f) = self.mmatch_into(&e, &env) {
                return (env, f);
            }
        }
    }

    /// A random reaction from `a` plus a few environment copies. `a` must
    /// not use assembled names.
    pub fn mreact_on(&mut self, a: &Graph, env: &Environment) -> Option<MReactMorphism> {
        let counts: Vec<usize> = (0..env.len()).map(|_| self.rng.gen_range(0..=1)).collect();
        let (copies, _) = env.assemble(&counts).ok()?;
        let start = a.union_disjoint(&copies).ok()?;
        let reaction = if self.rng.gen_bool(0.1) { Some(Reaction::identity(&start)) } else { self.reaction(&start, 3) }?;
        Some(MReactMorphism { source: a.clone(), counts, reaction })
    }

    /// Random double-edge swaps on the covalent edges of `a` that keep every
    /// vertex's bond sum.
    fn rewire(&mut self, a: &Graph) -> Option<Graph> {
        let mut b = a.without_orientation();
        let swaps = self.rng.gen_range(0..=3);
        for _ in 0..swaps {
            let edges: Vec<(Name, Name)> = b.edges().filter(|(_, _, l)| l.cov() > 0).map(|(x, y, _)| (x.clone(), y.clone())).collect();
            if edges.len() < 2 {
                break;
            }
            let (mut x1, mut y1) = edges.choose(&mut self.rng).unwrap().clone();
            let (x2, y2) = edges.choose(&mut self.rng).unwrap().clone();
            if self.rng.gen_bool(0.5) {
                std::mem::swap(&mut x1, &mut y1);
            }
            if x1 == y2 || x2 == y1 || (x1 == x2 && y1 == y2) || (x1 == y2 && y1 == x2) {
                continue;
            }
            let mut trial = b.clone();
            let step = |g: &mut Graph, u: &str, v: &str, delta: i32| -> bool {
                let order = g.edge(u, v).cov() as i32 + delta;
                if !(0..=3).contains(&order) {
                    return false;
                }
                g.set_edge(u, v, EdgeLabel::Cov(order as u8)).is_ok()
            };
            let ok = step(&mut trial, &x1, &y1, -1)
                && step(&mut trial, &x2, &y2, -1)
                && step(&mut trial, &x1, &y2, 1)
                && step(&mut trial, &x2, &y1, 1);
            if ok && validate_chemical(&trial).is_empty() {
                b = trial;
            }
        }
        validate_chemical(&b).is_empty().then_some(b)
    }

    /// Renames charges of `b` to `q{i}` and, at random, its neutral vertices
    /// to `r{i}`. Returns the renamed graph and the bijection from `a`.
    fn rename_right(&mut self, a: &Graph, b: Graph) -> (Graph, VertexMap) {
        let rename_neutral = self.rng.gen_bool(0.5);
        let mut map = VertexMap::new();
        for (i, q) in b.charged_vertices().into_iter().enumerate() {
            map.insert(q, format!("q{i}"));
        }
        let mut bijection = VertexMap::new();
        for (i, v) in a.neutral_vertices().into_iter().enumerate() {
            let target = if rename_neutral { format!("r{i}") } else { v.clone() };
            if rename_neutral {
                map.insert(v.clone(), target.clone());
            }
            bijection.insert(v, target);
        }
        // Charged names must not collide with kept neutral names.
        if !rename_neutral {
            for t in map.values_mut() {
                while a.contains(t) {
                    t.insert(0, '_');
                }
            }
        }
        (b.rename(&map).expect("renaming is injective"), bijection)
    }
}

fn apply_all(rules: &[Rule], g: &Graph) -> Graph {
    let mut cur = g.without_orientation();
    for r in rules {
        cur = apply(r, &cur).unwrap();
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn molecules_are_molecular_and_connected() {
        let mut gen = Gen::new(7);
        for _ in 0..50 {
            let g = gen.molecule("a", 5);
            assert!(g.is_molecular(), "{:?}", validate_chemical(&g));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn molecular_graphs_respect_bound() {
        let mut gen = Gen::new(3);
        for _ in 0..50 {
            let g = gen.molecular_graph(20);
            assert!(g.is_molecular());
            assert!(!g.is_empty());
        }
    }

    #[test]
    fn same_seed_same_output() {
        let (mut a, mut b) = (Gen::new(11), Gen::new(11));
        assert_eq!(a.molecular_graph(25), b.molecular_graph(25));
    }

    #[test]
    fn sequences_end_molecular() {
        let mut gen = Gen::new(5);
        for _ in 0..30 {
            let g = gen.molecular_graph(15);
            let (rules, end) = gen.molecular_sequence(&g, 3);
            assert!(end.is_molecular());
            assert_eq!(apply_all(&rules, &g), end);
        }
    }

    #[test]
    fn scheme_instances_validate() {
        let mut gen = Gen::new(9);
        let mut found = 0;
        for _ in 0..30 {
            let c = gen.molecular_graph(15);
            if let Some(r) = gen.reaction(&c, 2) {
                r.validate().unwrap();
                found += 1;
            }
        }
        assert!(found > 20);
    }

    #[test]
    fn mmatch_morphisms_validate() {
        let mut gen = Gen::new(13);
        for _ in 0..30 {
            let (env, f) = gen.mmatch(14);
            f.validate(&env).unwrap();
        }
    }
}
