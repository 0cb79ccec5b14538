use super::{add_counts, check_no_assembled_names, shift_copies, EnvInclusion, Environment, OverEnvironment};
use crate::disconnect::{apply_sequence, Rule};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use crate::iso::is_isomorphic;

/// A rule sequence from `source` plus `counts` environment copies. The
/// counts are totals over the whole sequence: every copy is present from
/// the start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MDiscMorphism {
    pub source: Graph,
    pub target: Graph,
    pub counts: Vec<usize>,
    pub rules: Vec<Rule>,
}

impl MDiscMorphism {
    pub fn identity(a: &Graph, env: &Environment) -> MDiscMorphism {
        MDiscMorphism { source: a.clone(), target: a.clone(), counts: vec![0; env.len()], rules: Vec::new() }
    }

    /// `source + n₁M₁ + ⋯ + n_kM_k`, the graph the rules act on.
    pub fn start(&self, env: &Environment) -> Result<Graph> {
        check_no_assembled_names(&self.source, "source")?;
        let (copies, _) = env.assemble(&self.counts)?;
        self.source.without_orientation().union_disjoint(&copies)
    }

    /// The graph reached by the rules, under its actual names.
    pub fn end(&self, env: &Environment) -> Result<Graph> {
        apply_sequence(&self.rules, &self.start(env)?)
    }

    pub fn validate(&self, env: &Environment) -> Result<()> {
        let end = self.end(env)?;
        if !is_isomorphic(&end, &self.target) {
            return Err(Error::InvariantViolation("the rules do not end at the target".into()));
        }
        Ok(())
    }
}

fn rename_rule(r: &Rule, map: &VertexMap) -> Rule {
    let f = |v: &String| map.get(v).cloned().unwrap_or_else(|| v.clone());
    Rule { kind: r.kind, u: f(&r.u), v: f(&r.v), a: r.a.as_ref().map(f), b: r.b.as_ref().map(f) }
}

/// `d ; e`. The end graph of `d` must equal the source of `e` under the same
/// names; copies used by `e` are renumbered after those of `d`.
pub fn mdisc_compose(d: &MDiscMorphism, e: &MDiscMorphism, env: &Environment) -> Result<MDiscMorphism> {
    if d.end(env)? != e.source.without_orientation() {
        return Err(Error::BoundaryMismatch("end of the first sequence is not the source of the second".into()));
    }
    let shift = shift_copies(env, &e.counts, &d.counts);
    let mut rules = d.rules.clone();
    rules.extend(e.rules.iter().map(|r| rename_rule(r, &shift)));
    let out = MDiscMorphism { source: d.source.clone(), target: e.target.clone(), counts: add_counts(&d.counts, &e.counts), rules };
    out.validate(env).map_err(|err| Error::BoundaryMismatch(err.to_string()))?;
    Ok(out)
}

impl OverEnvironment for MDiscMorphism {
    fn include(&self, inc: &EnvInclusion) -> Result<Self> {
        let names: VertexMap = self
            .rules
            .iter()
            .flat_map(|r| [Some(&r.u), Some(&r.v), r.a.as_ref(), r.b.as_ref()])
            .flatten()
            .map(|v| (v.clone(), inc.name(v)))
            .collect();
        Ok(MDiscMorphism {
            counts: inc.counts(&self.counts),
            rules: self.rules.iter().map(|r| rename_rule(r, &names)).collect(),
            ..self.clone()
        })
    }
}
