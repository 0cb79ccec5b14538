use std::collections::BTreeSet;

use super::{add_counts, check_no_assembled_names, shift_copies, EnvInclusion, Environment, OverEnvironment};
use crate::error::{Error, Result};
use crate::graph::{Graph, Name, VertexMap};
use crate::rewrite::{compose_maps, is_matching};

/// `(m, b): A → B`: a matching together with a labelled injection of
/// environment copies covering the rest of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MMatchMorphism {
    pub source: Graph,
    pub target: Graph,
    pub matching: VertexMap,
    pub counts: Vec<usize>,
    /// Assembled copy vertex → vertex of `target`.
    pub injection: VertexMap,
}

impl MMatchMorphism {
    pub fn identity(a: &Graph, env: &Environment) -> MMatchMorphism {
        MMatchMorphism {
            source: a.clone(),
            target: a.clone(),
            matching: a.names().map(|v| (v.clone(), v.clone())).collect(),
            counts: vec![0; env.len()],
            injection: VertexMap::new(),
        }
    }

    pub fn validate(&self, env: &Environment) -> Result<()> {
        let bad = |m: String| Err(Error::InvariantViolation(m));
        check_no_assembled_names(&self.source, "source")?;
        if let Err(why) = is_matching(&self.matching, &self.source, &self.target) {
            return Err(Error::NotAMatching(why));
        }
        let (copies, _) = env.assemble(&self.counts)?;
        let keys: BTreeSet<&Name> = self.injection.keys().collect();
        if keys != copies.names().collect() {
            return bad("injection is not defined on exactly the environment copies".into());
        }
        let im_b: BTreeSet<&Name> = self.injection.values().collect();
        if im_b.len() != self.injection.len() {
            return bad("injection is not injective".into());
        }
        for (x, y) in &self.injection {
            if copies.label(x) != self.target.label(y) {
                return bad(format!("injection sends {x} to {y} with a different label"));
            }
        }
        let im_m: BTreeSet<&Name> = self.matching.values().collect();
        if let Some(v) = self.target.names().find(|v| !im_m.contains(v) && !im_b.contains(v)) {
            return bad(format!("{v} is covered by neither the matching nor the environment"));
        }
        let overlap: BTreeSet<&Name> = im_m.intersection(&im_b).copied().collect();
        let expected: BTreeSet<&Name> = self
            .source
            .alpha_vertices()
            .iter()
            .map(|a| &self.matching[a])
            .filter(|v| self.target.label(v).is_some_and(|l| !l.is_alpha()))
            .collect();
        if overlap != expected {
            return bad("matching and environment overlap outside the α-images".into());
        }
        Ok(())
    }
}

/// `(nm, nb + c)`.
pub fn mmatch_compose(f: &MMatchMorphism, g: &MMatchMorphism, env: &Environment) -> Result<MMatchMorphism> {
    if f.target != g.source {
        return Err(Error::BoundaryMismatch("target of the first morphism is not the source of the second".into()));
    }
    let matching = compose_maps(&f.matching, &g.matching);
    let mut injection = compose_maps(&f.injection, &g.matching);
    let shift = shift_copies(env, &g.counts, &f.counts);
    for (x, y) in &g.injection {
        injection.insert(shift[x].clone(), y.clone());
    }
    let out = MMatchMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        matching,
        counts: add_counts(&f.counts, &g.counts),
        injection,
    };
    out.validate(env).map_err(|e| Error::InvariantViolation(e.to_string()))?;
    Ok(out)
}

impl OverEnvironment for MMatchMorphism {
    fn include(&self, inc: &EnvInclusion) -> Result<Self> {
        Ok(MMatchMorphism {
            counts: inc.counts(&self.counts),
            injection: self.injection.iter().map(|(k, v)| (inc.name(k), v.clone())).collect(),
            ..self.clone()
        })
    }
}
