use std::collections::BTreeSet;

use super::{add_counts, check_no_assembled_names, parse_assembled, shift_copies, EnvInclusion, Environment, OverEnvironment};
use crate::error::{Error, Result};
use crate::graph::{Graph, Name, NameGen, VertexMap};
use crate::iso::find_isomorphism;
use crate::rewrite::{compose_reactions, Reaction};

/// A reaction `n₁M₁ + ⋯ + n_kM_k + A → B`. The reaction's source is exactly
/// `source` together with the assembled copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MReactMorphism {
    pub source: Graph,
    pub counts: Vec<usize>,
    pub reaction: Reaction,
}

impl MReactMorphism {
    pub fn identity(a: &Graph, env: &Environment) -> MReactMorphism {
        MReactMorphism { source: a.clone(), counts: vec![0; env.len()], reaction: Reaction::identity(a) }
    }

    pub fn target(&self) -> &Graph {
        &self.reaction.target
    }

    pub fn validate(&self, env: &Environment) -> Result<()> {
        check_no_assembled_names(&self.source, "source")?;
        let (copies, _) = env.assemble(&self.counts)?;
        if self.source.union_disjoint(&copies)? != self.reaction.source {
            return Err(Error::InvalidReaction("reaction source is not the source plus its environment copies".into()));
        }
        self.reaction.validate()
    }
}

/// Renames the source side of a reaction.
fn rename_source(r: &Reaction, map: &VertexMap) -> Result<Reaction> {
    let f = |v: &Name| map.get(v).cloned().unwrap_or_else(|| v.clone());
    Ok(Reaction {
        source: r.source.rename(map)?,
        u_source: r.u_source.iter().map(f).collect(),
        bijection: r.bijection.iter().map(|(k, v)| (f(k), v.clone())).collect(),
        context: r.context.iter().map(|(k, v)| (f(k), v.clone())).collect(),
        ..r.clone()
    })
}

/// `g` with every assembled name replaced by a fresh `#r{n}` name, so that
/// it can serve as the source of a further morphism.
pub fn rebase(g: &Graph) -> (Graph, VertexMap) {
    let mut names = NameGen::new("#r");
    let map: VertexMap = g.names().filter(|v| parse_assembled(v).is_some()).map(|v| (v.clone(), names.fresh(&[g]))).collect();
    (g.rename(&map).expect("fresh names"), map)
}

/// `s ∘ (r + id)`. The source of `s` need only be isomorphic to the target
/// of `r`.
pub fn mreact_compose(r: &MReactMorphism, s: &MReactMorphism, env: &Environment) -> Result<MReactMorphism> {
    let mid = r.target();
    let mut phi = if &s.source == mid {
        s.source.names().map(|v| (v.clone(), v.clone())).collect()
    } else {
        find_isomorphism(&s.source, mid)
            .ok_or_else(|| Error::BoundaryMismatch("source of the second reaction is not isomorphic to the target of the first".into()))?
    };
    let shift = shift_copies(env, &s.counts, &r.counts);
    let (s_copies, _) = env.assemble(&s.counts)?;
    let copies = s_copies.rename(&shift)?;
    let clash: BTreeSet<&Name> = copies.names().filter(|v| mid.contains(v) || r.reaction.source.contains(v)).collect();
    if let Some(v) = clash.first() {
        return Err(Error::BoundaryMismatch(format!("copy name {v} is already in use")));
    }
    phi.extend(shift);
    let s2 = rename_source(&s.reaction, &phi)?;
    let mut r2 = r.reaction.clone();
    r2.source = r2.source.union_disjoint(&copies)?;
    r2.target = r2.target.union_disjoint(&copies)?;
    r2.context.extend(copies.names().map(|v| (v.clone(), v.clone())));
    let reaction = compose_reactions(&r2, &s2)?;
    Ok(MReactMorphism { source: r.source.clone(), counts: add_counts(&r.counts, &s.counts), reaction })
}

impl OverEnvironment for MReactMorphism {
    fn include(&self, inc: &EnvInclusion) -> Result<Self> {
        let map = inc.renaming(self.reaction.source.names());
        Ok(MReactMorphism { source: self.source.clone(), counts: inc.counts(&self.counts), reaction: rename_source(&self.reaction, &map)? })
    }
}
