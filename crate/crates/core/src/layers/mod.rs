//! Environment-parameterised categories of matchings, disconnections and
//! reactions, and the translations between them.
//!
//! Environment copies always carry assembled names `#e{entry}.{copy}:{v}`, so
//! the source graphs of these morphisms must not use that prefix.

mod functor_d;
mod functor_r;
mod mdisc;
mod mmatch;
mod mreact;

use crate::error::{Error, Result};
use crate::graph::{assemble, assembled_name, Graph, Injection, Name, VertexMap};
use crate::iso::{find_isomorphism, is_isomorphic};

pub use functor_d::functor_d;
pub use functor_r::{elementary_reaction, functor_r};
pub use mdisc::{mdisc_compose, MDiscMorphism};
pub use mmatch::{mmatch_compose, MMatchMorphism};
pub use mreact::{mreact_compose, rebase, MReactMorphism};

/// An ordered list of pairwise non-isomorphic molecular entities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    pub entries: Vec<Graph>,
}

impl Environment {
    pub fn new(entries: Vec<Graph>) -> Result<Environment> {
        let env = Environment { entries };
        env.validate()?;
        Ok(env)
    }

    pub fn empty() -> Environment {
        Environment::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, m) in self.entries.iter().enumerate() {
            if !m.is_molecular() || !m.is_connected() {
                return Err(Error::InvalidEnvironment(format!("entry {i} is not a molecular entity")));
            }
            if let Some(j) = self.entries[..i].iter().position(|n| is_isomorphic(m, n)) {
                return Err(Error::InvalidEnvironment(format!("entries {j} and {i} are isomorphic")));
            }
        }
        Ok(())
    }

    /// `n₁M₁ + ⋯ + n_kM_k` under assembled names.
    pub fn assemble(&self, counts: &[usize]) -> Result<(Graph, Vec<Vec<Injection>>)> {
        self.check_counts(counts)?;
        let pairs: Vec<(usize, &Graph)> = counts.iter().copied().zip(self.entries.iter()).collect();
        Ok(assemble(&pairs))
    }

    pub fn check_counts(&self, counts: &[usize]) -> Result<()> {
        if counts.len() != self.len() {
            return Err(Error::InvalidEnvironment(format!("{} counts for an environment of {} entries", counts.len(), self.len())));
        }
        Ok(())
    }

    /// Index of the entry isomorphic to `g`, if any.
    pub fn position(&self, g: &Graph) -> Option<usize> {
        self.entries.iter().position(|m| is_isomorphic(m, g))
    }
}

/// Splits an assembled name into `(entry, copy, vertex)`.
pub fn parse_assembled(name: &str) -> Option<(usize, usize, &str)> {
    let rest = name.strip_prefix("#e")?;
    let (entry, rest) = rest.split_once('.')?;
    let (copy, v) = rest.split_once(':')?;
    Some((entry.parse().ok()?, copy.parse().ok()?, v))
}

pub(crate) fn check_no_assembled_names(g: &Graph, what: &str) -> Result<()> {
    match g.names().find(|v| parse_assembled(v).is_some()) {
        Some(v) => Err(Error::InvalidEnvironment(format!("{what} uses the reserved name {v}"))),
        None => Ok(()),
    }
}

/// Renaming that moves copy `k` of entry `i` to copy `offset[i] + k`.
pub(crate) fn shift_copies(env: &Environment, counts: &[usize], offset: &[usize]) -> VertexMap {
    let mut out = VertexMap::new();
    for (i, m) in env.entries.iter().enumerate() {
        for k in 0..counts[i] {
            for v in m.names() {
                out.insert(assembled_name(i, k, v), assembled_name(i, offset[i] + k, v));
            }
        }
    }
    out
}

pub(crate) fn add_counts(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Re-indexing of assembled names along an inclusion `M ⊆ N`.
#[derive(Clone, Debug)]
pub struct EnvInclusion {
    index: Vec<usize>,
    isos: Vec<VertexMap>,
    target_len: usize,
}

impl EnvInclusion {
    pub fn new(m: &Environment, n: &Environment) -> Result<EnvInclusion> {
        let mut index = Vec::new();
        let mut isos = Vec::new();
        for (i, entry) in m.entries.iter().enumerate() {
            let hit = n.entries.iter().enumerate().find_map(|(j, e)| find_isomorphism(entry, e).map(|f| (j, f)));
            let Some((j, f)) = hit else {
                return Err(Error::NotASuperset(format!("entry {i} has no counterpart")));
            };
            index.push(j);
            isos.push(f);
        }
        Ok(EnvInclusion { index, isos, target_len: n.len() })
    }

    pub fn counts(&self, counts: &[usize]) -> Vec<usize> {
        let mut out = vec![0; self.target_len];
        for (i, c) in counts.iter().enumerate() {
            out[self.index[i]] = *c;
        }
        out
    }

    pub fn name(&self, v: &str) -> Name {
        match parse_assembled(v) {
            Some((i, k, w)) if i < self.index.len() => assembled_name(self.index[i], k, &self.isos[i][w]),
            _ => v.to_string(),
        }
    }

    pub fn renaming<'a>(&self, names: impl Iterator<Item = &'a Name>) -> VertexMap {
        names.map(|v| (v.clone(), self.name(v))).collect()
    }
}

/// Morphisms that can be transported along an environment inclusion.
pub trait OverEnvironment: Sized {
    fn include(&self, inclusion: &EnvInclusion) -> Result<Self>;
}

/// The inclusion functor for `M ⊆ N` applied to `x`.
pub fn include_environment<T: OverEnvironment>(x: &T, m: &Environment, n: &Environment) -> Result<T> {
    x.include(&EnvInclusion::new(m, n)?)
}
