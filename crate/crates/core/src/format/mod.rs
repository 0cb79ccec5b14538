//! JSON documents and their canonical serialisation.
//!
//! A graph is `{"vertices": [{"name", "label"}], "edges": [{"u", "v",
//! "label"}], "triangles": [...], "tetrahedra": [...]}`, the last two
//! optional. Vertex labels are element symbols, `+`, `-` or `alpha`; edge
//! labels are the numbers 1 to 4 or `"ionic"`. Serialisation sorts object
//! keys and lists.

mod render;

use std::collections::BTreeSet;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::disconnect::Rule;
use crate::error::{Error, Result};
use crate::graph::{EdgeLabel, Graph, Name, VertexLabel, VertexMap};
use crate::layers::{Environment, MDiscMorphism, MMatchMorphism, MReactMorphism};
use crate::orientation::Orientation;
use crate::rewrite::{Reaction, ReactionScheme};

pub use render::{render_graph, render_reaction, render_rules};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub name: Name,
    pub label: String,
}

/// A bond order as a JSON number, or the string `"ionic"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeLabelDoc {
    Order(u32),
    Named(String),
}

impl From<EdgeLabel> for EdgeLabelDoc {
    fn from(l: EdgeLabel) -> EdgeLabelDoc {
        match l {
            EdgeLabel::Ionic => EdgeLabelDoc::Named("ionic".into()),
            l => EdgeLabelDoc::Order(l.cov()),
        }
    }
}

impl EdgeLabelDoc {
    fn to_label(&self) -> Result<EdgeLabel> {
        match self {
            EdgeLabelDoc::Order(n @ 1..=4) => Ok(EdgeLabel::covalent(*n).expect("order in range")),
            EdgeLabelDoc::Named(s) if s == "ionic" => Ok(EdgeLabel::Ionic),
            other => Err(Error::Schema { path: "edges.label".into(), message: format!("expected 1-4 or \"ionic\", got {other:?}") }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub u: Name,
    pub v: Name,
    pub label: EdgeLabelDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    /// Orientation generators; closures are computed on load.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triangles: Vec<[Name; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tetrahedra: Vec<[Name; 4]>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> GraphDoc {
        let o = g.orientation();
        GraphDoc {
            vertices: g.vertices().map(|(v, l)| VertexDoc { name: v.clone(), label: l.to_string() }).collect(),
            edges: g.edges().map(|(u, v, l)| EdgeDoc { u: u.clone(), v: v.clone(), label: l.into() }).collect(),
            triangles: o.triangle_orbits().cloned().collect(),
            tetrahedra: o.tetrahedron_orbits().cloned().collect(),
        }
    }
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new();
        for VertexDoc { name, label } in &self.vertices {
            g.add_vertex(name.clone(), VertexLabel::parse(label)?)?;
        }
        for EdgeDoc { u, v, label } in &self.edges {
            for x in [u, v] {
                if !g.contains(x) {
                    return Err(Error::DanglingName(x.clone()));
                }
            }
            g.set_edge(u, v, label.to_label()?)?;
        }
        let (t, q) = (&self.triangles, &self.tetrahedra);
        if let Some(x) = t.iter().flatten().chain(q.iter().flatten()).find(|x| !g.contains(x)) {
            return Err(Error::DanglingName(x.clone()));
        }
        if !t.is_empty() || !q.is_empty() {
            g.set_orientation(Orientation::close(t, q)?)?;
        }
        Ok(g)
    }
}

fn pairs(m: &VertexMap) -> Vec<(Name, Name)> {
    m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}

fn map_of(pairs: &[(Name, Name)], what: &str) -> Result<VertexMap> {
    let mut out = VertexMap::new();
    for (k, v) in pairs {
        if out.insert(k.clone(), v.clone()).is_some() {
            return Err(Error::Schema { path: what.into(), message: format!("{k} is mapped twice") });
        }
    }
    Ok(out)
}

fn check_names(g: &Graph, names: impl IntoIterator<Item = Name>) -> Result<()> {
    for v in names {
        if !g.contains(&v) {
            return Err(Error::DanglingName(v));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDoc {
    pub left: GraphDoc,
    pub right: GraphDoc,
    pub bijection: Vec<(Name, Name)>,
}

impl From<&ReactionScheme> for SchemeDoc {
    fn from(s: &ReactionScheme) -> SchemeDoc {
        SchemeDoc { left: (&s.left).into(), right: (&s.right).into(), bijection: pairs(&s.bijection) }
    }
}

impl SchemeDoc {
    pub fn to_scheme(&self) -> Result<ReactionScheme> {
        let (left, right) = (self.left.to_graph()?, self.right.to_graph()?);
        let bijection = map_of(&self.bijection, "bijection")?;
        check_names(&left, bijection.keys().cloned())?;
        check_names(&right, bijection.values().cloned())?;
        ReactionScheme::new(left, right, bijection)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReactionDoc {
    pub source: GraphDoc,
    pub target: GraphDoc,
    pub u_source: Vec<Name>,
    pub u_target: Vec<Name>,
    pub bijection: Vec<(Name, Name)>,
    pub context: Vec<(Name, Name)>,
}

impl From<&Reaction> for ReactionDoc {
    fn from(r: &Reaction) -> ReactionDoc {
        ReactionDoc {
            source: (&r.source).into(),
            target: (&r.target).into(),
            u_source: r.u_source.iter().cloned().collect(),
            u_target: r.u_target.iter().cloned().collect(),
            bijection: pairs(&r.bijection),
            context: pairs(&r.context),
        }
    }
}

impl ReactionDoc {
    pub fn to_reaction(&self) -> Result<Reaction> {
        let (source, target) = (self.source.to_graph()?, self.target.to_graph()?);
        let bijection = map_of(&self.bijection, "bijection")?;
        let context = map_of(&self.context, "context")?;
        check_names(&source, self.u_source.iter().cloned().chain(bijection.keys().cloned()).chain(context.keys().cloned()))?;
        check_names(&target, self.u_target.iter().cloned().chain(bijection.values().cloned()).chain(context.values().cloned()))?;
        let r = Reaction {
            source,
            target,
            u_source: self.u_source.iter().cloned().collect::<BTreeSet<_>>(),
            u_target: self.u_target.iter().cloned().collect::<BTreeSet<_>>(),
            bijection,
            context,
        };
        r.validate()?;
        Ok(r)
    }
}

/// An environment entry, given inline or as a path to a graph file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryDoc {
    Path(String),
    Inline(GraphDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentDoc {
    pub entries: Vec<EntryDoc>,
}

impl From<&Environment> for EnvironmentDoc {
    fn from(e: &Environment) -> EnvironmentDoc {
        EnvironmentDoc { entries: e.entries.iter().map(|g| EntryDoc::Inline(g.into())).collect() }
    }
}

impl EnvironmentDoc {
    /// Relative paths are resolved against `base`.
    pub fn to_environment(&self, base: Option<&Path>) -> Result<Environment> {
        let mut entries = Vec::new();
        for e in &self.entries {
            entries.push(match e {
                EntryDoc::Inline(g) => g.to_graph()?,
                EntryDoc::Path(p) => {
                    let path = base.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
                    parse::<GraphDoc>(&std::fs::read(&path)?)?.to_graph()?
                }
            });
        }
        Environment::new(entries)
    }
}

/// The three kinds of morphism over an environment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MorphismDoc {
    Match { source: GraphDoc, target: GraphDoc, matching: Vec<(Name, Name)>, counts: Vec<usize>, injection: Vec<(Name, Name)> },
    Disc { source: GraphDoc, target: GraphDoc, counts: Vec<usize>, rules: Vec<Rule> },
    React { source: GraphDoc, counts: Vec<usize>, reaction: ReactionDoc },
}

impl From<&MMatchMorphism> for MorphismDoc {
    fn from(f: &MMatchMorphism) -> MorphismDoc {
        MorphismDoc::Match {
            source: (&f.source).into(),
            target: (&f.target).into(),
            matching: pairs(&f.matching),
            counts: f.counts.clone(),
            injection: pairs(&f.injection),
        }
    }
}

impl From<&MDiscMorphism> for MorphismDoc {
    fn from(d: &MDiscMorphism) -> MorphismDoc {
        MorphismDoc::Disc { source: (&d.source).into(), target: (&d.target).into(), counts: d.counts.clone(), rules: d.rules.clone() }
    }
}

impl From<&MReactMorphism> for MorphismDoc {
    fn from(r: &MReactMorphism) -> MorphismDoc {
        MorphismDoc::React { source: (&r.source).into(), counts: r.counts.clone(), reaction: (&r.reaction).into() }
    }
}

/// A parsed morphism document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Morphism {
    Match(MMatchMorphism),
    Disc(MDiscMorphism),
    React(MReactMorphism),
}

impl MorphismDoc {
    pub fn to_morphism(&self) -> Result<Morphism> {
        Ok(match self {
            MorphismDoc::Match { source, target, matching, counts, injection } => {
                let (source, target) = (source.to_graph()?, target.to_graph()?);
                let matching = map_of(matching, "matching")?;
                let injection = map_of(injection, "injection")?;
                check_names(&source, matching.keys().cloned())?;
                check_names(&target, matching.values().cloned().chain(injection.values().cloned()))?;
                Morphism::Match(MMatchMorphism { source, target, matching, counts: counts.clone(), injection })
            }
            MorphismDoc::Disc { source, target, counts, rules } => Morphism::Disc(MDiscMorphism {
                source: source.to_graph()?,
                target: target.to_graph()?,
                counts: counts.clone(),
                rules: rules.clone(),
            }),
            MorphismDoc::React { source, counts, reaction } => {
                Morphism::React(MReactMorphism { source: source.to_graph()?, counts: counts.clone(), reaction: reaction.to_reaction()? })
            }
        })
    }
}

impl From<&Morphism> for MorphismDoc {
    fn from(m: &Morphism) -> MorphismDoc {
        match m {
            Morphism::Match(f) => f.into(),
            Morphism::Disc(d) => d.into(),
            Morphism::React(r) => r.into(),
        }
    }
}

pub fn parse<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Schema { path: "$".into(), message: e.to_string() })?;
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn to_canonical<T: Serialize>(x: &T) -> String {
    let value = serde_json::to_value(x).expect("documents serialise");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialise");
    out.push('\n');
    out
}

pub fn parse_graph(bytes: &[u8]) -> Result<Graph> {
    parse::<GraphDoc>(bytes)?.to_graph()
}

pub fn graph_to_json(g: &Graph) -> String {
    to_canonical(&GraphDoc::from(g))
}

pub fn parse_graphs(bytes: &[u8]) -> Result<Vec<Graph>> {
    parse::<Vec<GraphDoc>>(bytes)?.iter().map(GraphDoc::to_graph).collect()
}
