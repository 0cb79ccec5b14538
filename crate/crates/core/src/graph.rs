//! Pre-chemical and chemical graphs.
//!
//! A [`Graph`] is a finite set of named vertices labelled by an atom, a charge
//! or the placeholder `α`, with a symmetric edge labelling whose absent entries
//! mean "covalent order 0". It optionally carries an [`Orientation`]. Whether a
//! graph is *chemical* is a property checked by [`validate_chemical`], not a
//! separate type, since every construction in the crate moves back and forth
//! between the two notions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::element::{Element, ValenceTable};
use crate::error::{Error, Result};
use crate::orientation::Orientation;

pub type Name = String;

/// Vertex-to-vertex map used for morphisms, bijections and renamings.
pub type VertexMap = BTreeMap<Name, Name>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexLabel {
    Atom(Element),
    Plus,
    Minus,
    Alpha,
}

impl VertexLabel {
    pub fn parse(s: &str) -> Result<VertexLabel> {
        match s {
            "+" => Ok(VertexLabel::Plus),
            "-" => Ok(VertexLabel::Minus),
            "alpha" => Ok(VertexLabel::Alpha),
            other => Element::from_symbol(other).map(VertexLabel::Atom).map_err(|_| Error::InvalidLabel(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VertexLabel::Atom(e) => e.symbol(),
            VertexLabel::Plus => "+",
            VertexLabel::Minus => "-",
            VertexLabel::Alpha => "alpha",
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, VertexLabel::Atom(_))
    }

    pub fn is_charge(&self) -> bool {
        matches!(self, VertexLabel::Plus | VertexLabel::Minus)
    }

    pub fn is_alpha(&self) -> bool {
        matches!(self, VertexLabel::Alpha)
    }

    pub fn valence(&self, table: &ValenceTable) -> u32 {
        match self {
            VertexLabel::Atom(e) => table.valence(*e),
            _ => 1,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EdgeLabel {
    Cov(u8),
    Ionic,
}

impl EdgeLabel {
    pub const NONE: EdgeLabel = EdgeLabel::Cov(0);

    pub fn cov(self) -> u32 {
        match self {
            EdgeLabel::Cov(n) => n as u32,
            EdgeLabel::Ionic => 0,
        }
    }

    pub fn ion(self) -> u32 {
        match self {
            EdgeLabel::Ionic => 1,
            EdgeLabel::Cov(_) => 0,
        }
    }

    pub fn is_none(self) -> bool {
        self == EdgeLabel::NONE
    }

    /// Covalent label of the given order, if it is within `0..=4`.
    pub fn covalent(order: u32) -> Option<EdgeLabel> {
        (order <= 4).then_some(EdgeLabel::Cov(order as u8))
    }

    pub fn parse(s: &str) -> Result<EdgeLabel> {
        match s {
            "ionic" | "ib" => Ok(EdgeLabel::Ionic),
            _ => s.parse::<u32>().ok().and_then(EdgeLabel::covalent).ok_or_else(|| Error::InvalidEdgeLabel(s.to_string())),
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Cov(n) => write!(f, "{n}"),
            EdgeLabel::Ionic => f.write_str("ionic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Vertex {
    label: VertexLabel,
    adj: BTreeMap<Name, EdgeLabel>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeMap<Name, Vertex>,
    orientation: Orientation,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    /// Convenience constructor: labels as in the JSON format, edge labels
    /// as `"1"`..`"4"` or `"ionic"`.
    pub fn build(vertices: &[(&str, &str)], edges: &[(&str, &str, &str)]) -> Result<Graph> {
        let mut g = Graph::new();
        for (name, label) in vertices {
            g.add_vertex(*name, VertexLabel::parse(label)?)?;
        }
        for (u, v, label) in edges {
            g.set_edge(u, v, EdgeLabel::parse(label)?)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<Name>, label: VertexLabel) -> Result<()> {
        let name = name.into();
        if self.vertices.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        self.vertices.insert(name, Vertex { label, adj: BTreeMap::new() });
        Ok(())
    }

    /// Sets `m(u,v) = m(v,u) = label`; `Cov(0)` removes the edge.
    pub fn set_edge(&mut self, u: &str, v: &str, label: EdgeLabel) -> Result<()> {
        if u == v {
            if label.is_none() {
                return Ok(());
            }
            return Err(Error::SelfLoop(u.to_string()));
        }
        for x in [u, v] {
            if !self.vertices.contains_key(x) {
                return Err(Error::DanglingName(x.to_string()));
            }
        }
        let (uk, vk) = (u.to_string(), v.to_string());
        if label.is_none() {
            self.vertices.get_mut(u).unwrap().adj.remove(v);
            self.vertices.get_mut(v).unwrap().adj.remove(u);
        } else {
            self.vertices.get_mut(u).unwrap().adj.insert(vk, label);
            self.vertices.get_mut(v).unwrap().adj.insert(uk, label);
        }
        Ok(())
    }

    pub fn set_label(&mut self, v: &str, label: VertexLabel) -> Result<()> {
        self.vertices.get_mut(v).map(|x| x.label = label).ok_or_else(|| Error::DanglingName(v.to_string()))
    }

    /// Removes a vertex together with its edges and any orientation tuples
    /// mentioning it.
    pub fn remove_vertex(&mut self, v: &str) -> Option<VertexLabel> {
        let vertex = self.vertices.remove(v)?;
        for w in vertex.adj.keys() {
            if let Some(x) = self.vertices.get_mut(w) {
                x.adj.remove(v);
            }
        }
        self.orientation.remove_vertex(v);
        Some(vertex.label)
    }

    pub fn contains(&self, v: &str) -> bool {
        self.vertices.contains_key(v)
    }

    pub fn label(&self, v: &str) -> Option<VertexLabel> {
        self.vertices.get(v).map(|x| x.label)
    }

    pub fn edge(&self, u: &str, v: &str) -> EdgeLabel {
        self.vertices.get(u).and_then(|x| x.adj.get(v)).copied().unwrap_or(EdgeLabel::NONE)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&Name, VertexLabel)> + '_ {
        self.vertices.iter().map(|(n, v)| (n, v.label))
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> + '_ {
        self.vertices.keys()
    }

    pub fn name_set(&self) -> BTreeSet<Name> {
        self.vertices.keys().cloned().collect()
    }

    /// Neighbours with a non-zero edge label.
    pub fn neighbours<'a>(&'a self, v: &str) -> impl Iterator<Item = (&'a Name, EdgeLabel)> + 'a {
        self.vertices.get(v).into_iter().flat_map(|x| x.adj.iter().map(|(n, l)| (n, *l)))
    }

    /// All non-zero edges, each once with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (&Name, &Name, EdgeLabel)> + '_ {
        self.vertices.iter().flat_map(|(u, x)| x.adj.iter().filter(move |(v, _)| u < *v).map(move |(v, l)| (u, v, *l)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn cov_degree(&self, v: &str) -> u32 {
        self.neighbours(v).map(|(_, l)| l.cov()).sum()
    }

    /// The set `CN(v)` of covalent neighbours.
    pub fn covalent_neighbours(&self, v: &str) -> BTreeSet<Name> {
        self.neighbours(v).filter(|(_, l)| l.cov() > 0).map(|(n, _)| n.clone()).collect()
    }

    fn filter_names(&self, pred: impl Fn(VertexLabel) -> bool) -> BTreeSet<Name> {
        self.vertices.iter().filter(|(_, x)| pred(x.label)).map(|(n, _)| n.clone()).collect()
    }

    pub fn alpha_vertices(&self) -> BTreeSet<Name> {
        self.filter_names(|l| l.is_alpha())
    }

    pub fn chem_vertices(&self) -> BTreeSet<Name> {
        self.filter_names(|l| !l.is_alpha())
    }

    pub fn charged_vertices(&self) -> BTreeSet<Name> {
        self.filter_names(|l| l.is_charge())
    }

    pub fn neutral_vertices(&self) -> BTreeSet<Name> {
        self.filter_names(|l| !l.is_charge())
    }

    pub fn atom_vertices(&self) -> BTreeSet<Name> {
        self.filter_names(|l| l.is_atom())
    }

    pub fn net_charge(&self) -> i64 {
        self.vertices.values().fold(0, |acc, x| match x.label {
            VertexLabel::Plus => acc + 1,
            VertexLabel::Minus => acc - 1,
            _ => acc,
        })
    }

    pub fn has_alpha(&self) -> bool {
        self.vertices.values().any(|x| x.label.is_alpha())
    }

    pub fn label_multiset(&self) -> BTreeMap<VertexLabel, usize> {
        let mut out = BTreeMap::new();
        for x in self.vertices.values() {
            *out.entry(x.label).or_insert(0) += 1;
        }
        out
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn set_orientation(&mut self, orientation: Orientation) -> Result<()> {
        orientation.check_against(self)?;
        self.orientation = orientation;
        Ok(())
    }

    pub fn without_orientation(&self) -> Graph {
        Graph { vertices: self.vertices.clone(), orientation: Orientation::default() }
    }

    /// Connected components over edges with a non-zero label, in order of
    /// their least vertex name.
    pub fn components(&self) -> Vec<BTreeSet<Name>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                for (w, _) in self.neighbours(&v) {
                    if seen.insert(w.clone()) {
                        queue.push_back(w.clone());
                    }
                }
                comp.insert(v);
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Induced sub-(pre-chemical) graph on `keep`; orientation tuples are kept
    /// when all their vertices survive.
    pub fn induced(&self, keep: &BTreeSet<Name>) -> Graph {
        let vertices = self
            .vertices
            .iter()
            .filter(|(n, _)| keep.contains(*n))
            .map(|(n, x)| {
                let adj = x.adj.iter().filter(|(w, _)| keep.contains(*w)).map(|(w, l)| (w.clone(), *l)).collect();
                (n.clone(), Vertex { label: x.label, adj })
            })
            .collect();
        Graph { vertices, orientation: self.orientation.restrict(keep) }
    }

    /// Renames vertices; names missing from `map` are kept. Fails if the
    /// renaming is not injective on this graph.
    pub fn rename(&self, map: &VertexMap) -> Result<Graph> {
        let f = |n: &Name| map.get(n).cloned().unwrap_or_else(|| n.clone());
        let mut vertices = BTreeMap::new();
        for (n, x) in &self.vertices {
            let adj = x.adj.iter().map(|(w, l)| (f(w), *l)).collect();
            if vertices.insert(f(n), Vertex { label: x.label, adj }).is_some() {
                return Err(Error::DuplicateVertex(f(n)));
            }
        }
        Ok(Graph { vertices, orientation: self.orientation.rename(&f) })
    }

    /// Union of two graphs with disjoint vertex names.
    pub fn union_disjoint(&self, other: &Graph) -> Result<Graph> {
        let mut out = self.clone();
        for (n, x) in &other.vertices {
            if out.vertices.contains_key(n) {
                return Err(Error::DuplicateVertex(n.clone()));
            }
            out.vertices.insert(n.clone(), x.clone());
        }
        out.orientation = self.orientation.union(&other.orientation);
        Ok(out)
    }

    pub fn is_molecular(&self) -> bool {
        !self.has_alpha() && validate_chemical(self).is_empty()
    }

    pub fn is_chemical(&self) -> bool {
        validate_chemical(self).is_empty()
    }
}

/// Deterministic generator of fresh vertex names: a reserved prefix followed
/// by a counter, skipping anything already taken.
#[derive(Debug, Clone)]
pub struct NameGen {
    prefix: String,
    next: u64,
}

impl Default for NameGen {
    fn default() -> Self {
        NameGen::new("#")
    }
}

impl NameGen {
    pub fn new(prefix: impl Into<String>) -> NameGen {
        NameGen { prefix: prefix.into(), next: 0 }
    }

    pub fn fresh_with(&mut self, taken: impl Fn(&str) -> bool) -> Name {
        loop {
            let candidate = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if !taken(&candidate) {
                return candidate;
            }
        }
    }

    /// A name not used in any of `graphs`.
    pub fn fresh(&mut self, graphs: &[&Graph]) -> Name {
        self.fresh_with(|n| graphs.iter().any(|g| g.contains(n)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Valence { vertex: Name, expected: u32, actual: u32 },
    AlphaBond { alpha: Name, neighbour: Name },
    ChargeBond { charge: Name, neighbour: Name },
    IonicLabels { u: Name, v: Name },
    IonicAttachment { charge: Name, neighbour: Name },
    IonicMultiple { charge: Name },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Valence { vertex, expected, actual } => {
                write!(f, "valence of {vertex}: {actual} != {expected}")
            }
            Violation::AlphaBond { alpha, neighbour } => {
                write!(f, "alpha vertex {alpha} bonded to {neighbour}, which is neither an atom nor -")
            }
            Violation::ChargeBond { charge, neighbour } => {
                write!(f, "charge {charge} bonded to {neighbour}, which is neither an atom nor alpha")
            }
            Violation::IonicLabels { u, v } => write!(f, "ionic bond {u}~{v} is not between opposite charges"),
            Violation::IonicAttachment { charge, neighbour } => {
                write!(f, "ionically bonded charge {charge} attached to non-atom {neighbour}")
            }
            Violation::IonicMultiple { charge } => write!(f, "charge {charge} has more than one ionic bond"),
        }
    }
}

pub fn validate_chemical(g: &Graph) -> Vec<Violation> {
    validate_chemical_with(g, ValenceTable::global())
}

/// Every violated chemical-graph condition; an empty list certifies that `g`
/// is a chemical graph.
pub fn validate_chemical_with(g: &Graph, table: &ValenceTable) -> Vec<Violation> {
    let mut out = Vec::new();
    for (v, label) in g.vertices() {
        let expected = label.valence(table);
        let actual = g.cov_degree(v);
        if expected != actual {
            out.push(Violation::Valence { vertex: v.clone(), expected, actual });
        }
        for (w, edge) in g.neighbours(v) {
            let wl = g.label(w).unwrap();
            if edge == EdgeLabel::Cov(1) {
                if label.is_alpha() && !(wl.is_atom() || wl == VertexLabel::Minus) {
                    out.push(Violation::AlphaBond { alpha: v.clone(), neighbour: w.clone() });
                }
                if label.is_charge() && !(wl.is_atom() || wl.is_alpha()) {
                    out.push(Violation::ChargeBond { charge: v.clone(), neighbour: w.clone() });
                }
            }
        }
        let ionic: Vec<&Name> = g.neighbours(v).filter(|(_, l)| *l == EdgeLabel::Ionic).map(|(n, _)| n).collect();
        if ionic.len() > 1 {
            out.push(Violation::IonicMultiple { charge: v.clone() });
        }
        if !ionic.is_empty() {
            for (a, edge) in g.neighbours(v) {
                if edge == EdgeLabel::Cov(1) && !g.label(a).unwrap().is_atom() {
                    out.push(Violation::IonicAttachment { charge: v.clone(), neighbour: a.clone() });
                }
            }
        }
    }
    for (u, v, edge) in g.edges() {
        if edge == EdgeLabel::Ionic {
            let (lu, lv) = (g.label(u).unwrap(), g.label(v).unwrap());
            if !(lu.is_charge() && lv.is_charge() && lu != lv) {
                out.push(Violation::IonicLabels { u: u.clone(), v: v.clone() });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Connected, with at least one α-vertex.
    Synthon,
    /// Connected and α-free.
    MolecularEntity,
    /// α-free but not connected (including the empty graph).
    MolecularGraph,
    General,
}

/// Most specific class of a chemical graph. Connectivity is taken over all
/// non-zero edges, ionic ones included.
pub fn classify(g: &Graph) -> Classification {
    match (g.is_connected(), g.has_alpha()) {
        (true, true) => Classification::Synthon,
        (true, false) => Classification::MolecularEntity,
        (false, false) => Classification::MolecularGraph,
        (false, true) => Classification::General,
    }
}

/// Label-preserving injection recorded by the union constructions.
pub type Injection = VertexMap;

/// Disjoint union. `g1` keeps its names; vertices of `g2` whose names clash
/// are given fresh names. Returns the injections of both summands.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> (Graph, Injection, Injection) {
    let mut gen = NameGen::default();
    let mut into2 = VertexMap::new();
    for n in g2.names() {
        let target =
            if g1.contains(n) { gen.fresh_with(|c| g1.contains(c) || g2.contains(c) || into2.values().any(|x| x == c)) } else { n.clone() };
        into2.insert(n.clone(), target);
    }
    let renamed = g2.rename(&into2).expect("fresh renaming is injective");
    let union = g1.union_disjoint(&renamed).expect("names are disjoint after renaming");
    let into1 = g1.names().map(|n| (n.clone(), n.clone())).collect();
    (union, into1, into2)
}

/// Name of vertex `v` of copy `copy` of environment entry `entry` in an
/// assembled graph.
pub fn assembled_name(entry: usize, copy: usize, v: &str) -> Name {
    format!("#e{entry}.{copy}:{v}")
}

/// `n₁M₁ + ⋯ + n_kM_k` with deterministic vertex names. The returned family
/// holds, for each entry and copy, the injection from the entity into the
/// assembly.
pub fn assemble(counts: &[(usize, &Graph)]) -> (Graph, Vec<Vec<Injection>>) {
    let mut out = Graph::new();
    let mut family = Vec::with_capacity(counts.len());
    for (entry, (n, entity)) in counts.iter().enumerate() {
        let mut copies = Vec::with_capacity(*n);
        for copy in 0..*n {
            let inj: Injection = entity.names().map(|v| (v.clone(), assembled_name(entry, copy, v))).collect();
            let renamed = entity.rename(&inj).expect("assembled names are injective");
            out = out.union_disjoint(&renamed).expect("assembled names are distinct");
            copies.push(inj);
        }
        family.push(copies);
    }
    (out, family)
}
