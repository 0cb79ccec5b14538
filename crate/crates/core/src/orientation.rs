//! Triangle and tetrahedron relations, orientation-preserving and -reflecting
//! isomorphisms, and chirality.
//!
//! A triangle relation is closed under all permutations, so each orbit is
//! stored once as a sorted triple. A tetrahedron relation is closed under even
//! permutations; each orbit is stored as its lexicographically least even
//! rearrangement, which is either the sorted quadruple or the sorted one with
//! its last two entries swapped.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Name, VertexLabel, VertexMap};
use crate::iso;

pub type Triple = [Name; 3];
pub type Quadruple = [Name; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    triangles: BTreeSet<Triple>,
    tetrahedra: BTreeSet<Quadruple>,
}

fn has_repeat<T: PartialEq>(xs: &[T]) -> bool {
    xs.iter().enumerate().any(|(i, x)| xs[i + 1..].contains(x))
}

fn sorted_triple(t: &[Name; 3]) -> Triple {
    let mut t = t.clone();
    t.sort();
    t
}

/// Parity (true = odd) of the permutation that sorts `xs`; entries distinct.
fn sort_parity(xs: &[Name]) -> bool {
    let mut inversions = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Orbit representative of a quadruple under the alternating group.
pub fn canonical_tetrahedron(q: &[Name; 4]) -> Quadruple {
    let odd = sort_parity(q);
    let mut s = q.clone();
    s.sort();
    if odd {
        s.swap(2, 3);
    }
    s
}

fn even_permutations(q: &Quadruple) -> Vec<Quadruple> {
    const EVEN: [[usize; 4]; 12] = [
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
        [1, 0, 3, 2],
        [1, 2, 0, 3],
        [1, 3, 2, 0],
        [2, 0, 1, 3],
        [2, 1, 3, 0],
        [2, 3, 0, 1],
        [3, 0, 2, 1],
        [3, 1, 0, 2],
        [3, 2, 1, 0],
    ];
    EVEN.iter().map(|p| p.map(|i| q[i].clone())).collect()
}

fn all_permutations3(t: &Triple) -> Vec<Triple> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS.iter().map(|p| p.map(|i| t[i].clone())).collect()
}

impl Orientation {
    /// Closure of the generators: triangles under S₃ together with every
    /// 3-subset of each tetrahedron, tetrahedra under A₄.
    pub fn close(triangles: &[Triple], tetrahedra: &[Quadruple]) -> Result<Orientation> {
        let mut out = Orientation::default();
        for t in triangles {
            if has_repeat(t) {
                return Err(Error::RepeatedElement(t.to_vec()));
            }
            out.triangles.insert(sorted_triple(t));
        }
        for q in tetrahedra {
            if has_repeat(q) {
                return Err(Error::RepeatedElement(q.to_vec()));
            }
            out.insert_tetrahedron_unchecked(q);
        }
        out.check_projection()?;
        Ok(out)
    }

    /// Adds a tetrahedron orbit together with its four faces.
    pub(crate) fn insert_tetrahedron_unchecked(&mut self, q: &[Name; 4]) {
        for skip in 0..4 {
            let face: Vec<Name> = (0..4).filter(|&i| i != skip).map(|i| q[i].clone()).collect();
            self.triangles.insert(sorted_triple(&[face[0].clone(), face[1].clone(), face[2].clone()]));
        }
        self.tetrahedra.insert(canonical_tetrahedron(q));
    }

    /// Adds a tetrahedron orbit alone; callers check projection afterwards.
    pub(crate) fn insert_tetrahedron_orbit(&mut self, q: &[Name; 4]) {
        self.tetrahedra.insert(canonical_tetrahedron(q));
    }

    pub(crate) fn insert_triangle_unchecked(&mut self, t: &[Name; 3]) {
        self.triangles.insert(sorted_triple(t));
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty() && self.tetrahedra.is_empty()
    }

    pub fn contains_triangle(&self, a: &str, b: &str, c: &str) -> bool {
        if a == b || b == c || a == c {
            return false;
        }
        let t = sorted_triple(&[a.into(), b.into(), c.into()]);
        self.triangles.contains(&t)
    }

    pub fn contains_tetrahedron(&self, a: &str, b: &str, c: &str, d: &str) -> bool {
        let q: Quadruple = [a.into(), b.into(), c.into(), d.into()];
        if has_repeat(&q) {
            return false;
        }
        self.tetrahedra.contains(&canonical_tetrahedron(&q))
    }

    /// One sorted representative per triangle orbit.
    pub fn triangle_orbits(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triangles.iter()
    }

    /// One canonical representative per tetrahedron orbit.
    pub fn tetrahedron_orbits(&self) -> impl Iterator<Item = &Quadruple> + '_ {
        self.tetrahedra.iter()
    }

    /// Every stored triple in every ordering.
    pub fn triangles_expanded(&self) -> Vec<Triple> {
        self.triangles.iter().flat_map(all_permutations3).collect()
    }

    /// Every stored quadruple in all twelve even orderings.
    pub fn tetrahedra_expanded(&self) -> Vec<Quadruple> {
        self.tetrahedra.iter().flat_map(even_permutations).collect()
    }

    pub fn check_projection(&self) -> Result<()> {
        for q in &self.tetrahedra {
            for skip in 0..4 {
                let f: Vec<&Name> = (0..4).filter(|&i| i != skip).map(|i| &q[i]).collect();
                if !self.contains_triangle(f[0], f[1], f[2]) {
                    return Err(Error::ProjectionFailure(q.to_vec()));
                }
            }
        }
        Ok(())
    }

    /// Checks the oriented-graph condition: related vertices exist, are
    /// neutral, and at most one per triangle is an α-vertex.
    pub fn check_against(&self, g: &Graph) -> Result<()> {
        for t in &self.triangles {
            let mut alphas = 0;
            for v in t {
                match g.label(v) {
                    None => return Err(Error::DanglingName(v.clone())),
                    Some(l) if l.is_charge() => return Err(Error::InvalidOrientation(format!("charged vertex {v} in triangle {t:?}"))),
                    Some(VertexLabel::Alpha) => alphas += 1,
                    _ => {}
                }
            }
            if alphas > 1 {
                return Err(Error::InvalidOrientation(format!("triangle {t:?} has more than one alpha vertex")));
            }
        }
        for q in &self.tetrahedra {
            if let Some(v) = q.iter().find(|v| !g.contains(v)) {
                return Err(Error::DanglingName(v.clone()));
            }
        }
        self.check_projection()
    }

    pub(crate) fn remove_vertex(&mut self, v: &str) {
        self.triangles.retain(|t| !t.iter().any(|x| x == v));
        self.tetrahedra.retain(|q| !q.iter().any(|x| x == v));
    }

    pub(crate) fn restrict(&self, keep: &BTreeSet<Name>) -> Orientation {
        Orientation {
            triangles: self.triangles.iter().filter(|t| t.iter().all(|x| keep.contains(x))).cloned().collect(),
            tetrahedra: self.tetrahedra.iter().filter(|q| q.iter().all(|x| keep.contains(x))).cloned().collect(),
        }
    }

    /// Image under a vertex function; tuples that collapse are dropped.
    pub(crate) fn rename(&self, f: &dyn Fn(&Name) -> Name) -> Orientation {
        let mut out = Orientation::default();
        for t in &self.triangles {
            let img = [f(&t[0]), f(&t[1]), f(&t[2])];
            if !has_repeat(&img) {
                out.insert_triangle_unchecked(&img);
            }
        }
        for q in &self.tetrahedra {
            let img = [f(&q[0]), f(&q[1]), f(&q[2]), f(&q[3])];
            if !has_repeat(&img) {
                out.tetrahedra.insert(canonical_tetrahedron(&img));
            }
        }
        out
    }

    pub(crate) fn union(&self, other: &Orientation) -> Orientation {
        Orientation {
            triangles: self.triangles.union(&other.triangles).cloned().collect(),
            tetrahedra: self.tetrahedra.union(&other.tetrahedra).cloned().collect(),
        }
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn tetrahedron_count(&self) -> usize {
        self.tetrahedra.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrientationClass {
    Preserving,
    Reflecting,
    Neither,
    Both,
}

/// Classifies a labelled-graph isomorphism `f: M → N` by its action on the
/// orientations.
pub fn check_orientation_map(f: &VertexMap, m: &Graph, n: &Graph) -> Result<OrientationClass> {
    if let Some(reason) = iso::isomorphism_defect(f, m, n) {
        return Err(Error::NotIsomorphism(reason));
    }
    let (om, on) = (m.orientation(), n.orientation());
    let img = |v: &Name| f[v].clone();
    let triangles_ok = om.triangle_count() == on.triangle_count()
        && om.triangle_orbits().all(|t| on.contains_triangle(&img(&t[0]), &img(&t[1]), &img(&t[2])));
    if !triangles_ok {
        return Ok(OrientationClass::Neither);
    }
    let same_count = om.tetrahedron_count() == on.tetrahedron_count();
    // f is a bijection, so the orbit counts matching plus forward inclusion
    // gives the biconditional.
    let preserving =
        same_count && om.tetrahedron_orbits().all(|q| on.contains_tetrahedron(&img(&q[0]), &img(&q[1]), &img(&q[2]), &img(&q[3])));
    let reflecting =
        same_count && om.tetrahedron_orbits().all(|q| on.contains_tetrahedron(&img(&q[3]), &img(&q[0]), &img(&q[1]), &img(&q[2])));
    Ok(match (preserving, reflecting) {
        (true, true) => OrientationClass::Both,
        (true, false) => OrientationClass::Preserving,
        (false, true) => OrientationClass::Reflecting,
        (false, false) => OrientationClass::Neither,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chirality {
    /// A reflecting isomorphism exists and no preserving one does.
    Chiral {
        witness: VertexMap,
    },
    /// Isomorphic, and some isomorphism preserves orientation (or none reflects).
    Achiral {
        witness: VertexMap,
    },
    NotIsomorphic,
}

impl Chirality {
    pub fn is_chiral(&self) -> bool {
        matches!(self, Chirality::Chiral { .. })
    }
}

/// Decides chirality by enumerating every labelled isomorphism.
pub fn are_chiral(m: &Graph, n: &Graph) -> Chirality {
    let mut reflecting = None;
    let mut preserving = None;
    let mut any = None;
    iso::for_each_isomorphism(m, n, |f| {
        any.get_or_insert_with(|| f.clone());
        match check_orientation_map(f, m, n).expect("enumerated maps are isomorphisms") {
            OrientationClass::Preserving | OrientationClass::Both => {
                preserving = Some(f.clone());
                return false;
            }
            OrientationClass::Reflecting => {
                reflecting.get_or_insert_with(|| f.clone());
            }
            OrientationClass::Neither => {}
        }
        true
    });
    match (preserving, reflecting, any) {
        (Some(w), _, _) => Chirality::Achiral { witness: w },
        (None, Some(w), _) => Chirality::Chiral { witness: w },
        (None, None, Some(w)) => Chirality::Achiral { witness: w },
        (None, None, None) => Chirality::NotIsomorphic,
    }
}
