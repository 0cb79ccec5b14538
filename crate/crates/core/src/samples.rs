//! Small hand-encoded graphs used by tests, examples and the CLI docs.

use crate::graph::Graph;
use crate::orientation::Orientation;
use crate::rewrite::ReactionScheme;

fn g(vertices: &[(&str, &str)], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::build(vertices, edges).expect("sample graphs are well formed")
}

pub fn dihydrogen() -> Graph {
    g(&[("h1", "H"), ("h2", "H")], &[("h1", "h2", "1")])
}

/// H₂C=C=O
pub fn ethenone() -> Graph {
    g(
        &[("c1", "C"), ("c2", "C"), ("o", "O"), ("h1", "H"), ("h2", "H")],
        &[("c1", "c2", "2"), ("c2", "o", "2"), ("c1", "h1", "1"), ("c1", "h2", "1")],
    )
}

/// CO₃²⁻ with both negative charges as explicit vertices.
pub fn carbonate() -> Graph {
    g(
        &[("c", "C"), ("o1", "O"), ("o2", "O"), ("o3", "O"), ("m1", "-"), ("m2", "-")],
        &[("c", "o1", "2"), ("c", "o2", "1"), ("c", "o3", "1"), ("o2", "m1", "1"), ("o3", "m2", "1")],
    )
}

/// Acetyl synthon CH₃–C(=O)–α.
pub fn synthon() -> Graph {
    g(
        &[("c1", "C"), ("c2", "C"), ("o", "O"), ("h1", "H"), ("h2", "H"), ("h3", "H"), ("a", "alpha")],
        &[("c1", "c2", "1"), ("c2", "o", "2"), ("c2", "a", "1"), ("c1", "h1", "1"), ("c1", "h2", "1"), ("c1", "h3", "1")],
    )
}

/// Na–(+)~(−)–Cl: sodium chloride as an ionic pair.
pub fn sodium_chloride() -> Graph {
    g(&[("na", "Na"), ("p", "+"), ("m", "-"), ("cl", "Cl")], &[("na", "p", "1"), ("cl", "m", "1"), ("p", "m", "ionic")])
}

pub fn water() -> Graph {
    g(&[("o", "O"), ("h1", "H"), ("h2", "H")], &[("o", "h1", "1"), ("o", "h2", "1")])
}

pub fn hydrogen_chloride() -> Graph {
    g(&[("h", "H"), ("cl", "Cl")], &[("h", "cl", "1")])
}

pub fn ethane() -> Graph {
    g(
        &[("c1", "C"), ("c2", "C"), ("h1", "H"), ("h2", "H"), ("h3", "H"), ("h4", "H"), ("h5", "H"), ("h6", "H")],
        &[
            ("c1", "c2", "1"),
            ("c1", "h1", "1"),
            ("c1", "h2", "1"),
            ("c1", "h3", "1"),
            ("c2", "h4", "1"),
            ("c2", "h5", "1"),
            ("c2", "h6", "1"),
        ],
    )
}

pub fn ethene() -> Graph {
    g(
        &[("c1", "C"), ("c2", "C"), ("h1", "H"), ("h2", "H"), ("h3", "H"), ("h4", "H")],
        &[("c1", "c2", "2"), ("c1", "h1", "1"), ("c1", "h2", "1"), ("c2", "h3", "1"), ("c2", "h4", "1")],
    )
}

/// CH₃–CH₂–OH; `c1` carries the hydroxyl.
pub fn ethanol() -> Graph {
    g(
        &[("c1", "C"), ("c2", "C"), ("o", "O"), ("h1", "H"), ("h2", "H"), ("h3", "H"), ("h4", "H"), ("h5", "H"), ("ho", "H")],
        &[
            ("c1", "c2", "1"),
            ("c1", "o", "1"),
            ("o", "ho", "1"),
            ("c1", "h1", "1"),
            ("c1", "h2", "1"),
            ("c2", "h3", "1"),
            ("c2", "h4", "1"),
            ("c2", "h5", "1"),
        ],
    )
}

/// CH₃–CH₂–Cl
pub fn chloroethane() -> Graph {
    g(
        &[("c1", "C"), ("c2", "C"), ("cl", "Cl"), ("h1", "H"), ("h2", "H"), ("h3", "H"), ("h4", "H"), ("h5", "H")],
        &[
            ("c1", "c2", "1"),
            ("c1", "cl", "1"),
            ("c1", "h1", "1"),
            ("c1", "h2", "1"),
            ("c2", "h3", "1"),
            ("c2", "h4", "1"),
            ("c2", "h5", "1"),
        ],
    )
}

/// Substitution template `C(α)₃–Cl + α–O–H → C(α)₃–O–α + H–Cl`: a chlorinated
/// carbon and a hydroxyl exchange partners, releasing HCl.
pub fn substitution_scheme() -> ReactionScheme {
    let left = g(
        &[("c", "C"), ("x1", "alpha"), ("x2", "alpha"), ("x3", "alpha"), ("cl", "Cl"), ("o", "O"), ("y", "alpha"), ("h", "H")],
        &[("c", "x1", "1"), ("c", "x2", "1"), ("c", "x3", "1"), ("c", "cl", "1"), ("o", "y", "1"), ("o", "h", "1")],
    );
    let right = g(
        &[("c", "C"), ("x1", "alpha"), ("x2", "alpha"), ("x3", "alpha"), ("cl", "Cl"), ("o", "O"), ("y", "alpha"), ("h", "H")],
        &[("c", "x1", "1"), ("c", "x2", "1"), ("c", "x3", "1"), ("c", "o", "1"), ("o", "y", "1"), ("h", "cl", "1")],
    );
    let bijection = left.neutral_vertices().into_iter().map(|v| (v.clone(), v)).collect();
    ReactionScheme::new(left, right, bijection).expect("substitution scheme is valid")
}

fn tetra(gens: &[[&str; 4]]) -> Orientation {
    let gens: Vec<[String; 4]> = gens.iter().map(|q| q.map(String::from)).collect();
    Orientation::close(&[], &gens).expect("sample orientation is valid")
}

fn oriented(mut graph: Graph, gens: &[[&str; 4]]) -> Graph {
    graph.set_orientation(tetra(gens)).expect("sample orientation fits the graph");
    graph
}

/// 2-butanol skeleton around the stereocentre `c`: substituents `1` (H),
/// `2` (methyl C), `3` (methylene C), `4` (O).
fn butan_2_ol() -> Graph {
    g(
        &[
            ("c", "C"),
            ("1", "H"),
            ("2", "C"),
            ("3", "C"),
            ("4", "O"),
            ("2a", "H"),
            ("2b", "H"),
            ("2c", "H"),
            ("3a", "H"),
            ("3b", "H"),
            ("t", "C"),
            ("ta", "H"),
            ("tb", "H"),
            ("tc", "H"),
            ("4h", "H"),
        ],
        &[
            ("c", "1", "1"),
            ("c", "2", "1"),
            ("c", "3", "1"),
            ("c", "4", "1"),
            ("2", "2a", "1"),
            ("2", "2b", "1"),
            ("2", "2c", "1"),
            ("3", "3a", "1"),
            ("3", "3b", "1"),
            ("3", "t", "1"),
            ("t", "ta", "1"),
            ("t", "tb", "1"),
            ("t", "tc", "1"),
            ("4", "4h", "1"),
        ],
    )
}

/// The two configurations of 2-butanol, oriented by `(1,2,3,4)` and `(4,1,2,3)`.
pub fn butan_2_ol_pair() -> (Graph, Graph) {
    (oriented(butan_2_ol(), &[["1", "2", "3", "4"]]), oriented(butan_2_ol(), &[["4", "1", "2", "3"]]))
}

/// Isopentane around the branching carbon `c`: `1` (H), `2` and `4` (methyl
/// carbons), `3` (methylene C).
fn isopentane() -> Graph {
    g(
        &[
            ("c", "C"),
            ("1", "H"),
            ("2", "C"),
            ("3", "C"),
            ("4", "C"),
            ("2a", "H"),
            ("2b", "H"),
            ("2c", "H"),
            ("4a", "H"),
            ("4b", "H"),
            ("4c", "H"),
            ("3a", "H"),
            ("3b", "H"),
            ("t", "C"),
            ("ta", "H"),
            ("tb", "H"),
            ("tc", "H"),
        ],
        &[
            ("c", "1", "1"),
            ("c", "2", "1"),
            ("c", "3", "1"),
            ("c", "4", "1"),
            ("2", "2a", "1"),
            ("2", "2b", "1"),
            ("2", "2c", "1"),
            ("4", "4a", "1"),
            ("4", "4b", "1"),
            ("4", "4c", "1"),
            ("3", "3a", "1"),
            ("3", "3b", "1"),
            ("3", "t", "1"),
            ("t", "ta", "1"),
            ("t", "tb", "1"),
            ("t", "tc", "1"),
        ],
    )
}

pub fn isopentane_pair() -> (Graph, Graph) {
    (oriented(isopentane(), &[["1", "2", "3", "4"]]), oriented(isopentane(), &[["4", "1", "2", "3"]]))
}

/// 1,3-dichloroallene: terminal carbons `2` and `5` around the central `m`,
/// with substituents `1`,`3` on `2` and `4`,`6` on `5`. `chlorine_at` picks
/// which of `4`/`6` carries chlorine (the other is hydrogen).
fn dichloroallene(chlorine_at: &str) -> Graph {
    let (l4, l6) = if chlorine_at == "4" { ("Cl", "H") } else { ("H", "Cl") };
    g(
        &[("1", "Cl"), ("2", "C"), ("3", "H"), ("m", "C"), ("5", "C"), ("4", l4), ("6", l6)],
        &[("2", "1", "1"), ("2", "3", "1"), ("2", "m", "2"), ("m", "5", "2"), ("5", "4", "1"), ("5", "6", "1")],
    )
}

pub fn dichloroallene_pair() -> (Graph, Graph) {
    let gens = [["1", "2", "3", "4"], ["6", "1", "2", "3"]];
    (oriented(dichloroallene("6"), &gens), oriented(dichloroallene("4"), &gens))
}
