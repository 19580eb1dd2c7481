//! Bundled example inputs: small groups, G-complexes, representations,
//! stratified complexes and distributions.

use crate::gspace::GComplex;
use crate::io::input::{ComplexSpec, GroupSpec, RepSpec, StrataSpec};
use crate::large_dev::DiscreteObservable;
use crate::linear_rep::LinearAction;
use crate::matrix::Matrix;
use crate::perm_group::{FiniteGroup, Permutation};
use crate::phase_diagram::StratifiedComplex;

fn cycles(degree: usize, gens: &[&str]) -> FiniteGroup {
    let perms = gens.iter().map(|g| Permutation::from_cycles(degree, g).expect("fixture cycles")).collect();
    FiniteGroup::generate(degree, perms).expect("fixture group")
}

pub fn trivial() -> FiniteGroup {
    FiniteGroup::trivial(1)
}

pub fn cyclic2() -> FiniteGroup {
    cycles(2, &["(0 1)"])
}

pub fn cyclic4() -> FiniteGroup {
    cycles(4, &["(0 1 2 3)"])
}

pub fn symmetric3() -> FiniteGroup {
    cycles(3, &["(0 1)", "(0 1 2)"])
}

/// Symmetries of a square with vertices 0..3 in cyclic order.
pub fn dihedral8() -> FiniteGroup {
    cycles(4, &["(0 1 2 3)", "(1 3)"])
}

pub fn alternating4() -> FiniteGroup {
    cycles(4, &["(0 1 2)", "(0 1)(2 3)"])
}

pub fn symmetric4() -> FiniteGroup {
    cycles(4, &["(0 1)", "(0 1 2 3)"])
}

/// `(name, group)` for every bundled group, smallest first.
pub fn groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("trivial", trivial()),
        ("c2", cyclic2()),
        ("c4", cyclic4()),
        ("s3", symmetric3()),
        ("d4", dihedral8()),
        ("a4", alternating4()),
        ("s4", symmetric4()),
    ]
}

pub fn square_edges() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]
}

/// Square under the C₂ reflection fixing vertices 0 and 2.
pub fn square_reflection_spec() -> ComplexSpec {
    ComplexSpec { vertices: 4, simplices: square_edges(), action: Some(vec![vec![0, 3, 2, 1]]) }
}

/// Square under the free C₂ half-turn.
pub fn square_half_turn_spec() -> ComplexSpec {
    ComplexSpec { vertices: 4, simplices: square_edges(), action: Some(vec![vec![2, 3, 0, 1]]) }
}

pub fn point_spec() -> ComplexSpec {
    ComplexSpec { vertices: 1, simplices: Vec::new(), action: None }
}

pub fn square_reflection() -> (FiniteGroup, GComplex) {
    let g = cyclic2();
    let x = square_reflection_spec().build(&g).expect("fixture complex");
    (g, x)
}

pub fn square_half_turn() -> (FiniteGroup, GComplex) {
    let g = cyclic2();
    let x = square_half_turn_spec().build(&g).expect("fixture complex");
    (g, x)
}

/// Every bundled `(name, group, complex)` pair: the point under each group
/// and the two square actions.
pub fn g_spaces() -> Vec<(String, FiniteGroup, GComplex)> {
    let mut out: Vec<(String, FiniteGroup, GComplex)> =
        groups().into_iter().map(|(n, g)| { let x = GComplex::point(&g); (format!("point/{n}"), g, x) }).collect();
    let (g, x) = square_reflection();
    out.push(("square-reflection".into(), g, x));
    let (g, x) = square_half_turn();
    out.push(("square-half-turn".into(), g, x));
    out
}

/// The 2-dimensional standard representation of S₃ on `{x : Σx_i = 0}` in
/// the basis `e₀ − e₁, e₁ − e₂`, for the generators of [`symmetric3`].
pub fn s3_standard() -> (FiniteGroup, LinearAction) {
    let g = symmetric3();
    let gens = vec![Matrix::from_i64(&[&[-1, 1], &[0, 1]]), Matrix::from_i64(&[&[0, -1], &[1, -1]])];
    let rep = LinearAction::new(&g, 2, gens).expect("fixture representation");
    (g, rep)
}

pub fn s3_permutation() -> (FiniteGroup, LinearAction) {
    let g = symmetric3();
    let rep = LinearAction::permutation(&g);
    (g, rep)
}

/// C₂ acting on the plane by a reflection.
pub fn c2_plane() -> (FiniteGroup, LinearAction) {
    let g = cyclic2();
    let rep = LinearAction::new(&g, 2, vec![Matrix::from_i64(&[&[1, 0], &[0, -1]])]).expect("fixture representation");
    (g, rep)
}

pub fn representations() -> Vec<(&'static str, FiniteGroup, LinearAction)> {
    let mut out = Vec::new();
    let (g, r) = s3_standard();
    out.push(("s3-standard", g, r));
    let (g, r) = s3_permutation();
    out.push(("s3-permutation", g, r));
    let (g, r) = c2_plane();
    out.push(("c2-plane", g, r));
    let g = symmetric4();
    let r = LinearAction::permutation(&g);
    out.push(("s4-permutation", g, r));
    let g = dihedral8();
    let r = LinearAction::permutation(&g);
    out.push(("d4-permutation", g, r));
    out
}

/// Segment `0 – 1 – 2` with the midpoint as the lower stratum.
pub fn segment_midpoint_spec() -> StrataSpec {
    StrataSpec {
        vertices: 3,
        simplices: vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]],
        poset: vec![[0, 1]],
        assignment: vec![1, 0, 1, 1, 1],
        codim: Some(vec![1, 0]),
    }
}

/// A path whose `k`-th stratum adds vertex `k` and the edge reaching it,
/// so every closure is connected and the strata form a chain.
pub fn chain_spec(n: usize) -> StrataSpec {
    let mut simplices: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut assignment: Vec<usize> = (0..n).collect();
    for v in 1..n {
        simplices.push(vec![v - 1, v]);
        assignment.push(v);
    }
    StrataSpec {
        vertices: n,
        simplices,
        poset: (1..n).map(|k| [k - 1, k]).collect(),
        assignment,
        codim: Some((0..n).map(|k| (n - 1 - k) as i64).collect()),
    }
}

/// The reflected square stratified by isotropy: stratum 0 is the free
/// part, stratum 1 the two fixed vertices.
pub fn square_strata_spec() -> StrataSpec {
    let mut simplices: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
    simplices.extend(square_edges());
    StrataSpec {
        vertices: 4,
        simplices,
        poset: vec![[1, 0]],
        assignment: vec![1, 0, 1, 0, 0, 0, 0, 0],
        codim: Some(vec![0, 1]),
    }
}

pub fn strata() -> Vec<(&'static str, StratifiedComplex)> {
    vec![
        ("segment-midpoint", segment_midpoint_spec().build().expect("fixture strata")),
        ("chain5", chain_spec(5).build().expect("fixture strata")),
        ("square-strata", square_strata_spec().build().expect("fixture strata")),
    ]
}

pub const BERNOULLI_PARAMETERS: [f64; 4] = [0.1, 0.3, 0.5, 0.7];

pub fn bernoulli_profiles() -> Vec<(f64, DiscreteObservable)> {
    BERNOULLI_PARAMETERS.iter().map(|&p| (p, DiscreteObservable::bernoulli(p).expect("fixture parameter"))).collect()
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// Input files for the command line, as `(file name, JSON text)`.
pub fn seed_files() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (name, g) in groups() {
        out.push((format!("group_{name}.json"), pretty(&GroupSpec::from_group(&g))));
    }
    out.push(("complex_point.json".into(), pretty(&point_spec())));
    out.push(("complex_square_reflection.json".into(), pretty(&square_reflection_spec())));
    out.push(("complex_square_half_turn.json".into(), pretty(&square_half_turn_spec())));
    out.push(("strata_segment_midpoint.json".into(), pretty(&segment_midpoint_spec())));
    out.push(("strata_chain5.json".into(), pretty(&chain_spec(5))));
    out.push(("strata_square.json".into(), pretty(&square_strata_spec())));
    for (name, _, rep) in representations() {
        out.push((format!("rep_{name}.json"), pretty(&RepSpec::from_matrices(rep.dim(), rep.generators()))));
    }
    out.push(("ade_corpus.json".into(), crate::singularity::corpus::bundled_json().to_string()));
    let dists: Vec<serde_json::Value> = bernoulli_profiles()
        .iter()
        .map(|(p, o)| {
            let spec: Vec<String> = o.outcomes().iter().map(|(v, q)| format!("{v}:{q}")).collect();
            serde_json::json!({ "p": p, "dist": spec.join(",") })
        })
        .collect();
    out.push(("bernoulli_profiles.json".into(), pretty(&dists)));
    out
}
