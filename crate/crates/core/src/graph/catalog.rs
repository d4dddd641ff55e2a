//! Standard small graphs of φ⁴-type theories, with simple conserved momenta
//! in two Euclidean dimensions.

use super::{FeynmanGraph, Label};
use crate::exact::{rat, Rational};

fn p(a: i64, b: i64) -> Vec<Rational> {
    vec![rat(a), rat(b)]
}

fn build(vertices: &[&str], edges: &[(&str, &str)], legs: &[(&str, Vec<Rational>)]) -> FeynmanGraph {
    FeynmanGraph::new(
        vertices.iter().map(|&v| Label::from(v)).collect(),
        edges
            .iter()
            .enumerate()
            .map(|(i, (t, h))| (Label::Name(format!("e{}", i + 1)), Label::from(*t), Label::from(*h)))
            .collect(),
        legs.iter().map(|(v, q)| (Label::from(*v), q.clone())).collect(),
        None,
    )
    .expect("catalog graphs are well formed")
}

/// One-loop bubble: two vertices, two parallel edges, two legs at each vertex.
pub fn bubble() -> FeynmanGraph {
    build(&["a", "b"], &[("a", "b"), ("a", "b")], &[("a", p(1, 0)), ("a", p(0, 1)), ("b", p(-1, 0)), ("b", p(0, -1))])
}

/// Two-loop sunset: three parallel edges, one leg at each vertex.
pub fn sunset() -> FeynmanGraph {
    build(&["a", "b"], &[("a", "b"), ("a", "b"), ("a", "b")], &[("a", p(1, 2)), ("b", p(-1, -2))])
}

/// Two bubbles in a row sharing the middle vertex.
pub fn double_bubble() -> FeynmanGraph {
    build(
        &["u", "v", "w"],
        &[("u", "v"), ("u", "v"), ("v", "w"), ("v", "w")],
        &[("u", p(1, 0)), ("u", p(0, 1)), ("w", p(-1, 0)), ("w", p(0, -1))],
    )
}

/// Three bubbles in a row.
pub fn bubble_chain3() -> FeynmanGraph {
    build(
        &["u", "v", "w", "x"],
        &[("u", "v"), ("u", "v"), ("v", "w"), ("v", "w"), ("w", "x"), ("w", "x")],
        &[("u", p(1, 0)), ("u", p(0, 1)), ("x", p(-1, 0)), ("x", p(0, -1))],
    )
}

/// `k` bubbles in a row (`k >= 1`), legs as in [`bubble`] at the two ends.
pub fn bubble_chain(k: usize) -> FeynmanGraph {
    let names: Vec<String> = (0..=k).map(|i| format!("v{i}")).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str)> = (0..k).flat_map(|i| [(vs[i], vs[i + 1]), (vs[i], vs[i + 1])]).collect();
    build(&vs, &edges, &[(vs[0], p(1, 0)), (vs[0], p(0, 1)), (vs[k], p(-1, 0)), (vs[k], p(0, -1))])
}

pub fn triangle() -> FeynmanGraph {
    build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")], &[("a", p(1, 0)), ("b", p(0, 1)), ("c", p(-1, -1))])
}

/// Two-loop vertex graph: a bubble on one side of a triangle.
pub fn eye() -> FeynmanGraph {
    build(
        &["A", "B", "C"],
        &[("A", "B"), ("A", "C"), ("B", "C"), ("B", "C")],
        &[("A", p(1, 0)), ("A", p(0, 1)), ("B", p(-1, 0)), ("C", p(0, -1))],
    )
}

/// Three-loop vertex graph: the bubble of [`eye`] replaced by two bubbles in a row.
pub fn nested_eye() -> FeynmanGraph {
    build(
        &["A", "B", "E", "C"],
        &[("A", "B"), ("A", "C"), ("B", "E"), ("B", "E"), ("E", "C"), ("E", "C")],
        &[("A", p(1, 0)), ("A", p(0, 1)), ("B", p(-1, 0)), ("C", p(0, -1))],
    )
}

/// One vertex with a self-loop and two legs.
pub fn tadpole() -> FeynmanGraph {
    build(&["a"], &[("a", "a")], &[("a", p(1, 0)), ("a", p(-1, 0))])
}

/// `k` parallel edges between two vertices.
pub fn banana(k: usize) -> FeynmanGraph {
    let edges = vec![("a", "b"); k];
    build(&["a", "b"], &edges, &[("a", p(1, 2)), ("b", p(-1, -2))])
}

pub fn single_edge() -> FeynmanGraph {
    build(&["a", "b"], &[("a", "b")], &[("a", p(1, 2)), ("b", p(-1, -2))])
}

/// Two triangles joined by one bridge edge.
pub fn bridged_triangles() -> FeynmanGraph {
    build(
        &["a", "b", "c", "d", "e", "f"],
        &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "d")],
        &[("a", p(1, 0)), ("f", p(-1, 0))],
    )
}

pub fn by_name(name: &str) -> Option<FeynmanGraph> {
    Some(match name {
        "bubble" => bubble(),
        "sunset" => sunset(),
        "double_bubble" => double_bubble(),
        "bubble_chain3" => bubble_chain3(),
        "bubble_chain4" => bubble_chain(4),
        "triangle" => triangle(),
        "eye" => eye(),
        "nested_eye" => nested_eye(),
        "tadpole" => tadpole(),
        "single_edge" => single_edge(),
        "bridged_triangles" => bridged_triangles(),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &[
    "bubble",
    "sunset",
    "double_bubble",
    "bubble_chain3",
    "bubble_chain4",
    "triangle",
    "eye",
    "nested_eye",
    "tadpole",
    "single_edge",
    "bridged_triangles",
];
