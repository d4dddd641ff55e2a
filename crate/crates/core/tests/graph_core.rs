mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rb_renorm::graph::catalog::*;
use rb_renorm::graph::{EdgeSet, FeynmanGraph, GraphError, Label};

fn set(idx: &[usize]) -> EdgeSet {
    EdgeSet::from_indices(idx.iter().copied())
}

/// Brute force: smallest edge subset whose removal disconnects the vertex set.
fn connectivity_oracle(g: &FeynmanGraph) -> usize {
    let n = g.num_edges();
    let mut best = usize::MAX;
    for m in 0..(1u64 << n) {
        let removed = EdgeSet(m);
        if g.components_after_removing(removed).len() > 1 {
            best = best.min(removed.len());
        }
    }
    best
}

/// Kirchhoff: determinant of the reduced Laplacian, via integer Bareiss elimination.
fn laplacian_tree_count(g: &FeynmanGraph) -> i128 {
    let n = g.num_vertices();
    if n <= 1 {
        return 1;
    }
    let mut lap = vec![vec![0i128; n]; n];
    for e in g.edges().iter().filter(|e| e.tail != e.head) {
        lap[e.tail][e.tail] += 1;
        lap[e.head][e.head] += 1;
        lap[e.tail][e.head] -= 1;
        lap[e.head][e.tail] -= 1;
    }
    let mut a: Vec<Vec<i128>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    let m = n - 1;
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

#[test]
fn loop_numbers() {
    assert_eq!(triangle().loop_number(), 1);
    assert_eq!(sunset().loop_number(), 2);
    assert_eq!(single_edge().loop_number(), 0);
    assert_eq!(bubble_chain3().loop_number(), 3);
    assert_eq!(nested_eye().loop_number(), 3);
}

#[test]
fn edge_connectivity_examples_and_oracle() {
    assert_eq!(sunset().edge_connectivity().unwrap(), Some(3));
    assert_eq!(bridged_triangles().edge_connectivity().unwrap(), Some(1));
    assert_eq!(triangle().edge_connectivity().unwrap(), Some(2));
    assert_eq!(tadpole().edge_connectivity().unwrap(), None);
    for name in NAMES {
        let g = by_name(name).unwrap();
        if let Some(k) = g.edge_connectivity().unwrap() {
            assert_eq!(k, connectivity_oracle(&g), "{name}");
        }
    }
    let disconnected = FeynmanGraph::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![("e1".into(), "a".into(), "b".into())],
        vec![],
        None,
    )
    .unwrap();
    assert_eq!(disconnected.edge_connectivity(), Err(GraphError::Disconnected));
}

#[test]
fn spanning_tree_examples() {
    assert_eq!(triangle().spanning_trees().unwrap().len(), 3);
    assert_eq!(sunset().spanning_trees().unwrap(), vec![set(&[0]), set(&[1]), set(&[2])]);
    assert_eq!(banana(4).spanning_trees().unwrap().len(), 4);
    assert_eq!(tadpole().spanning_trees().unwrap(), vec![EdgeSet::EMPTY]);
    for name in NAMES {
        let g = by_name(name).unwrap();
        assert_eq!(g.spanning_trees().unwrap().len() as i128, laplacian_tree_count(&g), "{name}");
    }
}

#[test]
fn cut_set_examples() {
    assert_eq!(sunset().cut_sets().unwrap(), vec![set(&[0, 1, 2])]);
    let tri = triangle().cut_sets().unwrap();
    assert_eq!(tri.len(), 3);
    assert!(tri.iter().all(|c| c.len() == 2));
    assert_eq!(single_edge().cut_sets().unwrap(), vec![set(&[0])]);
    for name in NAMES {
        let g = by_name(name).unwrap();
        for c in g.cut_sets().unwrap() {
            assert_eq!(g.components_after_removing(c).len(), 2, "{name}");
        }
    }
}

#[test]
fn superficial_degrees() {
    assert_eq!(bubble().superficial_degree(4), 0);
    assert_eq!(sunset().superficial_degree(4), 2);
    assert_eq!(triangle().superficial_degree(4), -2);
}

#[test]
fn divergent_subgraph_examples() {
    assert!(bubble().divergent_subgraphs(4, false).unwrap().is_empty());
    assert!(triangle().divergent_subgraphs(4, false).unwrap().is_empty());
    assert_eq!(double_bubble().divergent_subgraphs(4, false).unwrap(), vec![set(&[0, 1]), set(&[2, 3])]);
    assert_eq!(eye().divergent_subgraphs(4, false).unwrap(), vec![set(&[2, 3])]);
    // three bubbles, two adjacent pairs and the disjoint outer pair
    assert_eq!(bubble_chain3().divergent_subgraphs(4, false).unwrap().len(), 6);
    // sunset: each pair of edges is a bubble; in even mode they all survive
    assert_eq!(sunset().divergent_subgraphs(4, false).unwrap().len(), 3);
    assert!(matches!(bridged_triangles().divergent_subgraphs(4, false), Err(GraphError::NotOnePi)));
}

#[test]
fn even_filter_drops_odd_subgraphs() {
    let g = nested_eye();
    let all = g.divergent_subgraphs(4, false).unwrap();
    let even = g.divergent_subgraphs(4, true).unwrap();
    assert!(even.iter().all(|s| s.len() % 2 == 0));
    assert_eq!(even, all.into_iter().filter(|s| s.len() % 2 == 0).collect::<Vec<_>>());
}

#[test]
fn quotient_examples() {
    let q = double_bubble().quotient(set(&[0, 1])).unwrap();
    assert_eq!(q.canonical_key().unwrap(), bubble().canonical_key().unwrap());
    let q = sunset().quotient(set(&[0, 1])).unwrap();
    assert_eq!((q.num_vertices(), q.num_edges(), q.loop_number()), (1, 1, 1));
    assert_eq!(q.canonical_key().unwrap(), tadpole().canonical_key().unwrap());
    assert_eq!(bubble().quotient(bubble().all_edges()), Err(GraphError::ContractsEverything));
}

#[test]
fn subgraph_legs_follow_cut_edges() {
    let g = nested_eye();
    let sub = g.subgraph(set(&[2, 3])).unwrap();
    assert_eq!(sub.canonical_key().unwrap(), bubble().canonical_key().unwrap());
    let chain = g.subgraph(set(&[2, 3, 4, 5])).unwrap();
    assert_eq!(chain.canonical_key().unwrap(), double_bubble().canonical_key().unwrap());
}

#[test]
fn canonical_keys_separate_catalog() {
    let keys: BTreeSet<_> = NAMES.iter().map(|n| by_name(n).unwrap().canonical_key().unwrap()).collect();
    assert_eq!(keys.len(), NAMES.len());
    assert!(matches!(banana(13).canonical_key(), Err(GraphError::TooLarge { .. })));
}

#[test]
fn momentum_conservation_is_enforced() {
    let r = FeynmanGraph::new(
        vec!["a".into(), "b".into()],
        vec![("e1".into(), "a".into(), "b".into())],
        vec![("a".into(), vec![r(1)]), ("b".into(), vec![r(2)])],
        None,
    );
    assert_eq!(r, Err(GraphError::MomentumNotConserved));
}

#[test]
fn json_round_trip_and_schema() {
    let src = r#"{"vertices":["u","v"],"internal_edges":[[1,"u","v"],[2,"u","v"]],
        "external_edges":[{"vertex":"u","momentum":[1,"1/2"]},{"vertex":"v","momentum":["-1","-1/2"]}],
        "valences":[3,4]}"#;
    let g = FeynmanGraph::from_json(src).unwrap();
    assert_eq!(g.edges()[0].id, Label::Int(1));
    assert_eq!(g.legs()[0].momentum[1], q(1, 2));
    let back = FeynmanGraph::from_json_value(g.to_json_value()).unwrap();
    assert_eq!(back, g);
}

/// Oriented incidence matrix times a cycle column must vanish.
fn is_cycle(g: &FeynmanGraph, eta: &[Vec<i64>], k: usize) -> bool {
    (0..g.num_vertices()).all(|v| {
        g.edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let inc = (e.head == v) as i64 - (e.tail == v) as i64;
                inc * eta[i][k]
            })
            .sum::<i64>()
            == 0
    })
}

#[test]
fn cycle_basis_columns_are_independent_cycles() {
    for name in NAMES {
        let g = by_name(name).unwrap();
        let eta = g.cycle_basis_matrix().unwrap();
        let ell = g.loop_number();
        assert!(eta.iter().all(|row| row.len() == ell));
        for k in 0..ell {
            assert!(is_cycle(&g, &eta, k), "{name} column {k}");
        }
        let rows: Vec<Vec<_>> = eta.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect();
        assert_eq!(rb_renorm::exact::linalg::rank(&rows), ell, "{name}");
    }
}

fn relabel(g: &FeynmanGraph, perm: &[usize], flip: u64) -> FeynmanGraph {
    let name = |v: usize| Label::Name(format!("w{}", perm[v]));
    let mut vertices: Vec<Label> = (0..g.num_vertices()).map(name).collect();
    vertices.sort();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let (t, h) = if flip >> i & 1 == 1 { (e.head, e.tail) } else { (e.tail, e.head) };
            (Label::Int(i as i64), name(t), name(h))
        })
        .rev()
        .collect();
    let legs = g.legs().iter().map(|l| (name(l.vertex), l.momentum.clone())).collect();
    FeynmanGraph::new(vertices, edges, legs, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_key_is_relabelling_invariant(idx in 0..NAMES.len(), seed in any::<u64>(), flip in any::<u64>()) {
        let g = by_name(NAMES[idx]).unwrap();
        let n = g.num_vertices();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(&g, &perm, flip);
        prop_assert_eq!(g.canonical_key().unwrap(), h.canonical_key().unwrap());
        prop_assert_eq!(g.loop_number(), h.loop_number());
        prop_assert_eq!(g.spanning_trees().unwrap().len(), h.spanning_trees().unwrap().len());
    }

    #[test]
    fn loop_number_is_additive_over_quotients(idx in 0..NAMES.len(), m in any::<u64>()) {
        let g = by_name(NAMES[idx]).unwrap();
        let s = EdgeSet(m & g.all_edges().0);
        prop_assume!(!s.is_empty() && s != g.all_edges());
        let q = g.quotient(s).unwrap();
        prop_assert_eq!(g.loop_number(), g.subgraph_loop_number(s) + q.loop_number());
    }
}
