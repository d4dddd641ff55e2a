mod common;

use std::time::Instant;

use common::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rb_renorm::exact::linalg::det;
use rb_renorm::graph::{catalog, FeynmanGraph, GraphError, Label};
use rb_renorm::symanzik::*;
use rb_renorm::{MultiPoly, Rational};

fn parse(vars: &rb_renorm::Vars, terms: &[(&[u32], i64)]) -> MultiPoly {
    MultiPoly::from_terms(vars, terms.iter().map(|(e, c)| (e.to_vec(), r(*c)))).unwrap()
}

fn edge_list(g: &FeynmanGraph) -> Vec<(usize, usize, usize)> {
    g.edges().iter().enumerate().map(|(i, e)| (i, e.tail, e.head)).collect()
}

/// Spanning-tree count from the reduced Laplacian.
fn kirchhoff_count(g: &FeynmanGraph) -> Rational {
    let n = g.num_vertices();
    let mut lap = vec![vec![r(0); n]; n];
    for e in g.edges().iter().filter(|e| !e.is_self_loop()) {
        lap[e.tail][e.tail] += r(1);
        lap[e.head][e.head] += r(1);
        lap[e.tail][e.head] -= r(1);
        lap[e.head][e.tail] -= r(1);
    }
    let minor: Vec<Vec<Rational>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    det(&minor)
}

#[test]
fn psi_examples() {
    let v3 = edge_vars(3);
    assert_eq!(psi(&catalog::triangle()).unwrap(), parse(&v3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]));
    let sunset = psi(&catalog::sunset()).unwrap();
    assert_eq!(sunset, parse(&v3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]));
    assert_eq!(sunset.to_string(), "t1*t2+t1*t3+t2*t3");
    let v1 = edge_vars(1);
    assert_eq!(psi(&catalog::tadpole()).unwrap(), MultiPoly::var(&v1, 0));

    let split = FeynmanGraph::new(
        vec![Label::Int(0), Label::Int(1)],
        vec![(Label::Int(0), Label::Int(0), Label::Int(0))],
        vec![],
        None,
    )
    .unwrap();
    assert_eq!(psi(&split), Err(SymanzikError::Graph(GraphError::Disconnected)));
}

#[test]
fn psi_matches_deletion_contraction_and_tree_count() {
    for name in catalog::NAMES {
        let g = catalog::by_name(name).unwrap();
        let p = psi(&g).unwrap();
        let vars = edge_vars(g.num_edges());
        assert_eq!(p, psi_deletion_contraction(g.num_vertices(), &edge_list(&g), &vars), "{name}");
        assert_eq!(r(p.num_terms() as i64), kirchhoff_count(&g), "{name}");
        assert!(p.terms().all(|(e, c)| *c == r(1) && e.iter().sum::<u32>() as usize == g.loop_number()));
    }
}

#[test]
fn graph_matrix_examples() {
    let tri = graph_matrix(&catalog::triangle()).unwrap();
    assert_eq!(tri.len(), 1);
    assert_eq!(tri[0][0], psi(&catalog::triangle()).unwrap());

    let g = catalog::sunset();
    let m = graph_matrix(&g).unwrap();
    assert_eq!(m.len(), 2);
    assert_eq!(m[0][1], m[1][0]);
    let v3 = edge_vars(3);
    // Tree {e1}; loops through the chords e2 and e3 share e1.
    assert_eq!(m[0][0], parse(&v3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]));
    assert_eq!(m[1][1], parse(&v3, &[(&[1, 0, 0], 1), (&[0, 0, 1], 1)]));
    assert_eq!(matrix_det(&m, 3), psi(&g).unwrap());

    let tree = catalog::single_edge();
    let m = graph_matrix(&tree).unwrap();
    assert!(m.is_empty());
    assert_eq!(matrix_det(&m, 1), MultiPoly::one(&edge_vars(1)));
    assert!(matrix_tree_check(&tree).unwrap());
}

#[test]
fn matrix_tree_theorem_on_all_small_multigraphs() {
    let start = Instant::now();
    let graphs = small_multigraphs(5, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in &graphs {
        assert!(matrix_tree_check(g).unwrap(), "{g:?}");
        let trees = g.spanning_trees().unwrap();
        for t in trees.choose_multiple(&mut rng, 3) {
            let m = graph_matrix_with_tree(g, *t).unwrap();
            assert_eq!(matrix_det(&m, g.num_edges()), psi(g).unwrap());
            assert_eq!(rank_of_rows(&upsilon_matrix_with_tree(g, *t).unwrap()), upsilon_rank(g).unwrap());
        }
    }
    // Isomorphism classes counted independently: 7, 34, 93, 149, 122 on 1..5 vertices.
    assert_eq!(graphs.len(), 405);
    assert!(start.elapsed().as_secs() < 60);
}

/// `P` from spanning 2-forests enumerated directly over edge subsets.
fn second_by_forests(g: &FeynmanGraph) -> MultiPoly {
    let n = g.num_edges();
    let nv = g.num_vertices();
    let vars = edge_vars(n);
    let mut out = MultiPoly::zero(&vars);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize + 2 != nv {
            continue;
        }
        let mut comp: Vec<usize> = (0..nv).collect();
        let mut acyclic = true;
        for (i, e) in g.edges().iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let (a, b) = (comp[e.tail], comp[e.head]);
            if a == b {
                acyclic = false;
                break;
            }
            for c in comp.iter_mut() {
                if *c == b {
                    *c = a;
                }
            }
        }
        if !acyclic {
            continue;
        }
        let side = comp[0];
        let mut p = vec![r(0); g.momentum_dim()];
        for v in (0..nv).filter(|&v| comp[v] == side) {
            for (a, b) in p.iter_mut().zip(g.vertex_momentum(v)) {
                *a += b;
            }
        }
        let s: Rational = p.iter().map(|x| x * x).sum();
        let exps: Vec<u32> = (0..n).map(|i| (mask & (1 << i) == 0) as u32).collect();
        out = &out + &MultiPoly::monomial(&vars, exps, s);
    }
    out
}

#[test]
fn second_symanzik_examples() {
    let v3 = edge_vars(3);
    // p = (1, 2), p² = 5.
    assert_eq!(second_symanzik(&catalog::sunset()).unwrap(), parse(&v3, &[(&[1, 1, 1], 5)]));
    assert_eq!(second_symanzik(&catalog::single_edge()).unwrap(), parse(&edge_vars(1), &[(&[1], 5)]));

    let zero = FeynmanGraph::new(
        vec![Label::Int(0), Label::Int(1)],
        vec![(Label::Int(0), Label::Int(0), Label::Int(1)), (Label::Int(1), Label::Int(0), Label::Int(1))],
        vec![(Label::Int(0), vec![r(0), r(0)]), (Label::Int(1), vec![r(0), r(0)])],
        None,
    )
    .unwrap();
    assert!(second_symanzik(&zero).unwrap().is_zero());

    for name in catalog::NAMES {
        let g = catalog::by_name(name).unwrap();
        let p = second_symanzik(&g).unwrap();
        assert_eq!(p, second_by_forests(&g), "{name}");
        assert!(p.terms().all(|(e, _)| e.iter().sum::<u32>() as usize == g.loop_number() + 1), "{name}");
    }
}

#[test]
fn upsilon_examples() {
    let tri = upsilon_matrix(&catalog::triangle()).unwrap();
    assert_eq!(tri, vec![vec![1], vec![1], vec![1]]);
    let sunset = upsilon_matrix(&catalog::sunset()).unwrap();
    assert_eq!((sunset.len(), sunset[0].len()), (3, 4));
    assert_eq!(rank_of_rows(&sunset), 3);
    let tree = upsilon_matrix(&catalog::single_edge()).unwrap();
    assert_eq!(tree, vec![Vec::<i64>::new()]);
}

#[test]
fn embedding_reports() {
    let rep = upsilon_embedding_tests(&catalog::sunset()).unwrap();
    assert!(rep.globally_injective);
    assert_eq!(rep.rank, 3);
    assert_eq!(rep.edge_connectivity, Some(3));
    assert!(rep.three_edge_connected);
    assert_eq!(rep.loop_rows_injective, vec![true, true]);
    assert!(rep.injective_loops_cover_edges);
    assert!(!rep.degenerate);

    // Two parameters map onto one matrix entry.
    let rep = upsilon_embedding_tests(&catalog::bubble()).unwrap();
    assert_eq!(rep.rank, 1);
    assert!(!rep.globally_injective);
    assert_eq!(rep.loop_rows_injective, vec![false]);
    assert!(!rep.injective_loops_cover_edges);

    let rep = upsilon_embedding_tests(&catalog::single_edge()).unwrap();
    assert!(rep.degenerate);
    assert!(rep.loop_rows_injective.is_empty());
    assert!(!rep.globally_injective);

    let rep = upsilon_embedding_tests(&catalog::banana(4)).unwrap();
    assert!(rep.globally_injective);
    assert_eq!(rep.rank, 4);
}

#[test]
fn eta_form_exponents() {
    let s = eta_form(&catalog::sunset(), 4).unwrap();
    assert_eq!((s.numerator_exponent, s.denominator_exponent, s.form_degree, s.ambient_dim), (1, 3, 3, 4));
    let b = eta_form(&catalog::bubble(), 4).unwrap();
    assert_eq!((b.numerator_exponent, b.denominator_exponent), (0, 2));
    // Log divergent: n = Dℓ/2.
    let g = catalog::double_bubble();
    assert_eq!(g.superficial_degree(4), 0);
    assert_eq!(eta_form(&g, 4).unwrap().numerator_exponent, 0);
    assert!(matches!(eta_form(&catalog::bubble(), 3), Err(SymanzikError::HalfInteger { which: "a", .. })));
    assert!(matches!(eta_form(&catalog::bubble(), 0), Err(SymanzikError::Dimension(0))));
}

#[test]
fn data_bundle_invariants() {
    for name in ["sunset", "eye", "nested_eye", "bubble_chain3"] {
        let g = catalog::by_name(name).unwrap();
        let d = SymanzikData::new(&g).unwrap();
        assert_eq!(matrix_det(&d.matrix, g.num_edges()), d.psi);
        assert_eq!(d.eta.len(), g.num_edges());
        for (k, row) in d.matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x, &d.matrix[j][k]);
            }
        }
    }
}
