#![allow(dead_code)]

use proptest::prelude::*;
use rb_renorm::exact::{rat, Rational};
use rb_renorm::{LaurentContext, LaurentPoly, MultiPoly, Vars};
use std::sync::Arc;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn poly_strategy(vars: Vars, max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), small_rational()), 0..=max_terms)
        .prop_map(move |terms| MultiPoly::from_terms(&vars, terms).unwrap())
}

pub fn laurent_strategy(ctx: Arc<LaurentContext>, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    let nd = ctx.distinguished.len();
    let na = ctx.ambient.len();
    prop::collection::vec(
        (prop::collection::vec(-2i32..=2, nd), prop::collection::vec(0i32..=2, na), small_rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        LaurentPoly::from_terms(
            &ctx,
            terms.into_iter().map(|(mut d, a, c)| {
                d.extend(a);
                (d, c)
            }),
        )
        .unwrap()
    })
}

pub fn r(n: i64) -> Rational {
    rat(n)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The standard generator library used across the Hopf and Birkhoff tests.
pub fn library_registry() -> rb_renorm::hopf::GeneratorRegistry {
    use rb_renorm::graph::catalog;
    use rb_renorm::hopf::{GeneratorRegistry, RegistryConfig};
    let reg = GeneratorRegistry::new(RegistryConfig::default());
    for (name, g) in [
        ("B", catalog::bubble()),
        ("gamma2", catalog::double_bubble()),
        ("sunset", catalog::sunset()),
        ("triangle", catalog::triangle()),
        ("eye", catalog::eye()),
        ("chain3", catalog::bubble_chain3()),
        ("chain4", catalog::bubble_chain(4)),
        ("X", catalog::nested_eye()),
        ("tadpole", catalog::tadpole()),
    ] {
        reg.register(name, g).unwrap();
    }
    reg
}

/// Connected multigraphs with self-loops allowed, `1..=max_v` vertices and at
/// most `max_e` edges, one per isomorphism class (brute force over vertex
/// permutations).
pub fn small_multigraphs(max_v: usize, max_e: usize) -> Vec<rb_renorm::graph::FeynmanGraph> {
    use rb_renorm::graph::{FeynmanGraph, Label};
    use std::collections::BTreeSet;

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for &(a, b) in edges {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        let r = find(&mut comp, 0);
        (0..n).all(|v| find(&mut comp, v) == r)
    }

    let mut out = Vec::new();
    for n in 1..=max_v {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let ps = perms(n);
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        let mut stack: Vec<(usize, Vec<(usize, usize)>)> = vec![(0, vec![])];
        while let Some((from, edges)) = stack.pop() {
            if connected(n, &edges) {
                let key = ps
                    .iter()
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> =
                            edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                        e.sort();
                        e
                    })
                    .min()
                    .unwrap();
                if seen.insert(key) {
                    out.push(
                        FeynmanGraph::new(
                            (0..n as i64).map(Label::Int).collect(),
                            edges
                                .iter()
                                .enumerate()
                                .map(|(i, &(a, b))| (Label::Int(i as i64), Label::Int(a as i64), Label::Int(b as i64)))
                                .collect(),
                            vec![],
                            None,
                        )
                        .unwrap(),
                    );
                }
            }
            if edges.len() < max_e {
                for k in from..pairs.len() {
                    let mut e = edges.clone();
                    e.push(pairs[k]);
                    stack.push((k, e));
                }
            }
        }
    }
    out
}

/// Kirchhoff polynomial by deletion-contraction on a plain edge list, with
/// edge `i` carrying the variable `t{i+1}`; `vars` are all `n` variables.
pub fn psi_deletion_contraction(n_vertices: usize, edges: &[(usize, usize, usize)], vars: &Vars) -> MultiPoly {
    // edges: (variable index, endpoint, endpoint)
    let Some((&(var, a, b), rest)) = edges.split_first() else {
        return MultiPoly::one(vars);
    };
    let t = MultiPoly::var(vars, var);
    if a == b {
        return &t * &psi_deletion_contraction(n_vertices, rest, vars);
    }
    let contracted: Vec<(usize, usize, usize)> = rest
        .iter()
        .map(|&(v, x, y)| {
            let f = |u: usize| if u == b { a } else { u };
            (v, f(x), f(y))
        })
        .collect();
    let contract = psi_deletion_contraction(n_vertices, &contracted, vars);
    // Deleting a bridge disconnects: its term drops out.
    let mut reach = vec![false; n_vertices];
    reach[a] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(_, x, y) in rest {
            if reach[x] != reach[y] {
                reach[x] = true;
                reach[y] = true;
                changed = true;
            }
        }
    }
    if reach[b] {
        &contract + &(&t * &psi_deletion_contraction(n_vertices, rest, vars))
    } else {
        contract
    }
}
