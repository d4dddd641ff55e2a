//! Graph polynomials in Schwinger parameters `t_1..t_n` and the linear map
//! `Υ: t ↦ M_Γ(t)` into `ℓ×ℓ` matrices.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::linalg::{poly_det, rank};
use crate::exact::{rat, MultiPoly, Rational, Vars};
use crate::graph::{EdgeSet, FeynmanGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymanzikError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the two sides of cut {0:?} carry different momentum squares")]
    CutSides(Vec<usize>),
    #[error("dimension must be at least 1, got {0}")]
    Dimension(i64),
    #[error("exponent {which} = {numerator}/2 is not an integer")]
    HalfInteger { which: &'static str, numerator: i64 },
}

/// `t1..tn`, one Schwinger parameter per internal edge.
pub fn edge_vars(n: usize) -> Vars {
    Vars::numbered("t", n)
}

fn connected(g: &FeynmanGraph) -> Result<(), SymanzikError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(GraphError::Disconnected.into())
    }
}

fn edge_monomial(vars: &Vars, s: EdgeSet, c: Rational) -> MultiPoly {
    let mut exps = vec![0u32; vars.len()];
    for i in s.iter() {
        exps[i] = 1;
    }
    MultiPoly::monomial(vars, exps, c)
}

/// First Symanzik (Kirchhoff) polynomial `Σ_T Π_{e∉T} t_e`.
pub fn psi(g: &FeynmanGraph) -> Result<MultiPoly, SymanzikError> {
    connected(g)?;
    let vars = edge_vars(g.num_edges());
    let all = g.all_edges();
    let mut out = MultiPoly::zero(&vars);
    for t in g.spanning_trees()? {
        out = &out + &edge_monomial(&vars, all.minus(t), rat(1));
    }
    Ok(out)
}

fn matrix_from_eta(eta: &[Vec<i64>], vars: &Vars) -> Vec<Vec<MultiPoly>> {
    let l = eta.first().map_or(0, Vec::len);
    (0..l)
        .map(|k| {
            (0..l)
                .map(|r| {
                    eta.iter().enumerate().fold(MultiPoly::zero(vars), |acc, (i, row)| {
                        let c = row[k] * row[r];
                        if c == 0 {
                            acc
                        } else {
                            &acc + &MultiPoly::var(vars, i).scale(&rat(c))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `(M_Γ)_{kr} = Σ_i t_i η_{ik} η_{ir}` for the default cycle basis.
pub fn graph_matrix(g: &FeynmanGraph) -> Result<Vec<Vec<MultiPoly>>, SymanzikError> {
    connected(g)?;
    Ok(matrix_from_eta(&g.cycle_basis_matrix()?, &edge_vars(g.num_edges())))
}

/// [`graph_matrix`] for the fundamental cycles of a chosen spanning tree.
pub fn graph_matrix_with_tree(g: &FeynmanGraph, tree: EdgeSet) -> Result<Vec<Vec<MultiPoly>>, SymanzikError> {
    Ok(matrix_from_eta(&g.cycle_basis_matrix_with_tree(tree)?, &edge_vars(g.num_edges())))
}

pub fn matrix_det(m: &[Vec<MultiPoly>], n_edges: usize) -> MultiPoly {
    poly_det(m, &edge_vars(n_edges))
}

/// `det M_Γ == Ψ_Γ`, exactly.
pub fn matrix_tree_check(g: &FeynmanGraph) -> Result<bool, SymanzikError> {
    Ok(matrix_det(&graph_matrix(g)?, g.num_edges()) == psi(g)?)
}

fn dot(p: &[Rational]) -> Rational {
    p.iter().map(|x| x * x).sum()
}

/// Second Symanzik polynomial `Σ_C s_C Π_{e∈C} t_e` over complements of
/// spanning 2-forests, `s_C` the Euclidean square of the momentum entering
/// one side. Both sides are computed and must agree.
pub fn second_symanzik(g: &FeynmanGraph) -> Result<MultiPoly, SymanzikError> {
    connected(g)?;
    let vars = edge_vars(g.num_edges());
    let side = |vs: &std::collections::BTreeSet<usize>| {
        let mut p = vec![Rational::zero(); g.momentum_dim()];
        for &v in vs {
            for (a, b) in p.iter_mut().zip(g.vertex_momentum(v)) {
                *a += b;
            }
        }
        dot(&p)
    };
    let mut out = MultiPoly::zero(&vars);
    for c in g.cut_sets()? {
        let comps = g.components_after_removing(c);
        debug_assert_eq!(comps.len(), 2);
        let (s0, s1) = (side(&comps[0]), side(&comps[1]));
        if s0 != s1 {
            return Err(SymanzikError::CutSides(c.iter().collect()));
        }
        if !s0.is_zero() {
            out = &out + &edge_monomial(&vars, c, s0);
        }
    }
    Ok(out)
}

/// The `n × ℓ²` integer matrix of `Υ`: row `i` is `η_i η_iᵀ` flattened row-major.
pub fn upsilon_matrix(g: &FeynmanGraph) -> Result<Vec<Vec<i64>>, SymanzikError> {
    connected(g)?;
    Ok(upsilon_from_eta(&g.cycle_basis_matrix()?))
}

/// [`upsilon_matrix`] for the fundamental cycles of a chosen spanning tree.
pub fn upsilon_matrix_with_tree(g: &FeynmanGraph, tree: EdgeSet) -> Result<Vec<Vec<i64>>, SymanzikError> {
    Ok(upsilon_from_eta(&g.cycle_basis_matrix_with_tree(tree)?))
}

fn upsilon_from_eta(eta: &[Vec<i64>]) -> Vec<Vec<i64>> {
    eta.iter().map(|row| row.iter().flat_map(|a| row.iter().map(move |b| a * b)).collect()).collect()
}

/// Rank over ℚ of an integer matrix.
pub fn rank_of_rows(rows: &[Vec<i64>]) -> usize {
    let q: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    rank(&q)
}

/// Rank of the linear map `Υ` (the column space of [`upsilon_matrix`]'s transpose).
pub fn upsilon_rank(g: &FeynmanGraph) -> Result<usize, SymanzikError> {
    Ok(rank_of_rows(&upsilon_matrix(g)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub edges: usize,
    pub loops: usize,
    /// `None` for a single vertex.
    pub edge_connectivity: Option<usize>,
    pub three_edge_connected: bool,
    pub rank: usize,
    /// `rank Υ = n`.
    pub globally_injective: bool,
    /// Per loop `i`: the row projection `Υ_i` is injective on the parameters
    /// of the edges of loop `i`.
    pub loop_rows_injective: Vec<bool>,
    /// The loops with injective `Υ_i` together contain every edge.
    pub injective_loops_cover_edges: bool,
    /// No loops: every check above holds vacuously.
    pub degenerate: bool,
}

/// Embedding diagnostics for `Υ`.
pub fn upsilon_embedding_tests(g: &FeynmanGraph) -> Result<EmbeddingReport, SymanzikError> {
    connected(g)?;
    let eta = g.cycle_basis_matrix()?;
    let n = g.num_edges();
    let l = g.loop_number();
    let ups = upsilon_from_eta(&eta);
    let rank = rank_of_rows(&ups);
    let mut covered = EdgeSet::EMPTY;
    let mut flags = Vec::with_capacity(l);
    for i in 0..l {
        let support: Vec<usize> = (0..n).filter(|&e| eta[e][i] != 0).collect();
        // Υ_i(t)_r = Σ_e t_e η_ei η_er; a row per edge of the loop.
        let rows: Vec<Vec<i64>> = support.iter().map(|&e| (0..l).map(|r| eta[e][i] * eta[e][r]).collect()).collect();
        let ok = rank_of_rows(&rows) == support.len();
        if ok {
            covered = covered.union(EdgeSet::from_indices(support));
        }
        flags.push(ok);
    }
    let connectivity = g.edge_connectivity()?;
    Ok(EmbeddingReport {
        edges: n,
        loops: l,
        edge_connectivity: connectivity,
        three_edge_connected: connectivity.is_none_or(|k| k >= 3),
        rank,
        globally_injective: rank == n,
        loop_rows_injective: flags,
        injective_loops_cover_edges: covered == g.all_edges(),
        degenerate: l == 0,
    })
}

/// Exponent data of the parametric integrand on matrix space:
/// `P(x,p)^a / det(x)^b` times an `n`-form on `ℓ²`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaFormSpec {
    pub edges: usize,
    pub loops: usize,
    pub dim: i64,
    /// `a = -n + Dℓ/2`.
    pub numerator_exponent: i64,
    /// `b = -n + (ℓ+1)D/2`.
    pub denominator_exponent: i64,
    pub form_degree: usize,
    pub ambient_dim: usize,
}

pub fn eta_form(g: &FeynmanGraph, dim: i64) -> Result<EtaFormSpec, SymanzikError> {
    if dim < 1 {
        return Err(SymanzikError::Dimension(dim));
    }
    let n = g.num_edges() as i64;
    let l = g.loop_number() as i64;
    let half = |which, x: i64| {
        if x % 2 == 0 {
            Ok(x / 2)
        } else {
            Err(SymanzikError::HalfInteger { which, numerator: x })
        }
    };
    Ok(EtaFormSpec {
        edges: g.num_edges(),
        loops: g.loop_number(),
        dim,
        numerator_exponent: -n + half("a", dim * l)?,
        denominator_exponent: -n + half("b", dim * (l + 1))?,
        form_degree: g.num_edges(),
        ambient_dim: g.loop_number().pow(2),
    })
}

/// `Ψ_Γ`, `M_Γ`, `P_Γ` and the cycle incidence `η` of one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SymanzikData {
    pub psi: MultiPoly,
    pub matrix: Vec<Vec<MultiPoly>>,
    pub second: MultiPoly,
    pub eta: Vec<Vec<i64>>,
}

impl SymanzikData {
    pub fn new(g: &FeynmanGraph) -> Result<Self, SymanzikError> {
        Ok(SymanzikData {
            psi: psi(g)?,
            matrix: graph_matrix(g)?,
            second: second_symanzik(g)?,
            eta: g.cycle_basis_matrix()?,
        })
    }
}
