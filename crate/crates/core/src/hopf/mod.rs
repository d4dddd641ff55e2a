//! The Connes-Kreimer Hopf algebra: free commutative algebra on 1PI graphs,
//! with coproduct `Δ(Γ) = Γ⊗1 + 1⊗Γ + Σ_γ γ⊗Γ/γ` over divergent subgraphs.

mod element;

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_traits::One;
use thiserror::Error;

pub use element::{HopfElement, Monomial, TensorElement};

use crate::exact::Rational;
use crate::graph::{CanonicalKey, FeynmanGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator name {0} is already registered")]
    DuplicateName(String),
    #[error("generator {0} is not one-particle irreducible")]
    NotOnePi(String),
    #[error("generator {0} has an odd number of edges, excluded in even mode")]
    OddEdgeCount(String),
    #[error("iterated coproduct needs n >= 1, got {0}")]
    BadIteration(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid Hopf element JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Grading {
    #[default]
    LoopNumber,
    EdgeCount,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RegistryConfig {
    /// Spacetime dimension `D` used for superficial degrees.
    pub dim: i64,
    /// Restrict to graphs (and subgraph components) with an even edge count.
    pub even_only: bool,
    pub grading: Grading,
}

impl Default for RegistryConfig {
    fn default() -> Self {
        RegistryConfig { dim: 4, even_only: false, grading: Grading::LoopNumber }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    graph: FeynmanGraph,
    degree: usize,
}

#[derive(Default)]
struct Inner {
    entries: BTreeMap<String, Entry>,
    by_key: BTreeMap<CanonicalKey, String>,
    auto_count: usize,
    coproducts: BTreeMap<String, TensorElement>,
    antipodes: BTreeMap<String, HopfElement>,
}

/// Named generators of the Hopf algebra. Subgraphs and quotients met while
/// computing coproducts are identified by canonical key; unseen ones are
/// registered automatically as `auto1`, `auto2`, ...
///
/// Append-only; all methods take `&self`.
pub struct GeneratorRegistry {
    config: RegistryConfig,
    inner: Mutex<Inner>,
}

impl GeneratorRegistry {
    pub fn new(config: RegistryConfig) -> Self {
        GeneratorRegistry { config, inner: Mutex::new(Inner::default()) }
    }

    pub fn config(&self) -> RegistryConfig {
        self.config
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Inner> {
        self.inner.lock().expect("registry lock poisoned")
    }

    fn degree_of(&self, g: &FeynmanGraph) -> usize {
        match self.config.grading {
            Grading::LoopNumber => g.loop_number(),
            Grading::EdgeCount => g.num_edges(),
        }
    }

    fn admit(&self, name: &str, g: &FeynmanGraph) -> Result<(), HopfError> {
        if !g.is_one_pi() {
            return Err(HopfError::NotOnePi(name.to_string()));
        }
        if self.config.even_only && g.num_edges() % 2 == 1 {
            return Err(HopfError::OddEdgeCount(name.to_string()));
        }
        Ok(())
    }

    /// Registers `graph` under `name`. Explicit names take precedence over
    /// automatic ones for later canonical-key lookups.
    pub fn register(&self, name: &str, graph: FeynmanGraph) -> Result<(), HopfError> {
        self.admit(name, &graph)?;
        let key = graph.canonical_key().ok();
        let degree = self.degree_of(&graph);
        let mut inner = self.lock();
        if inner.entries.contains_key(name) {
            return Err(HopfError::DuplicateName(name.to_string()));
        }
        if let Some(k) = key {
            let replace = match inner.by_key.get(&k) {
                None => true,
                Some(existing) => existing.starts_with("auto"),
            };
            if replace {
                inner.by_key.insert(k, name.to_string());
            }
        }
        inner.entries.insert(name.to_string(), Entry { graph, degree });
        Ok(())
    }

    /// Name of the generator isomorphic to `graph`, registering it if new.
    pub fn resolve(&self, graph: &FeynmanGraph) -> Result<String, HopfError> {
        let key = graph.canonical_key()?;
        let mut inner = self.lock();
        if let Some(n) = inner.by_key.get(&key) {
            return Ok(n.clone());
        }
        let name = format!("auto{}", inner.auto_count + 1);
        self.admit(&name, graph)?;
        inner.auto_count += 1;
        let degree = self.degree_of(graph);
        inner.by_key.insert(key, name.clone());
        inner.entries.insert(name.clone(), Entry { graph: graph.clone(), degree });
        Ok(name)
    }

    pub fn graph(&self, name: &str) -> Result<FeynmanGraph, HopfError> {
        self.lock()
            .entries
            .get(name)
            .map(|e| e.graph.clone())
            .ok_or_else(|| HopfError::UnknownGenerator(name.to_string()))
    }

    pub fn names(&self) -> Vec<String> {
        self.lock().entries.keys().cloned().collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lock().entries.contains_key(name)
    }

    pub fn degree(&self, name: &str) -> Result<usize, HopfError> {
        self.lock()
            .entries
            .get(name)
            .map(|e| e.degree)
            .ok_or_else(|| HopfError::UnknownGenerator(name.to_string()))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Result<usize, HopfError> {
        m.factors().iter().map(|g| self.degree(g)).sum()
    }

    /// Highest degree among the terms (0 for scalars and zero).
    pub fn element_degree(&self, x: &HopfElement) -> Result<usize, HopfError> {
        x.terms().map(|(m, _)| self.monomial_degree(m)).try_fold(0, |a, d| d.map(|d| a.max(d)))
    }

    /// Degree-`d` part of `x`.
    pub fn homogeneous(&self, x: &HopfElement, d: usize) -> Result<HopfElement, HopfError> {
        let mut out = HopfElement::zero();
        for (m, c) in x.terms() {
            if self.monomial_degree(m)? == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// `Δ` of a single generator, memoised.
    pub fn coproduct_generator(&self, name: &str) -> Result<TensorElement, HopfError> {
        if let Some(t) = self.lock().coproducts.get(name) {
            return Ok(t.clone());
        }
        let g = self.graph(name)?;
        let gen = Monomial::generator(name);
        let mut t = TensorElement::zero(2);
        t.add_term(vec![gen.clone(), Monomial::one()], Rational::one());
        t.add_term(vec![Monomial::one(), gen], Rational::one());
        for s in g.divergent_subgraphs(self.config.dim, self.config.even_only)? {
            let mut left = Monomial::one();
            for c in g.subgraph_components(s) {
                left = left.mul(&Monomial::generator(self.resolve(&g.subgraph(c)?)?));
            }
            let right = Monomial::generator(self.resolve(&g.quotient(s)?)?);
            t.add_term(vec![left, right], Rational::one());
        }
        self.lock().coproducts.insert(name.to_string(), t.clone());
        Ok(t)
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<TensorElement, HopfError> {
        let mut acc = TensorElement::from_terms(2, [(vec![Monomial::one(), Monomial::one()], Rational::one())]);
        for g in m.factors() {
            acc = &acc * &self.coproduct_generator(g)?;
        }
        Ok(acc)
    }

    pub fn coproduct(&self, x: &HopfElement) -> Result<TensorElement, HopfError> {
        let mut out = TensorElement::zero(2);
        for (m, c) in x.terms() {
            out = &out + &self.coproduct_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// `Δ̃(m) = Δ(m) - m⊗1 - 1⊗m` for `m ≠ 1`, and `Δ̃(1) = 0`.
    pub fn reduced_coproduct_monomial(&self, m: &Monomial) -> Result<TensorElement, HopfError> {
        if m.is_one() {
            return Ok(TensorElement::zero(2));
        }
        let mut t = self.coproduct_monomial(m)?;
        t.add_term(vec![m.clone(), Monomial::one()], -Rational::one());
        t.add_term(vec![Monomial::one(), m.clone()], -Rational::one());
        Ok(t)
    }

    pub fn reduced_coproduct(&self, x: &HopfElement) -> Result<TensorElement, HopfError> {
        self.reduced_coproduct_iterated(x, 1)
    }

    /// `Δ̃` applied `n` times, giving an `(n+1)`-fold tensor. Vanishes on a
    /// degree-`d` element once `n >= d`.
    pub fn reduced_coproduct_iterated(&self, x: &HopfElement, n: usize) -> Result<TensorElement, HopfError> {
        if n == 0 {
            return Err(HopfError::BadIteration(n));
        }
        let mut t = TensorElement::from_terms(1, x.terms().map(|(m, c)| (vec![m.clone()], c.clone())));
        for k in 0..n {
            let mut err = None;
            t = t.expand_leg(k, 2, |m| match self.reduced_coproduct_monomial(m) {
                Ok(r) => r,
                Err(e) => {
                    err = Some(e);
                    TensorElement::zero(2)
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(t)
    }

    /// Applies `Δ` to leg `i` of `t`.
    pub fn coproduct_on_leg(&self, t: &TensorElement, i: usize) -> Result<TensorElement, HopfError> {
        let mut err = None;
        let out = t.expand_leg(i, 2, |m| match self.coproduct_monomial(m) {
            Ok(r) => r,
            Err(e) => {
                err = Some(e);
                TensorElement::zero(2)
            }
        });
        err.map_or(Ok(out), Err)
    }

    /// `S(Γ) = -Γ - Σ S(Γ')Γ''` over the reduced coproduct; memoised per generator.
    pub fn antipode_generator(&self, name: &str) -> Result<HopfElement, HopfError> {
        if let Some(s) = self.lock().antipodes.get(name) {
            return Ok(s.clone());
        }
        let mut s = -&HopfElement::generator(name);
        for (legs, c) in self.reduced_coproduct_monomial(&Monomial::generator(name))?.terms() {
            let left = self.antipode_monomial(&legs[0])?;
            s = &s - &(&left * &HopfElement::from_monomial(legs[1].clone(), c.clone()));
        }
        self.lock().antipodes.insert(name.to_string(), s.clone());
        Ok(s)
    }

    pub fn antipode_monomial(&self, m: &Monomial) -> Result<HopfElement, HopfError> {
        let mut acc = HopfElement::one();
        for g in m.factors() {
            acc = &acc * &self.antipode_generator(g)?;
        }
        Ok(acc)
    }

    pub fn antipode(&self, x: &HopfElement) -> Result<HopfElement, HopfError> {
        let mut out = HopfElement::zero();
        for (m, c) in x.terms() {
            out = &out + &self.antipode_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// Applies `S` to leg `i` of `t`.
    pub fn antipode_on_leg(&self, t: &TensorElement, i: usize) -> Result<TensorElement, HopfError> {
        let mut err = None;
        let out = t.expand_leg(i, 1, |m| match self.antipode_monomial(m) {
            Ok(s) => TensorElement::from_terms(1, s.terms().map(|(m, c)| (vec![m.clone()], c.clone()))),
            Err(e) => {
                err = Some(e);
                TensorElement::zero(1)
            }
        });
        err.map_or(Ok(out), Err)
    }

    /// All monomials in the currently registered generators with degree in `1..=max_degree`.
    pub fn monomials_up_to(&self, max_degree: usize) -> Result<Vec<Monomial>, HopfError> {
        let gens: Vec<(String, usize)> = self
            .names()
            .into_iter()
            .map(|n| self.degree(&n).map(|d| (n, d)))
            .collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        fn grow(gens: &[(String, usize)], from: usize, left: usize, cur: &mut Vec<String>, out: &mut Vec<Monomial>) {
            if !cur.is_empty() {
                out.push(Monomial::from_names(cur.iter().cloned()));
            }
            for k in from..gens.len() {
                let d = gens[k].1;
                if d == 0 || d > left {
                    continue;
                }
                cur.push(gens[k].0.clone());
                grow(gens, k, left - d, cur, out);
                cur.pop();
            }
        }
        grow(&gens, 0, max_degree, &mut Vec::new(), &mut out);
        out.sort_by_cached_key(|m| (self.monomial_degree(m).unwrap_or(0), m.clone()));
        Ok(out)
    }
}
