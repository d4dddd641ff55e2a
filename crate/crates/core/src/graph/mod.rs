//! Feynman multigraphs: internal edges with orientation, external legs with
//! momenta, and the combinatorics the Hopf algebra and the graph polynomials
//! are built from.

mod canonical;
pub mod catalog;
mod edge_set;
mod json;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canonical::{CanonicalKey, DEFAULT_KEY_EDGE_BOUND};
pub use edge_set::EdgeSet;
pub(crate) use edge_set::UnionFind;

use crate::exact::Rational;

/// Largest edge count for which subgraph enumeration is attempted.
pub const SUBGRAPH_ENUMERATION_BOUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Label),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Label),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(Label),
    #[error("graph has {0} internal edges; at most 64 are supported")]
    TooManyEdges(usize),
    #[error("external momenta have inconsistent dimensions")]
    MomentumDimension,
    #[error("external momenta do not sum to zero")]
    MomentumNotConserved,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not one-particle irreducible")]
    NotOnePi,
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("subgraph must be non-empty")]
    EmptySubgraph,
    #[error("contracting every internal edge is not a valid quotient")]
    ContractsEverything,
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("graph has {edges} internal edges, above the bound {bound}; register it under an explicit name instead")]
    TooLarge { edges: usize, bound: usize },
    #[error("canonical labelling search exceeded its budget; register the graph under an explicit name instead")]
    SearchBudget,
    #[error("malformed graph: {0}")]
    Malformed(String),
}

/// Vertex or edge identifier as it appears in input (integer or string).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Name(s.to_string())
    }
}

impl From<i64> for Label {
    fn from(i: i64) -> Self {
        Label::Int(i)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: Label,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_self_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Leg {
    pub vertex: usize,
    pub momentum: Vec<Rational>,
}

/// A finite multigraph with oriented internal edges and external legs.
///
/// Invariants: endpoints exist, edge ids are unique, all momenta share one
/// dimension and sum to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FeynmanGraph {
    vertices: Vec<Label>,
    edges: Vec<Edge>,
    legs: Vec<Leg>,
    valences: Option<BTreeSet<usize>>,
    momentum_dim: usize,
}

impl FeynmanGraph {
    pub fn new(
        vertices: Vec<Label>,
        edges: Vec<(Label, Label, Label)>,
        legs: Vec<(Label, Vec<Rational>)>,
        valences: Option<BTreeSet<usize>>,
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let idx = |l: &Label| vertices.iter().position(|v| v == l).ok_or_else(|| GraphError::UnknownVertex(l.clone()));
        let mut ids = BTreeSet::new();
        let mut es = Vec::with_capacity(edges.len());
        for (id, t, h) in edges {
            if !ids.insert(id.clone()) {
                return Err(GraphError::DuplicateEdge(id));
            }
            es.push(Edge { tail: idx(&t)?, head: idx(&h)?, id });
        }
        let mut ls = Vec::with_capacity(legs.len());
        for (v, p) in legs {
            ls.push(Leg { vertex: idx(&v)?, momentum: p });
        }
        Self::from_parts(vertices, es, ls, valences)
    }

    pub(crate) fn from_parts(
        vertices: Vec<Label>,
        edges: Vec<Edge>,
        legs: Vec<Leg>,
        valences: Option<BTreeSet<usize>>,
    ) -> Result<Self, GraphError> {
        if edges.len() > 64 {
            return Err(GraphError::TooManyEdges(edges.len()));
        }
        let momentum_dim = legs.first().map_or(0, |l| l.momentum.len());
        if legs.iter().any(|l| l.momentum.len() != momentum_dim) {
            return Err(GraphError::MomentumDimension);
        }
        for k in 0..momentum_dim {
            let s: Rational = legs.iter().map(|l| &l.momentum[k]).sum();
            if !s.is_zero() {
                return Err(GraphError::MomentumNotConserved);
            }
        }
        Ok(FeynmanGraph { vertices, edges, legs, valences, momentum_dim })
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn valences(&self) -> Option<&BTreeSet<usize>> {
        self.valences.as_ref()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn momentum_dim(&self) -> usize {
        self.momentum_dim
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn edge_index(&self, id: &Label) -> Option<usize> {
        self.edges.iter().position(|e| &e.id == id)
    }

    pub fn leg_count(&self, v: usize) -> usize {
        self.legs.iter().filter(|l| l.vertex == v).count()
    }

    /// Internal degree, a self-loop counting twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.tail == v) as usize + (e.head == v) as usize).sum()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.degree(v) + self.leg_count(v)
    }

    /// Sum of the momenta of the legs at `v`.
    pub fn vertex_momentum(&self, v: usize) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); self.momentum_dim];
        for l in self.legs.iter().filter(|l| l.vertex == v) {
            for (a, b) in p.iter_mut().zip(&l.momentum) {
                *a += b;
            }
        }
        p
    }

    fn check_set(&self, s: EdgeSet) -> Result<(), GraphError> {
        match s.iter().find(|&i| i >= self.edges.len()) {
            Some(i) => Err(GraphError::EdgeOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Vertices touched by the edges of `s`.
    pub fn incident_vertices(&self, s: EdgeSet) -> BTreeSet<usize> {
        s.iter().flat_map(|i| [self.edges[i].tail, self.edges[i].head]).collect()
    }

    /// Component count of `(all vertices, s)`.
    fn component_count(&self, s: EdgeSet) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut c = self.vertices.len();
        for i in s.iter() {
            if uf.union(self.edges[i].tail, self.edges[i].head) {
                c -= 1;
            }
        }
        c
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(self.all_edges()) <= 1
    }

    /// First Betti number `#E - #V + #components`.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + self.component_count(self.all_edges()) - self.vertices.len()
    }

    /// Loop number of the edge-induced subgraph on `s`.
    pub fn subgraph_loop_number(&self, s: EdgeSet) -> usize {
        let verts = self.incident_vertices(s).len();
        s.len() + self.component_count(s) - (self.vertices.len() - verts) - verts
    }

    /// `D·b1 - 2·#E` of the whole graph.
    pub fn superficial_degree(&self, dim: i64) -> i64 {
        dim * self.loop_number() as i64 - 2 * self.edges.len() as i64
    }

    pub fn subgraph_superficial_degree(&self, s: EdgeSet, dim: i64) -> i64 {
        dim * self.subgraph_loop_number(s) as i64 - 2 * s.len() as i64
    }

    /// Connected components of the edge-induced subgraph on `s`, as edge sets.
    pub fn subgraph_components(&self, s: EdgeSet) -> Vec<EdgeSet> {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in s.iter() {
            uf.union(self.edges[i].tail, self.edges[i].head);
        }
        let mut comps: Vec<(usize, EdgeSet)> = Vec::new();
        for i in s.iter() {
            let r = uf.find(self.edges[i].tail);
            match comps.iter_mut().find(|(root, _)| *root == r) {
                Some((_, set)) => *set = set.with(i),
                None => comps.push((r, EdgeSet::EMPTY.with(i))),
            }
        }
        comps.into_iter().map(|(_, s)| s).collect()
    }

    /// No edge of `s` is a bridge of the edge-induced subgraph on `s`.
    fn bridgeless(&self, s: EdgeSet) -> bool {
        s.iter().all(|i| {
            let e = &self.edges[i];
            if e.is_self_loop() {
                return true;
            }
            let mut uf = UnionFind::new(self.vertices.len());
            for j in s.without(i).iter() {
                uf.union(self.edges[j].tail, self.edges[j].head);
            }
            uf.find(e.tail) == uf.find(e.head)
        })
    }

    /// Connected and bridgeless.
    pub fn is_one_pi(&self) -> bool {
        self.is_connected() && self.bridgeless(self.all_edges())
    }

    fn subgraph_is_one_pi(&self, s: EdgeSet) -> bool {
        self.subgraph_components(s).len() == 1 && self.bridgeless(s)
    }

    /// Minimum number of internal edges whose removal disconnects the graph;
    /// `None` for a single vertex, which no edge removal can disconnect.
    pub fn edge_connectivity(&self) -> Result<Option<usize>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.vertices.len();
        if n <= 1 {
            return Ok(None);
        }
        let mut cap = vec![vec![0i64; n]; n];
        for e in self.edges.iter().filter(|e| !e.is_self_loop()) {
            cap[e.tail][e.head] += 1;
            cap[e.head][e.tail] += 1;
        }
        Ok((1..n).map(|t| max_flow(&cap, 0, t) as usize).min())
    }

    /// All spanning trees as edge sets, in lexicographic order of their sorted edge lists.
    pub fn spanning_trees(&self) -> Result<Vec<EdgeSet>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.vertices.len();
        let candidates: Vec<usize> = (0..self.edges.len()).filter(|&i| !self.edges[i].is_self_loop()).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.grow_trees(&candidates, 0, n.saturating_sub(1), &mut chosen, &mut out);
        Ok(out)
    }

    fn grow_trees(&self, cand: &[usize], from: usize, need: usize, chosen: &mut Vec<usize>, out: &mut Vec<EdgeSet>) {
        if chosen.len() == need {
            out.push(EdgeSet::from_indices(chosen.iter().copied()));
            return;
        }
        let missing = need - chosen.len();
        for k in from..cand.len() {
            if cand.len() - k < missing {
                break;
            }
            chosen.push(cand[k]);
            if self.is_forest(chosen) {
                self.grow_trees(cand, k + 1, need, chosen, out);
            }
            chosen.pop();
        }
    }

    fn is_forest(&self, edges: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        edges.iter().all(|&i| uf.union(self.edges[i].tail, self.edges[i].head))
    }

    pub fn is_spanning_tree(&self, t: EdgeSet) -> bool {
        let idx: Vec<usize> = t.iter().collect();
        t.is_subset(self.all_edges())
            && idx.len() + 1 == self.vertices.len().max(1)
            && self.is_forest(&idx)
    }

    /// Complements of spanning 2-forests: `(E \ T) ∪ {e}` for each spanning
    /// tree `T` and `e ∈ T`, deduplicated and sorted.
    pub fn cut_sets(&self) -> Result<Vec<EdgeSet>, GraphError> {
        let all = self.all_edges();
        let mut out = BTreeSet::new();
        for t in self.spanning_trees()? {
            for e in t.iter() {
                out.insert(all.minus(t).with(e));
            }
        }
        let mut v: Vec<EdgeSet> = out.into_iter().collect();
        v.sort_by_key(|s| s.iter().collect::<Vec<_>>());
        Ok(v)
    }

    /// Vertex sets of the connected components of `(V, E \ c)`.
    pub fn components_after_removing(&self, c: EdgeSet) -> Vec<BTreeSet<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in self.all_edges().minus(c).iter() {
            uf.union(self.edges[i].tail, self.edges[i].head);
        }
        let mut comps: Vec<(usize, BTreeSet<usize>)> = Vec::new();
        for v in 0..self.vertices.len() {
            let r = uf.find(v);
            match comps.iter_mut().find(|(root, _)| *root == r) {
                Some((_, s)) => {
                    s.insert(v);
                }
                None => comps.push((r, BTreeSet::from([v]))),
            }
        }
        comps.into_iter().map(|(_, s)| s).collect()
    }

    /// The edge-induced subgraph on `s` as a standalone graph. Legs of `self`
    /// at its vertices and edges of `self` not in `s` touching its vertices
    /// become legs; all leg momenta are zero.
    pub fn subgraph(&self, s: EdgeSet) -> Result<FeynmanGraph, GraphError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(GraphError::EmptySubgraph);
        }
        let verts: Vec<usize> = self.incident_vertices(s).into_iter().collect();
        let pos = |v: usize| verts.iter().position(|&w| w == v);
        let zero = vec![Rational::zero(); self.momentum_dim];
        let mut legs = Vec::new();
        for l in &self.legs {
            if let Some(p) = pos(l.vertex) {
                legs.push(Leg { vertex: p, momentum: zero.clone() });
            }
        }
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if s.contains(i) {
                edges.push(Edge { id: e.id.clone(), tail: pos(e.tail).unwrap(), head: pos(e.head).unwrap() });
            } else {
                for end in [e.tail, e.head] {
                    if let Some(p) = pos(end) {
                        legs.push(Leg { vertex: p, momentum: zero.clone() });
                    }
                }
            }
        }
        legs.sort_by_key(|l| l.vertex);
        FeynmanGraph::from_parts(
            verts.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges,
            legs,
            self.valences.clone(),
        )
    }

    /// Contracts each connected component of `s` to a vertex. Edges outside
    /// `s` survive (possibly as self-loops); legs keep their momenta.
    pub fn quotient(&self, s: EdgeSet) -> Result<FeynmanGraph, GraphError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(GraphError::EmptySubgraph);
        }
        if s == self.all_edges() {
            return Err(GraphError::ContractsEverything);
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for i in s.iter() {
            uf.union(self.edges[i].tail, self.edges[i].head);
        }
        let mut reps: Vec<usize> = Vec::new();
        let mut new_index = vec![0; self.vertices.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertices.len() {
            let r = uf.find(v);
            match reps.iter().position(|&x| x == r) {
                Some(k) => {
                    new_index[v] = k;
                    members[k].push(v);
                }
                None => {
                    new_index[v] = reps.len();
                    reps.push(r);
                    members.push(vec![v]);
                }
            }
        }
        let vertices = members
            .iter()
            .map(|m| {
                if m.len() == 1 {
                    self.vertices[m[0]].clone()
                } else {
                    Label::Name(m.iter().map(|&v| self.vertices[v].to_string()).collect::<Vec<_>>().join("+"))
                }
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !s.contains(*i))
            .map(|(_, e)| Edge { id: e.id.clone(), tail: new_index[e.tail], head: new_index[e.head] })
            .collect();
        let legs = self
            .legs
            .iter()
            .map(|l| Leg { vertex: new_index[l.vertex], momentum: l.momentum.clone() })
            .collect();
        FeynmanGraph::from_parts(vertices, edges, legs, self.valences.clone())
    }

    fn respects_valences(&self) -> bool {
        match &self.valences {
            None => true,
            Some(allowed) => (0..self.vertices.len()).all(|v| allowed.contains(&self.valence(v))),
        }
    }

    /// Proper non-empty edge subsets whose components are all 1PI with
    /// non-negative superficial degree, whose quotient is 1PI and respects
    /// the allowed valences. With `even_only` every component must also have
    /// an even edge count, so the subgraph is a product of even graphs.
    pub fn divergent_subgraphs(&self, dim: i64, even_only: bool) -> Result<Vec<EdgeSet>, GraphError> {
        if !self.is_one_pi() {
            return Err(GraphError::NotOnePi);
        }
        let n = self.edges.len();
        if n > SUBGRAPH_ENUMERATION_BOUND {
            return Err(GraphError::TooLarge { edges: n, bound: SUBGRAPH_ENUMERATION_BOUND });
        }
        let mut out = Vec::new();
        for m in 1..(1u64 << n) - 1 {
            let s = EdgeSet(m);
            if even_only && s.len() % 2 == 1 {
                continue;
            }
            let ok = self.subgraph_components(s).into_iter().all(|c| {
                (!even_only || c.len() % 2 == 0)
                    && self.subgraph_is_one_pi(c)
                    && self.subgraph_superficial_degree(c, dim) >= 0
            });
            if !ok {
                continue;
            }
            let q = self.quotient(s)?;
            if q.is_one_pi() && q.respects_valences() {
                out.push(s);
            }
        }
        out.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
        Ok(out)
    }

    /// First spanning tree in edge order (greedy by index).
    pub fn first_spanning_tree(&self) -> Result<EdgeSet, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut uf = UnionFind::new(self.vertices.len());
        Ok(EdgeSet::from_indices(
            (0..self.edges.len()).filter(|&i| uf.union(self.edges[i].tail, self.edges[i].head)),
        ))
    }

    /// Incidence `η[edge][loop] ∈ {-1, 0, 1}` of the fundamental cycles of the
    /// first spanning tree; loops are ordered by their chord's edge index.
    pub fn cycle_basis_matrix(&self) -> Result<Vec<Vec<i64>>, GraphError> {
        self.cycle_basis_matrix_with_tree(self.first_spanning_tree()?)
    }

    /// As [`Self::cycle_basis_matrix`] for a given spanning tree. Each cycle
    /// runs along its chord, then back through the tree.
    pub fn cycle_basis_matrix_with_tree(&self, tree: EdgeSet) -> Result<Vec<Vec<i64>>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if !self.is_spanning_tree(tree) {
            return Err(GraphError::NotSpanningTree);
        }
        let chords: Vec<usize> = self.all_edges().minus(tree).iter().collect();
        let mut eta = vec![vec![0i64; chords.len()]; self.edges.len()];
        for (k, &c) in chords.iter().enumerate() {
            eta[c][k] = 1;
            let e = &self.edges[c];
            for (i, sign) in self.tree_path(tree, e.head, e.tail) {
                eta[i][k] += sign;
            }
        }
        Ok(eta)
    }

    /// Tree edges on the path `from -> to`, signed by traversal direction.
    fn tree_path(&self, tree: EdgeSet, from: usize, to: usize) -> Vec<(usize, i64)> {
        let n = self.vertices.len();
        let mut prev: Vec<Option<(usize, usize, i64)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut q = VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            for i in tree.iter() {
                let e = &self.edges[i];
                let (w, sign) = if e.tail == v {
                    (e.head, 1)
                } else if e.head == v {
                    (e.tail, -1)
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, i, sign));
                    q.push_back(w);
                }
            }
        }
        let mut path = Vec::new();
        let mut v = to;
        while v != from {
            let (p, i, sign) = prev[v].expect("tree spans the graph");
            path.push((i, sign));
            v = p;
        }
        path.reverse();
        path
    }

    pub fn canonical_key(&self) -> Result<CanonicalKey, GraphError> {
        canonical::canonical_key(self, DEFAULT_KEY_EDGE_BOUND)
    }

    pub fn canonical_key_with_bound(&self, bound: usize) -> Result<CanonicalKey, GraphError> {
        canonical::canonical_key(self, bound)
    }
}

/// Edmonds-Karp on a dense symmetric capacity matrix.
fn max_flow(cap: &[Vec<i64>], s: usize, t: usize) -> i64 {
    let n = cap.len();
    let mut res: Vec<Vec<i64>> = cap.to_vec();
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in 0..n {
                if prev[w] == usize::MAX && res[v][w] > 0 {
                    prev[w] = v;
                    q.push_back(w);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(res[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            res[prev[v]][v] -= bottleneck;
            res[v][prev[v]] += bottleneck;
            v = prev[v];
        }
        flow += bottleneck;
    }
}
