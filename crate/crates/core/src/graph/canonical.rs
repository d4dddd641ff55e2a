//! Isomorphism-invariant keys for small multigraphs, vertices coloured by
//! their external-leg count. Colour refinement fixes an ordering of vertex
//! classes; a pruned search over orderings within classes picks the
//! lexicographically least adjacency encoding.

use std::fmt;

use super::{FeynmanGraph, GraphError};

pub const DEFAULT_KEY_EDGE_BOUND: usize = 12;

const SEARCH_BUDGET: usize = 2_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("{x:x}")).collect();
        f.write_str(&parts.join("."))
    }
}

pub(super) fn canonical_key(g: &FeynmanGraph, bound: usize) -> Result<CanonicalKey, GraphError> {
    if g.num_edges() > bound {
        return Err(GraphError::TooLarge { edges: g.num_edges(), bound });
    }
    let n = g.num_vertices();
    let mut mult = vec![vec![0u32; n]; n];
    for e in g.edges() {
        mult[e.tail][e.head] += 1;
        if e.tail != e.head {
            mult[e.head][e.tail] += 1;
        }
    }
    let legs: Vec<u32> = (0..n).map(|v| g.leg_count(v) as u32).collect();
    let colors = refine(&mult, &legs);

    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&v| colors[v]);
    let slot_color: Vec<usize> = slots.iter().map(|&v| colors[v]).collect();

    let mut search = Search {
        mult: &mult,
        colors: &colors,
        slot_color: &slot_color,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
        nodes: 0,
    };
    search.run()?;
    let best = search.best.unwrap_or_default();

    let mut key = vec![n as u32];
    key.extend(slots.iter().map(|&v| legs[v]));
    key.extend(best);
    Ok(CanonicalKey(key))
}

/// Colour refinement; colours are ranks of invariant signatures, so they do
/// not depend on the input labelling.
fn refine(mult: &[Vec<u32>], legs: &[u32]) -> Vec<usize> {
    let n = legs.len();
    let init: Vec<(u32, u32, u32)> = (0..n)
        .map(|v| {
            let deg: u32 = (0..n).map(|w| if w == v { 2 * mult[v][v] } else { mult[v][w] }).sum();
            (legs[v], deg, mult[v][v])
        })
        .collect();
    let mut colors = ranks(&init);
    loop {
        let sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> =
                    (0..n).filter(|&w| w != v && mult[v][w] > 0).map(|w| (colors[w], mult[v][w])).collect();
                nb.sort();
                (colors[v], nb)
            })
            .collect();
        let next = ranks(&sigs);
        let classes = |c: &[usize]| c.iter().collect::<std::collections::BTreeSet<_>>().len();
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn ranks<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect()
}

struct Search<'a> {
    mult: &'a [Vec<u32>],
    colors: &'a [usize],
    slot_color: &'a [usize],
    order: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<u32>>,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self) -> Result<(), GraphError> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(GraphError::SearchBudget);
        }
        let enc = self.encode();
        if let Some(best) = &self.best {
            if enc.as_slice() > &best[..enc.len()] {
                return Ok(());
            }
        }
        let i = self.order.len();
        if i == self.slot_color.len() {
            if self.best.as_ref().is_none_or(|b| enc < *b) {
                self.best = Some(enc);
            }
            return Ok(());
        }
        for v in 0..self.used.len() {
            if self.used[v] || self.colors[v] != self.slot_color[i] {
                continue;
            }
            self.order.push(v);
            self.used[v] = true;
            self.run()?;
            self.used[v] = false;
            self.order.pop();
        }
        Ok(())
    }

    fn encode(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &v) in self.order.iter().enumerate() {
            for &w in &self.order[..=i] {
                out.push(self.mult[v][w]);
            }
        }
        out
    }
}
