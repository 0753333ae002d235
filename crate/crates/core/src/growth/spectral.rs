//! Dominant eigenvalue bounds by power iteration.
//!
//! For an irreducible non-negative matrix `A` and a positive vector `v`, the
//! Collatz-Wielandt inequalities give
//! `min_i (Av)_i / v_i <= ρ(A) <= max_i (Av)_i / v_i`. Iterating with
//! `B = A + I` (primitive whenever `A` is irreducible) drives both bounds to
//! `ρ(B) = ρ(A) + 1`. A reducible matrix is handled component by component:
//! its spectral radius is the largest over its strongly connected
//! components.

use std::collections::HashMap;

use num_traits::Float;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::automaton::FactorAutomaton;
use crate::error::{Error, Result};

/// Iteration cap per strongly connected component.
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthEstimate<T> {
    pub lower: T,
    pub upper: T,
    pub iterations: usize,
    pub states: usize,
    pub transitions: usize,
}

impl<T: Float> GrowthEstimate<T> {
    pub fn encloses(&self, x: T) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> T {
        self.upper - self.lower
    }
}

/// Bounds on `ρ(A)` for the adjacency matrix of one strongly connected
/// component given as local edge lists.
fn component_bounds<T: Float>(edges: &[Vec<usize>], eps: T) -> Result<(T, T, usize)> {
    let n = edges.len();
    let mut v = vec![T::one(); n];
    let mut next = vec![T::zero(); n];
    for it in 1..=MAX_ITERATIONS {
        next.copy_from_slice(&v);
        for (s, outs) in edges.iter().enumerate() {
            for &t in outs {
                next[s] = next[s] + v[t];
            }
        }
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for (a, b) in next.iter().zip(&v) {
            let r = *a / *b;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let scale = next.iter().fold(T::zero(), |m, &x| m.max(x));
        for (dst, src) in v.iter_mut().zip(&next) {
            *dst = *src / scale;
        }
        if hi - lo <= eps {
            return Ok((lo - T::one(), hi - T::one(), it));
        }
    }
    Err(Error::NotConverged(MAX_ITERATIONS))
}

/// Encloses the growth rate of the language of a trimmed automaton.
pub fn growth_rate<T: Float>(a: &FactorAutomaton, eps: T) -> Result<GrowthEstimate<T>> {
    if !(eps > T::zero()) {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    if a.states() == 0 {
        return Err(Error::Precondition("automaton has no live state".into()));
    }
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..a.states()).map(|_| g.add_node(())).collect();
    for (s, row) in a.delta.iter().enumerate() {
        for t in row.iter().flatten() {
            g.add_edge(nodes[s], nodes[*t as usize], ());
        }
    }
    let mut sccs = tarjan_scc(&g);
    sccs.sort_by_key(|c| c.iter().map(|n| n.index()).min());
    let mut best: Option<(T, T)> = None;
    let mut iterations = 0;
    for scc in &sccs {
        let local: HashMap<usize, usize> =
            scc.iter().enumerate().map(|(li, nd)| (nd.index(), li)).collect();
        let edges: Vec<Vec<usize>> = scc
            .iter()
            .map(|nd| {
                a.delta[nd.index()]
                    .iter()
                    .flatten()
                    .filter_map(|t| local.get(&(*t as usize)).copied())
                    .collect()
            })
            .collect();
        if edges.iter().all(Vec::is_empty) {
            continue;
        }
        let (lo, hi, it) = component_bounds(&edges, eps)?;
        iterations = iterations.max(it);
        best = Some(match best {
            None => (lo, hi),
            Some((l, h)) => (l.max(lo), h.max(hi)),
        });
    }
    let (lower, upper) = best.unwrap_or((T::zero(), T::zero()));
    Ok(GrowthEstimate {
        lower,
        upper,
        iterations,
        states: a.states(),
        transitions: a.transitions(),
    })
}
