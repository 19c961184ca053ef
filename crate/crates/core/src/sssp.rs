//! Price functions, reduced-cost Dijkstra and the Bellman-Ford oracle.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{PlanarGraph, INF};

/// Vertex potentials. Reduced cost of a dart `u -> v` is `p(u) + l - p(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceFunction(pub Vec<i64>);

impl PriceFunction {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn reduced_cost(&self, g: &PlanarGraph, d: usize) -> Option<i64> {
        g.length(d).map(|l| self.0[g.tail(d)] + l - self.0[g.head(d)])
    }
}

/// First dart with negative reduced cost, or `None` when `p` is feasible.
pub fn check_feasible(g: &PlanarGraph, p: &PriceFunction) -> Option<usize> {
    (0..g.num_darts()).find(|&d| p.reduced_cost(g, d).is_some_and(|w| w < 0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub source: usize,
    /// `INF` for unreachable vertices.
    pub dist: Vec<i64>,
    /// Dart entering each vertex on its shortest path; `None` at the source
    /// and at unreachable vertices.
    pub parent: Vec<Option<usize>>,
}

impl DistanceResult {
    /// Darts of the tree path from the source to `v`.
    pub fn tree_path(&self, g: &PlanarGraph, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut x = v;
        while let Some(d) = self.parent[x] {
            path.push(d);
            x = g.tail(d);
            if path.len() > g.n() {
                break;
            }
        }
        path.reverse();
        path
    }

    pub fn as_prices(&self) -> PriceFunction {
        PriceFunction(self.dist.clone())
    }
}

/// Dijkstra under the reduced costs of a feasible price function. Returned
/// distances are in original lengths.
pub fn dijkstra(g: &PlanarGraph, s: usize, p: &PriceFunction) -> Result<DistanceResult> {
    let mut r = dijkstra_seeded(g, p, &[(s, 0)])?;
    r.source = s;
    Ok(r)
}

/// Multi-source variant: each seed `(v, d)` starts `v` at original distance
/// `d`, as if reached from a virtual apex. Fails with
/// [`Error::InfeasiblePrice`] on any dart with negative reduced cost that the
/// search touches.
pub fn dijkstra_seeded(g: &PlanarGraph, p: &PriceFunction, seeds: &[(usize, i64)]) -> Result<DistanceResult> {
    let n = g.n();
    let prices = &p.0;
    let mut dist = vec![INF; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    // keyed by d(v) - p(v), which is monotone along reduced-cost paths
    let mut heap = BinaryHeap::new();
    for &(v, d) in seeds {
        if d < dist[v] {
            dist[v] = d;
            heap.push(Reverse((d - prices[v], v)));
        }
    }
    while let Some(Reverse((key, v))) = heap.pop() {
        if done[v] || key != dist[v] - prices[v] {
            continue;
        }
        done[v] = true;
        for &d in g.out_darts(v) {
            let Some(l) = g.length(d) else { continue };
            let w = g.head(d);
            let reduced = prices[v] + l - prices[w];
            if reduced < 0 {
                return Err(Error::InfeasiblePrice {
                    tail: v,
                    head: w,
                    reduced,
                });
            }
            let cand = dist[v] + l;
            if !done[w] && cand < dist[w] {
                dist[w] = cand;
                parent[w] = Some(d);
                heap.push(Reverse((cand - prices[w], w)));
            }
        }
    }
    Ok(DistanceResult {
        source: seeds.first().map_or(0, |s| s.0),
        dist,
        parent,
    })
}

/// A cycle of darts whose total length is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCycleWitness {
    pub darts: Vec<usize>,
    pub total: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Distances(DistanceResult),
    NegativeCycle(NegativeCycleWitness),
}

impl OracleOutcome {
    pub fn distances(self) -> Option<DistanceResult> {
        match self {
            OracleOutcome::Distances(d) => Some(d),
            OracleOutcome::NegativeCycle(_) => None,
        }
    }
}

/// Textbook O(nm) Bellman-Ford with early termination. A relaxation in
/// round `n` proves a negative cycle, extracted by walking parent darts.
pub fn bellman_ford_oracle(g: &PlanarGraph, s: usize) -> OracleOutcome {
    let n = g.n();
    let mut dist = vec![INF; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    dist[s] = 0;
    let darts: Vec<(usize, usize, i64, usize)> = (0..g.num_darts())
        .filter_map(|d| g.length(d).map(|l| (g.tail(d), g.head(d), l, d)))
        .collect();
    for round in 1..=n.max(1) {
        let mut changed = None;
        for &(u, v, l, d) in &darts {
            if dist[u] >= INF {
                continue;
            }
            let cand = dist[u] + l;
            if cand < dist[v] {
                dist[v] = cand;
                parent[v] = Some(d);
                changed = Some(v);
            }
        }
        match changed {
            None => break,
            Some(v) if round == n => {
                return OracleOutcome::NegativeCycle(extract_cycle(g, &parent, v));
            }
            Some(_) => {}
        }
    }
    OracleOutcome::Distances(DistanceResult {
        source: s,
        dist,
        parent,
    })
}

fn extract_cycle(g: &PlanarGraph, parent: &[Option<usize>], start: usize) -> NegativeCycleWitness {
    let mut x = start;
    for _ in 0..g.n() {
        x = g.tail(parent[x].expect("relaxed vertex has a parent"));
    }
    let mut darts = Vec::new();
    let mut y = x;
    loop {
        let d = parent[y].expect("cycle vertex has a parent");
        darts.push(d);
        y = g.tail(d);
        if y == x {
            break;
        }
    }
    darts.reverse();
    let total = darts.iter().map(|&d| g.length(d).unwrap() as i128).sum();
    NegativeCycleWitness { darts, total }
}

/// Distances from `s`, using the distances from another source `r` as a
/// price function. `from_r` must be finite everywhere.
pub fn reroot_distances(g: &PlanarGraph, from_r: &DistanceResult, s: usize) -> Result<DistanceResult> {
    dijkstra(g, s, &from_r.as_prices())
}
