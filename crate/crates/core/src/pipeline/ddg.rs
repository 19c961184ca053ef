//! Intra-region boundary distance tables.

use crate::error::Result;
use crate::graph::INF;
use crate::separator::Region;
use crate::sssp::{dijkstra, PriceFunction};

const NONE: usize = usize::MAX;

/// `d_R(u, v)` for every ordered pair of boundary vertices of one region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseDistanceTable {
    /// Local ids of the boundary vertices; position `i` is row/column `i`.
    pub boundary: Vec<usize>,
    /// Local vertex id to position, `usize::MAX` for interior vertices.
    pub position: Vec<usize>,
    pub dist: Vec<i64>,
}

impl DenseDistanceTable {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.dist[i * self.boundary.len() + j]
    }

    /// Distance between two local vertices, both on the boundary.
    pub fn between(&self, u: usize, v: usize) -> i64 {
        self.get(self.position[u], self.position[v])
    }

    pub fn pos(&self, local: usize) -> Option<usize> {
        let p = self.position[local];
        (p != NONE).then_some(p)
    }
}

/// One reduced-cost Dijkstra per boundary vertex, using the recursively
/// computed distances from `r_R` as the price function.
pub fn intra_region_boundary_distances(reg: &Region, prices: &[i64]) -> Result<DenseDistanceTable> {
    let g = &reg.graph;
    let mut position = vec![NONE; g.n()];
    for (i, &v) in reg.boundary.iter().enumerate() {
        position[v] = i;
    }
    let k = reg.boundary.len();
    let p = PriceFunction(prices.to_vec());
    let mut dist = Vec::with_capacity(k * k);
    for &u in &reg.boundary {
        let row = dijkstra(g, u, &p)?;
        dist.extend(reg.boundary.iter().map(|&v| row.dist[v]));
    }
    debug_assert!(dist.iter().all(|&d| d < INF), "region is strongly connected");
    Ok(DenseDistanceTable {
        boundary: reg.boundary.clone(),
        position,
        dist,
    })
}
