//! Distances from the boundary source to every vertex, one region at a time.

use crate::error::Result;
use crate::graph::INF;
use crate::par;
use crate::separator::{RDivision, Region};
use crate::sssp::{dijkstra_seeded, PriceFunction};

use super::report::Report;

/// Number of darts of `R'` (the region plus an apex with an edge of length
/// `D[b]` to each boundary vertex `b`) whose reduced cost under `phi` is
/// negative. `phi` is the region's own distances, and `D_max` at the apex.
pub fn apex_violations(reg: &Region, phi: &[i64], seeds: &[(usize, i64)]) -> u64 {
    let g = &reg.graph;
    let inner = (0..g.num_darts())
        .filter(|&d| g.length(d).is_some_and(|l| phi[g.tail(d)] + l - phi[g.head(d)] < 0))
        .count();
    let apex = seeds.iter().map(|&(b, d)| phi[b] - d).max().unwrap_or(0);
    let outer = seeds.iter().filter(|&&(b, d)| apex + d - phi[b] < 0).count();
    (inner + outer) as u64
}

/// `d_G(r, v)` for every vertex, given `D` over the boundary. The apex of
/// `R'` is realized as a seeded Dijkstra with one seed per boundary vertex.
pub fn single_source_inter_region(
    n: usize,
    div: &RDivision,
    region_dist: &[Vec<i64>],
    boundary_dist: &[i64],
    boundary_index: &[usize],
    parallel: bool,
    report: &mut Report,
) -> Result<Vec<i64>> {
    let items: Vec<(&Region, &Vec<i64>)> = div.regions.iter().zip(region_dist).collect();
    let results = par::map(&items, parallel, |&(reg, phi)| -> Result<(Vec<i64>, u64)> {
        let seeds: Vec<(usize, i64)> = reg
            .boundary
            .iter()
            .map(|&b| (b, boundary_dist[boundary_index[reg.vertices[b]]]))
            .filter(|&(_, d)| d < INF)
            .collect();
        let violations = apex_violations(reg, phi, &seeds);
        let res = dijkstra_seeded(&reg.graph, &PriceFunction(phi.clone()), &seeds)?;
        Ok((res.dist, violations))
    });
    let mut dist = vec![INF; n];
    for (reg, res) in div.regions.iter().zip(results) {
        let (local, violations) = res?;
        report.apex_violations += violations;
        for (i, &v) in reg.vertices.iter().enumerate() {
            dist[v] = dist[v].min(local[i]);
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::triangulate;
    use crate::io::{generate, Family, GeneratorSpec};
    use crate::separator::r_division;
    use crate::sssp::bellman_ford_oracle;

    #[test]
    fn exact_boundary_distances_extend_to_all_vertices() {
        let g = generate(&GeneratorSpec::new(Family::Delaunay, 250, 0.3, 8)).unwrap();
        let h = triangulate(&g).unwrap();
        let div = r_division(&h, 70).unwrap();
        let r = div.boundary[3];
        let want = bellman_ford_oracle(&h, r).distances().unwrap().dist;
        let mut index = vec![usize::MAX; h.n()];
        for (i, &v) in div.boundary.iter().enumerate() {
            index[v] = i;
        }
        let d: Vec<i64> = div.boundary.iter().map(|&v| want[v]).collect();
        let phis: Vec<Vec<i64>> = div
            .regions
            .iter()
            .map(|reg| bellman_ford_oracle(&reg.graph, reg.source).distances().unwrap().dist)
            .collect();
        let mut rep = Report::default();
        let got = single_source_inter_region(h.n(), &div, &phis, &d, &index, false, &mut rep).unwrap();
        assert_eq!(got, want);
        assert_eq!(rep.apex_violations, 0);
    }

    #[test]
    fn corrupted_prices_are_counted() {
        let g = generate(&GeneratorSpec::new(Family::Grid, 100, 0.3, 1)).unwrap();
        let h = triangulate(&g).unwrap();
        let div = r_division(&h, 40).unwrap();
        let reg = &div.regions[0];
        let mut phi = bellman_ford_oracle(&reg.graph, reg.source).distances().unwrap().dist;
        assert_eq!(apex_violations(reg, &phi, &[]), 0);
        let v = reg.graph.head(reg.graph.out_darts(reg.source)[0]);
        phi[v] += 1_000_000_000;
        assert!(apex_violations(reg, &phi, &[]) > 0);
    }
}
