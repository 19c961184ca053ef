//! The recursive solver: divide, recurse per region, build dense distance
//! tables and cut tables, run Bellman-Ford over the boundary, extend to all
//! vertices with one priced Dijkstra per region, and reroot.

pub mod bellman_ford;
pub mod cut;
pub mod ddg;
pub mod inter;
pub mod report;

use crate::error::{Error, Result};
use crate::graph::{triangulate, PlanarGraph, INF};
use crate::par;
use crate::separator::{r_division, RDivision};
use crate::sssp::{bellman_ford_oracle, dijkstra, DistanceResult, OracleOutcome, PriceFunction};

pub use bellman_ford::{BellmanFord, RegionPlan};
pub use ddg::DenseDistanceTable;
pub use report::Report;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossMode {
    /// Relax cycle pairs through the rightmost and leftmost cut tables.
    Cuts,
    /// Relax cycle pairs over every corner pair of the dense table.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub cross: CrossMode,
    /// Cycle pairs where either cycle has fewer corners are relaxed in full.
    pub cut_min: usize,
    /// Check Monge-ness and cut coverage once per table and fall back to
    /// exhaustive relaxation where a check fails.
    pub audit: bool,
    pub parallel: bool,
    /// Division parameter of the top level; deeper levels use `n / p`.
    pub r: Option<usize>,
    /// Graphs with at most this many vertices go to the oracle.
    pub base: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            cross: CrossMode::Cuts,
            cut_min: 6,
            audit: true,
            parallel: false,
            r: None,
            base: 64,
        }
    }
}

/// `max(2, floor(log2 n / 2))`.
pub fn choose_p(n: usize) -> usize {
    (n.max(1).ilog2() as usize / 2).max(2)
}

/// `ceil(n / p)`, at least 4.
pub fn choose_r(n: usize) -> usize {
    n.div_ceil(choose_p(n)).max(4)
}

/// Internals of the top recursion level, for inspection.
#[derive(Debug, Clone)]
pub struct Trace {
    /// The triangulated graph the recursion runs on.
    pub graph: PlanarGraph,
    pub division: RDivision,
    pub region_dist: Vec<Vec<i64>>,
    pub plans: Vec<RegionPlan>,
    /// Global boundary index of each vertex, `usize::MAX` off the boundary.
    pub boundary_index: Vec<usize>,
    /// Vertex the boundary Bellman-Ford starts from.
    pub bf_source: usize,
    pub bf: BellmanFord,
    /// Distances from `bf_source` to every vertex.
    pub dist_from_bf_source: Vec<i64>,
}

/// Exact distances from `s`, or [`Error::NegativeCycleDetected`].
pub fn solve_sssp(g: &PlanarGraph, s: usize) -> Result<DistanceResult> {
    solve_with(g, s, &Options::default()).map(|(d, _)| d)
}

pub fn solve_with(g: &PlanarGraph, s: usize, opts: &Options) -> Result<(DistanceResult, Report)> {
    solve_inner(g, s, opts, false).map(|(d, r, _)| (d, r))
}

/// Like [`solve_with`], also returning the top level's internals. The top
/// level is always divided, whatever its size.
pub fn trace(g: &PlanarGraph, s: usize, opts: &Options) -> Result<(DistanceResult, Report, Trace)> {
    solve_inner(g, s, opts, true).map(|(d, r, t)| (d, r, t.expect("trace requested")))
}

fn solve_inner(g: &PlanarGraph, s: usize, opts: &Options, keep: bool) -> Result<(DistanceResult, Report, Option<Trace>)> {
    let n = g.n();
    if s >= n {
        return Err(Error::BadInput(format!("source {s} out of range (n = {n})")));
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut report = Report {
        n,
        ..Report::default()
    };
    let h = report.time("triangulate", |_| triangulate(g))?;
    let (dist_h, trace) = solve_level(&h, s, opts, opts.r, keep, &mut report).map_err(cycle_error)?;
    let res = report
        .time("reroot", |_| dijkstra(&h, s, &PriceFunction(dist_h)))
        .map_err(cycle_error)?;
    // a path through an auxiliary dart costs more than any real path
    let limit: i64 = (0..g.num_darts()).filter_map(|d| g.length(d)).filter(|&l| l > 0).sum();
    let mut dist = res.dist;
    let mut parent = res.parent;
    for v in 0..n {
        if dist[v] > limit {
            dist[v] = INF;
            parent[v] = None;
        }
    }
    Ok((DistanceResult { source: s, dist, parent }, report, trace))
}

fn cycle_error(e: Error) -> Error {
    match e {
        Error::InfeasiblePrice { .. } => Error::NegativeCycleDetected,
        other => other,
    }
}

fn oracle(h: &PlanarGraph, root: usize, report: &mut Report) -> Result<Vec<i64>> {
    report.base_cases += 1;
    match bellman_ford_oracle(h, root) {
        OracleOutcome::Distances(d) => Ok(d.dist),
        OracleOutcome::NegativeCycle(_) => Err(Error::NegativeCycleDetected),
    }
}

/// Distances from `root` in `h`, which must be strongly connected.
fn solve_level(
    h: &PlanarGraph,
    root: usize,
    opts: &Options,
    r: Option<usize>,
    keep: bool,
    report: &mut Report,
) -> Result<(Vec<i64>, Option<Trace>)> {
    let n = h.n();
    if n <= opts.base && !keep {
        return Ok((oracle(h, root, report)?, None));
    }
    let r = r.unwrap_or_else(|| choose_r(n));
    let div = report.time("division", |_| r_division(h, r))?;
    if div.regions.iter().any(|reg| reg.vertices.len() == n) {
        if keep {
            return Err(Error::ParameterTooSmall(r));
        }
        return Ok((oracle(h, root, report)?, None));
    }
    if report.regions == 0 {
        report.r = r;
        report.regions = div.regions.len();
        report.boundary = div.boundary.len();
        report.max_holes = div.max_holes();
        report.boundary_constant = div.boundary_constant();
        report.region_constant = div.region_constant();
    }
    report.hole_regions += div.regions.iter().filter(|reg| reg.holes() > 0).count() as u64;

    let nested = report.time("recursion", |_| {
        par::map(&div.regions, opts.parallel, |reg| {
            let mut sub = Report::default();
            solve_level(&reg.graph, reg.source, opts, None, false, &mut sub).map(|(d, _)| (d, sub))
        })
    });
    let mut region_dist = Vec::with_capacity(nested.len());
    for res in nested {
        let (d, sub) = res?;
        report.absorb(&sub);
        region_dist.push(d);
    }

    let items: Vec<usize> = (0..div.regions.len()).collect();
    let tables = report.time("intra", |_| {
        par::map(&items, opts.parallel, |&i| {
            ddg::intra_region_boundary_distances(&div.regions[i], &region_dist[i])
        })
    });
    let mut boundary_index = vec![NONE; n];
    for (i, &v) in div.boundary.iter().enumerate() {
        boundary_index[v] = i;
    }
    let mut pending = Vec::with_capacity(tables.len());
    for (i, t) in tables.into_iter().enumerate() {
        let t = t?;
        let global: Vec<usize> = t.boundary.iter().map(|&v| boundary_index[div.regions[i].vertices[v]]).collect();
        pending.push((i, t, global));
    }
    let plans = report.time("cuts", |_| {
        par::map(&pending, opts.parallel, |(i, t, global)| {
            let mut sub = Report::default();
            bellman_ford::prepare_region(&div.regions[*i], &region_dist[*i], t.clone(), global.clone(), opts, &mut sub)
                .map(|p| (p, sub))
        })
    });
    let mut region_plans = Vec::with_capacity(plans.len());
    for res in plans {
        let (p, sub) = res?;
        report.absorb(&sub);
        region_plans.push(p);
    }
    report.levels = report.levels.max(1);

    let bf_source = if boundary_index[root] != NONE {
        root
    } else {
        div.regions[0].vertices[div.regions[0].source]
    };
    let bf = report.time("bellman_ford", |rep| {
        bellman_ford::inter_region_boundary_bf(
            &region_plans,
            div.boundary.len(),
            boundary_index[bf_source],
            opts.parallel,
            keep,
            rep,
        )
    })?;
    let from_r = report.time("inter", |rep| {
        inter::single_source_inter_region(n, &div, &region_dist, &bf.dist, &boundary_index, opts.parallel, rep)
    })?;
    let dist = if bf_source == root {
        from_r.clone()
    } else {
        report.time("reroot", |_| dijkstra(h, root, &PriceFunction(from_r.clone())))?.dist
    };
    let trace = keep.then(|| Trace {
        graph: h.clone(),
        division: div,
        region_dist,
        plans: region_plans,
        boundary_index,
        bf_source,
        bf,
        dist_from_bf_source: from_r,
    });
    Ok((dist, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{generate, Family, GeneratorSpec};

    #[test]
    fn choose_p_clamps_and_halves_log() {
        assert_eq!(choose_p(4), 2);
        assert_eq!(choose_p(1024), 5);
        assert_eq!(choose_p(1 << 20), 10);
        assert_eq!(choose_r(1024), 205);
    }

    #[test]
    fn single_vertex() {
        let g = PlanarGraph::from_coordinates(1, &[], &[(0.0, 0.0)]).unwrap();
        assert_eq!(solve_sssp(&g, 0).unwrap().dist, vec![0]);
    }

    #[test]
    fn four_cycle_with_one_negative_edge() {
        let g = PlanarGraph::from_coordinates(
            4,
            &[(0, 1, 1), (1, 2, -2), (2, 3, 1), (3, 0, 1)],
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        )
        .unwrap();
        let want = bellman_ford_oracle(&g, 0).distances().unwrap().dist;
        assert_eq!(solve_sssp(&g, 0).unwrap().dist, want);
    }

    #[test]
    fn nonnegative_matches_dijkstra() {
        let g = generate(&GeneratorSpec::new(Family::Delaunay, 400, 0.0, 2)).unwrap();
        let want = dijkstra(&g, 5, &PriceFunction::zero(g.n())).unwrap().dist;
        let opts = Options {
            base: 20,
            ..Options::default()
        };
        assert_eq!(solve_with(&g, 5, &opts).unwrap().0.dist, want);
    }

    #[test]
    fn unreachable_vertices_are_infinite() {
        // 0 -> 1 -> 2 only
        let g = PlanarGraph::from_coordinates(3, &[(0, 1, 2), (1, 2, -1)], &[(0.0, 0.0), (1.0, 0.0), (2.0, 1.0)])
            .unwrap();
        let d = solve_sssp(&g, 1).unwrap();
        assert_eq!(d.dist, vec![INF, 0, -1]);
        assert_eq!(d.parent[0], None);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = generate(&GeneratorSpec::new(Family::Grid, 900, 0.2, 3)).unwrap();
        let seq = Options {
            base: 20,
            ..Options::default()
        };
        let par = Options { parallel: true, ..seq.clone() };
        let (a, ra) = solve_with(&g, 0, &seq).unwrap();
        let (b, rb) = solve_with(&g, 0, &par).unwrap();
        assert_eq!(a, b);
        assert_eq!((ra.bf_rounds, ra.smawk_calls), (rb.bf_rounds, rb.smawk_calls));
    }

    #[test]
    fn bad_source_and_disconnected_input() {
        assert_eq!(
            PlanarGraph::from_coordinates(2, &[], &[(0.0, 0.0), (1.0, 0.0)]).unwrap_err(),
            Error::DisconnectedGraph
        );
        let g = PlanarGraph::from_coordinates(2, &[(0, 1, 1)], &[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert!(matches!(solve_sssp(&g, 7), Err(Error::BadInput(_))));
    }

    #[test]
    fn report_carries_division_numbers() {
        let g = generate(&GeneratorSpec::new(Family::Grid, 500, 0.1, 1)).unwrap();
        let (_, rep) = solve_with(&g, 0, &Options::default()).unwrap();
        assert_eq!(rep.n, 500);
        assert_eq!(rep.r, choose_r(500));
        assert!(rep.regions > 1 && rep.boundary > 0 && rep.base_cases > 0);
        assert!(rep.to_string().contains("regions="));
    }
}
