//! Bellman-Ford over the boundary vertices of a division. Each round
//! relaxes, per region and per ordered pair of boundary cycles, all edges
//! of the dense distance graph as a column-minima problem.

use crate::error::{Error, Result};
use crate::graph::INF;
use crate::monge::{
    is_convex_monge, is_convex_monge_staircase, smawk_column_minima, staircase_column_minima, Counted, FnMatrix,
    Staircase,
};
use crate::par;
use crate::separator::Region;

use super::cut::{augment, build_cut_graph, build_shortest_path_tree, cut_distances, extreme_path, Side};
use super::ddg::DenseDistanceTable;
use super::report::Report;
use super::{CrossMode, Options};

/// One boundary cycle: table positions of its corners in walk order.
#[derive(Debug, Clone)]
pub struct CyclePlan {
    pub corners: Vec<usize>,
    /// Both staircases of the cyclic matrix passed the Monge audit; when
    /// false the cycle is relaxed exhaustively.
    pub monge: bool,
}

/// `d_{R_P}` between the source and target ring runs of one cut, with rows
/// and columns translated to table positions.
#[derive(Debug, Clone)]
pub struct CutTable {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub dist: Vec<i64>,
}

impl CutTable {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.dist[i * self.cols.len() + j]
    }

    pub fn is_monge(&self) -> bool {
        is_convex_monge(&FnMatrix::new(self.rows.len(), self.cols.len(), |i, j| self.get(i, j)))
    }
}

#[derive(Debug, Clone)]
pub enum CrossRelax {
    /// One table per distinct extreme path.
    Cuts(Vec<CutTable>),
    /// Every corner pair straight from the dense table.
    Full,
}

#[derive(Debug, Clone)]
pub struct CrossPlan {
    pub from: usize,
    pub to: usize,
    pub relax: CrossRelax,
}

#[derive(Debug, Clone)]
pub struct RegionPlan {
    pub table: DenseDistanceTable,
    /// Global boundary index of each table position.
    pub global: Vec<usize>,
    pub cycles: Vec<CyclePlan>,
    pub cross: Vec<CrossPlan>,
}

/// Precomputes everything a region needs per round: corner positions,
/// staircase audits and the two cut tables for every ordered cycle pair.
pub fn prepare_region(
    reg: &Region,
    prices: &[i64],
    table: DenseDistanceTable,
    global: Vec<usize>,
    opts: &Options,
    report: &mut Report,
) -> Result<RegionPlan> {
    let mut cycles = Vec::with_capacity(reg.cycles.len());
    for c in 0..reg.cycles.len() {
        let corners: Vec<usize> = reg.corners(c).iter().map(|&v| table.position[v]).collect();
        let monge = !opts.audit || {
            let k = corners.len();
            let m = FnMatrix::new(k, k, |i, j| table.get(corners[i], corners[j]));
            is_convex_monge_staircase(&m, Staircase::Upper) && is_convex_monge_staircase(&m, Staircase::Lower)
        };
        if !monge {
            report.cycle_fallbacks += 1;
        }
        cycles.push(CyclePlan { corners, monge });
    }
    let mut cross = Vec::new();
    for a in 0..cycles.len() {
        for b in 0..cycles.len() {
            if a == b {
                continue;
            }
            let small = cycles[a].corners.len().min(cycles[b].corners.len()) < opts.cut_min;
            let relax = if opts.cross == CrossMode::Full || small {
                report.full_pairs += 1;
                CrossRelax::Full
            } else {
                match cut_tables(reg, prices, &cycles, a, b) {
                    Ok(tables) => {
                        let ok = !opts.audit || audit_cuts(&tables, &table, &cycles[a], &cycles[b], report);
                        if ok {
                            report.cut_pairs += 1;
                            CrossRelax::Cuts(tables)
                        } else {
                            report.cut_fallbacks += 1;
                            CrossRelax::Full
                        }
                    }
                    Err(Error::MalformedPath(_)) => {
                        report.cut_fallbacks += 1;
                        CrossRelax::Full
                    }
                    Err(e) => return Err(e),
                }
            };
            cross.push(CrossPlan { from: a, to: b, relax });
        }
    }
    Ok(RegionPlan {
        table,
        global,
        cycles,
        cross,
    })
}

/// Tables of the cuts along the rightmost and leftmost tree paths.
pub fn cut_tables(reg: &Region, prices: &[i64], cycles: &[CyclePlan], a: usize, b: usize) -> Result<Vec<CutTable>> {
    let aug = augment(&reg.graph, &reg.cycles[a], &reg.cycles[b], prices)?;
    let tree = build_shortest_path_tree(&aug)?;
    let right = extreme_path(&aug, &tree, Side::Right)?;
    let left = extreme_path(&aug, &tree, Side::Left)?;
    let mut paths = vec![right];
    if left != paths[0] {
        paths.push(left);
    }
    paths
        .iter()
        .map(|p| {
            let cut = build_cut_graph(&aug, p)?;
            let dist = cut_distances(&cut)?;
            Ok(CutTable {
                rows: cut.row_corner.iter().map(|&i| cycles[a].corners[i]).collect(),
                cols: cut.col_corner.iter().map(|&j| cycles[b].corners[j]).collect(),
                dist,
            })
        })
        .collect()
}

/// Every table is Monge, and the minimum over the tables reproduces `d_R`
/// on every corner pair.
fn audit_cuts(tables: &[CutTable], t: &DenseDistanceTable, from: &CyclePlan, to: &CyclePlan, report: &mut Report) -> bool {
    let mut ok = true;
    for tab in tables {
        if !tab.is_monge() {
            report.monge_violations += 1;
            ok = false;
        }
    }
    let k = t.len();
    let mut best = vec![INF; k * k];
    for tab in tables {
        for (i, &u) in tab.rows.iter().enumerate() {
            for (j, &v) in tab.cols.iter().enumerate() {
                let slot = &mut best[u * k + v];
                *slot = (*slot).min(tab.get(i, j));
            }
        }
    }
    ok && from
        .corners
        .iter()
        .all(|&u| to.corners.iter().all(|&v| best[u * k + v] == t.get(u, v)))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RelaxStats {
    pub smawk_calls: u64,
    pub evaluator_calls: u64,
}

#[inline]
fn offset_entry(off: i64, d: i64) -> i64 {
    if off >= INF {
        INF
    } else {
        off + d
    }
}

/// Figure-1 style relaxation of all edges between corners of one cycle:
/// the cyclic matrix is split into its upper and lower staircase.
pub fn relax_same_cycle(plan: &RegionPlan, c: usize, off: &[i64], out: &mut [i64], stats: &mut RelaxStats) {
    let cor = &plan.cycles[c].corners;
    if cor.iter().all(|&p| off[p] >= INF) {
        return;
    }
    let t = &plan.table;
    if !plan.cycles[c].monge {
        relax_exhaustive(t, cor, cor, off, out);
        return;
    }
    let k = cor.len();
    let m = FnMatrix::new(k, k, |i, j| offset_entry(off[cor[i]], t.get(cor[i], cor[j])));
    let counted = Counted::new(&m);
    for shape in [Staircase::Upper, Staircase::Lower] {
        for (j, cm) in staircase_column_minima(&counted, shape).into_iter().enumerate() {
            if let Some(cm) = cm {
                let slot = &mut out[cor[j]];
                *slot = (*slot).min(cm.value);
            }
        }
        stats.smawk_calls += 1;
    }
    stats.evaluator_calls += counted.calls();
}

/// Relaxation through one cut table with SMAWK, over the rows whose offset
/// is finite.
pub fn relax_cross_cycle(tab: &CutTable, off: &[i64], out: &mut [i64], stats: &mut RelaxStats) {
    let active: Vec<usize> = (0..tab.rows.len()).filter(|&i| off[tab.rows[i]] < INF).collect();
    if active.is_empty() {
        return;
    }
    let m = FnMatrix::new(active.len(), tab.cols.len(), |a, j| {
        let i = active[a];
        offset_entry(off[tab.rows[i]], tab.get(i, j))
    });
    let counted = Counted::new(&m);
    for (j, cm) in smawk_column_minima(&counted).into_iter().enumerate() {
        let slot = &mut out[tab.cols[j]];
        *slot = (*slot).min(cm.value);
    }
    stats.smawk_calls += 1;
    stats.evaluator_calls += counted.calls();
}

/// Quadratic reference relaxation from `from` positions to `to` positions.
pub fn relax_exhaustive(t: &DenseDistanceTable, from: &[usize], to: &[usize], off: &[i64], out: &mut [i64]) {
    for &u in from {
        if off[u] >= INF {
            continue;
        }
        for &v in to {
            let cand = off[u] + t.get(u, v);
            if cand < out[v] {
                out[v] = cand;
            }
        }
    }
}

/// Candidate values `min_w e_prev[w] + d_R(w, v)` for every boundary
/// position `v` of the region.
pub fn relax_region(plan: &RegionPlan, e_prev: &[i64], stats: &mut RelaxStats) -> Vec<i64> {
    let off: Vec<i64> = plan.global.iter().map(|&g| e_prev[g]).collect();
    let mut out = vec![INF; off.len()];
    if off.iter().all(|&o| o >= INF) {
        return out;
    }
    for c in 0..plan.cycles.len() {
        relax_same_cycle(plan, c, &off, &mut out, stats);
    }
    for cp in &plan.cross {
        match &cp.relax {
            CrossRelax::Cuts(tables) => {
                for tab in tables {
                    relax_cross_cycle(tab, &off, &mut out, stats);
                }
            }
            CrossRelax::Full => relax_exhaustive(
                &plan.table,
                &plan.cycles[cp.from].corners,
                &plan.cycles[cp.to].corners,
                &off,
                &mut out,
            ),
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct BellmanFord {
    /// `D[v]` over the global boundary indices.
    pub dist: Vec<i64>,
    pub rounds: usize,
    /// `e_0, e_1, ...` up to the round that changed nothing.
    pub history: Option<Vec<Vec<i64>>>,
}

/// Distances from boundary index `r` to every boundary vertex. At most
/// `b + 1` rounds; a change in round `b + 1` means a negative cycle.
pub fn inter_region_boundary_bf(
    plans: &[RegionPlan],
    b: usize,
    r: usize,
    parallel: bool,
    keep_history: bool,
    report: &mut Report,
) -> Result<BellmanFord> {
    let mut e_prev = vec![INF; b];
    e_prev[r] = 0;
    let mut history = keep_history.then(|| vec![e_prev.clone()]);
    let mut rounds = 0;
    for j in 1..=b + 1 {
        let results = par::map(plans, parallel, |plan| {
            let mut stats = RelaxStats::default();
            let cand = relax_region(plan, &e_prev, &mut stats);
            (cand, stats)
        });
        let mut e_cur = vec![INF; b];
        for (plan, (cand, stats)) in plans.iter().zip(results) {
            for (&g, &v) in plan.global.iter().zip(&cand) {
                if v < e_cur[g] {
                    e_cur[g] = v;
                }
            }
            report.smawk_calls += stats.smawk_calls;
            report.evaluator_calls += stats.evaluator_calls;
        }
        rounds = j;
        if let Some(h) = history.as_mut() {
            h.push(e_cur.clone());
        }
        if e_cur == e_prev {
            break;
        }
        if j == b + 1 {
            return Err(Error::NegativeCycleDetected);
        }
        e_prev = e_cur;
    }
    report.bf_rounds += rounds as u64;
    Ok(BellmanFord {
        dist: e_prev,
        rounds,
        history,
    })
}
