//! Cutting a region open along a shortest path between two boundary
//! cycles, so both cycles end up on one face.
//!
//! Each cycle first gets a ring of new vertices inside its face, one per
//! corner, joined to the corner by a zero-length spoke (into the region for
//! the source cycle, out of it for the target cycle). Ring edges are not
//! traversable. Corners are thereby distinct vertices even when the face
//! walk repeats a vertex, and a cut path starts and ends on ring vertices.

use crate::error::{Error, Result};
use crate::graph::{rev, PlanarGraph};
use crate::sssp::{dijkstra, DistanceResult, PriceFunction};

const NONE: usize = usize::MAX;

/// A region with rings added inside two of its boundary faces.
#[derive(Debug, Clone)]
pub struct Augmented {
    pub graph: PlanarGraph,
    /// Vertex count of the region before augmentation.
    pub base: usize,
    /// Corner counts of the source and target cycle.
    pub k1: usize,
    pub k2: usize,
    /// Region vertex at each augmented vertex (ring vertex to its corner).
    pub origin: Vec<usize>,
    pub prices: PriceFunction,
}

impl Augmented {
    pub fn c(&self, i: usize) -> usize {
        self.base + i
    }

    pub fn h(&self, j: usize) -> usize {
        self.base + self.k1 + j
    }

    fn is_h(&self, v: usize) -> bool {
        v >= self.base + self.k1 && v < self.base + self.k1 + self.k2
    }

    fn is_c(&self, v: usize) -> bool {
        v >= self.base && v < self.base + self.k1
    }

    fn first_new_edge(&self) -> usize {
        self.graph.num_edges() - 2 * (self.k1 + self.k2)
    }

    fn ring1(&self) -> usize {
        self.first_new_edge() + self.k1
    }

    fn ring2(&self) -> usize {
        self.first_new_edge() + 2 * self.k1 + self.k2
    }

    /// The ring dart `c_i -> c_{i-1}`, which sits between spoke and forward
    /// ring dart at `c_i`.
    fn ring_back(&self, ring_start: usize, k: usize, i: usize) -> usize {
        2 * (ring_start + (i + k - 1) % k) + 1
    }
}

/// Adds the source ring in face `c1` and the target ring in face `c2`.
/// Both are face walks (dart lists) of `g`. Ring vertices inherit the price
/// of their corner, so `prices` stays feasible.
pub fn augment(g: &PlanarGraph, c1: &[usize], c2: &[usize], prices: &[i64]) -> Result<Augmented> {
    let (n0, e0) = (g.n(), g.num_edges());
    let (k1, k2) = (c1.len(), c2.len());
    if k1 < 2 || k2 < 2 {
        return Err(Error::MalformedPath("boundary cycle with fewer than two darts".into()));
    }
    let n = n0 + k1 + k2;
    let mut tail: Vec<usize> = (0..g.num_darts()).map(|d| g.tail(d)).collect();
    let mut length: Vec<Option<i64>> = (0..g.num_darts()).map(|d| g.length(d)).collect();
    let mut aux: Vec<bool> = (0..g.num_darts()).map(|d| g.is_auxiliary(d)).collect();
    let mut origin: Vec<usize> = (0..n0).collect();
    let mut insert_after = vec![NONE; g.num_darts()];
    let spokes1 = e0;
    let ring1 = e0 + k1;
    let spokes2 = e0 + 2 * k1;
    let ring2 = e0 + 2 * k1 + k2;
    for (i, &d) in c1.iter().enumerate() {
        origin.push(g.tail(d));
        // c_i -> u_i usable, u_i -> c_i not
        tail.extend([n0 + i, g.tail(d)]);
        length.extend([Some(0), None]);
        let prev = c1[(i + k1 - 1) % k1];
        insert_after[rev(prev)] = 2 * (spokes1 + i) + 1;
    }
    for i in 0..k1 {
        tail.extend([n0 + i, n0 + (i + 1) % k1]);
        length.extend([None, None]);
    }
    for (j, &d) in c2.iter().enumerate() {
        origin.push(g.tail(d));
        // h_j -> v_j not usable, v_j -> h_j usable
        tail.extend([n0 + k1 + j, g.tail(d)]);
        length.extend([None, Some(0)]);
        let prev = c2[(j + k2 - 1) % k2];
        if insert_after[rev(prev)] != NONE {
            return Err(Error::MalformedPath("source and target cycle share a dart".into()));
        }
        insert_after[rev(prev)] = 2 * (spokes2 + j) + 1;
    }
    for j in 0..k2 {
        tail.extend([n0 + k1 + j, n0 + k1 + (j + 1) % k2]);
        length.extend([None, None]);
    }
    aux.resize(tail.len(), true);
    let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n0 {
        let mut rot = Vec::with_capacity(g.degree(v) + 1);
        for &d in g.out_darts(v) {
            rot.push(d);
            if insert_after[d] != NONE {
                rot.push(insert_after[d]);
            }
        }
        rotations.push(rot);
    }
    for i in 0..k1 {
        rotations.push(vec![2 * (spokes1 + i), 2 * (ring1 + (i + k1 - 1) % k1) + 1, 2 * (ring1 + i)]);
    }
    for j in 0..k2 {
        rotations.push(vec![2 * (spokes2 + j), 2 * (ring2 + (j + k2 - 1) % k2) + 1, 2 * (ring2 + j)]);
    }
    let graph = PlanarGraph::from_dart_rotations(n, tail, length, aux, &rotations, cfg!(debug_assertions))
        .map_err(|e| Error::MalformedPath(format!("ring augmentation: {e}")))?;
    let prices = PriceFunction(origin.iter().map(|&v| prices[v]).collect());
    Ok(Augmented {
        graph,
        base: n0,
        k1,
        k2,
        origin,
        prices,
    })
}

/// Shortest-path tree from `c_0`, the ring vertex at the first corner of the
/// source cycle.
pub fn build_shortest_path_tree(aug: &Augmented) -> Result<DistanceResult> {
    dijkstra(&aug.graph, aug.c(0), &aug.prices)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// Darts of the extreme root-to-leaf path of the tree pruned to the target
/// ring: at each vertex leave on the first kept child after the arrival dart
/// counterclockwise (`Right`) or clockwise (`Left`).
pub fn extreme_path(aug: &Augmented, tree: &DistanceResult, side: Side) -> Result<Vec<usize>> {
    let g = &aug.graph;
    let mut keep = vec![false; g.n()];
    let root = aug.c(0);
    keep[root] = true;
    for j in 0..aug.k2 {
        let mut x = aug.h(j);
        while !keep[x] {
            keep[x] = true;
            let d = tree.parent[x].ok_or_else(|| Error::MalformedPath("target ring unreachable".into()))?;
            x = g.tail(d);
        }
    }
    let is_child = |d: usize| tree.parent[g.head(d)] == Some(d) && keep[g.head(d)];
    let mut path = Vec::new();
    let mut x = root;
    let mut din: Option<usize> = None;
    while !aug.is_h(x) {
        let next = match din {
            None => g.out_darts(x).iter().copied().find(|&d| is_child(d)),
            Some(d_in) => {
                let back = rev(d_in);
                let mut d = back;
                let mut found = None;
                for _ in 0..g.degree(x) {
                    d = match side {
                        Side::Right => g.rot_next(d),
                        Side::Left => g.rot_prev(d),
                    };
                    if d != back && is_child(d) {
                        found = Some(d);
                        break;
                    }
                }
                found
            }
        };
        let d = next.ok_or_else(|| Error::MalformedPath("pruned tree has a dead end".into()))?;
        path.push(d);
        x = g.head(d);
        din = Some(d);
        if path.len() > g.n() {
            return Err(Error::MalformedPath("tree path is not simple".into()));
        }
    }
    Ok(path)
}

/// An augmented region cut open along a path from `c_0` to a target ring
/// vertex. Every path vertex is split into a left copy, which keeps its id,
/// and a right copy; the path's edges are duplicated likewise.
#[derive(Debug, Clone)]
pub struct CutGraph {
    pub graph: PlanarGraph,
    /// Region vertex at each vertex of the cut graph.
    pub origin: Vec<usize>,
    pub prices: PriceFunction,
    /// Source ring vertices along the merged face, in walk order; `c_0`
    /// appears as both copies.
    pub rows: Vec<usize>,
    /// Target ring vertices along the merged face, in walk order.
    pub cols: Vec<usize>,
    /// Corner index on the source (target) cycle of each row (column).
    pub row_corner: Vec<usize>,
    pub col_corner: Vec<usize>,
    /// The cut path, as darts of the augmented graph.
    pub path: Vec<usize>,
}

pub fn build_cut_graph(aug: &Augmented, path: &[usize]) -> Result<CutGraph> {
    let g = &aug.graph;
    let malformed = |msg: &str| Error::MalformedPath(msg.to_string());
    let m = path.len();
    if m == 0 || g.tail(path[0]) != aug.c(0) || !aug.is_h(g.head(path[m - 1])) {
        return Err(malformed("path must run from c_0 to the target ring"));
    }
    if path.windows(2).any(|w| g.head(w[0]) != g.tail(w[1])) {
        return Err(malformed("path darts are not consecutive"));
    }
    let mut verts = vec![aug.c(0)];
    verts.extend(path.iter().map(|&d| g.head(d)));
    let mut at = vec![NONE; g.n()];
    for (t, &v) in verts.iter().enumerate() {
        if at[v] != NONE {
            return Err(malformed("path is not simple"));
        }
        at[v] = t;
    }
    let (na, ea) = (g.n(), g.num_edges());
    // right copy of dart d of path edge t (1-based)
    let copy = |t: usize, d: usize| 2 * (ea + t - 1) + (d & 1);
    let mut tail: Vec<usize> = (0..g.num_darts()).map(|d| g.tail(d)).collect();
    let mut length: Vec<Option<i64>> = (0..g.num_darts()).map(|d| g.length(d)).collect();
    let mut aux: Vec<bool> = (0..g.num_darts()).map(|d| g.is_auxiliary(d)).collect();
    for &d in path {
        let even = d & !1;
        for dd in [even, even + 1] {
            tail.push(na + at[g.tail(dd)]);
            length.push(g.length(dd));
            aux.push(g.is_auxiliary(dd));
        }
    }
    let mut rotations: Vec<Vec<usize>> = (0..na).map(|v| g.out_darts(v).to_vec()).collect();
    rotations.resize(na + m + 1, Vec::new());
    for (t, &x) in verts.iter().enumerate() {
        let rot = g.out_darts(x);
        let starting_at = |d: usize| -> Vec<usize> {
            let i = rot.iter().position(|&e| e == d).expect("path dart in rotation");
            rot[i..].iter().chain(&rot[..i]).copied().collect()
        };
        let (left, right) = if t == 0 {
            let p_out = path[0];
            let anchor = aug.ring_back(aug.ring1(), aug.k1, 0);
            let order = starting_at(p_out);
            let cut = order.iter().position(|&e| e == anchor).ok_or_else(|| malformed("c_0 lost its ring"))?;
            let l = order[..=cut].to_vec();
            let mut r = order[cut + 1..].to_vec();
            r.push(copy(1, p_out));
            (l, r)
        } else if t == m {
            let p_back = rev(path[m - 1]);
            let j = x - aug.base - aug.k1;
            let anchor = aug.ring_back(aug.ring2(), aug.k2, j);
            let order = starting_at(p_back);
            let cut = order.iter().position(|&e| e == anchor).ok_or_else(|| malformed("target lost its ring"))?;
            let mut r = vec![copy(m, p_back)];
            r.extend(&order[1..=cut]);
            let mut l = order[cut + 1..].to_vec();
            l.push(p_back);
            (l, r)
        } else {
            let p_out = path[t];
            let p_back = rev(path[t - 1]);
            let order = starting_at(p_out);
            let cut = order.iter().position(|&e| e == p_back).expect("arrival dart in rotation");
            let l = order[..=cut].to_vec();
            let mut r = vec![copy(t, p_back)];
            r.extend(&order[cut + 1..]);
            r.push(copy(t + 1, p_out));
            (l, r)
        };
        for &d in &right {
            if d < g.num_darts() {
                tail[d] = na + t;
            }
        }
        rotations[x] = left;
        rotations[na + t] = right;
    }
    let graph = PlanarGraph::from_dart_rotations(na + m + 1, tail, length, aux, &rotations, true)
        .map_err(|e| Error::MalformedPath(format!("cut graph: {e}")))?;
    let mut origin = aug.origin.clone();
    origin.extend(verts.iter().map(|&v| aug.origin[v]));
    let mut prices = aug.prices.clone();
    prices.0.extend(verts.iter().map(|&v| aug.prices.0[v]));

    // the merged face is the one on the left of the path
    let mut walk = Vec::new();
    let mut d = path[0];
    loop {
        walk.push(graph.tail(d));
        d = graph.next_in_face(d);
        if d == path[0] || walk.len() > graph.num_darts() {
            break;
        }
    }
    let is_row = |v: usize| aug.is_c(v) || v == na;
    let is_col = |v: usize| aug.is_h(v) || v == na + m;
    let rows = cyclic_run(&walk, is_row).ok_or_else(|| malformed("source ring not contiguous on the merged face"))?;
    let cols = cyclic_run(&walk, is_col).ok_or_else(|| malformed("target ring not contiguous on the merged face"))?;
    if rows.len() != aug.k1 + 1 || cols.len() != aug.k2 + 1 {
        return Err(malformed("merged face misses ring vertices"));
    }
    let end = verts[m] - aug.base - aug.k1;
    let row_corner = rows.iter().map(|&v| if v == na { 0 } else { v - aug.base }).collect();
    let col_corner = cols
        .iter()
        .map(|&v| if v == na + m { end } else { v - aug.base - aug.k1 })
        .collect();
    Ok(CutGraph {
        graph,
        origin,
        prices,
        rows,
        cols,
        row_corner,
        col_corner,
        path: path.to_vec(),
    })
}

/// The unique maximal cyclic run of `walk` entries satisfying `pred`.
fn cyclic_run(walk: &[usize], pred: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let len = walk.len();
    let starts: Vec<usize> = (0..len)
        .filter(|&i| pred(walk[i]) && !pred(walk[(i + len - 1) % len]))
        .collect();
    if starts.len() != 1 {
        return None;
    }
    let s = starts[0];
    Some((0..len).map(|k| walk[(s + k) % len]).take_while(|&v| pred(v)).collect())
}

/// `d_{R_P}(row, col)` for every row and column, row-major. Runs Dijkstra
/// from the smaller side, on the reversed graph when that is the columns.
pub fn cut_distances(cut: &CutGraph) -> Result<Vec<i64>> {
    let g = &cut.graph;
    let (nr, nc) = (cut.rows.len(), cut.cols.len());
    let mut out = vec![0; nr * nc];
    if nr <= nc {
        for (i, &u) in cut.rows.iter().enumerate() {
            let d = dijkstra(g, u, &cut.prices)?;
            for (j, &v) in cut.cols.iter().enumerate() {
                out[i * nc + j] = d.dist[v];
            }
        }
    } else {
        let rg = g.with_lengths(|d, _| g.length(rev(d)));
        let neg = PriceFunction(cut.prices.0.iter().map(|&p| -p).collect());
        for (j, &v) in cut.cols.iter().enumerate() {
            let d = dijkstra(&rg, v, &neg)?;
            for (i, &u) in cut.rows.iter().enumerate() {
                out[i * nc + j] = d.dist[u];
            }
        }
    }
    Ok(out)
}
