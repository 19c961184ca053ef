//! Fundamental-cycle separators and recursive r-divisions.
//!
//! The separator works on a structural triangulation of its input (lengths
//! are ignored). For a BFS tree, every non-tree edge closes a fundamental
//! cycle, and the non-tree edges form a spanning tree of the dual. The
//! number of vertices strictly inside the cycle of a dual-tree edge follows
//! from Euler's formula for the triangulated disk it bounds.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{triangulate, PlanarGraph};

const NONE: usize = usize::MAX;

/// A cycle whose removal leaves `inside` and `outside` with no edge between
/// them. Vertex ids refer to the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub cycle: Vec<usize>,
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
}

impl Separator {
    pub fn is_balanced(&self, n: usize) -> bool {
        3 * self.inside.len().max(self.outside.len()) <= 2 * n
    }
}

/// Balanced separator for a connected embedded graph: neither side holds more
/// than `2n/3` vertices. Graphs with at most three vertices return all of
/// them as the cycle.
pub fn cycle_separator(g: &PlanarGraph) -> Separator {
    weighted_separator(g, &vec![1; g.n()])
}

/// Separator balancing the total of `weight` on either side. Exact for unit
/// weights; with other weights the balance of a candidate is estimated.
pub fn weighted_separator(g: &PlanarGraph, weight: &[u64]) -> Separator {
    let n = g.n();
    if n <= 3 {
        return Separator {
            cycle: (0..n).collect(),
            inside: Vec::new(),
            outside: Vec::new(),
        };
    }
    let t = triangulate(&g.with_lengths(|_, _| Some(0))).expect("zero lengths cannot overflow");
    let (fid, nf) = t.face_ids();
    let unit = weight.iter().all(|&w| w == 1);
    let mut best: Option<(Candidate, Trees)> = None;
    for root in candidate_roots(&t) {
        let trees = Trees::new(&t, &fid, nf, weight, root);
        if let Some(c) = trees.best_candidate(&t, &fid, weight, unit) {
            if best.as_ref().is_none_or(|(b, _)| c.key() < b.key()) {
                best = Some((c, trees));
            }
        }
    }
    match best {
        Some((c, trees)) => trees.materialize(&t, &fid, &c),
        None => Separator {
            cycle: (0..n).collect(),
            inside: Vec::new(),
            outside: Vec::new(),
        },
    }
}

fn bfs(g: &PlanarGraph, root: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut parent = vec![NONE; n];
    let mut depth = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &d in g.out_darts(v) {
            let w = g.head(d);
            if depth[w] == NONE {
                depth[w] = depth[v] + 1;
                parent[w] = d;
                queue.push_back(w);
            }
        }
    }
    (parent, depth, order)
}

/// Midpoint of a double-sweep diameter path, vertex 0, and the far end.
fn candidate_roots(g: &PlanarGraph) -> Vec<usize> {
    let (_, _, order) = bfs(g, 0);
    let a = *order.last().unwrap();
    let (parent, depth, order) = bfs(g, a);
    let b = *order.last().unwrap();
    let mut mid = b;
    for _ in 0..depth[b] / 2 {
        mid = g.tail(parent[mid]);
    }
    let mut roots = vec![mid];
    for v in [0, b] {
        if !roots.contains(&v) {
            roots.push(v);
        }
    }
    roots
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    edge: usize,
    child_face: usize,
    lca: usize,
    len: usize,
    worst: u64,
    balanced: bool,
}

impl Candidate {
    fn key(&self) -> (bool, u64, u64) {
        if self.balanced {
            (false, self.len as u64, self.worst)
        } else {
            (true, self.worst, self.len as u64)
        }
    }
}

/// BFS tree, its dual co-tree, and subtree aggregates for one root.
struct Trees {
    parent: Vec<usize>,
    depth: Vec<usize>,
    up: Vec<Vec<usize>>,
    path_weight: Vec<u64>,
    dual_parent: Vec<usize>,
    dual_children: Vec<Vec<usize>>,
    sub_faces: Vec<u64>,
    sub_weight: Vec<u64>,
}

impl Trees {
    fn new(t: &PlanarGraph, fid: &[usize], nf: usize, weight: &[u64], root: usize) -> Self {
        let n = t.n();
        let (parent, depth, order) = bfs(t, root);
        let mut tree_edge = vec![false; t.num_edges()];
        let mut path_weight = vec![0u64; n];
        let mut up0 = vec![root; n];
        for &v in &order {
            if parent[v] != NONE {
                tree_edge[parent[v] / 2] = true;
                let p = t.tail(parent[v]);
                up0[v] = p;
                path_weight[v] = path_weight[p] + weight[v];
            } else {
                path_weight[v] = weight[v];
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        let levels = (usize::BITS - max_depth.leading_zeros()).max(1) as usize;
        let mut up = vec![up0];
        for k in 1..levels {
            let prev = &up[k - 1];
            let next: Vec<usize> = (0..n).map(|v| prev[prev[v]]).collect();
            up.push(next);
        }

        // dual co-tree over faces, rooted at face 0
        let mut face_edges: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for e in 0..t.num_edges() {
            if !tree_edge[e] && fid[2 * e] != fid[2 * e + 1] {
                face_edges[fid[2 * e]].push(e);
                face_edges[fid[2 * e + 1]].push(e);
            }
        }
        let mut dual_parent = vec![NONE; nf];
        let mut seen = vec![false; nf];
        let mut dual_order = Vec::with_capacity(nf);
        let mut dual_children = vec![Vec::new(); nf];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            dual_order.push(f);
            for &e in &face_edges[f] {
                let g = if fid[2 * e] == f { fid[2 * e + 1] } else { fid[2 * e] };
                if !seen[g] {
                    seen[g] = true;
                    dual_parent[g] = e;
                    dual_children[f].push(g);
                    queue.push_back(g);
                }
            }
        }
        let mut face_weight = vec![0u64; nf];
        for v in 0..n {
            if let Some(&d) = t.out_darts(v).first() {
                face_weight[fid[d]] += weight[v];
            }
        }
        let mut sub_faces = vec![1u64; nf];
        let mut sub_weight = face_weight;
        for &f in dual_order.iter().rev() {
            let e = dual_parent[f];
            if e != NONE {
                let p = if fid[2 * e] == f { fid[2 * e + 1] } else { fid[2 * e] };
                sub_faces[p] += sub_faces[f];
                sub_weight[p] += sub_weight[f];
            }
        }
        Self {
            parent,
            depth,
            up,
            path_weight,
            dual_parent,
            dual_children,
            sub_faces,
            sub_weight,
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        if self.depth[a] < self.depth[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let diff = self.depth[a] - self.depth[b];
        for (k, row) in self.up.iter().enumerate() {
            if diff >> k & 1 == 1 {
                a = row[a];
            }
        }
        if a == b {
            return a;
        }
        for row in self.up.iter().rev() {
            if row[a] != row[b] {
                a = row[a];
                b = row[b];
            }
        }
        self.up[0][a]
    }

    fn best_candidate(&self, t: &PlanarGraph, fid: &[usize], weight: &[u64], unit: bool) -> Option<Candidate> {
        let n = t.n() as u64;
        let total: u64 = weight.iter().sum();
        let mut best: Option<Candidate> = None;
        for (f, &e) in self.dual_parent.iter().enumerate() {
            if e == NONE {
                continue;
            }
            debug_assert!(fid[2 * e] == f || fid[2 * e + 1] == f);
            let (u, v) = (t.tail(2 * e), t.head(2 * e));
            let l = self.lca(u, v);
            let len = self.depth[u] + self.depth[v] - 2 * self.depth[l] + 1;
            let (inside, outside) = if unit {
                // triangulated disk: F = 2 I + L - 2
                let inside = (self.sub_faces[f] + 2).saturating_sub(len as u64) / 2;
                (inside, n.saturating_sub(len as u64 + inside))
            } else {
                let cyc = self.path_weight[u] + self.path_weight[v] - 2 * self.path_weight[l] + weight[l];
                let inside = self.sub_weight[f].saturating_sub(cyc / 2);
                (inside, total.saturating_sub(cyc + inside))
            };
            let worst = inside.max(outside);
            let c = Candidate {
                edge: e,
                child_face: f,
                lca: l,
                len,
                worst,
                balanced: 3 * worst <= 2 * total,
            };
            if best.is_none_or(|b| c.key() < b.key()) {
                best = Some(c);
            }
        }
        best
    }

    fn materialize(&self, t: &PlanarGraph, fid: &[usize], c: &Candidate) -> Separator {
        let n = t.n();
        let mut on_cycle = vec![false; n];
        let mut cycle = Vec::new();
        for end in [t.tail(2 * c.edge), t.head(2 * c.edge)] {
            let mut x = end;
            while x != c.lca {
                on_cycle[x] = true;
                cycle.push(x);
                x = t.tail(self.parent[x]);
            }
        }
        on_cycle[c.lca] = true;
        cycle.push(c.lca);

        let mut in_face = vec![false; self.dual_parent.len()];
        let mut stack = vec![c.child_face];
        while let Some(f) = stack.pop() {
            in_face[f] = true;
            stack.extend(&self.dual_children[f]);
        }
        let mut inside_mark = vec![false; n];
        for d in 0..t.num_darts() {
            let v = t.tail(d);
            if in_face[fid[d]] && !on_cycle[v] {
                inside_mark[v] = true;
            }
        }
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for v in 0..n {
            if inside_mark[v] {
                inside.push(v);
            } else if !on_cycle[v] {
                outside.push(v);
            }
        }
        cycle.sort_unstable();
        Separator { cycle, inside, outside }
    }
}

/// Connected components of the subgraph induced by `mask`.
fn components_within(g: &PlanarGraph, mask: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if !mask[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &d in g.out_darts(v) {
                let w = g.head(d);
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Pieces from a separation `a | s | b` of `h`: the components of `a ∪ s`
/// and of `b ∪ s`, minus components made of separator vertices only whose
/// vertices and edges are already covered by the other side.
fn pieces_from_separation(h: &PlanarGraph, a: &[usize], s: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let mut mask_a = in_s.clone();
    for &v in a {
        mask_a[v] = true;
    }
    let mut covered = vec![false; n];
    let mut out = Vec::new();
    for comp in components_within(h, &mask_a) {
        if comp.iter().all(|&v| in_s[v]) {
            continue;
        }
        for &v in &comp {
            covered[v] = true;
        }
        out.push(comp);
    }
    let mut mask_b = in_s.clone();
    for &v in b {
        mask_b[v] = true;
    }
    for comp in components_within(h, &mask_b) {
        if comp.iter().all(|&v| in_s[v] && covered[v]) {
            continue;
        }
        out.push(comp);
    }
    out
}

/// BFS-layer split used when the cycle separator makes no progress: the
/// separator is one layer, chosen to balance the layers before and after.
fn layer_separation(h: &PlanarGraph) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let (_, _, order) = bfs(h, 0);
    let far = *order.last()?;
    let (_, depth, _) = bfs(h, far);
    let max_depth = depth.iter().copied().max()?;
    if max_depth < 2 {
        return None;
    }
    let mut count = vec![0usize; max_depth + 1];
    for &d in &depth {
        count[d] += 1;
    }
    let mut best = (usize::MAX, 1);
    let mut before = 0;
    for k in 1..max_depth {
        before += count[k - 1];
        let after = h.n() - before - count[k];
        let worst = before.max(after);
        if worst < best.0 {
            best = (worst, k);
        }
    }
    let k = best.1;
    let pick = |f: &dyn Fn(usize) -> bool| (0..h.n()).filter(|&v| f(depth[v])).collect::<Vec<_>>();
    Some((pick(&|d| d < k), pick(&|d| d == k), pick(&|d| d > k)))
}

/// Splits the piece into strictly smaller connected pieces, or `None`.
fn split_piece(g: &PlanarGraph, piece: &[usize], weight: &dyn Fn(usize) -> u64) -> Option<Vec<Vec<usize>>> {
    let (h, _) = g.induced_subgraph(piece);
    let w: Vec<u64> = piece.iter().map(|&v| weight(v)).collect();
    let sep = weighted_separator(&h, &w);
    let mut pieces = pieces_from_separation(&h, &sep.inside, &sep.cycle, &sep.outside);
    if pieces.iter().any(|p| p.len() >= piece.len()) {
        let (a, s, b) = layer_separation(&h)?;
        pieces = pieces_from_separation(&h, &a, &s, &b);
        if pieces.iter().any(|p| p.len() >= piece.len()) {
            return None;
        }
    }
    Some(
        pieces
            .into_iter()
            .map(|p| p.into_iter().map(|v| piece[v]).collect())
            .collect(),
    )
}

/// One piece of an r-division, stored as an induced subgraph of the divided
/// graph. Boundary cycles are face walks of the region's own embedding;
/// `cycles[0]` is the external one and the rest are holes.
#[derive(Debug, Clone)]
pub struct Region {
    /// Parent vertex ids, ascending; local vertex `i` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub graph: PlanarGraph,
    /// Parent dart of each local dart.
    pub parent_dart: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    /// Local ids of every vertex on some boundary cycle, ascending.
    pub boundary: Vec<usize>,
    /// Local id of `r_R`, the lowest-id vertex on the external cycle.
    pub source: usize,
}

impl Region {
    pub fn holes(&self) -> usize {
        self.cycles.len().saturating_sub(1)
    }

    /// Local vertex at each corner of cycle `c`, in walk order.
    pub fn corners(&self, c: usize) -> Vec<usize> {
        self.cycles[c].iter().map(|&d| self.graph.tail(d)).collect()
    }

    pub fn boundary_parents(&self) -> Vec<usize> {
        self.boundary.iter().map(|&v| self.vertices[v]).collect()
    }

    pub fn local_id(&self, parent: usize) -> Option<usize> {
        self.vertices.binary_search(&parent).ok()
    }
}

/// The same region with hole `hole` as its external cycle and the old
/// external cycle in that hole's slot. The rotation system is untouched, so
/// in-region distances are unchanged.
pub fn make_hole_external(reg: &Region, hole: usize) -> Result<Region> {
    if hole >= reg.holes() {
        return Err(Error::InvalidHole {
            index: hole,
            holes: reg.holes(),
        });
    }
    let mut out = reg.clone();
    out.cycles.swap(0, hole + 1);
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct RDivision {
    pub r: usize,
    pub regions: Vec<Region>,
    /// Parent ids of all boundary vertices, ascending.
    pub boundary: Vec<usize>,
    /// Regions containing each vertex.
    pub membership: Vec<Vec<usize>>,
}

impl RDivision {
    pub fn max_holes(&self) -> usize {
        self.regions.iter().map(Region::holes).max().unwrap_or(0)
    }

    /// Smallest `c_b` with every region's boundary at most `c_b * sqrt(r)`.
    pub fn boundary_constant(&self) -> f64 {
        let root = (self.r as f64).sqrt();
        self.regions
            .iter()
            .map(|reg| reg.boundary.len() as f64 / root)
            .fold(0.0, f64::max)
    }

    /// Smallest `c_r` with region count at most `c_r * n / r`.
    pub fn region_constant(&self) -> f64 {
        let n = self.membership.len().max(1);
        self.regions.len() as f64 * self.r as f64 / n as f64
    }

    /// Structural checks: region size, edge coverage, boundary placement and
    /// the interior partition. Returns the first violation found.
    pub fn audit(&self, g: &PlanarGraph) -> std::result::Result<(), String> {
        let mut edge_seen = vec![false; g.num_edges()];
        let mut interior_owner = vec![NONE; g.n()];
        let mut boundary_mark = vec![false; g.n()];
        for &v in &self.boundary {
            boundary_mark[v] = true;
        }
        for (i, reg) in self.regions.iter().enumerate() {
            if reg.vertices.len() > self.r {
                return Err(format!("region {i} has {} > r vertices", reg.vertices.len()));
            }
            if !reg.graph.is_connected() {
                return Err(format!("region {i} is disconnected"));
            }
            for &d in &reg.parent_dart {
                edge_seen[d / 2] = true;
            }
            let mut on_cycle = vec![false; reg.graph.n()];
            for &v in &reg.boundary {
                on_cycle[v] = true;
            }
            for (local, &v) in reg.vertices.iter().enumerate() {
                let outside = g.out_darts(v).iter().any(|&d| reg.local_id(g.head(d)).is_none());
                if (outside || self.membership[v].len() > 1) && !on_cycle[local] {
                    return Err(format!("vertex {v} of region {i} needs a boundary cycle"));
                }
                if !boundary_mark[v] {
                    if interior_owner[v] != NONE {
                        return Err(format!("interior vertex {v} in two regions"));
                    }
                    interior_owner[v] = i;
                }
            }
            for cycle in &reg.cycles {
                for (k, &d) in cycle.iter().enumerate() {
                    if reg.graph.next_in_face(d) != cycle[(k + 1) % cycle.len()] {
                        return Err(format!("cycle of region {i} is not a face walk"));
                    }
                }
            }
        }
        if let Some(e) = edge_seen.iter().position(|&s| !s) {
            return Err(format!("edge {e} is in no region"));
        }
        if let Some(v) = (0..g.n()).find(|&v| self.membership[v].is_empty()) {
            return Err(format!("vertex {v} is in no region"));
        }
        Ok(())
    }

    pub fn dump(&self) -> String {
        self.regions
            .iter()
            .enumerate()
            .map(|(i, reg)| {
                format!(
                    "region {i} nv={} nb={} holes={}\n",
                    reg.vertices.len(),
                    reg.boundary.len(),
                    reg.holes()
                )
            })
            .collect()
    }
}

/// Boundary budget per region, as a multiple of `sqrt(r)`, enforced by
/// splitting regions further.
const BOUNDARY_FACTOR: f64 = 4.0;

/// Divides a connected embedded graph into regions of at most `r` vertices.
pub fn r_division(g: &PlanarGraph, r: usize) -> Result<RDivision> {
    if r < 4 {
        return Err(Error::ParameterTooSmall(r));
    }
    let n = g.n();
    let mut done = Vec::new();
    let mut stack = vec![(0..n).collect::<Vec<_>>()];
    while let Some(piece) = stack.pop() {
        if piece.len() <= r {
            done.push(piece);
            continue;
        }
        match split_piece(g, &piece, &|_| 1) {
            Some(parts) => stack.extend(parts),
            None => done.push(piece),
        }
    }

    let budget = (BOUNDARY_FACTOR * (r as f64).sqrt()).ceil() as usize;
    for _ in 0..8 {
        let (count, _) = membership(n, &done);
        let mut changed = false;
        let mut next = Vec::with_capacity(done.len());
        let mut stamp = vec![NONE; n];
        for (i, piece) in done.into_iter().enumerate() {
            for &v in &piece {
                stamp[v] = i;
            }
            let is_boundary = |v: usize| count[v] > 1 || g.out_darts(v).iter().any(|&d| stamp[g.head(d)] != i);
            let nb = piece.iter().filter(|&&v| is_boundary(v)).count();
            if nb > budget && piece.len() > 4 {
                let weight = |v: usize| u64::from(is_boundary(v));
                if let Some(parts) = split_piece(g, &piece, &weight) {
                    next.extend(parts);
                    changed = true;
                    continue;
                }
            }
            next.push(piece);
        }
        done = next;
        if !changed {
            break;
        }
    }
    done.sort();

    let (count, members) = membership(n, &done);
    let single = done.len() == 1;
    let regions: Vec<Region> = done
        .iter()
        .map(|piece| build_region(g, piece, &count, single))
        .collect();
    let mut boundary: Vec<usize> = regions.iter().flat_map(Region::boundary_parents).collect();
    boundary.sort_unstable();
    boundary.dedup();
    Ok(RDivision {
        r,
        regions,
        boundary,
        membership: members,
    })
}

fn membership(n: usize, pieces: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut members = vec![Vec::new(); n];
    for (i, p) in pieces.iter().enumerate() {
        for &v in p {
            members[v].push(i);
        }
    }
    (members.iter().map(Vec::len).collect(), members)
}

fn build_region(g: &PlanarGraph, vertices: &[usize], count: &[usize], single: bool) -> Region {
    let (graph, parent_dart) = g.induced_subgraph(vertices);
    let faces = graph.faces();
    let (fid, _) = graph.face_ids();
    let mut chosen = vec![false; faces.len()];
    if single {
        let outer = g
            .outer_dart()
            .and_then(|o| parent_dart.iter().position(|&p| p == o))
            .map(|d| fid[d])
            .unwrap_or_else(|| (0..faces.len()).max_by_key(|&f| (faces[f].len(), std::cmp::Reverse(f))).unwrap_or(0));
        if !faces.is_empty() {
            chosen[outer] = true;
        }
    } else {
        for d in 0..graph.num_darts() {
            if parent_dart[graph.next_in_face(d)] != g.next_in_face(parent_dart[d]) {
                chosen[fid[d]] = true;
            }
        }
    }
    let mut on_cycle = vec![false; graph.n()];
    let mark = |chosen: &[bool], on_cycle: &mut [bool]| {
        for (f, face) in faces.iter().enumerate() {
            if chosen[f] {
                for &d in face {
                    on_cycle[graph.tail(d)] = true;
                }
            }
        }
    };
    mark(&chosen, &mut on_cycle);
    if !single {
        // vertices shared with other regions, or adjacent to outside vertices,
        // must sit on some boundary cycle
        let mut local = vec![NONE; g.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        for (i, &v) in vertices.iter().enumerate() {
            let needs = count[v] > 1 || g.out_darts(v).iter().any(|&d| local[g.head(d)] == NONE);
            if needs && !on_cycle[i] {
                if let Some(&d) = graph.out_darts(i).first() {
                    chosen[fid[d]] = true;
                    mark(&chosen, &mut on_cycle);
                }
            }
        }
    }
    let mut cycles: Vec<Vec<usize>> = (0..faces.len()).filter(|&f| chosen[f]).map(|f| faces[f].clone()).collect();
    if let Some(ext) = (0..cycles.len()).max_by_key(|&c| (cycles[c].len(), std::cmp::Reverse(c))) {
        cycles.swap(0, ext);
    }
    let boundary: Vec<usize> = (0..graph.n()).filter(|&v| on_cycle[v]).collect();
    let source = cycles
        .first()
        .and_then(|c| c.iter().map(|&d| graph.tail(d)).min())
        .unwrap_or(0);
    Region {
        vertices: vertices.to_vec(),
        graph,
        parent_dart,
        cycles,
        boundary,
        source,
    }
}
