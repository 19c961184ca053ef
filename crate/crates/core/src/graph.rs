//! Directed planar multigraphs stored as a rotation system over darts.
//!
//! Every undirected edge `e` owns two darts, `2e` and `2e + 1`, which are
//! reverses of each other. A dart carries an optional length: `None` means
//! the direction is not traversable (the input only had the opposite
//! direction). Faces are traced with `next(d) = rot_next(rev(d))`.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Sentinel for "unreachable". Never added to another sentinel.
pub const INF: i64 = 1 << 62;

const NONE: usize = usize::MAX;

#[inline]
pub fn rev(d: usize) -> usize {
    d ^ 1
}

#[derive(Debug, Clone)]
pub struct PlanarGraph {
    n: usize,
    tail: Vec<usize>,
    length: Vec<Option<i64>>,
    auxiliary: Vec<bool>,
    rot_next: Vec<usize>,
    rot_prev: Vec<usize>,
    // out-darts of each vertex in counterclockwise order, CSR layout
    adj_start: Vec<usize>,
    adj: Vec<usize>,
    outer: Option<usize>,
    coords: Option<Vec<(f64, f64)>>,
}

impl PlanarGraph {
    /// Builds an embedded graph whose rotation at each vertex is derived
    /// from the counterclockwise angular order of its neighbours.
    ///
    /// Parallel input edges between the same pair of vertices are merged into
    /// one embedded edge; each direction keeps the minimum length given.
    pub fn from_coordinates(
        n: usize,
        edges: &[(usize, usize, i64)],
        coords: &[(f64, f64)],
    ) -> Result<Self> {
        if coords.len() != n {
            return Err(Error::BadInput(format!(
                "expected {n} coordinates, got {}",
                coords.len()
            )));
        }
        let (tail, length) = merge_edges(n, edges)?;
        let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (d, &t) in tail.iter().enumerate() {
            rotations[t].push(d);
        }
        for (v, rot) in rotations.iter_mut().enumerate() {
            let (x0, y0) = coords[v];
            rot.sort_by(|&a, &b| {
                let (xa, ya) = coords[tail[rev(a)]];
                let (xb, yb) = coords[tail[rev(b)]];
                let ta = (ya - y0).atan2(xa - x0);
                let tb = (yb - y0).atan2(xb - x0);
                ta.total_cmp(&tb).then(a.cmp(&b))
            });
        }
        let aux = vec![false; tail.len()];
        let mut g = Self::from_dart_rotations(n, tail, length, aux, &rotations, true)?;
        g.outer = g.largest_area_face(coords);
        g.coords = Some(coords.to_vec());
        Ok(g)
    }

    /// Builds an embedded graph from explicit per-vertex neighbour lists in
    /// counterclockwise order. Each list must name every neighbour exactly once.
    pub fn from_rotations(
        n: usize,
        edges: &[(usize, usize, i64)],
        rotations: &[Vec<usize>],
    ) -> Result<Self> {
        if rotations.len() != n {
            return Err(Error::BadInput(format!(
                "expected {n} rotation lists, got {}",
                rotations.len()
            )));
        }
        let (tail, length) = merge_edges(n, edges)?;
        let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
        for (d, &t) in tail.iter().enumerate() {
            by_pair.insert((t, tail[rev(d)]), d);
        }
        let mut dart_rot = Vec::with_capacity(n);
        for (v, nbrs) in rotations.iter().enumerate() {
            let mut list = Vec::with_capacity(nbrs.len());
            for &w in nbrs {
                let d = by_pair.get(&(v, w)).copied().ok_or_else(|| {
                    Error::BadInput(format!("rotation of {v} names {w}, which is not adjacent"))
                })?;
                list.push(d);
            }
            dart_rot.push(list);
        }
        let mut seen = vec![0u8; tail.len()];
        for list in &dart_rot {
            for &d in list {
                seen[d] += 1;
            }
        }
        if let Some(d) = seen.iter().position(|&c| c != 1) {
            return Err(Error::BadInput(format!(
                "rotation of vertex {} must list neighbour {} exactly once",
                tail[d],
                tail[rev(d)]
            )));
        }
        let aux = vec![false; tail.len()];
        Self::from_dart_rotations(n, tail, length, aux, &dart_rot, true)
    }

    /// Low-level constructor from dart arrays and per-vertex dart rotations.
    /// `tail.len()` must be even; darts `2e`, `2e+1` are reverses.
    pub fn from_dart_rotations(
        n: usize,
        tail: Vec<usize>,
        length: Vec<Option<i64>>,
        auxiliary: Vec<bool>,
        rotations: &[Vec<usize>],
        validate: bool,
    ) -> Result<Self> {
        let nd = tail.len();
        debug_assert!(nd % 2 == 0 && length.len() == nd && auxiliary.len() == nd);
        let mut rot_next = vec![NONE; nd];
        let mut rot_prev = vec![NONE; nd];
        let mut adj_start = Vec::with_capacity(n + 1);
        let mut adj = Vec::with_capacity(nd);
        adj_start.push(0);
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if tail[d] != v {
                    return Err(Error::BadInput(format!("dart {d} listed at wrong vertex {v}")));
                }
                let nx = rot[(i + 1) % rot.len()];
                rot_next[d] = nx;
                rot_prev[nx] = d;
                adj.push(d);
            }
            adj_start.push(adj.len());
        }
        for d in 0..nd {
            if tail[d] == tail[rev(d)] {
                return Err(Error::SelfLoop(tail[d]));
            }
            if rot_next[d] == NONE {
                return Err(Error::BadInput(format!("dart {d} missing from rotation")));
            }
        }
        let g = Self {
            n,
            tail,
            length,
            auxiliary,
            rot_next,
            rot_prev,
            adj_start,
            adj,
            outer: None,
            coords: None,
        };
        if validate {
            if !g.is_connected() {
                return Err(Error::DisconnectedGraph);
            }
            let faces = g.face_count();
            if !g.euler_holds(faces) {
                return Err(Error::NonPlanarEmbedding {
                    vertices: g.n,
                    edges: g.num_edges(),
                    faces,
                });
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    /// Number of undirected embedded edges.
    pub fn num_edges(&self) -> usize {
        self.tail.len() / 2
    }

    #[inline]
    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    #[inline]
    pub fn head(&self, d: usize) -> usize {
        self.tail[rev(d)]
    }

    #[inline]
    pub fn length(&self, d: usize) -> Option<i64> {
        self.length[d]
    }

    pub fn is_auxiliary(&self, d: usize) -> bool {
        self.auxiliary[d]
    }

    #[inline]
    pub fn rot_next(&self, d: usize) -> usize {
        self.rot_next[d]
    }

    #[inline]
    pub fn rot_prev(&self, d: usize) -> usize {
        self.rot_prev[d]
    }

    /// Successor of `d` along its face.
    #[inline]
    pub fn next_in_face(&self, d: usize) -> usize {
        self.rot_next[rev(d)]
    }

    /// Out-darts of `v` in counterclockwise order.
    #[inline]
    pub fn out_darts(&self, v: usize) -> &[usize] {
        &self.adj[self.adj_start[v]..self.adj_start[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj_start[v + 1] - self.adj_start[v]
    }

    /// A dart on the designated outer face, when known (coordinate input).
    pub fn outer_dart(&self) -> Option<usize> {
        self.outer
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    /// Directed edges `(tail, head, length)` for every traversable dart.
    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.num_darts())
            .filter_map(move |d| self.length[d].map(|l| (self.tail(d), self.head(d), l)))
    }

    /// Per-vertex neighbour lists in rotation order.
    pub fn neighbour_rotations(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|v| self.out_darts(v).iter().map(|&d| self.head(d)).collect())
            .collect()
    }

    /// Face cycles as dart sequences; every dart lies in exactly one.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_darts()];
        let mut faces = Vec::new();
        for start in 0..self.num_darts() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.next_in_face(d);
            }
            faces.push(face);
        }
        faces
    }

    /// Face index of every dart, consistent with [`PlanarGraph::faces`].
    pub fn face_ids(&self) -> (Vec<usize>, usize) {
        let mut id = vec![NONE; self.num_darts()];
        let mut count = 0;
        for start in 0..self.num_darts() {
            if id[start] != NONE {
                continue;
            }
            let mut d = start;
            while id[d] == NONE {
                id[d] = count;
                d = self.next_in_face(d);
            }
            count += 1;
        }
        (id, count)
    }

    pub fn face_count(&self) -> usize {
        if self.num_darts() == 0 {
            // a lone vertex sits in one face
            return usize::from(self.n > 0);
        }
        self.face_ids().1
    }

    fn euler_holds(&self, faces: usize) -> bool {
        self.n as i64 - self.num_edges() as i64 + faces as i64 == 2
    }

    /// Euler's formula for the current embedding (connected graphs only).
    pub fn is_planar_embedding(&self) -> bool {
        self.is_connected() && self.euler_holds(self.face_count())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Connected components (ignoring direction), each sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![NONE; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != NONE {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &d in self.out_darts(v) {
                    let w = self.head(d);
                    if comp[w] == NONE {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `vertices` (sorted, distinct). Local vertex `i`
    /// is `vertices[i]`; the rotation is the restriction of this one.
    /// Also returns the parent dart of every local dart.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (PlanarGraph, Vec<usize>) {
        let mut local = vec![NONE; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut tail = Vec::new();
        let mut length = Vec::new();
        let mut aux = Vec::new();
        let mut parent = Vec::new();
        let mut to_local = HashMap::new();
        for e in 0..self.num_edges() {
            let d = 2 * e;
            let (a, b) = (local[self.tail(d)], local[self.head(d)]);
            if a == NONE || b == NONE {
                continue;
            }
            for dd in [d, d + 1] {
                to_local.insert(dd, tail.len());
                tail.push(local[self.tail(dd)]);
                length.push(self.length[dd]);
                aux.push(self.auxiliary[dd]);
                parent.push(dd);
            }
        }
        let rotations: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                self.out_darts(v)
                    .iter()
                    .filter_map(|d| to_local.get(d).copied())
                    .collect()
            })
            .collect();
        let mut g = Self::from_dart_rotations(vertices.len(), tail, length, aux, &rotations, false)
            .expect("restriction of a valid rotation system is valid");
        if let Some(c) = &self.coords {
            g.coords = Some(vertices.iter().map(|&v| c[v]).collect());
        }
        (g, parent)
    }

    /// Copy with every dart length replaced by `f(dart, old)`.
    pub fn with_lengths(&self, f: impl Fn(usize, Option<i64>) -> Option<i64>) -> PlanarGraph {
        let mut g = self.clone();
        for d in 0..g.num_darts() {
            g.length[d] = f(d, self.length[d]);
        }
        g
    }

    fn largest_area_face(&self, coords: &[(f64, f64)]) -> Option<usize> {
        let mut best: Option<(f64, usize)> = None;
        for face in self.faces() {
            let mut area = 0.0;
            for &d in &face {
                let (x0, y0) = coords[self.tail(d)];
                let (x1, y1) = coords[self.head(d)];
                area += x0 * y1 - x1 * y0;
            }
            let a = area.abs();
            if best.is_none_or(|(b, _)| a > b) {
                best = Some((a, face[0]));
            }
        }
        best.map(|(_, d)| d)
    }

    /// Sum of |l| over traversable darts, in 128 bits.
    pub fn total_abs_length(&self) -> i128 {
        self.length
            .iter()
            .flatten()
            .map(|&l| (l as i128).abs())
            .sum()
    }

    /// Every face has exactly three darts.
    pub fn is_triangulated(&self) -> bool {
        self.faces().iter().all(|f| f.len() == 3)
    }
}

fn merge_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<(Vec<usize>, Vec<Option<i64>>)> {
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut tail = Vec::new();
    let mut length: Vec<Option<i64>> = Vec::new();
    for &(u, v, l) in edges {
        if u >= n || v >= n {
            return Err(Error::BadInput(format!("edge {u}->{v} out of range (n = {n})")));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        let e = *index.entry(key).or_insert_with(|| {
            tail.push(key.0);
            tail.push(key.1);
            length.push(None);
            length.push(None);
            tail.len() / 2 - 1
        });
        let d = if u == key.0 { 2 * e } else { 2 * e + 1 };
        length[d] = Some(length[d].map_or(l, |old: i64| old.min(l)));
    }
    Ok((tail, length))
}

/// Adds the auxiliary structure that makes every ordered pair of vertices
/// mutually reachable: each one-way dart gets a reverse of length `BIG`, and
/// every face longer than three darts is fanned into triangles whose chords
/// carry `BIG` in both directions.
///
/// `BIG = 1 + sum |l|` over the input, so a path using any auxiliary dart is
/// longer than every finite path of the input.
pub fn triangulate(g: &PlanarGraph) -> Result<PlanarGraph> {
    let big = 1 + g.total_abs_length();
    // every simple path has at most n darts, each at most BIG
    if big.saturating_mul(g.n() as i128 + 1).saturating_mul(4) >= INF as i128 {
        return Err(Error::Overflow);
    }
    let big = big as i64;
    let mut tail = g.tail.clone();
    let mut length = g.length.clone();
    let mut aux = g.auxiliary.clone();
    for d in 0..length.len() {
        if length[d].is_none() {
            length[d] = Some(big);
            aux[d] = true;
        }
    }
    let mut rotations: Vec<Vec<usize>> = (0..g.n).map(|v| g.out_darts(v).to_vec()).collect();
    // chord darts to insert: (vertex, dart to insert, insert-before dart)
    let mut inserts: Vec<(usize, usize, usize)> = Vec::new();
    let mut occurrences = vec![0usize; g.n];
    for face in g.faces() {
        let k = face.len();
        if k <= 3 {
            continue;
        }
        for &d in &face {
            occurrences[g.tail(d)] += 1;
        }
        let start = face.iter().position(|&d| occurrences[g.tail(d)] == 1);
        for &d in &face {
            occurrences[g.tail(d)] = 0;
        }
        let Some(start) = start else {
            return Err(Error::BadInput(
                "face without a simple vertex cannot be fanned".into(),
            ));
        };
        let walk: Vec<usize> = (0..k).map(|i| face[(start + i) % k]).collect();
        let apex = g.tail(walk[0]);
        // chords apex -> tail(walk[i]) for i = 2..k-1; at the apex they sit
        // just before walk[0] in the order c_{k-2}, ..., c_2
        let mut before_at_apex = walk[0];
        for &wd in walk.iter().take(k - 1).skip(2) {
            let w = g.tail(wd);
            let c = tail.len();
            tail.push(apex);
            tail.push(w);
            length.push(Some(big));
            length.push(Some(big));
            aux.push(true);
            aux.push(true);
            inserts.push((apex, c, before_at_apex));
            before_at_apex = c;
            // at w the chord's reverse goes just before the face dart leaving w
            inserts.push((w, c + 1, wd));
        }
    }
    for (v, d, before) in inserts {
        let rot = &mut rotations[v];
        let pos = rot.iter().position(|&x| x == before).expect("anchor dart in rotation");
        rot.insert(pos, d);
    }
    let mut out = PlanarGraph::from_dart_rotations(g.n, tail, length, aux, &rotations, true)?;
    out.coords = g.coords.clone();
    Ok(out)
}
