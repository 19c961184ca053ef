//! Seeded planar instances without negative cycles.
//!
//! Lengths are `l(u, v) = c(u, v) + pi(u) - pi(v)` with `c >= 0` and random
//! integer potentials `pi`, so every cycle has nonnegative length. A dart can
//! only be negative when `pi(v) > pi(u)`; among those darts a fraction is
//! given a small `c` so the overall negative fraction matches the request.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::PlanarGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Square grid with one random diagonal in each cell.
    Grid,
    /// Delaunay triangulation of uniform random points.
    Delaunay,
    /// Concentric rings around an empty central face.
    Ring,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Family::Grid),
            "delaunay" => Ok(Family::Delaunay),
            "ring" => Ok(Family::Ring),
            _ => Err(Error::BadSpec(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub neg_frac: f64,
    /// Potentials are drawn from `0..=amplitude`; base costs likewise.
    pub amplitude: i64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, neg_frac: f64, seed: u64) -> Self {
        Self {
            family,
            n,
            neg_frac,
            amplitude: 1000,
            seed,
        }
    }
}

/// Probability that an edge is kept in one direction only.
const ONE_WAY: f64 = 0.15;

pub fn generate(spec: &GeneratorSpec) -> Result<PlanarGraph> {
    if spec.n < 3 {
        return Err(Error::BadSpec(format!("n = {} is below 3", spec.n)));
    }
    if !(0.0..=0.5).contains(&spec.neg_frac) {
        return Err(Error::BadSpec(format!(
            "negative fraction {} outside [0, 0.5]",
            spec.neg_frac
        )));
    }
    if spec.amplitude < 1 {
        return Err(Error::BadSpec("amplitude must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (coords, pairs) = match spec.family {
        Family::Grid => grid(spec.n, &mut rng),
        Family::Delaunay => delaunay(spec.n, &mut rng)?,
        Family::Ring => ring(spec.n)?,
    };
    let edges = lengths(&pairs, spec, &mut rng);
    PlanarGraph::from_coordinates(spec.n, &edges, &coords)
}

fn grid(n: usize, rng: &mut ChaCha8Rng) -> (Vec<(f64, f64)>, Vec<(usize, usize)>) {
    let w = (n as f64).sqrt().ceil() as usize;
    let coords = (0..n).map(|v| ((v % w) as f64, (v / w) as f64)).collect();
    let mut pairs = Vec::new();
    for v in 0..n {
        let right = v % w + 1 < w && v + 1 < n;
        let down = v + w < n;
        if right {
            pairs.push((v, v + 1));
        }
        if down {
            pairs.push((v, v + w));
        }
        if right && v + w + 1 < n {
            if rng.gen_bool(0.5) {
                pairs.push((v, v + w + 1));
            } else {
                pairs.push((v + 1, v + w));
            }
        }
    }
    (coords, pairs)
}

fn delaunay(n: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<(f64, f64)>, Vec<(usize, usize)>)> {
    let points: Vec<delaunator::Point> = (0..n)
        .map(|_| delaunator::Point {
            x: rng.gen_range(0.0..1000.0),
            y: rng.gen_range(0.0..1000.0),
        })
        .collect();
    let tri = delaunator::triangulate(&points);
    if tri.triangles.is_empty() {
        return Err(Error::BadSpec("degenerate point set".into()));
    }
    let mut pairs = Vec::new();
    for e in 0..tri.triangles.len() {
        let twin = tri.halfedges[e];
        if twin == delaunator::EMPTY || e < twin {
            pairs.push((tri.triangles[e], tri.triangles[delaunator::next_halfedge(e)]));
        }
    }
    let coords = points.iter().map(|p| (p.x, p.y)).collect();
    Ok((coords, pairs))
}

fn ring(n: usize) -> Result<(Vec<(f64, f64)>, Vec<(usize, usize)>)> {
    if n < 6 {
        return Err(Error::BadSpec("ring family needs n >= 6".into()));
    }
    let rings = ((n as f64).sqrt() as usize / 2).clamp(2, n / 3);
    let per = n / rings;
    let sizes: Vec<usize> = (0..rings)
        .map(|i| if i + 1 == rings { n - per * (rings - 1) } else { per })
        .collect();
    let mut coords = Vec::with_capacity(n);
    let mut start = Vec::with_capacity(rings);
    let mut pairs = Vec::new();
    for (i, &m) in sizes.iter().enumerate() {
        start.push(coords.len());
        let radius = 2.0 + i as f64;
        for j in 0..m {
            let a = std::f64::consts::TAU * j as f64 / m as f64;
            coords.push((radius * a.cos(), radius * a.sin()));
        }
        for j in 0..m {
            pairs.push((start[i] + j, start[i] + (j + 1) % m));
        }
        if i > 0 {
            let inner = sizes[i - 1];
            for j in 0..m {
                pairs.push((start[i] + j, start[i - 1] + j * inner / m));
            }
        }
    }
    Ok((coords, pairs))
}

fn lengths(pairs: &[(usize, usize)], spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Vec<(usize, usize, i64)> {
    let a = spec.amplitude;
    let pi: Vec<i64> = (0..spec.n).map(|_| rng.gen_range(0..=a)).collect();
    let mut darts = Vec::with_capacity(2 * pairs.len());
    for &(u, v) in pairs {
        if rng.gen_bool(ONE_WAY) {
            darts.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
        } else {
            darts.push((u, v));
            darts.push((v, u));
        }
    }
    let eligible = darts.iter().filter(|&&(u, v)| pi[v] > pi[u]).count();
    let p = if eligible == 0 {
        0.0
    } else {
        (spec.neg_frac * darts.len() as f64 / eligible as f64).min(1.0)
    };
    darts
        .into_iter()
        .map(|(u, v)| {
            let gap = pi[v] - pi[u];
            let c = if gap > 0 && rng.gen_bool(p) {
                rng.gen_range(0..gap)
            } else {
                rng.gen_range(gap.max(0)..=gap.max(0) + a)
            };
            (u, v, c + pi[u] - pi[v])
        })
        .collect()
}

/// Copy of `g` where one triangular face, oriented along its walk, gets a
/// negative total length. Missing darts of that face are added. Also returns
/// the vertices of the planted cycle.
pub fn plant_negative_cycle(g: &PlanarGraph, seed: u64) -> Result<(PlanarGraph, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = g
        .coords()
        .ok_or_else(|| Error::BadSpec("planting needs coordinates".into()))?;
    let faces: Vec<Vec<usize>> = g.faces().into_iter().filter(|f| f.len() == 3).collect();
    let face = faces
        .choose(&mut rng)
        .ok_or_else(|| Error::BadSpec("no triangular face to plant in".into()))?;
    let mut edges: Vec<(usize, usize, i64)> = (0..g.num_darts())
        .filter(|d| !face.contains(d))
        .filter_map(|d| g.length(d).map(|l| (g.tail(d), g.head(d), l)))
        .collect();
    let l0 = g.length(face[0]).unwrap_or(rng.gen_range(0..100));
    let l1 = g.length(face[1]).unwrap_or(rng.gen_range(0..100));
    let l2 = -(l0 + l1) - rng.gen_range(1..=5);
    for (d, l) in face.iter().zip([l0, l1, l2]) {
        edges.push((g.tail(*d), g.head(*d), l));
    }
    let cycle = face.iter().map(|&d| g.tail(d)).collect();
    Ok((PlanarGraph::from_coordinates(g.n(), &edges, coords)?, cycle))
}
