//! The `pgraph` text format.
//!
//! ```text
//! pgraph <n> <m>
//! <tail> <head> <length>        # m lines
//! coord <x> <y>                 # n lines, or
//! rot <w1> <w2> ...             # n lines: neighbours in counterclockwise order
//! ```
//!
//! `#` starts a comment. Either all vertices carry coordinates or all carry
//! rotation lists.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::PlanarGraph;

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::BadInput(format!("line {line}: {msg}"))
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| bad(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| bad(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<PlanarGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| Error::BadInput("empty input".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("pgraph") {
        return Err(bad(ln, "expected `pgraph <n> <m>` header"));
    }
    let n: usize = num(toks.next(), ln, "vertex count")?;
    let m: usize = num(toks.next(), ln, "edge count")?;
    if n == 0 {
        return Err(bad(ln, "graph needs at least one vertex"));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| Error::BadInput("truncated edge list".into()))?;
        let mut t = l.split_whitespace();
        let u: usize = num(t.next(), ln, "tail")?;
        let v: usize = num(t.next(), ln, "head")?;
        let len: i64 = num(t.next(), ln, "length")?;
        edges.push((u, v, len));
    }

    let mut coords = Vec::new();
    let mut rotations = Vec::new();
    for _ in 0..n {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::BadInput("truncated vertex section".into()))?;
        let mut t = l.split_whitespace();
        match t.next() {
            Some("coord") if rotations.is_empty() => {
                let x: f64 = num(t.next(), ln, "x")?;
                let y: f64 = num(t.next(), ln, "y")?;
                if !x.is_finite() || !y.is_finite() {
                    return Err(bad(ln, "coordinates must be finite"));
                }
                coords.push((x, y));
            }
            Some("rot") if coords.is_empty() => {
                let list = t
                    .map(|w| w.parse().map_err(|_| bad(ln, format!("invalid neighbour `{w}`"))))
                    .collect::<Result<Vec<usize>>>()?;
                rotations.push(list);
            }
            _ => return Err(bad(ln, "expected `coord x y` or `rot ...`, not mixed")),
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(bad(ln, "trailing content"));
    }
    if coords.is_empty() {
        PlanarGraph::from_rotations(n, &edges, &rotations)
    } else {
        PlanarGraph::from_coordinates(n, &edges, &coords)
    }
}

pub fn read_graph(path: &Path) -> Result<PlanarGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Serializes every traversable dart as an edge line, then coordinates when
/// the graph has them and rotation lists otherwise. Rotation output assumes
/// no parallel edges.
pub fn write_graph(g: &PlanarGraph) -> String {
    let edges: Vec<_> = g.directed_edges().collect();
    let mut out = format!("pgraph {} {}\n", g.n(), edges.len());
    for (u, v, l) in edges {
        let _ = writeln!(out, "{u} {v} {l}");
    }
    match g.coords() {
        Some(coords) => {
            for &(x, y) in coords {
                let _ = writeln!(out, "coord {x} {y}");
            }
        }
        None => {
            for nbrs in g.neighbour_rotations() {
                out.push_str("rot");
                for w in nbrs {
                    let _ = write!(out, " {w}");
                }
                out.push('\n');
            }
        }
    }
    out
}
