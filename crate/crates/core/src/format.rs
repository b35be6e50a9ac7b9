//! Line-based complex files.
//!
//! ```text
//! # comment
//! v <id>
//! e <id> <id>
//! t <id> <id> <id>
//! q <id> <id> <id> <id>
//! base <id>
//! ```
//!
//! A file holding any `q` record is a square complex, otherwise it is a
//! simplicial complex. Triangles and squares cannot be mixed.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::complex::{SimplicialComplex2, SquareComplex};
use crate::error::{Error, Result};
use crate::graph::{canonical_cycle4, Graph};

/// Contents of a complex file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexFile {
    Simplicial { complex: SimplicialComplex2, base: Option<usize> },
    Square { complex: SquareComplex, base: Option<usize> },
}

impl ComplexFile {
    pub fn base(&self) -> Option<usize> {
        match self {
            ComplexFile::Simplicial { base, .. } | ComplexFile::Square { base, .. } => *base,
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            ComplexFile::Simplicial { complex, .. } => complex.graph(),
            ComplexFile::Square { complex, .. } => complex.graph(),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_ids<const N: usize>(fields: &[&str], line: usize) -> Result<[u64; N]> {
    if fields.len() != N {
        return Err(err(line, format!("expected {N} vertex ids, found {}", fields.len())));
    }
    let mut out = [0u64; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| err(line, format!("invalid vertex id {f:?}")))?;
    }
    Ok(out)
}

/// Parses a complex file, rejecting any violation of the type invariants with
/// the offending line number.
pub fn parse(text: &str) -> Result<ComplexFile> {
    let mut vertices: Vec<(u64, usize)> = Vec::new();
    let mut edges: Vec<([u64; 2], usize)> = Vec::new();
    let mut triangles: Vec<([u64; 3], usize)> = Vec::new();
    let mut squares: Vec<([u64; 4], usize)> = Vec::new();
    let mut base: Option<(u64, usize)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let (tag, rest) = (fields[0], &fields[1..]);
        match tag {
            "v" => vertices.push((parse_ids::<1>(rest, line)?[0], line)),
            "e" => edges.push((parse_ids::<2>(rest, line)?, line)),
            "t" => triangles.push((parse_ids::<3>(rest, line)?, line)),
            "q" => squares.push((parse_ids::<4>(rest, line)?, line)),
            "base" => {
                if base.is_some() {
                    return Err(err(line, "second base record"));
                }
                base = Some((parse_ids::<1>(rest, line)?[0], line));
            }
            other => return Err(err(line, format!("unknown record {other:?}"))),
        }
    }
    if !triangles.is_empty() && !squares.is_empty() {
        return Err(err(squares[0].1, "square record in a file with triangles"));
    }

    let mut ids: Vec<u64> = Vec::with_capacity(vertices.len());
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for &(id, line) in &vertices {
        if let Some(first) = seen.insert(id, line) {
            return Err(err(line, format!("vertex {id} already declared on line {first}")));
        }
        ids.push(id);
    }
    ids.sort_unstable();
    let mut graph = Graph::from_ids(ids)?;
    let lookup =
        |g: &Graph, id: u64, line: usize| g.index_of(id).map_err(|_| err(line, format!("undeclared vertex {id}")));

    for &([a, b], line) in &edges {
        let (x, y) = (lookup(&graph, a, line)?, lookup(&graph, b, line)?);
        if x == y {
            return Err(err(line, format!("loop at vertex {a}")));
        }
        if !graph.add_edge(x, y)? {
            return Err(err(line, format!("duplicate edge {a} {b}")));
        }
    }

    let base = match base {
        Some((id, line)) => Some(lookup(&graph, id, line)?),
        None => None,
    };

    if squares.is_empty() {
        let mut tris = Vec::with_capacity(triangles.len());
        let mut first_seen: HashMap<[usize; 3], usize> = HashMap::new();
        for &(t, line) in &triangles {
            let mut idx = [lookup(&graph, t[0], line)?, lookup(&graph, t[1], line)?, lookup(&graph, t[2], line)?];
            check_cell(&graph, &idx, &t, line)?;
            idx.sort_unstable();
            if let Some(first) = first_seen.insert(idx, line) {
                return Err(err(line, format!("triangle duplicates the one on line {first}")));
            }
            tris.push(idx);
        }
        let complex = SimplicialComplex2::new(graph, tris)?;
        Ok(ComplexFile::Simplicial { complex, base })
    } else {
        let mut qs = Vec::with_capacity(squares.len());
        let mut first_seen: HashMap<[usize; 4], usize> = HashMap::new();
        for &(q, line) in &squares {
            let idx = [
                lookup(&graph, q[0], line)?,
                lookup(&graph, q[1], line)?,
                lookup(&graph, q[2], line)?,
                lookup(&graph, q[3], line)?,
            ];
            check_cell(&graph, &idx, &q, line)?;
            if let Some(first) = first_seen.insert(canonical_cycle4(idx), line) {
                return Err(err(line, format!("square duplicates the one on line {first}")));
            }
            qs.push(idx);
        }
        let complex = SquareComplex::new(graph, qs)?;
        Ok(ComplexFile::Square { complex, base })
    }
}

/// Distinct corners and every boundary edge present. Triangles are cycles
/// of length three, so the same walk covers both cell kinds.
fn check_cell(g: &Graph, idx: &[usize], ids: &[u64], line: usize) -> Result<()> {
    let k = idx.len();
    for i in 0..k {
        for j in i + 1..k {
            if idx[i] == idx[j] {
                return Err(err(line, format!("cell repeats vertex {}", ids[i])));
            }
        }
    }
    for i in 0..k {
        if !g.has_edge(idx[i], idx[(i + 1) % k]) {
            return Err(err(line, format!("cell is missing edge {} {}", ids[i], ids[(i + 1) % k])));
        }
    }
    Ok(())
}

fn write_graph(out: &mut String, g: &Graph) {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| g.id(v));
    for &v in &order {
        let _ = writeln!(out, "v {}", g.id(v));
    }
    let mut edges: Vec<(u64, u64)> = g
        .edges()
        .map(|(a, b)| {
            let (x, y) = (g.id(a), g.id(b));
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(out, "e {a} {b}");
    }
}

/// Serializes a simplicial complex. Output depends only on the complex.
pub fn write_simplicial(c: &SimplicialComplex2, base: Option<usize>) -> String {
    let g = c.graph();
    let mut out = String::new();
    write_graph(&mut out, g);
    let mut tris: Vec<[u64; 3]> = c
        .triangles()
        .map(|t| {
            let mut ids = t.map(|v| g.id(v));
            ids.sort_unstable();
            ids
        })
        .collect();
    tris.sort_unstable();
    for [a, b, c] in tris {
        let _ = writeln!(out, "t {a} {b} {c}");
    }
    if let Some(b) = base {
        let _ = writeln!(out, "base {}", g.id(b));
    }
    out
}

/// Serializes a square complex; squares are written in canonical cyclic order
/// over external ids.
pub fn write_square(c: &SquareComplex, base: Option<usize>) -> String {
    let g = c.graph();
    let mut out = String::new();
    write_graph(&mut out, g);
    let mut qs: Vec<[u64; 4]> = c
        .squares()
        .map(|q| {
            let ids = q.map(|v| g.id(v));
            canonical_ids(ids)
        })
        .collect();
    qs.sort_unstable();
    for [a, b, c, d] in qs {
        let _ = writeln!(out, "q {a} {b} {c} {d}");
    }
    if let Some(b) = base {
        let _ = writeln!(out, "base {}", g.id(b));
    }
    out
}

fn canonical_ids(c: [u64; 4]) -> [u64; 4] {
    let i = (0..4).min_by_key(|&i| c[i]).expect("nonempty");
    let (next, prev) = (c[(i + 1) % 4], c[(i + 3) % 4]);
    if next < prev {
        [c[i], next, c[(i + 2) % 4], prev]
    } else {
        [c[i], prev, c[(i + 2) % 4], next]
    }
}

pub fn write(file: &ComplexFile) -> String {
    match file {
        ComplexFile::Simplicial { complex, base } => write_simplicial(complex, *base),
        ComplexFile::Square { complex, base } => write_square(complex, *base),
    }
}
