//! Two-dimensional complexes over a simplicial 1-skeleton.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{canonical_cycle4, enumerate_embedded_4cycles, Dist, Graph};

/// Access to the 1-skeleton and the boundary cycles of the 2-cells.
pub trait CellComplex {
    fn graph(&self) -> &Graph;

    /// Boundary of every 2-cell as a cyclic vertex sequence.
    fn cell_boundaries(&self) -> Vec<Vec<usize>>;
}

/// A 2-dimensional simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex2 {
    graph: Graph,
    triangles: BTreeSet<[usize; 3]>,
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

impl SimplicialComplex2 {
    pub fn new<I: IntoIterator<Item = [usize; 3]>>(graph: Graph, triangles: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for t in triangles {
            let t = sorted3(t);
            for &v in &t {
                graph.check(v)?;
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::Invariant(format!("degenerate triangle {t:?}")));
            }
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if !graph.has_edge(a, b) {
                    return Err(Error::Invariant(format!(
                        "triangle ({}, {}, {}) is missing edge ({}, {})",
                        graph.id(t[0]),
                        graph.id(t[1]),
                        graph.id(t[2]),
                        graph.id(a),
                        graph.id(b)
                    )));
                }
            }
            if !set.insert(t) {
                return Err(Error::Invariant(format!(
                    "duplicate triangle ({}, {}, {})",
                    graph.id(t[0]),
                    graph.id(t[1]),
                    graph.id(t[2])
                )));
            }
        }
        Ok(Self { graph, triangles: set })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Triangles with sorted vertices, in lexicographic order.
    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.triangles.iter().copied()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn has_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        self.triangles.contains(&sorted3([a, b, c]))
    }

    /// Copy of the complex without the edge `{a, b}` and the triangles on it.
    pub fn without_edge(&self, a: usize, b: usize) -> Self {
        let mut graph = self.graph.clone();
        graph.remove_edge(a, b);
        let triangles = self.triangles.iter().filter(|t| !(t.contains(&a) && t.contains(&b))).copied().collect();
        Self { graph, triangles }
    }
}

impl CellComplex for SimplicialComplex2 {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn cell_boundaries(&self) -> Vec<Vec<usize>> {
        self.triangles.iter().map(|t| t.to_vec()).collect()
    }
}

/// Link of `v`: the graph on the neighbours of `v` where two neighbours are
/// adjacent iff they span a triangle with `v`. Indexed like the neighbour
/// list of `v`, carrying the parent's ids.
pub fn link(c: &SimplicialComplex2, v: usize) -> Result<Graph> {
    c.graph.check(v)?;
    let ns = c.graph.neighbours(v);
    let (mut lk, _) = c.graph.induced(ns);
    for (i, j) in lk.edges().collect::<Vec<_>>() {
        if !c.has_triangle(v, ns[i], ns[j]) {
            lk.remove_edge(i, j);
        }
    }
    Ok(lk)
}

/// A square complex: a simplicial graph with at most one square glued to
/// each embedded 4-cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareComplex {
    graph: Graph,
    squares: BTreeSet<[usize; 4]>,
}

impl SquareComplex {
    /// Squares are given as cyclic vertex sequences.
    pub fn new<I: IntoIterator<Item = [usize; 4]>>(graph: Graph, squares: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for q in squares {
            for &v in &q {
                graph.check(v)?;
            }
            let ids = q.map(|v| graph.id(v));
            let mut distinct = q;
            distinct.sort_unstable();
            if distinct.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invariant(format!("square {ids:?} repeats a vertex")));
            }
            for i in 0..4 {
                if !graph.has_edge(q[i], q[(i + 1) % 4]) {
                    return Err(Error::Invariant(format!(
                        "square {ids:?} is missing edge ({}, {})",
                        ids[i],
                        ids[(i + 1) % 4]
                    )));
                }
            }
            if !set.insert(canonical_cycle4(q)) {
                return Err(Error::Invariant(format!("two squares on the 4-cycle {ids:?}")));
            }
        }
        Ok(Self { graph, squares: set })
    }

    /// Attaches one square to every embedded 4-cycle of `graph`.
    pub fn fill_4cycles(graph: Graph) -> Self {
        let squares = enumerate_embedded_4cycles(&graph).into_iter().collect();
        Self { graph, squares }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Squares in canonical form, sorted.
    pub fn squares(&self) -> impl Iterator<Item = [usize; 4]> + '_ {
        self.squares.iter().copied()
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    /// Whether the 4-cycle `a b c d` (in cyclic order) bounds a square.
    pub fn has_square(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        self.squares.contains(&canonical_cycle4([a, b, c, d]))
    }

    /// Full subcomplex on `vertices`: the induced graph with every square whose
    /// corners all lie in the set. Returns the local-to-parent index map.
    pub fn full_subcomplex(&self, vertices: &[usize]) -> (SquareComplex, Vec<usize>) {
        let (graph, map) = self.graph.induced(vertices);
        let mut local = HashMap::with_capacity(map.len());
        for (i, &v) in map.iter().enumerate() {
            local.insert(v, i);
        }
        let squares = self
            .squares
            .iter()
            .filter_map(|q| {
                let l: Vec<usize> = q.iter().filter_map(|v| local.get(v).copied()).collect();
                (l.len() == 4).then(|| canonical_cycle4([l[0], l[1], l[2], l[3]]))
            })
            .collect();
        (SquareComplex { graph, squares }, map)
    }
}

impl CellComplex for SquareComplex {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn cell_boundaries(&self) -> Vec<Vec<usize>> {
        self.squares.iter().map(|q| q.to_vec()).collect()
    }
}

/// Rank over GF(2) of the cycle space of the 1-skeleton modulo the span of
/// the 2-cell boundaries. Zero is necessary for simple connectedness.
pub fn h1_rank_mod2<C: CellComplex>(c: &C) -> Result<usize> {
    let g = c.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.vertex_count() == 0 {
        return Ok(0);
    }
    let cycle_rank = g.edge_count() + 1 - g.vertex_count();
    let edge_index: HashMap<(usize, usize), usize> = g.edges().enumerate().map(|(i, e)| (e, i)).collect();
    let columns = c
        .cell_boundaries()
        .into_iter()
        .map(|cycle| {
            let k = cycle.len();
            let mut col: Vec<usize> = (0..k)
                .map(|i| {
                    let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                    edge_index[&(a.min(b), a.max(b))]
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(cycle_rank - gf2_rank(columns))
}

/// Rank of a set of sparse GF(2) vectors (sorted index lists) by standard
/// column reduction on the largest index.
fn gf2_rank(columns: Vec<Vec<usize>>) -> usize {
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(other) => col = symmetric_difference(&col, other),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivots.insert(low, col);
            rank += 1;
        }
    }
    rank
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

/// A complex with a basepoint and the distance of every vertex from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Based<C> {
    complex: C,
    basepoint: usize,
    level: Vec<u32>,
}

impl<C: CellComplex> Based<C> {
    /// Fails on an unknown basepoint or a disconnected 1-skeleton.
    pub fn new(complex: C, basepoint: usize) -> Result<Self> {
        let g = complex.graph();
        g.check(basepoint)?;
        let level = g
            .distances_from(basepoint)
            .into_iter()
            .map(|d| d.finite().ok_or(Error::Disconnected))
            .collect::<Result<Vec<u32>>>()?;
        Ok(Self { complex, basepoint, level })
    }

    pub fn complex(&self) -> &C {
        &self.complex
    }

    pub fn graph(&self) -> &Graph {
        self.complex.graph()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Distance of `v` from the basepoint.
    pub fn level(&self, v: usize) -> u32 {
        self.level[v]
    }

    pub fn levels(&self) -> &[u32] {
        &self.level
    }

    pub fn into_complex(self) -> C {
        self.complex
    }
}

/// Levels as a `Dist` vector, for comparisons against plain BFS output.
pub fn levels_as_dist<C: CellComplex>(b: &Based<C>) -> Vec<Dist> {
    b.levels().iter().map(|&l| Dist::Finite(l)).collect()
}
