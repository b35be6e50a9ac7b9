//! Simplicial graphs and their path metric.
//!
//! Vertices are addressed by dense indices `0..n`. Each vertex also carries
//! an opaque external id (`u64`) which is what files and certificates show.
//! Adjacency lists are kept sorted so that every traversal, and therefore
//! every report built on top of one, is deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Hop-count distance. Unreachable pairs are `Infinite`, which orders after
/// every finite value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Finite(u32),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

/// An undirected graph without loops or multi-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<u64>,
    index: HashMap<u64, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` isolated vertices whose ids are `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Self::from_ids((0..n as u64).collect()).expect("sequential ids are distinct")
    }

    /// Graph on isolated vertices with the given external ids.
    pub fn from_ids(ids: Vec<u64>) -> Result<Self> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, &id) in ids.iter().enumerate() {
            if index.insert(id, i).is_some() {
                return Err(Error::Invariant(format!("duplicate vertex id {id}")));
            }
        }
        let adj = vec![Vec::new(); ids.len()];
        Ok(Self { ids, index, adj, edge_count: 0 })
    }

    /// Builds a graph on `0..n` from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds the edge `{a, b}`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::Invariant(format!("loop at vertex {}", self.ids[a])));
        }
        match self.adj[a].binary_search(&b) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[a].insert(pos, b);
                let pos = self.adj[b].binary_search(&a).unwrap_err();
                self.adj[b].insert(pos, a);
                self.edge_count += 1;
                Ok(true)
            }
        }
    }

    /// Removes the edge `{a, b}`. Returns `false` if it was absent.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        if a >= self.adj.len() || b >= self.adj.len() {
            return false;
        }
        match self.adj[a].binary_search(&b) {
            Ok(pos) => {
                self.adj[a].remove(pos);
                let pos = self.adj[b].binary_search(&a).expect("symmetric adjacency");
                self.adj[b].remove(pos);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.ids.len()
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, ns)| ns.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// External id of the vertex at index `v`.
    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    /// Index of the vertex with external id `id`.
    pub fn index_of(&self, id: u64) -> Result<usize> {
        self.index.get(&id).copied().ok_or(Error::UnknownVertex(id))
    }

    pub(crate) fn check(&self, v: usize) -> Result<()> {
        if v < self.ids.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v as u64))
        }
    }

    /// Sorted common neighbours of `a` and `b`.
    pub fn common_neighbours(&self, a: usize, b: usize) -> Vec<usize> {
        let (x, y) = (&self.adj[a], &self.adj[b]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Single-source BFS distances.
    pub fn distances_from(&self, src: usize) -> Vec<Dist> {
        self.bfs(src, |_| true, None)
    }

    /// BFS that only enters vertices accepted by `allowed`, stopping at
    /// `max_depth` when one is given.
    pub fn bfs<F: Fn(usize) -> bool>(&self, src: usize, allowed: F, max_depth: Option<u32>) -> Vec<Dist> {
        let mut dist = vec![Dist::Infinite; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[src] = Dist::Finite(0);
        queue.push_back((src, 0u32));
        while let Some((x, d)) = queue.pop_front() {
            if max_depth.is_some_and(|m| d >= m) {
                continue;
            }
            for &y in &self.adj[x] {
                if dist[y] == Dist::Infinite && allowed(y) {
                    dist[y] = Dist::Finite(d + 1);
                    queue.push_back((y, d + 1));
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(|d| d.is_finite())
    }

    /// Subgraph induced on `vertices` (parent indices). The result is indexed
    /// by position in the sorted, deduplicated vertex list and keeps the
    /// parent's external ids.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vs.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = Graph::from_ids(vs.iter().map(|&v| self.ids[v]).collect()).expect("parent ids are distinct");
        for (i, &v) in vs.iter().enumerate() {
            sub.adj[i] = self.adj[v].iter().filter(|&&w| local[w] != usize::MAX).map(|&w| local[w]).collect();
            sub.adj[i].sort_unstable();
        }
        sub.edge_count = sub.adj.iter().map(Vec::len).sum::<usize>() / 2;
        (sub, vs)
    }
}

/// Shortest-path distance between `u` and `v`.
pub fn distance(g: &Graph, u: usize, v: usize) -> Result<Dist> {
    g.check(u)?;
    g.check(v)?;
    Ok(g.distances_from(u)[v])
}

/// Vertex subset of a parent graph together with the edges it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSubgraph {
    /// Sorted parent indices.
    pub vertices: Vec<usize>,
    /// Edges `(a, b)` with `a < b`, in parent indices.
    pub edges: Vec<(usize, usize)>,
}

impl VertexSubgraph {
    pub fn induced(g: &Graph, vertices: Vec<usize>) -> Self {
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        let mut member = vec![false; g.vertex_count()];
        for &v in &vertices {
            member[v] = true;
        }
        let edges = vertices
            .iter()
            .flat_map(|&a| {
                let member = &member;
                g.neighbours(a).iter().filter(move |&&b| b > a && member[b]).map(move |&b| (a, b))
            })
            .collect();
        Self { vertices, edges }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Induced subgraph on `{w : d(v, w) <= r}`.
pub fn ball(g: &Graph, v: usize, r: u32) -> Result<VertexSubgraph> {
    g.check(v)?;
    let dist = g.bfs(v, |_| true, Some(r));
    let vs = g.vertices().filter(|&w| dist[w].is_finite()).collect();
    Ok(VertexSubgraph::induced(g, vs))
}

/// Induced subgraph on `{w : d(v, w) = r}`.
pub fn sphere(g: &Graph, v: usize, r: u32) -> Result<VertexSubgraph> {
    g.check(v)?;
    let dist = g.bfs(v, |_| true, Some(r));
    let vs = g.vertices().filter(|&w| dist[w] == Dist::Finite(r)).collect();
    Ok(VertexSubgraph::induced(g, vs))
}

/// Length of a shortest cycle, `Infinite` for forests.
///
/// One BFS per root; a non-tree edge `(x, y)` met from root `s` closes a
/// closed walk of length `d(s,x) + d(s,y) + 1`, and the minimum over all roots
/// is attained by a genuine cycle through its own vertices.
pub fn girth(g: &Graph) -> Dist {
    let n = g.vertex_count();
    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] >= best {
                break;
            }
            for &y in g.neighbours(x) {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    if best == u32::MAX {
        Dist::Infinite
    } else {
        Dist::Finite(best)
    }
}

/// Canonical form of a 4-cycle given in cyclic order: rotated so the least
/// vertex comes first, then reflected so the smaller of its two cycle
/// neighbours comes second.
pub fn canonical_cycle4(c: [usize; 4]) -> [usize; 4] {
    let i = (0..4).min_by_key(|&i| c[i]).expect("nonempty");
    let next = c[(i + 1) % 4];
    let prev = c[(i + 3) % 4];
    if next < prev {
        [c[i], next, c[(i + 2) % 4], prev]
    } else {
        [c[i], prev, c[(i + 2) % 4], next]
    }
}

/// Every embedded 4-cycle of `g` once, in canonical form, sorted.
pub fn enumerate_embedded_4cycles(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in g.vertices() {
        // `a` is the least vertex of the cycle; `c` is its opposite corner.
        let mut seen_c = Vec::new();
        for &b in g.neighbours(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbours(b).iter().filter(|&&c| c > a) {
                seen_c.push(c);
            }
        }
        seen_c.sort_unstable();
        seen_c.dedup();
        for c in seen_c {
            let mids: Vec<usize> = g.common_neighbours(a, c).into_iter().filter(|&m| m > a).collect();
            for (i, &b) in mids.iter().enumerate() {
                for &d in &mids[i + 1..] {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// A copy of `K_{2,3}`: the pair side and the triple side, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct K23 {
    pub pair: [usize; 2],
    pub triple: [usize; 3],
}

/// Visits every copy of `K_{2,3}` in `g` (pair with each 3-subset of its
/// common neighbours). The visitor returns `false` to stop early.
pub fn for_each_k23<F: FnMut(K23) -> bool>(g: &Graph, mut visit: F) {
    for a0 in g.vertices() {
        let mut cand: Vec<usize> =
            g.neighbours(a0).iter().flat_map(|&m| g.neighbours(m).iter().copied()).filter(|&a1| a1 > a0).collect();
        cand.sort_unstable();
        cand.dedup();
        for a1 in cand {
            let common = g.common_neighbours(a0, a1);
            if common.len() < 3 {
                continue;
            }
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    for k in j + 1..common.len() {
                        let hit = K23 { pair: [a0, a1], triple: [common[i], common[j], common[k]] };
                        if !visit(hit) {
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// All copies of `K_{2,3}`; empty iff `g` is `K_{2,3}`-free.
pub fn find_k23(g: &Graph) -> Vec<K23> {
    let mut out = Vec::new();
    for_each_k23(g, |k| {
        out.push(k);
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn k23() -> Graph {
        Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn path_distances() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(distance(&g, 0, 2).unwrap(), Dist::Finite(2));
        assert_eq!(distance(&g, 1, 1).unwrap(), Dist::Finite(0));
        assert!(matches!(distance(&g, 0, 9), Err(Error::UnknownVertex(9))));
    }

    #[test]
    fn disconnected_is_infinite() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(distance(&g, 0, 2).unwrap(), Dist::Infinite);
        assert!(Dist::Finite(u32::MAX) < Dist::Infinite);
    }

    #[test]
    fn rejects_loops_and_dedups_edges() {
        let mut g = Graph::with_vertices(2);
        assert!(g.add_edge(0, 0).is_err());
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.edge_count(), 1);
        assert!(g.add_edge(0, 5).is_err());
    }

    #[test]
    fn sphere_zero_is_the_center() {
        let g = cycle(6);
        let s = sphere(&g, 2, 0).unwrap();
        assert_eq!(s.vertices, vec![2]);
        assert!(s.edges.is_empty());
    }

    #[test]
    fn ball_is_union_of_spheres() {
        let g = cycle(7);
        for r in 0..5 {
            let b = ball(&g, 0, r).unwrap();
            let mut union: Vec<usize> = (0..=r).flat_map(|i| sphere(&g, 0, i).unwrap().vertices).collect();
            union.sort_unstable();
            assert_eq!(b.vertices, union);
        }
    }

    #[test]
    fn girth_small_cases() {
        assert_eq!(girth(&cycle(6)), Dist::Finite(6));
        assert_eq!(girth(&cycle(3)), Dist::Finite(3));
        let tree = Graph::from_edges(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(girth(&tree), Dist::Infinite);
        assert_eq!(girth(&k23()), Dist::Finite(4));
    }

    #[test]
    fn four_cycle_counts() {
        assert_eq!(enumerate_embedded_4cycles(&k23()).len(), 3);
        assert_eq!(enumerate_embedded_4cycles(&cycle(4)), vec![[0, 1, 2, 3]]);
        assert!(enumerate_embedded_4cycles(&cycle(6)).is_empty());
    }

    #[test]
    fn canonical_cycle_is_rotation_and_reflection_invariant() {
        let c = [5, 2, 7, 3];
        let canon = canonical_cycle4(c);
        assert_eq!(canon, [2, 5, 3, 7]);
        for r in 0..4 {
            let rot = [c[r], c[(r + 1) % 4], c[(r + 2) % 4], c[(r + 3) % 4]];
            let refl = [rot[3], rot[2], rot[1], rot[0]];
            assert_eq!(canonical_cycle4(rot), canon);
            assert_eq!(canonical_cycle4(refl), canon);
        }
    }

    #[test]
    fn k23_occurrences() {
        assert_eq!(find_k23(&k23()), vec![K23 { pair: [0, 1], triple: [2, 3, 4] }]);
        assert!(find_k23(&cycle(4)).is_empty());
    }

    #[test]
    fn induced_keeps_parent_ids() {
        let g = cycle(6);
        let (sub, map) = g.induced(&[4, 0, 5]);
        assert_eq!(map, vec![0, 4, 5]);
        assert_eq!(sub.ids(), &[0, 4, 5]);
        assert!(sub.has_edge(0, 2) && sub.has_edge(1, 2) && !sub.has_edge(0, 1));
    }
}
