//! Brute-force evaluators used as oracles. Each one works from definitions
//! and shares no code with the library beyond the `Graph` accessors.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use systolic::Graph;

pub const INF: u32 = u32::MAX;

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &w in g.neighbours(v) {
            d[v][w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let dkj = d[k][j];
                if dkj != INF && dik + dkj < d[i][j] {
                    d[i][j] = dik + dkj;
                }
            }
        }
    }
    d
}

/// Vertices on some geodesic from `u` to `v`.
pub fn brute_interval(d: &[Vec<u32>], u: usize, v: usize) -> Vec<usize> {
    let duv = d[u][v];
    (0..d.len()).filter(|&w| d[u][w] != INF && d[w][v] != INF && d[u][w] + d[w][v] == duv).collect()
}

/// Least of the eight rotations/reflections, lexicographically.
pub fn dihedral_min(c: [usize; 4]) -> [usize; 4] {
    let mut best = c;
    for r in 0..4 {
        let rot = [c[r], c[(r + 1) % 4], c[(r + 2) % 4], c[(r + 3) % 4]];
        let refl = [rot[0], rot[3], rot[2], rot[1]];
        best = best.min(rot).min(refl);
    }
    best
}

/// Embedded 4-cycles by testing every 4-subset in its three cyclic orders.
pub fn four_cycles_by_subsets(g: &Graph) -> BTreeSet<[usize; 4]> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for order in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if (0..4).all(|i| g.has_edge(order[i], order[(i + 1) % 4])) {
                            out.insert(dihedral_min(order));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Embedded 4-cycles by walking every closed path of length 4.
pub fn four_cycles_by_walks(g: &Graph) -> BTreeSet<[usize; 4]> {
    let mut out = BTreeSet::new();
    for a in g.vertices() {
        for &b in g.neighbours(a) {
            for &c in g.neighbours(b) {
                if c == a {
                    continue;
                }
                for &d in g.neighbours(c) {
                    if d != a && d != b && g.has_edge(d, a) {
                        out.insert(dihedral_min([a, b, c, d]));
                    }
                }
            }
        }
    }
    out
}

/// Shortest cycle by exhaustive depth-first search over simple paths; small
/// graphs only. `None` for forests.
pub fn girth_by_dfs(g: &Graph) -> Option<u32> {
    fn go(g: &Graph, start: usize, cur: usize, len: u32, on: &mut Vec<bool>, best: &mut Option<u32>) {
        for &w in g.neighbours(cur) {
            if w == start && len >= 3 {
                *best = Some(best.map_or(len, |b| b.min(len)));
            } else if w > start && !on[w] {
                on[w] = true;
                go(g, start, w, len + 1, on, best);
                on[w] = false;
            }
        }
    }
    let mut best = None;
    let mut on = vec![false; g.vertex_count()];
    for s in g.vertices() {
        on[s] = true;
        go(g, s, s, 1, &mut on, &mut best);
        on[s] = false;
    }
    best
}

/// Shortest cycle as `1 + d_{G - e}(x, y)` minimized over edges `{x, y}`.
pub fn girth_by_edge_removal(g: &Graph) -> Option<u32> {
    let mut best: Option<u32> = None;
    for x in g.vertices() {
        for &y in g.neighbours(x).iter().filter(|&&y| y > x) {
            let mut dist = vec![INF; g.vertex_count()];
            dist[x] = 0;
            let mut q = VecDeque::from([x]);
            while let Some(a) = q.pop_front() {
                for &b in g.neighbours(a) {
                    if (a == x && b == y) || dist[b] != INF {
                        continue;
                    }
                    dist[b] = dist[a] + 1;
                    q.push_back(b);
                }
            }
            if dist[y] != INF {
                best = Some(best.map_or(dist[y] + 1, |b| b.min(dist[y] + 1)));
            }
        }
    }
    best
}

/// Whether `g` contains a K_{2,3} subgraph, by trying every pair and counting
/// common neighbours.
pub fn has_k23(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).any(|a| (a + 1..n).any(|b| (0..n).filter(|&x| g.has_edge(a, x) && g.has_edge(b, x)).count() >= 3))
}

/// Number of lattice points `(i, j)` with `i, j >= 0` and `i + j <= m`.
fn triangle_points(m: u32) -> u64 {
    let mut count = 0;
    for i in 0..=m {
        for _ in 0..=(m - i) {
            count += 1;
        }
    }
    count
}

/// `f_{n,v}` from its definition on `I(*, v)`, using an all-pairs distance
/// matrix. The deficiency counts interval neighbours one step closer to `*`.
pub fn brute_weight(g: &Graph, d: &[Vec<u32>], base: usize, v: usize, n: u32) -> BTreeMap<usize, u64> {
    let z = brute_interval(d, base, v);
    let inside: BTreeSet<usize> = z.iter().copied().collect();
    let mut out = BTreeMap::new();
    for &w in &z {
        let k = d[w][v];
        if k > n {
            continue;
        }
        let rho = g.neighbours(w).iter().filter(|&&x| inside.contains(&x) && d[base][x] + 1 == d[base][w]).count();
        let m = n - k;
        let value = match rho {
            2 => 1,
            1 => m as u64 + 1,
            0 => triangle_points(m),
            _ => panic!("vertex {w} has {rho} descending interval neighbours"),
        };
        out.insert(w, value);
    }
    out
}

pub fn l1(a: &BTreeMap<usize, u64>, b: &BTreeMap<usize, u64>) -> u64 {
    let keys: BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    keys.iter().map(|k| a.get(k).copied().unwrap_or(0).abs_diff(b.get(k).copied().unwrap_or(0))).sum()
}

/// Erdős–Rényi style graph on `2..=max_n` vertices with edge probability in
/// `[0.2, 0.6)`.
pub fn random_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let p: f64 = rng.gen_range(0.2..0.6);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("simple graph")
}
