//! Quadric complexes: the two replacement rules, the quadrangle condition,
//! isometric embedding of balls and intervals, and flatness of intervals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Based, SquareComplex};
use crate::error::{Error, Result};
use crate::graph::{for_each_k23, Dist, Graph};
use crate::report::{scan, Certificate, CheckConfig, CheckReport, Tally};

/// Full subcomplex on the union of all geodesics from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    /// Endpoints, as parent indices.
    pub u: usize,
    pub v: usize,
    /// Parent indices of the interval's vertices, sorted; position is the
    /// local index in `complex`.
    pub vertices: Vec<usize>,
    pub complex: SquareComplex,
    /// `d(u, w)` for each local vertex `w`.
    pub depth: Vec<u32>,
    /// `d(u, v)`.
    pub length: u32,
}

impl Interval {
    pub fn contains(&self, parent: usize) -> bool {
        self.vertices.binary_search(&parent).is_ok()
    }

    pub fn local(&self, parent: usize) -> Option<usize> {
        self.vertices.binary_search(&parent).ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn build(c: &SquareComplex, u: usize, v: usize, members: Vec<usize>, from_u: &[u32], length: u32) -> Self {
        let (complex, vertices) = c.full_subcomplex(&members);
        let depth = vertices.iter().map(|&w| from_u[w]).collect();
        Interval { u, v, vertices, complex, depth, length }
    }
}

/// `I(u, v)` via the criterion `d(u, w) + d(w, v) = d(u, v)`.
pub fn interval(c: &SquareComplex, u: usize, v: usize) -> Result<Interval> {
    let g = c.graph();
    g.check(u)?;
    g.check(v)?;
    let du = g.distances_from(u);
    let dv = g.distances_from(v);
    let Dist::Finite(length) = du[v] else {
        return Err(Error::Disconnected);
    };
    let members = g
        .vertices()
        .filter(|&w| match (du[w], dv[w]) {
            (Dist::Finite(a), Dist::Finite(b)) => a + b == length,
            _ => false,
        })
        .collect();
    let from_u: Vec<u32> = du.iter().map(|d| d.finite().unwrap_or(u32::MAX)).collect();
    Ok(Interval::build(c, u, v, members, &from_u, length))
}

/// Vertices of `I(basepoint, v)`: everything reachable from `v` along edges
/// that decrease the level by one.
pub fn interval_vertices_from_base(b: &Based<SquareComplex>, v: usize) -> Vec<usize> {
    let g = b.graph();
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![v];
    seen[v] = true;
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        out.push(x);
        let lx = b.level(x);
        for &y in g.neighbours(x) {
            if !seen[y] && b.level(y) + 1 == lx {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `I(basepoint, v)` using the precomputed levels.
pub fn interval_from_base(b: &Based<SquareComplex>, v: usize) -> Result<Interval> {
    b.graph().check(v)?;
    let members = interval_vertices_from_base(b, v);
    Ok(Interval::build(b.complex(), b.basepoint(), v, members, b.levels(), b.level(v)))
}

/// Rule A: whenever two squares `(u0 v0 u1 v1)` and `(u0 v1 u1 v2)` share the
/// path `u0 v1 u1`, the outer 4-cycle `(u0 v0 u1 v2)` bounds a square.
pub fn check_replacement_rule_a(c: &SquareComplex, cfg: &CheckConfig) -> CheckReport {
    let g = c.graph();
    scan("rule-a", g.vertex_count(), cfg.cert_cap, |u0, t| {
        let mut seen = Vec::new();
        for &m in g.neighbours(u0) {
            seen.extend(g.neighbours(m).iter().copied().filter(|&x| x > u0));
        }
        seen.sort_unstable();
        seen.dedup();
        for u1 in seen {
            let common = g.common_neighbours(u0, u1);
            if common.len() < 3 {
                continue;
            }
            rule_a_at(c, u0, u1, &common, t);
        }
    })
}

fn rule_a_at(c: &SquareComplex, u0: usize, u1: usize, common: &[usize], t: &mut Tally) {
    let g = c.graph();
    for &mid in common {
        let sq: Vec<usize> = common.iter().copied().filter(|&x| x != mid && c.has_square(u0, mid, u1, x)).collect();
        for (i, &a) in sq.iter().enumerate() {
            for &b in &sq[i + 1..] {
                t.examine();
                if !c.has_square(u0, a, u1, b) {
                    t.record(Certificate::new(
                        "rule-a",
                        g,
                        &[u0, u1, a, mid, b],
                        "squares on (u0 v0 u1 v1) and (u0 v1 u1 v2) but none on (u0 v0 u1 v2)",
                    ));
                }
            }
        }
    }
}

/// A rule-B configuration around `u`: squares `(u a0 b0 a1)`, `(u a1 b1 a2)`
/// and `(u a2 b2 a0)` whose union is bounded by the embedded hexagon
/// `a0 b0 a1 b1 a2 b2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hexagon {
    pub center: usize,
    /// `[a0, b0, a1, b1, a2, b2]`.
    pub ring: [usize; 6],
}

impl Hexagon {
    /// Some antipodal pair of the ring is an edge and both 4-cycles it cuts
    /// the ring into bound squares.
    pub fn is_filled(&self, c: &SquareComplex) -> bool {
        let h = &self.ring;
        (0..3).any(|i| {
            let (p, q) = (h[i], h[i + 3]);
            c.graph().has_edge(p, q)
                && c.has_square(h[i], h[i + 1], h[i + 2], h[i + 3])
                && c.has_square(h[i + 3], h[(i + 4) % 6], h[(i + 5) % 6], h[i])
        })
    }
}

/// Every rule-B configuration with center `u`, each once.
pub fn hexagons_at(c: &SquareComplex, u: usize) -> Vec<Hexagon> {
    let g = c.graph();
    // square-link at u: neighbours a, a' joined when some b completes a square
    let ns = g.neighbours(u);
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (i, &a) in ns.iter().enumerate() {
        for &a2 in &ns[i + 1..] {
            for b in g.common_neighbours(a, a2) {
                if b != u && c.has_square(u, a, b, a2) {
                    pairs.push((a, a2, b));
                }
            }
        }
    }
    let mut out = Vec::new();
    for &(a0, a1, b0) in &pairs {
        for &(x, a2, b1) in pairs.iter().filter(|p| p.0 == a1) {
            debug_assert_eq!(x, a1);
            for &(_, _, b2) in pairs.iter().filter(|p| p.0 == a0 && p.1 == a2) {
                let ring = [a0, b0, a1, b1, a2, b2];
                let mut all = [u, a0, b0, a1, b1, a2, b2];
                all.sort_unstable();
                if all.windows(2).all(|w| w[0] != w[1]) {
                    out.push(Hexagon { center: u, ring });
                }
            }
        }
    }
    out
}

/// Rule B: every hexagon of three squares around a vertex is also filled by
/// two squares glued along an antipodal chord.
pub fn check_replacement_rule_b(c: &SquareComplex, cfg: &CheckConfig) -> CheckReport {
    let g = c.graph();
    scan("rule-b", g.vertex_count(), cfg.cert_cap, |u, t| {
        for hex in hexagons_at(c, u) {
            t.examine();
            if !hex.is_filled(c) {
                let mut vs = vec![u];
                vs.extend_from_slice(&hex.ring);
                t.record(Certificate::new("rule-b", g, &vs, "hexagon has no filling chord"));
            }
        }
    })
}

/// Both replacement rules.
pub fn check_quadric_rules(c: &SquareComplex, cfg: &CheckConfig) -> CheckReport {
    CheckReport::merge(
        "quadric-rules",
        [check_replacement_rule_a(c, cfg), check_replacement_rule_b(c, cfg)],
        cfg.cert_cap,
    )
}

fn quadrangle_at(g: &Graph, u: usize, level: &[u32], x: usize, t: &mut Tally) {
    let lx = level[x];
    if lx < 2 {
        return;
    }
    let down: Vec<usize> = g.neighbours(x).iter().copied().filter(|&w| level[w] + 1 == lx).collect();
    for (i, &v) in down.iter().enumerate() {
        for &w in &down[i + 1..] {
            t.examine();
            let ok = g.common_neighbours(v, w).iter().any(|&y| level[y] + 2 == lx);
            if !ok {
                t.record(Certificate::new(
                    "quadrangle",
                    g,
                    &[u, x, v, w],
                    "descending pair has no common lower neighbour",
                ));
            }
        }
    }
}

/// Quadrangle condition with respect to the basepoint.
pub fn check_quadrangle_condition(b: &Based<SquareComplex>, cfg: &CheckConfig) -> CheckReport {
    let g = b.graph();
    scan("quadrangle", g.vertex_count(), cfg.cert_cap, |x, t| quadrangle_at(g, b.basepoint(), b.levels(), x, t))
}

/// Quadrangle condition with respect to every vertex.
pub fn check_quadrangle_condition_all(c: &SquareComplex, cfg: &CheckConfig) -> CheckReport {
    let g = c.graph();
    scan("quadrangle", g.vertex_count(), cfg.cert_cap, |u, t| {
        let level: Vec<u32> = g.distances_from(u).iter().map(|d| d.finite().unwrap_or(u32::MAX)).collect();
        for x in g.vertices() {
            if level[x] != u32::MAX {
                quadrangle_at(g, u, &level, x, t);
            }
        }
    })
}

/// Every metric ball, for every center and radius, is isometrically embedded.
/// Radii at which the ball is the whole component are skipped as trivial.
pub fn check_ball_isometry(c: &SquareComplex, cfg: &CheckConfig) -> CheckReport {
    let g = c.graph();
    let n = g.vertex_count();
    let all: Vec<Vec<Dist>> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(|s| g.distances_from(s)).collect()
    };
    scan("ball-isometry", n, cfg.cert_cap, |u, t| {
        let du = &all[u];
        let ecc = du.iter().filter_map(|d| d.finite()).max().unwrap_or(0);
        for r in 1..ecc {
            let inside = |w: usize| du[w].finite().is_some_and(|d| d <= r);
            let members: Vec<usize> = g.vertices().filter(|&w| inside(w)).collect();
            for &x in &members {
                t.examine();
                let local = g.bfs(x, inside, None);
                if let Some(&y) = members.iter().find(|&&y| local[y] != all[x][y]) {
                    t.record(Certificate::new(
                        "ball-isometry",
                        g,
                        &[u, x, y],
                        format!("radius {r}: inside {} vs global {}", local[y], all[x][y]),
                    ));
                }
            }
        }
    })
}

/// Vertex counts above which global distances are recomputed per source
/// instead of being held as a full matrix.
const MATRIX_LIMIT: usize = 3000;

/// Global distance rows, either precomputed or produced on demand.
struct Distances<'a> {
    g: &'a Graph,
    rows: Option<Vec<Vec<Dist>>>,
}

impl<'a> Distances<'a> {
    fn new(g: &'a Graph) -> Self {
        use rayon::prelude::*;
        let rows = (g.vertex_count() <= MATRIX_LIMIT)
            .then(|| g.vertices().into_par_iter().map(|s| g.distances_from(s)).collect());
        Self { g, rows }
    }

    fn row(&self, s: usize) -> std::borrow::Cow<'_, [Dist]> {
        match &self.rows {
            Some(rows) => std::borrow::Cow::Borrowed(&rows[s]),
            None => std::borrow::Cow::Owned(self.g.distances_from(s)),
        }
    }
}

/// Whether `I(u, v)` is isometrically embedded, returning a violating pair.
fn interval_violation(z: &Interval, global: &Distances) -> Option<(usize, usize, Dist, Dist)> {
    let local_g = z.complex.graph();
    for x in local_g.vertices() {
        let inner = local_g.distances_from(x);
        let outer = global.row(z.vertices[x]);
        for y in local_g.vertices() {
            if inner[y] != outer[z.vertices[y]] {
                return Some((z.vertices[x], z.vertices[y], inner[y], outer[z.vertices[y]]));
            }
        }
    }
    None
}

/// Each interval `I(u, v)` for `(u, v)` in `pairs` is isometrically embedded.
pub fn check_interval_isometry(c: &SquareComplex, pairs: &[(usize, usize)], cfg: &CheckConfig) -> Result<CheckReport> {
    let g = c.graph();
    for &(u, v) in pairs {
        g.check(u)?;
        g.check(v)?;
    }
    let global = Distances::new(g);
    let report = scan("interval-isometry", pairs.len(), cfg.cert_cap, |i, t| {
        let (u, v) = pairs[i];
        let z = match interval(c, u, v) {
            Ok(z) => z,
            Err(_) => {
                t.record(Certificate::new("interval-isometry", g, &[u, v], "endpoints disconnected"));
                return;
            }
        };
        t.examine();
        if let Some((x, y, inner, outer)) = interval_violation(&z, &global) {
            t.record(Certificate::new(
                "interval-isometry",
                g,
                &[u, v, x, y],
                format!("inside {inner} vs global {outer}"),
            ));
        }
    });
    Ok(report)
}

/// Default interval sample: every `(basepoint, v)` plus `extra` seeded
/// random pairs.
pub fn interval_sample(g: &Graph, basepoint: usize, extra: usize, seed: u64) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut pairs: Vec<(usize, usize)> = g.vertices().map(|v| (basepoint, v)).collect();
    if n > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..extra {
            pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
    }
    pairs
}

/// All ordered pairs `(u, v)` with `u <= v`.
pub fn all_pairs(g: &Graph) -> Vec<(usize, usize)> {
    g.vertices().flat_map(|u| (u..g.vertex_count()).map(move |v| (u, v))).collect()
}

/// Every interval `I(basepoint, v)` has a `K_{2,3}`-free 1-skeleton.
pub fn check_flat_intervals(b: &Based<SquareComplex>, cfg: &CheckConfig) -> CheckReport {
    let g = b.graph();
    scan("flat-intervals", g.vertex_count(), cfg.cert_cap, |v, t| {
        t.examine();
        let members = interval_vertices_from_base(b, v);
        let (sub, map) = g.induced(&members);
        let mut hit = None;
        for_each_k23(&sub, |k| {
            hit = Some(k);
            false
        });
        if let Some(k) = hit {
            let vs = [v, map[k.pair[0]], map[k.pair[1]], map[k.triple[0]], map[k.triple[1]], map[k.triple[2]]];
            t.record(Certificate::new("k23-in-interval", g, &vs, "interval contains K_{2,3}"));
        }
    })
}

/// Each interval `I(basepoint, v)` satisfies both replacement rules.
pub fn check_intervals_quadric(b: &Based<SquareComplex>, cfg: &CheckConfig) -> CheckReport {
    let g = b.graph();
    let cap = cfg.cert_cap;
    scan("intervals-quadric", g.vertex_count(), cap, |v, t| {
        t.examine();
        let z = interval_from_base(b, v).expect("vertex in range");
        let r = check_quadric_rules(&z.complex, cfg);
        if !r.passed() {
            let detail = r.first_certificate().map(|c| format!("{} at {:?}", c.kind, c.vertices)).unwrap_or_default();
            t.record(Certificate::new("interval-not-quadric", g, &[v], detail));
        }
    })
}

/// For every edge `{v, v'}` with `v'` one level above `v`, `I(*, v)` is
/// contained in `I(*, v')`. Intervals are computed from geodesics, not from the
/// levels, so the containment is not automatic.
pub fn check_interval_monotonicity(b: &Based<SquareComplex>, cfg: &CheckConfig) -> Result<CheckReport> {
    use rayon::prelude::*;
    let g = b.graph();
    let base = b.basepoint();
    let sets: Vec<Vec<usize>> = g
        .vertices()
        .into_par_iter()
        .map(|v| interval(b.complex(), base, v).map(|z| z.vertices))
        .collect::<Result<_>>()?;
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(x, y)| b.level(x) != b.level(y))
        .map(|(x, y)| if b.level(x) < b.level(y) { (x, y) } else { (y, x) })
        .collect();
    Ok(scan("interval-monotonicity", edges.len(), cfg.cert_cap, |i, t| {
        t.examine();
        let (lo, hi) = edges[i];
        if let Some(&w) = sets[lo].iter().find(|w| sets[hi].binary_search(w).is_err()) {
            t.record(Certificate::new(
                "interval-monotonicity",
                g,
                &[lo, hi, w],
                "vertex of the lower interval missing above",
            ));
        }
    }))
}
