//! Deficiency and the weight functions `f_{n,v}` on flat intervals, their
//! ℓ¹ norms and edge differences, and the Property A table built from them.
//!
//! For a vertex `w` of `Z_v = I(*, v)`, `rho(w)` counts the neighbours of `w`
//! one step closer to `*` and `delta(w) = 2 - rho(w)`. With `k = d(w, v)`:
//!
//! ```text
//! f_{n,v}(w) = 0                          if k > n
//!            = 1                          if delta = 0
//!            = n - k + 1                  if delta = 1
//!            = (n - k + 2)(n - k + 1) / 2 if delta = 2
//! ```
//!
//! and `f_{n,v}` vanishes off `Z_v`. On flat intervals the norm is
//! `(n + 2)(n + 1) / 2` and the difference across an edge is `2(n + 1)`.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::complex::{Based, SquareComplex};
use crate::error::{Error, Result};
use crate::quadric::Interval;
use crate::report::{Certificate, CheckConfig, CheckReport, Tally};

/// Downward degree and deficiency of every vertex of an interval `I(*, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyMap {
    /// Indexed like the interval's local vertices.
    pub rho: Vec<u32>,
}

impl DeficiencyMap {
    pub fn delta(&self, local: usize) -> i64 {
        2 - self.rho[local] as i64
    }
}

/// Computes `rho` on `z = I(*, v)` (its `u` is the basepoint). Any vertex with
/// more than two neighbours closer to `*` certifies a non-flat interval.
pub fn deficiency(z: &Interval) -> Result<DeficiencyMap> {
    let g = z.complex.graph();
    let mut rho = Vec::with_capacity(z.len());
    for w in g.vertices() {
        let r = g.neighbours(w).iter().filter(|&&x| z.depth[x] + 1 == z.depth[w]).count();
        if r > 2 {
            return Err(Error::NonFlatInterval { vertex: g.id(w), rho: r });
        }
        rho.push(r as u32);
    }
    Ok(DeficiencyMap { rho })
}

/// Value of `f_{n,v}` at a vertex at distance `k` from `v` with deficiency
/// `delta`.
pub fn weight_value(n: u32, k: u32, delta: u32) -> u64 {
    if k > n {
        return 0;
    }
    let m = (n - k) as u64;
    match delta {
        0 => 1,
        1 => m + 1,
        2 => (m + 2) * (m + 1) / 2,
        _ => unreachable!("deficiency is at most 2"),
    }
}

/// `f_{n,v}` as a sparse map from parent vertex index to its nonzero value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    pub n: u32,
    pub center: usize,
    pub values: BTreeMap<usize, u64>,
}

impl WeightFunction {
    pub fn get(&self, w: usize) -> u64 {
        self.values.get(&w).copied().unwrap_or(0)
    }

    pub fn norm(&self) -> u64 {
        self.values.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.keys().copied()
    }
}

/// ℓ¹ distance between two zero-extended weight functions.
pub fn l1_distance(a: &WeightFunction, b: &WeightFunction) -> u64 {
    let mut total = 0;
    for (&w, &x) in &a.values {
        total += x.abs_diff(b.get(w));
    }
    for (&w, &y) in &b.values {
        if !a.values.contains_key(&w) {
            total += y;
        }
    }
    total
}

/// Applies the four-case formula on `z` pointwise.
pub fn weight(z: &Interval, dm: &DeficiencyMap, n: u32) -> WeightFunction {
    let mut values = BTreeMap::new();
    for (local, &parent) in z.vertices.iter().enumerate() {
        let k = z.length - z.depth[local];
        let f = weight_value(n, k, 2 - dm.rho[local]);
        if f > 0 {
            values.insert(parent, f);
        }
    }
    WeightFunction { n, center: z.v, values }
}

pub fn expected_norm(n: u32) -> u64 {
    let n = n as u64;
    (n + 2) * (n + 1) / 2
}

pub fn expected_difference(n: u32) -> u64 {
    2 * (n as u64 + 1)
}

/// `||f_{n,v}||_1 = (n + 2)(n + 1) / 2`.
pub fn norm_check(w: &WeightFunction, g: &crate::graph::Graph, cfg: &CheckConfig) -> CheckReport {
    let mut r = CheckReport::new("norm");
    r.examined = 1;
    let (actual, expected) = (w.norm(), expected_norm(w.n));
    if actual != expected {
        r.record(
            Certificate::new("norm", g, &[w.center], format!("n {} sum {actual} expected {expected}", w.n)),
            cfg.cert_cap,
        );
    }
    r
}

/// Weight functions computed straight from the levels of a based square
/// complex. `I(*, v)` is closed under descending edges, so `rho` is the
/// global downward degree and `d(w, v)` is the level drop from `v` to `w`.
#[derive(Clone, Debug)]
pub struct WeightEngine<'a> {
    based: &'a Based<SquareComplex>,
    down: Vec<Vec<usize>>,
}

impl<'a> WeightEngine<'a> {
    pub fn new(based: &'a Based<SquareComplex>) -> Self {
        let g = based.graph();
        let down = g
            .vertices()
            .map(|w| g.neighbours(w).iter().copied().filter(|&x| based.level(x) + 1 == based.level(w)).collect())
            .collect();
        Self { based, down }
    }

    pub fn based(&self) -> &Based<SquareComplex> {
        self.based
    }

    pub fn rho(&self, w: usize) -> usize {
        self.down[w].len()
    }

    /// `f_{n,v}`, exploring `I(*, v)` only down to depth `n` below `v`.
    pub fn weight(&self, v: usize, n: u32) -> Result<WeightFunction> {
        let g = self.based.graph();
        g.check(v)?;
        let top = self.based.level(v);
        let mut values = BTreeMap::new();
        let mut frontier = vec![v];
        let mut seen = std::collections::HashSet::from([v]);
        for k in 0..=n {
            let mut next = Vec::new();
            for &w in &frontier {
                let rho = self.rho(w);
                if rho > 2 {
                    return Err(Error::NonFlatInterval { vertex: g.id(w), rho });
                }
                values.insert(w, weight_value(n, k, 2 - rho as u32));
                if k < n {
                    for &x in &self.down[w] {
                        if seen.insert(x) {
                            next.push(x);
                        }
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() || k == top {
                break;
            }
        }
        Ok(WeightFunction { n, center: v, values })
    }
}

/// `||f_{n,v} - f_{n,v'}||_1 = 2(n + 1)` for the edge `{v, v'}`, each weight
/// computed on its own interval.
pub fn difference_check(
    b: &Based<SquareComplex>,
    v: usize,
    v2: usize,
    n: u32,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    let g = b.graph();
    g.check(v)?;
    g.check(v2)?;
    if !g.has_edge(v, v2) {
        return Err(Error::Precondition(format!("{} and {} are not adjacent", g.id(v), g.id(v2))));
    }
    let f = |x: usize| -> Result<WeightFunction> {
        let z = crate::quadric::interval_from_base(b, x)?;
        let dm = deficiency(&z)?;
        Ok(weight(&z, &dm, n))
    };
    let (a, c) = (f(v)?, f(v2)?);
    let mut r = CheckReport::new("difference");
    r.examined = 1;
    let (actual, expected) = (l1_distance(&a, &c), expected_difference(n));
    if actual != expected {
        r.record(
            Certificate::new("difference", g, &[v, v2], format!("n {n} diff {actual} expected {expected}")),
            cfg.cert_cap,
        );
    }
    Ok(r)
}

/// One row of the Property A table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropaRow {
    pub n: u32,
    /// Largest `||f_{n,v}||_1` over all vertices (all equal when the row passes).
    pub norm: u64,
    /// Largest `||f_{n,v} - f_{n,v'}||_1` over all edges.
    pub max_diff: u64,
    /// Largest `||f_{n,v} - f_{n,v'}||_1 / ||f_{n,v}||_1` over all edges;
    /// `None` without edges.
    pub ratio: Option<Ratio<u64>>,
    pub edges_checked: u64,
    /// Largest `d(w, v)` over the supports, witnessed by descending paths.
    pub support_radius: u32,
}

impl PropaRow {
    pub fn expected_ratio(n: u32) -> Ratio<u64> {
        Ratio::new(4, n as u64 + 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyAReport {
    pub rows: Vec<PropaRow>,
    pub check: CheckReport,
}

impl PropertyAReport {
    /// CSV with columns `n,norm,max_diff,ratio_num,ratio_den,edges_checked`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "norm", "max_diff", "ratio_num", "ratio_den", "edges_checked"])?;
        for row in &self.rows {
            let (num, den) = row.ratio.map(|r| (r.numer().to_string(), r.denom().to_string())).unwrap_or_default();
            w.write_record([
                row.n.to_string(),
                row.norm.to_string(),
                row.max_diff.to_string(),
                num,
                den,
                row.edges_checked.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// For `n = 0..=n_max`: support radius at most `n`, norm identity at every
/// vertex, difference identity on every edge, and the maximal normalized
/// difference equal to `4 / (n + 2)`.
pub fn property_a_report(b: &Based<SquareComplex>, n_max: u32, cfg: &CheckConfig) -> Result<PropertyAReport> {
    use rayon::prelude::*;
    let g = b.graph();
    let engine = WeightEngine::new(b);
    if let Some(w) = g.vertices().find(|&w| engine.rho(w) > 2) {
        return Err(Error::NonFlatInterval { vertex: g.id(w), rho: engine.rho(w) });
    }
    let cap = cfg.cert_cap;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut rows = Vec::new();
    let mut check = CheckReport::new("property-a");

    for n in 0..=n_max {
        let weights: Vec<WeightFunction> =
            g.vertices().into_par_iter().map(|v| engine.weight(v, n)).collect::<Result<_>>()?;

        let mut t = Tally::new(cap);
        let mut norm = 0;
        let mut support_radius = 0;
        for w in &weights {
            t.examine();
            let s = w.norm();
            norm = norm.max(s);
            if s != expected_norm(n) {
                t.record(Certificate::new(
                    "norm",
                    g,
                    &[w.center],
                    format!("n {n} sum {s} expected {}", expected_norm(n)),
                ));
            }
            for x in w.support() {
                let k = b.level(w.center) - b.level(x);
                support_radius = support_radius.max(k);
                if k > n {
                    t.record(Certificate::new("support", g, &[w.center, x], format!("n {n} distance {k}")));
                }
            }
        }

        let diffs: Vec<u64> = edges.par_iter().map(|&(x, y)| l1_distance(&weights[x], &weights[y])).collect();
        let mut max_diff = 0;
        let mut ratio: Option<Ratio<u64>> = None;
        for (&(x, y), &d) in edges.iter().zip(&diffs) {
            t.examine();
            max_diff = max_diff.max(d);
            let norm_x = weights[x].norm();
            if norm_x > 0 {
                let q = Ratio::new(d, norm_x);
                ratio = Some(ratio.map_or(q, |r| r.max(q)));
            }
            if d != expected_difference(n) {
                t.record(Certificate::new(
                    "difference",
                    g,
                    &[x, y],
                    format!("n {n} diff {d} expected {}", expected_difference(n)),
                ));
            }
        }
        if let Some(q) = ratio {
            if q != PropaRow::expected_ratio(n) {
                t.record(Certificate::new(
                    "ratio",
                    g,
                    &[],
                    format!("n {n} ratio {q} expected {}", PropaRow::expected_ratio(n)),
                ));
            }
        }
        check.absorb(t.into_report("property-a"), cap);
        rows.push(PropaRow { n, norm, max_diff, ratio, edges_checked: edges.len() as u64, support_radius });
    }
    check.stat("n_max", n_max);
    Ok(PropertyAReport { rows, check })
}
