//! The squaring of a based systolic complex: keep the edges whose endpoints
//! lie at different distances from the basepoint and glue a square into every
//! embedded 4-cycle of what remains.

use num_rational::Ratio;

use crate::complex::{Based, SimplicialComplex2, SquareComplex};
use crate::error::{Error, Result};
use crate::graph::{Dist, Graph};
use crate::quadric;
use crate::report::{scan, Certificate, CheckConfig, CheckReport, Tally};
use crate::systolic::verify_systolic;

/// A based systolic complex and its squaring. Both share vertex indices and
/// the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaringResult {
    pub source: Based<SimplicialComplex2>,
    pub squared: Based<SquareComplex>,
}

/// Squares a based complex after confirming it is systolic.
pub fn squaring(b: &Based<SimplicialComplex2>) -> Result<SquaringResult> {
    let report = verify_systolic(b.complex(), &CheckConfig { cert_cap: 1 })?;
    if !report.passed() {
        let detail = report
            .first_certificate()
            .map(|c| format!("{} at {:?}: {}", c.kind, c.vertices, c.detail))
            .unwrap_or_default();
        return Err(Error::Precondition(format!("source is not systolic ({detail})")));
    }
    squaring_unchecked(b)
}

/// Squares without the systolicity gate. The construction is defined for any
/// based complex but carries no guarantees off systolic inputs; it errors if
/// the result is disconnected.
pub fn squaring_unchecked(b: &Based<SimplicialComplex2>) -> Result<SquaringResult> {
    let src = b.graph();
    let mut g = Graph::from_ids(src.ids().to_vec())?;
    for (x, y) in src.edges() {
        if b.level(x) != b.level(y) {
            g.add_edge(x, y)?;
        }
    }
    let squared = Based::new(SquareComplex::fill_4cycles(g), b.basepoint())?;
    Ok(SquaringResult { source: b.clone(), squared })
}

/// Checks `d_Y(u, v) <= d_X(u, v) <= 2 d_Y(u, v)` for all pairs and reports the
/// largest ratio `d_X / d_Y` seen.
pub fn check_quasi_isometry(r: &SquaringResult, cfg: &CheckConfig) -> CheckReport {
    use rayon::prelude::*;
    let y = r.source.graph();
    let x = r.squared.graph();
    let n = y.vertex_count();
    let cap = cfg.cert_cap;
    let rows: Vec<(Tally, Option<Ratio<u64>>)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut t = Tally::new(cap);
            let mut worst: Option<Ratio<u64>> = None;
            let (dy, dx) = (y.distances_from(u), x.distances_from(u));
            for v in u + 1..n {
                t.examine();
                match (dy[v], dx[v]) {
                    (Dist::Finite(a), Dist::Finite(b)) if a <= b && b <= 2 * a => {
                        let ratio = Ratio::new(b as u64, a as u64);
                        worst = Some(worst.map_or(ratio, |w| w.max(ratio)));
                    }
                    _ => {
                        t.record(Certificate::new("quasi-isometry", y, &[u, v], format!("d_Y {} d_X {}", dy[v], dx[v])))
                    }
                }
            }
            (t, worst)
        })
        .collect();
    let mut report = CheckReport::new("quasi-isometry");
    let mut max = Ratio::from_integer(1);
    for (t, worst) in rows {
        report.absorb(t.into_report("quasi-isometry"), cap);
        if let Some(w) = worst {
            max = max.max(w);
        }
    }
    report.stat("max_ratio", max);
    report
}

/// Both replacement rules on the squared complex.
pub fn check_squaring_quadric(r: &SquaringResult, cfg: &CheckConfig) -> CheckReport {
    quadric::check_quadric_rules(r.squared.complex(), cfg)
}

/// Every interval from the basepoint in the squared complex is `K_{2,3}`-free.
pub fn check_flat_intervals(r: &SquaringResult, cfg: &CheckConfig) -> CheckReport {
    quadric::check_flat_intervals(&r.squared, cfg)
}

/// The squared 1-skeleton is properly 2-coloured by level parity.
pub fn check_bipartite_by_level(r: &SquaringResult, cfg: &CheckConfig) -> CheckReport {
    let g = r.squared.graph();
    let level = r.source.levels();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    scan("bipartite", edges.len(), cfg.cert_cap, |i, t| {
        t.examine();
        let (a, b) = edges[i];
        if level[a] % 2 == level[b] % 2 {
            t.record(Certificate::new("bipartite", g, &[a, b], "edge joins equal parity"));
        }
    })
}

/// Distance from the basepoint is the same in the source and the squaring.
pub fn check_level_preservation(r: &SquaringResult, cfg: &CheckConfig) -> CheckReport {
    let g = r.squared.graph();
    scan("level-preservation", g.vertex_count(), cfg.cert_cap, |v, t| {
        t.examine();
        let (ly, lx) = (r.source.level(v), r.squared.level(v));
        if ly != lx {
            t.record(Certificate::new("level-preservation", g, &[v], format!("source {ly} squared {lx}")));
        }
    })
}
