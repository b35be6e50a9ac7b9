//! Systolicity of 2-dimensional simplicial complexes and the three standard
//! consequences for metric spheres, descending neighbours and equidistant
//! edges.
//!
//! The lemma checks presuppose a systolic input. They can be run on anything,
//! but their outcome only means something when `verify_systolic` passed.

use crate::complex::{h1_rank_mod2, link, Based, SimplicialComplex2};
use crate::error::{Error, Result};
use crate::graph::{girth, Dist};
use crate::report::{scan, Certificate, CheckConfig, CheckReport};

/// Girth of every link at least 6, flagness (every 3-clique spans a triangle
/// and there is no 4-clique), and trivial first homology mod 2.
pub fn verify_systolic(c: &SimplicialComplex2, cfg: &CheckConfig) -> Result<CheckReport> {
    let g = c.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let cap = cfg.cert_cap;

    let links = scan("link-girth", g.vertex_count(), cap, |v, t| {
        t.examine();
        let lk = link(c, v).expect("vertex in range");
        if let Dist::Finite(k) = girth(&lk) {
            if k < 6 {
                t.record(Certificate::new("link-girth", g, &[v], format!("girth {k}")));
            }
        }
    });

    let flag = scan("flagness", g.vertex_count(), cap, |a, t| {
        for &b in g.neighbours(a).iter().filter(|&&b| b > a) {
            let common = g.common_neighbours(a, b);
            for (i, &x) in common.iter().enumerate().filter(|(_, &x)| x > b) {
                t.examine();
                if !c.has_triangle(a, b, x) {
                    t.record(Certificate::new("flagness", g, &[a, b, x], "empty triangle"));
                }
                for &y in common[i + 1..].iter() {
                    if g.has_edge(x, y) {
                        t.record(Certificate::new("flagness", g, &[a, b, x, y], "4-clique"));
                    }
                }
            }
        }
    });

    let mut homology = CheckReport::new("homology");
    homology.examined = 1;
    let rank = h1_rank_mod2(c)?;
    if rank != 0 {
        homology.record(Certificate::new("h1-rank", g, &[], format!("rank {rank}")), cap);
    }

    let mut out = CheckReport::merge("systolic", [links, flag, homology], cap);
    out.stat("h1_rank_mod2", rank);
    Ok(out)
}

/// No triangle has all three corners at the same distance from the basepoint.
pub fn check_spheres_triangle_free(b: &Based<SimplicialComplex2>, cfg: &CheckConfig) -> CheckReport {
    let c = b.complex();
    let tris: Vec<[usize; 3]> = c.triangles().collect();
    scan("spheres-triangle-free", tris.len(), cfg.cert_cap, |i, t| {
        t.examine();
        let [x, y, z] = tris[i];
        let l = b.level(x);
        if b.level(y) == l && b.level(z) == l {
            t.record(Certificate::new("sphere-triangle", c.graph(), &[x, y, z], format!("all at level {l}")));
        }
    })
}

/// Any two neighbours of `v` that are one step closer to the basepoint than
/// `v` are adjacent.
pub fn check_ball_neighbours(b: &Based<SimplicialComplex2>, cfg: &CheckConfig) -> CheckReport {
    let g = b.graph();
    scan("ball-neighbours", g.vertex_count(), cfg.cert_cap, |v, t| {
        let lv = b.level(v);
        if lv == 0 {
            return;
        }
        let down: Vec<usize> = g.neighbours(v).iter().copied().filter(|&w| b.level(w) + 1 == lv).collect();
        for (i, &w) in down.iter().enumerate() {
            for &x in &down[i + 1..] {
                t.examine();
                if !g.has_edge(w, x) {
                    t.record(Certificate::new("ball-neighbours", g, &[v, w, x], "descending neighbours not adjacent"));
                }
            }
        }
    })
}

/// Every edge whose endpoints are equidistant from the basepoint spans a
/// triangle with a vertex one step closer.
pub fn check_triangle_condition(b: &Based<SimplicialComplex2>, cfg: &CheckConfig) -> CheckReport {
    let g = b.graph();
    scan("triangle-condition", g.vertex_count(), cfg.cert_cap, |v, t| {
        let lv = b.level(v);
        for &w in g.neighbours(v).iter().filter(|&&w| w > v && b.level(w) == lv) {
            t.examine();
            let ok = lv > 0 && g.common_neighbours(v, w).iter().any(|&x| b.level(x) + 1 == lv);
            if !ok {
                t.record(Certificate::new(
                    "triangle-condition",
                    g,
                    &[v, w],
                    format!("no common neighbour at level {}", lv as i64 - 1),
                ));
            }
        }
    })
}

/// The three lemma checks for one basepoint, in a fixed order.
pub fn lemma_checks(b: &Based<SimplicialComplex2>, cfg: &CheckConfig) -> Vec<CheckReport> {
    vec![check_spheres_triangle_free(b, cfg), check_ball_neighbours(b, cfg), check_triangle_condition(b, cfg)]
}
