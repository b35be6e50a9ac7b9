//! Acceptance gate: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! if any criterion fails. All numeric comparisons are exact; the only
//! tolerances are the wall-clock budgets below.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use systolic::generators::{non_systolic_counterexamples, triangulated_disk, DiskSpec};
use systolic::graph::{enumerate_embedded_4cycles, find_k23, girth};
use systolic::propa::{l1_distance, property_a_report, WeightEngine};
use systolic::quadric::{
    all_pairs, check_ball_isometry, check_flat_intervals, check_interval_isometry, check_quadrangle_condition,
    check_quadric_rules, check_replacement_rule_a, check_replacement_rule_b, interval, interval_from_base,
};
use systolic::squaring::{check_quasi_isometry, squaring, SquaringResult};
use systolic::systolic::{lemma_checks, verify_systolic};
use systolic::{Based, CheckConfig, CheckReport, Graph, SquareComplex};

const N_MAX: u32 = 12;
const LARGE_RADIUS: u32 = 8;
/// Exact integer/rational comparisons throughout.
const NUMERIC_TOLERANCE: u64 = 0;
const NORM_BUDGET: Duration = Duration::from_secs(30);
const DIFFERENCE_BUDGET: Duration = Duration::from_secs(60);
const LEMMA_BUDGET: Duration = Duration::from_secs(300);
const QI_MAX_RATIO: u64 = 2;
const ORACLE_VERTEX_LIMIT: usize = 500;
const RANDOM_GRAPHS: u64 = 50;
const RANDOM_GRAPH_MAX_VERTICES: usize = 12;

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("[{}] {id} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn cfg() -> CheckConfig {
    CheckConfig::default()
}

fn based_squaring(spec: &DiskSpec, base: Option<usize>) -> SquaringResult {
    let d = triangulated_disk(spec).expect("valid disk spec");
    let b = Based::new(d.complex, base.unwrap_or(d.center)).expect("connected disk");
    squaring(&b).expect("disk is systolic")
}

fn first_failure(reports: &[CheckReport]) -> Option<String> {
    reports.iter().find(|r| !r.passed()).map(|r| {
        let c = r.first_certificate().map(|c| format!("{} {:?} {}", c.kind, c.vertices, c.detail)).unwrap_or_default();
        format!("{}: {c}", r.name)
    })
}

fn norm_identity(gate: &mut Gate, large: &[(&str, SquaringResult)]) {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut bad = None;
    for (name, r) in large {
        let engine = WeightEngine::new(&r.squared);
        for n in 0..=N_MAX {
            let expected = (n as u64 + 2) * (n as u64 + 1) / 2;
            for v in r.squared.graph().vertices() {
                checked += 1;
                let s = engine.weight(v, n).expect("flat intervals").norm();
                if s.abs_diff(expected) > NUMERIC_TOLERANCE && bad.is_none() {
                    bad = Some(format!("{name} v {v} n {n}: {s} != {expected}"));
                }
            }
        }
    }
    let t = start.elapsed();
    let ok = bad.is_none() && t < NORM_BUDGET;
    gate.report(
        1,
        "norm identity",
        ok,
        bad.unwrap_or_else(|| format!("{checked} (v, n) pairs exact, {:.2?} (budget {NORM_BUDGET:?})", t)),
    );
}

fn difference_identity(gate: &mut Gate, large: &[(&str, SquaringResult)]) {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut bad = None;
    for (name, r) in large {
        let g = r.squared.graph();
        let engine = WeightEngine::new(&r.squared);
        for n in 0..=N_MAX {
            let expected = 2 * (n as u64 + 1);
            let w: Vec<_> = g.vertices().map(|v| engine.weight(v, n).expect("flat intervals")).collect();
            for (x, y) in g.edges() {
                checked += 1;
                let d = l1_distance(&w[x], &w[y]);
                if d.abs_diff(expected) > NUMERIC_TOLERANCE && bad.is_none() {
                    bad = Some(format!("{name} edge ({x},{y}) n {n}: {d} != {expected}"));
                }
            }
        }
    }
    let t = start.elapsed();
    let ok = bad.is_none() && t < DIFFERENCE_BUDGET;
    gate.report(
        2,
        "difference identity",
        ok,
        bad.unwrap_or_else(|| format!("{checked} (edge, n) pairs exact, {:.2?} (budget {DIFFERENCE_BUDGET:?})", t)),
    );
}

fn convergence_ratio(gate: &mut Gate, large: &[(&str, SquaringResult)]) {
    let mut bad = None;
    for (name, r) in large {
        let rep = property_a_report(&r.squared, N_MAX, &cfg()).expect("flat intervals");
        if !rep.check.passed() {
            bad.get_or_insert(format!(
                "{name}: {}",
                first_failure(std::slice::from_ref(&rep.check)).unwrap_or_default()
            ));
        }
        let ratios: Vec<Option<Ratio<u64>>> = rep.rows.iter().map(|row| row.ratio).collect();
        for (n, q) in ratios.iter().enumerate() {
            if *q != Some(Ratio::new(4, n as u64 + 2)) {
                bad.get_or_insert(format!("{name} n {n}: ratio {q:?}"));
            }
        }
        if !ratios.windows(2).all(|w| w[1] < w[0]) {
            bad.get_or_insert(format!("{name}: ratios not strictly decreasing"));
        }
    }
    gate.report(
        3,
        "convergence ratio",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("4/(n+2) for n = 0..={N_MAX} on {} instances, strictly decreasing", large.len())),
    );
}

/// Every squaring built in the lemma suite, one per (disk, basepoint).
struct LemmaOutcome {
    squarings: Vec<(String, SquaringResult)>,
}

fn lemma_suite(gate: &mut Gate) -> LemmaOutcome {
    let specs = [
        ("deg6-r4", DiskSpec::constant(6, 4)),
        ("deg7-r3", DiskSpec::constant(7, 3)),
        ("mixed-s1-r3", DiskSpec::random(vec![6, 7, 8], 3, 1)),
        ("mixed-s2-r3", DiskSpec::random(vec![6, 7, 8], 3, 2)),
        ("mixed67-s3-r4", DiskSpec::random(vec![6, 7], 4, 3)),
    ];
    let start = Instant::now();
    let mut squarings = Vec::new();
    let mut bad = None;
    let mut bases = 0;
    for (name, spec) in &specs {
        let d = triangulated_disk(spec).expect("valid disk spec");
        for base in d.complex.graph().vertices() {
            bases += 1;
            let b = Based::new(d.complex.clone(), base).expect("connected");
            let mut reports = lemma_checks(&b, &cfg());
            let r = squaring(&b).expect("disk is systolic");
            let c = r.squared.complex();
            let pairs: Vec<(usize, usize)> = c.graph().vertices().map(|v| (base, v)).collect();
            reports.push(check_quadrangle_condition(&r.squared, &cfg()));
            reports.push(check_ball_isometry(c, &cfg()));
            reports.push(check_interval_isometry(c, &pairs, &cfg()).expect("vertices in range"));
            if let Some(f) = first_failure(&reports) {
                bad.get_or_insert(format!("{name} base {base}: {f}"));
            }
            squarings.push((format!("{name}@{base}"), r));
        }
    }
    let t = start.elapsed();
    gate.report(
        4,
        "lemma suite",
        bad.is_none() && t < LEMMA_BUDGET,
        bad.unwrap_or_else(|| format!("{} disks, {bases} basepoints, zero counterexamples, {:.2?}", specs.len(), t)),
    );
    LemmaOutcome { squarings }
}

fn quasi_isometry(gate: &mut Gate, all: &[(String, &SquaringResult)]) {
    let mut bad = None;
    let mut max = Ratio::from_integer(0u64);
    for (name, r) in all {
        let rep = check_quasi_isometry(r, &cfg());
        let ratio: Ratio<u64> = rep.stats["max_ratio"].parse().expect("rational stat");
        max = max.max(ratio);
        if !rep.passed() || ratio > Ratio::from_integer(QI_MAX_RATIO) {
            bad.get_or_insert(format!("{name}: max ratio {ratio}, {}", first_failure(&[rep]).unwrap_or_default()));
        }
    }
    gate.report(
        5,
        "quasi-isometry bounds",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("all pairs on {} squarings, max d_X/d_Y = {max}", all.len())),
    );
}

fn k23_complex(squares: &[[usize; 4]]) -> SquareComplex {
    let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).expect("K23");
    SquareComplex::new(g, squares.iter().copied()).expect("valid squares")
}

fn quadric_and_flat(gate: &mut Gate, all: &[(String, &SquaringResult)]) {
    let mut bad = None;
    for (name, r) in all {
        let reports = [check_quadric_rules(r.squared.complex(), &cfg()), check_flat_intervals(&r.squared, &cfg())];
        if let Some(f) = first_failure(&reports) {
            bad.get_or_insert(format!("{name}: {f}"));
        }
    }

    // Mutant A: two squares on K_{2,3} sharing the path 0 3 1, third missing.
    let a = check_replacement_rule_a(&k23_complex(&[[0, 2, 1, 3], [0, 3, 1, 4]]), &cfg());
    let a_ok = a.first_certificate().is_some_and(|c| c.kind == "rule-a" && c.vertices == vec![0, 1, 2, 3, 4]);
    // Mutant B: three squares around 0 bounded by the hexagon 1 4 2 5 3 6.
    let hex = {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1)])
            .expect("hexagon");
        SquareComplex::new(g, [[0, 1, 4, 2], [0, 2, 5, 3], [0, 3, 6, 1]]).expect("valid squares")
    };
    let b = check_replacement_rule_b(&hex, &cfg());
    let b_ok = b.first_certificate().is_some_and(|c| c.kind == "rule-b" && c.vertices == vec![0, 1, 4, 2, 5, 3, 6]);
    // Mutant flat: K_{2,3} with all its squares, based at 0; I(0, 1) is everything.
    let k = Based::new(SquareComplex::fill_4cycles(k23_complex(&[]).graph().clone()), 0).expect("connected");
    let f = check_flat_intervals(&k, &cfg());
    let f_ok = f.first_certificate().is_some_and(|c| c.kind == "k23-in-interval" && c.vertices[0] == 1);
    let mutants_ok = a_ok && b_ok && f_ok;
    if !mutants_ok {
        bad.get_or_insert(format!("mutants: rule-a {a_ok}, rule-b {b_ok}, flat {f_ok}"));
    }
    gate.report(
        6,
        "replacement rules and flat intervals",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{} squarings pass; 3 mutants caught with certificates", all.len())),
    );
}

fn dist_row(g: &Graph, v: usize) -> Vec<u32> {
    g.distances_from(v).iter().map(|d| d.finite().unwrap_or(common::INF)).collect()
}

/// Compares one graph against the oracles. `base` enables the interval and
/// weight comparisons (the graph must then be a flat squaring).
fn oracle_graph(name: &str, g: &Graph, squared: Option<&Based<SquareComplex>>, bad: &mut Option<String>) {
    let fw = common::floyd_warshall(g);
    for v in g.vertices() {
        if dist_row(g, v) != fw[v] {
            bad.get_or_insert(format!("{name}: distances from {v}"));
        }
    }
    let fast: BTreeSet<[usize; 4]> = enumerate_embedded_4cycles(g).into_iter().collect();
    let slow =
        if g.vertex_count() <= 100 { common::four_cycles_by_subsets(g) } else { common::four_cycles_by_walks(g) };
    if fast != slow {
        bad.get_or_insert(format!("{name}: 4-cycles {} vs {}", fast.len(), slow.len()));
    }
    if girth(g).finite() != common::girth_by_edge_removal(g) {
        bad.get_or_insert(format!("{name}: girth {}", girth(g)));
    }
    let Some(b) = squared else { return };
    let base = b.basepoint();
    let engine = WeightEngine::new(b);
    for v in g.vertices() {
        let expect = common::brute_interval(&fw, base, v);
        if interval_from_base(b, v).expect("in range").vertices != expect
            || interval(b.complex(), base, v).expect("connected").vertices != expect
        {
            bad.get_or_insert(format!("{name}: interval (*, {v})"));
        }
    }
    if b.complex().square_count() != fast.len() {
        bad.get_or_insert(format!("{name}: squares vs 4-cycles"));
    }
    for n in 0..=N_MAX {
        let brute: Vec<_> = g.vertices().map(|v| common::brute_weight(g, &fw, base, v, n)).collect();
        for v in g.vertices() {
            let w = engine.weight(v, n).expect("flat");
            let fast: std::collections::BTreeMap<usize, u64> = w.values.clone();
            if fast != brute[v] {
                bad.get_or_insert(format!("{name}: f_({n},{v}) differs"));
            }
        }
        for (x, y) in g.edges() {
            let e = l1_distance(&engine.weight(x, n).expect("flat"), &engine.weight(y, n).expect("flat"));
            if e != common::l1(&brute[x], &brute[y]) {
                bad.get_or_insert(format!("{name}: difference on ({x},{y}) n {n}"));
            }
        }
    }
}

fn oracles(gate: &mut Gate, instances: &[(String, &SquaringResult)]) {
    let mut bad = None;
    let mut count = 0;
    for (name, r) in instances.iter().filter(|(_, r)| r.squared.graph().vertex_count() <= ORACLE_VERTEX_LIMIT) {
        count += 1;
        oracle_graph(&format!("{name} source"), r.source.graph(), None, &mut bad);
        oracle_graph(&format!("{name} squared"), r.squared.graph(), Some(&r.squared), &mut bad);
    }
    for seed in 0..RANDOM_GRAPHS {
        let g = common::random_graph(seed, RANDOM_GRAPH_MAX_VERTICES);
        let name = format!("random seed {seed}");
        let fw = common::floyd_warshall(&g);
        let fast: BTreeSet<[usize; 4]> = enumerate_embedded_4cycles(&g).into_iter().collect();
        if fast != common::four_cycles_by_subsets(&g) {
            bad.get_or_insert(format!("{name}: 4-cycles"));
        }
        let gi = girth(&g).finite();
        if gi != common::girth_by_dfs(&g) || gi != common::girth_by_edge_removal(&g) {
            bad.get_or_insert(format!("{name}: girth"));
        }
        if find_k23(&g).is_empty() == common::has_k23(&g) {
            bad.get_or_insert(format!("{name}: K23"));
        }
        let c = SquareComplex::fill_4cycles(g.clone());
        for (u, v) in all_pairs(&g) {
            match interval(&c, u, v) {
                Ok(z) => {
                    if z.vertices != common::brute_interval(&fw, u, v) {
                        bad.get_or_insert(format!("{name}: interval ({u},{v})"));
                    }
                }
                Err(_) => {
                    if fw[u][v] != common::INF {
                        bad.get_or_insert(format!("{name}: interval ({u},{v}) reported disconnected"));
                    }
                }
            }
        }
        for v in g.vertices() {
            if g.distances_from(v).iter().map(|d| d.finite().unwrap_or(common::INF)).collect::<Vec<_>>() != fw[v] {
                bad.get_or_insert(format!("{name}: distances"));
            }
        }
    }
    gate.report(
        7,
        "oracle equivalence",
        bad.is_none(),
        bad.unwrap_or_else(|| {
            format!("{count} instances with <= {ORACLE_VERTEX_LIMIT} vertices and {RANDOM_GRAPHS} random graphs agree")
        }),
    );
}

const WHEEL_FILE: &str = "v 0\nv 1\nv 2\nv 3\nv 4\ne 0 1\ne 0 2\ne 0 3\ne 0 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n\
t 0 1 2\nt 0 2 3\nt 0 3 4\nt 0 4 1\nbase 0\n";

fn negative_corpus(gate: &mut Gate) {
    let mut bad = None;
    let corpus = non_systolic_counterexamples();
    for ex in &corpus {
        let r = verify_systolic(&ex.complex, &cfg()).expect("connected");
        if r.passed() || !r.certificates.iter().any(|c| c.kind == ex.tag.certificate_kind()) {
            bad.get_or_insert(format!("{} did not fail with {}", ex.name, ex.tag.certificate_kind()));
        }
    }

    let bin = env!("CARGO_BIN_EXE_systolic");
    let dir = tempfile::tempdir().expect("tempdir");
    let wheel = dir.path().join("wheel.txt");
    std::fs::write(&wheel, WHEEL_FILE).expect("write");
    let broken = dir.path().join("broken.txt");
    std::fs::write(&broken, "v 0\ne 0 7\n").expect("write");
    let out = dir.path().join("run");
    let runs = [
        (vec!["verify", "--input", wheel.to_str().unwrap()], 1, Some("link-girth 0 girth 4")),
        (vec!["square", "--input", wheel.to_str().unwrap()], 1, Some("link-girth")),
        (vec!["verify", "--input", broken.to_str().unwrap()], 2, Some("line 2")),
        (vec!["all", "--degree", "6", "--radius", "3", "--output", out.to_str().unwrap()], 0, None),
    ];
    for (args, code, stderr) in &runs {
        let o = Command::new(bin).args(args).output().expect("run binary");
        let err = String::from_utf8_lossy(&o.stderr);
        if o.status.code() != Some(*code) || stderr.is_some_and(|s| !err.contains(s)) {
            bad.get_or_insert(format!("{args:?}: exit {:?}, stderr {err:?}", o.status.code()));
        }
    }
    gate.report(
        8,
        "negative corpus and exit statuses",
        bad.is_none(),
        bad.unwrap_or_else(|| {
            format!("{} counterexamples tagged, {} CLI runs with expected status", corpus.len(), runs.len())
        }),
    );
}

fn main() {
    let mut gate = Gate { failed: 0 };
    let large: Vec<(&str, SquaringResult)> = vec![
        ("deg6-r8", based_squaring(&DiskSpec::constant(6, LARGE_RADIUS), None)),
        ("deg7-r8", based_squaring(&DiskSpec::constant(7, LARGE_RADIUS), None)),
    ];
    for (name, r) in &large {
        println!(
            "instance {name}: {} vertices, {} squares",
            r.squared.graph().vertex_count(),
            r.squared.complex().square_count()
        );
    }
    norm_identity(&mut gate, &large);
    difference_identity(&mut gate, &large);
    convergence_ratio(&mut gate, &large);
    let lemma = lemma_suite(&mut gate);
    let everything: Vec<(String, &SquaringResult)> = large
        .iter()
        .map(|(n, r)| (n.to_string(), r))
        .chain(lemma.squarings.iter().map(|(n, r)| (n.clone(), r)))
        .collect();
    quasi_isometry(&mut gate, &everything);
    quadric_and_flat(&mut gate, &everything);
    oracles(&mut gate, &everything);
    negative_corpus(&mut gate);
    println!("{} of 8 criteria passed", 8 - gate.failed);
    if gate.failed > 0 {
        std::process::exit(1);
    }
}
