//! Pipelines behind the command-line tool.
//!
//! Every command returns the reports it produced; the binary turns them into
//! an exit status (0 all passed, 1 some check failed, 2 bad input).

use std::fs;
use std::path::{Path, PathBuf};

use crate::complex::{h1_rank_mod2, Based, SimplicialComplex2, SquareComplex};
use crate::error::{Error, Result};
use crate::format::{self, ComplexFile};
use crate::generators::{triangulated_disk, DegreeRule, DiskSpec};
use crate::propa::{property_a_report, PropertyAReport};
use crate::quadric;
use crate::report::{reports_to_text, write_certificates_csv, Certificate, CheckConfig, CheckReport};
use crate::squaring::{self, SquaringResult};
use crate::systolic;

/// Extra random pairs added to the default interval-isometry sample.
pub const INTERVAL_SAMPLE_EXTRA: usize = 100;

pub const SIMPLICIAL_RULES: &[&str] = &["systolic", "spheres", "ball-neighbours", "triangle"];
pub const SQUARE_RULES: &[&str] =
    &["a", "b", "quad", "balls", "intervals", "flat", "h1", "monotone", "interval-quadric"];
/// Square rules run when `--rules` is absent.
pub const DEFAULT_SQUARE_RULES: &[&str] = &["a", "b", "quad", "balls", "intervals", "flat", "h1"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Generate,
    Square,
    Verify,
    Propa,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub degree_rule: DegreeRule,
    pub radius: u32,
    pub seed: u64,
    pub n_max: u32,
    pub rules: Option<Vec<String>>,
    pub cert_cap: usize,
    pub jobs: Option<usize>,
    pub exhaustive: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input: None,
            output: None,
            degree_rule: DegreeRule::Constant(6),
            radius: 3,
            seed: 0,
            n_max: 12,
            rules: None,
            cert_cap: crate::report::DEFAULT_CERT_CAP,
            jobs: None,
            exhaustive: false,
        }
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig { cert_cap: self.cert_cap }
    }

    fn disk_spec(&self) -> DiskSpec {
        DiskSpec { radius: self.radius, degree_rule: self.degree_rule.clone(), seed: self.seed }
    }

    fn input(&self) -> Result<&Path> {
        self.input.as_deref().ok_or_else(|| Error::InvalidSpec("--input is required".into()))
    }
}

/// What a run produced. Text destined for standard output is returned rather
/// than printed so that callers decide where it goes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutcome {
    pub reports: Vec<CheckReport>,
    pub stdout: String,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    /// First certificate of the first failing report.
    pub fn first_failure(&self) -> Option<(&CheckReport, Option<&Certificate>)> {
        self.reports.iter().find(|r| !r.passed()).map(|r| (r, r.first_certificate()))
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// Runs `cfg` on a thread pool of `--jobs` threads (the global pool if unset).
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    match cfg.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidSpec(e.to_string()))?;
            pool.install(|| dispatch(cfg))
        }
        None => dispatch(cfg),
    }
}

fn dispatch(cfg: &RunConfig) -> Result<RunOutcome> {
    match cfg.command {
        Command::Generate => generate(cfg),
        Command::Square => square(cfg),
        Command::Verify => verify(cfg),
        Command::Propa => propa(cfg),
        Command::All => all(cfg),
    }
}

fn emit(out: &mut RunOutcome, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.stdout.push_str(text),
    }
    Ok(())
}

fn read_input(cfg: &RunConfig) -> Result<ComplexFile> {
    format::parse(&fs::read_to_string(cfg.input()?)?)
}

fn generate(cfg: &RunConfig) -> Result<RunOutcome> {
    let disk = triangulated_disk(&cfg.disk_spec())?;
    let mut out = RunOutcome::default();
    emit(&mut out, cfg.output.as_deref(), &format::write_simplicial(&disk.complex, Some(disk.center)))?;
    Ok(out)
}

fn square(cfg: &RunConfig) -> Result<RunOutcome> {
    let (complex, base) = match read_input(cfg)? {
        ComplexFile::Simplicial { complex, base } => (complex, base),
        ComplexFile::Square { .. } => {
            return Err(Error::InvalidSpec("square expects a simplicial complex".into()));
        }
    };
    let base = base.ok_or_else(|| Error::InvalidSpec("input has no base record".into()))?;
    let b = Based::new(complex, base)?;
    let mut out = RunOutcome::default();
    let report = systolic::verify_systolic(b.complex(), &cfg.check_config())?;
    if report.passed() {
        let r = squaring::squaring_unchecked(&b)?;
        emit(&mut out, cfg.output.as_deref(), &format::write_square(r.squared.complex(), Some(base)))?;
    }
    out.reports.push(report);
    Ok(out)
}

/// Runs `check` at the given basepoint, or at every vertex merged in order.
fn per_base<C: Clone + crate::complex::CellComplex>(
    name: &str,
    complex: &C,
    base: Option<usize>,
    cap: usize,
    n: usize,
    check: impl Fn(&Based<C>) -> Result<CheckReport>,
) -> Result<CheckReport> {
    let bases: Vec<usize> = match base {
        Some(b) => vec![b],
        None => (0..n).collect(),
    };
    let mut out = CheckReport::new(name);
    for v in bases {
        let r = check(&Based::new(complex.clone(), v)?)?;
        out.absorb(r, cap);
    }
    Ok(out)
}

fn selected_rules(cfg: &RunConfig, known: &[&str], default: &[&str]) -> Result<Vec<String>> {
    let rules: Vec<String> = match &cfg.rules {
        Some(r) => r.clone(),
        None => default.iter().map(|s| s.to_string()).collect(),
    };
    if let Some(bad) = rules.iter().find(|r| !known.contains(&r.as_str())) {
        return Err(Error::InvalidSpec(format!("unknown rule {bad:?} (expected one of {})", known.join(","))));
    }
    Ok(rules)
}

/// Checks on a simplicial complex; basepoint checks run at `base` or at every
/// vertex when the file has none.
pub fn verify_simplicial(
    c: &SimplicialComplex2,
    base: Option<usize>,
    rules: &[String],
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>> {
    let n = c.graph().vertex_count();
    let cap = cfg.cert_cap;
    let mut reports = Vec::new();
    for rule in rules {
        let r = match rule.as_str() {
            "systolic" => systolic::verify_systolic(c, cfg)?,
            "spheres" => per_base("spheres-triangle-free", c, base, cap, n, |b| {
                Ok(systolic::check_spheres_triangle_free(b, cfg))
            })?,
            "ball-neighbours" => {
                per_base("ball-neighbours", c, base, cap, n, |b| Ok(systolic::check_ball_neighbours(b, cfg)))?
            }
            "triangle" => {
                per_base("triangle-condition", c, base, cap, n, |b| Ok(systolic::check_triangle_condition(b, cfg)))?
            }
            other => return Err(Error::InvalidSpec(format!("rule {other:?} does not apply to simplicial complexes"))),
        };
        reports.push(r);
    }
    Ok(reports)
}

/// Checks on a square complex; basepoint checks run at `base` or at every
/// vertex when the file has none.
pub fn verify_square(
    c: &SquareComplex,
    base: Option<usize>,
    rules: &[String],
    exhaustive: bool,
    seed: u64,
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>> {
    let g = c.graph();
    let n = g.vertex_count();
    let cap = cfg.cert_cap;
    let mut reports = Vec::new();
    for rule in rules {
        let r = match rule.as_str() {
            "a" => quadric::check_replacement_rule_a(c, cfg),
            "b" => quadric::check_replacement_rule_b(c, cfg),
            "quad" => match base {
                Some(v) => quadric::check_quadrangle_condition(&Based::new(c.clone(), v)?, cfg),
                None => quadric::check_quadrangle_condition_all(c, cfg),
            },
            "balls" => quadric::check_ball_isometry(c, cfg),
            "intervals" => {
                let pairs = match (base, exhaustive) {
                    (Some(v), false) => quadric::interval_sample(g, v, INTERVAL_SAMPLE_EXTRA, seed),
                    _ => quadric::all_pairs(g),
                };
                quadric::check_interval_isometry(c, &pairs, cfg)?
            }
            "flat" => per_base("flat-intervals", c, base, cap, n, |b| Ok(quadric::check_flat_intervals(b, cfg)))?,
            "interval-quadric" => {
                per_base("intervals-quadric", c, base, cap, n, |b| Ok(quadric::check_intervals_quadric(b, cfg)))?
            }
            "monotone" => {
                per_base("interval-monotonicity", c, base, cap, n, |b| quadric::check_interval_monotonicity(b, cfg))?
            }
            "h1" => h1_report(c, cap)?,
            other => return Err(Error::InvalidSpec(format!("rule {other:?} does not apply to square complexes"))),
        };
        reports.push(r);
    }
    Ok(reports)
}

fn h1_report(c: &SquareComplex, cap: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("homology");
    r.examined = 1;
    let rank = h1_rank_mod2(c)?;
    if rank != 0 {
        r.record(Certificate::new("h1-rank", c.graph(), &[], format!("rank {rank}")), cap);
    }
    r.stat("h1_rank_mod2", rank);
    Ok(r)
}

fn write_reports(out: &mut RunOutcome, path: Option<&Path>, reports: &[CheckReport]) -> Result<()> {
    emit(out, path, &reports_to_text(reports))?;
    if let Some(p) = path {
        let mut buf = Vec::new();
        write_certificates_csv(reports, &mut buf)?;
        fs::write(p.with_extension("csv"), buf)?;
    }
    Ok(())
}

fn verify(cfg: &RunConfig) -> Result<RunOutcome> {
    let file = read_input(cfg)?;
    let check = cfg.check_config();
    let reports = match &file {
        ComplexFile::Simplicial { complex, base } => {
            let rules = selected_rules(cfg, SIMPLICIAL_RULES, SIMPLICIAL_RULES)?;
            verify_simplicial(complex, *base, &rules, &check)?
        }
        ComplexFile::Square { complex, base } => {
            let rules = selected_rules(cfg, SQUARE_RULES, DEFAULT_SQUARE_RULES)?;
            verify_square(complex, *base, &rules, cfg.exhaustive, cfg.seed, &check)?
        }
    };
    let mut out = RunOutcome { reports: Vec::new(), stdout: String::new() };
    write_reports(&mut out, cfg.output.as_deref(), &reports)?;
    out.reports = reports;
    Ok(out)
}

fn propa_csv(rep: &PropertyAReport) -> Result<String> {
    let mut buf = Vec::new();
    rep.write_csv(&mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

fn propa(cfg: &RunConfig) -> Result<RunOutcome> {
    let based = match read_input(cfg)? {
        ComplexFile::Square { complex, base } => {
            Based::new(complex, base.ok_or_else(|| Error::InvalidSpec("input has no base record".into()))?)?
        }
        ComplexFile::Simplicial { complex, base } => {
            let b = Based::new(complex, base.ok_or_else(|| Error::InvalidSpec("input has no base record".into()))?)?;
            squaring::squaring(&b)?.squared
        }
    };
    let rep = property_a_report(&based, cfg.n_max, &cfg.check_config())?;
    let mut out = RunOutcome::default();
    emit(&mut out, cfg.output.as_deref(), &propa_csv(&rep)?)?;
    out.reports.push(rep.check);
    Ok(out)
}

/// Checks relating a based source to its squaring, plus the quadric checks on
/// the squaring. Ball and all-pairs interval isometry only when `exhaustive`.
pub fn squaring_reports(
    r: &SquaringResult,
    exhaustive: bool,
    seed: u64,
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>> {
    let mut reports = vec![
        squaring::check_quasi_isometry(r, cfg),
        squaring::check_bipartite_by_level(r, cfg),
        squaring::check_level_preservation(r, cfg),
    ];
    let mut rules: Vec<String> = ["a", "b", "quad", "intervals", "flat", "h1"].iter().map(|s| s.to_string()).collect();
    if exhaustive {
        rules.push("balls".into());
    }
    reports.extend(verify_square(r.squared.complex(), Some(r.squared.basepoint()), &rules, exhaustive, seed, cfg)?);
    Ok(reports)
}

/// generate → systolic and lemma checks → square → quadric checks → propa.
/// Files land in the `--output` directory; later stages are skipped once a
/// stage fails.
fn all(cfg: &RunConfig) -> Result<RunOutcome> {
    let dir = cfg.output.as_deref().ok_or_else(|| Error::InvalidSpec("all requires --output DIR".into()))?;
    fs::create_dir_all(dir)?;
    let check = cfg.check_config();
    let cap = check.cert_cap;

    let disk = triangulated_disk(&cfg.disk_spec())?;
    fs::write(dir.join("complex.txt"), format::write_simplicial(&disk.complex, Some(disk.center)))?;
    let n = disk.complex.graph().vertex_count();
    let base = (!cfg.exhaustive).then_some(disk.center);
    let b = Based::new(disk.complex, disk.center)?;

    let mut reports = vec![systolic::verify_systolic(b.complex(), &check)?];
    for (name, f) in [
        ("spheres-triangle-free", systolic::check_spheres_triangle_free as fn(&_, &_) -> _),
        ("ball-neighbours", systolic::check_ball_neighbours),
        ("triangle-condition", systolic::check_triangle_condition),
    ] {
        reports.push(per_base(name, b.complex(), base, cap, n, |bb| Ok(f(bb, &check)))?);
    }

    let mut propa_text = None;
    if reports.iter().all(CheckReport::passed) {
        let r = squaring::squaring_unchecked(&b)?;
        fs::write(dir.join("squared.txt"), format::write_square(r.squared.complex(), Some(r.squared.basepoint())))?;
        reports.extend(squaring_reports(&r, cfg.exhaustive, cfg.seed, &check)?);
        if reports.iter().all(CheckReport::passed) {
            let rep = property_a_report(&r.squared, cfg.n_max, &check)?;
            propa_text = Some(propa_csv(&rep)?);
            reports.push(rep.check);
        }
    }

    let mut out = RunOutcome::default();
    fs::write(dir.join("report.txt"), reports_to_text(&reports))?;
    let mut buf = Vec::new();
    write_certificates_csv(&reports, &mut buf)?;
    fs::write(dir.join("certificates.csv"), buf)?;
    if let Some(text) = propa_text {
        fs::write(dir.join("propa.csv"), text)?;
    }
    out.reports = reports;
    Ok(out)
}
