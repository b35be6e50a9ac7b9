use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use systolic::cli::{run, Command, RunConfig};
use systolic::generators::DegreeRule;

#[derive(Parser)]
#[command(name = "systolic", about = "Systolic disks, their squarings and Property A weights", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a triangulated systolic disk (based at its center).
    Generate(Opts),
    /// Square a based simplicial complex file.
    Square(Opts),
    /// Run checks on a complex file and write a text report plus CSV.
    Verify(Opts),
    /// Property A table (CSV) for a based complex.
    Propa(Opts),
    /// Generate, verify, square, verify again and tabulate into --output DIR.
    All(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    input: Option<PathBuf>,
    /// File (or directory for `all`); standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Constant vertex degree of interior vertices.
    #[arg(long, conflicts_with_all = ["degrees", "layer_degrees"])]
    degree: Option<u32>,
    /// Degrees drawn uniformly per interior vertex, e.g. `6,7,8`.
    #[arg(long, value_delimiter = ',', conflicts_with = "layer_degrees")]
    degrees: Option<Vec<u32>>,
    /// Degree per layer, the last entry repeating.
    #[arg(long, value_delimiter = ',')]
    layer_degrees: Option<Vec<u32>>,
    #[arg(long, default_value_t = 3)]
    radius: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    n_max: u32,
    /// Comma-separated check names.
    #[arg(long, value_delimiter = ',')]
    rules: Option<Vec<String>>,
    #[arg(long, default_value_t = systolic::report::DEFAULT_CERT_CAP)]
    cert_cap: usize,
    #[arg(long)]
    jobs: Option<usize>,
    /// All pairs for interval isometry, every basepoint for basepoint checks.
    #[arg(long)]
    exhaustive: bool,
}

impl Opts {
    fn into_config(self, command: Command) -> RunConfig {
        let degree_rule = match (self.degree, self.degrees, self.layer_degrees) {
            (_, Some(list), _) => DegreeRule::Random(list),
            (_, _, Some(list)) => DegreeRule::PerLayer(list),
            (Some(d), _, _) => DegreeRule::Constant(d),
            _ => DegreeRule::Constant(6),
        };
        RunConfig {
            command,
            input: self.input,
            output: self.output,
            degree_rule,
            radius: self.radius,
            seed: self.seed,
            n_max: self.n_max,
            rules: self.rules,
            cert_cap: self.cert_cap,
            jobs: self.jobs,
            exhaustive: self.exhaustive,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Cmd::Generate(o) => o.into_config(Command::Generate),
        Cmd::Square(o) => o.into_config(Command::Square),
        Cmd::Verify(o) => o.into_config(Command::Verify),
        Cmd::Propa(o) => o.into_config(Command::Propa),
        Cmd::All(o) => o.into_config(Command::All),
    };
    match run(&cfg) {
        Ok(out) => {
            print!("{}", out.stdout);
            if let Some((report, cert)) = out.first_failure() {
                match cert {
                    Some(c) => eprintln!(
                        "{} failed: {} {} {}",
                        report.name,
                        c.kind,
                        c.vertices.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
                        c.detail
                    ),
                    None => eprintln!("{} failed", report.name),
                }
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
