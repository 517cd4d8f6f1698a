use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use markov_core::entropy::surface_csv;
use markov_core::sails::{duality_check, empty_report};
use markov_core::selftest::{render_table, run_selftest, Group, SelftestOptions, Status};
use markov_core::sweep::{failure_counts, parse_checks, run_sweep_to, SweepConfig, CSV_NAME, JSONL_NAME};
use markov_core::{Engine, Fraction, LaurentPoly3};

#[derive(Parser)]
#[command(name = "markov", version, about = "Markov polynomials on the Conway topograph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Grid,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fib,
}

#[derive(Subcommand)]
enum Command {
    /// Numerator coefficients of M_{a/b} for a/b in [0, 1].
    Compute {
        rho: String,
        #[arg(long, value_enum, default_value = "grid")]
        format: Format,
    },
    /// Recompute the published worked examples and print a pass/fail table.
    Selftest {
        /// Use the (b - 2) form of the j = 1 row formula.
        #[arg(long)]
        row1_as_printed: bool,
        /// Groups to leave out (farey, polynomial, topograph, analysis,
        /// special, sails, entropy).
        #[arg(long, value_delimiter = ',')]
        skip: Vec<String>,
    },
    /// Run conjecture checks over all a/b in (0, 1) with a + b <= max-sum.
    Sweep {
        #[arg(long)]
        max_sum: u64,
        /// `all` or a comma-separated subset of
        /// saturation,logconcave,factor4,duality,location4,equation.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Output directory for sweep.jsonl and summary.csv.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Base seed for the random-point equation checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record per-fraction wall time (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Entropy surface as CSV: closed form and empirical value at size n.
    Entropy {
        #[arg(long, value_enum, default_value = "fib")]
        family: Family,
        #[arg(long, default_value_t = 400)]
        n: u64,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sail report for a/b with a < b.
    Sail { rho: String },
}

/// Input or environment problem: exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_fraction(s: &str) -> anyhow::Result<Fraction> {
    s.parse::<Fraction>().map_err(|e| usage(format!("{s}: {e}")))
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn monomial(e: &[i32; 3], c: &impl std::fmt::Display) -> String {
    let mut parts = Vec::new();
    for (name, &k) in ["x", "y", "z"].iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    let c = c.to_string();
    match (c.as_str(), parts.is_empty()) {
        (_, true) => c,
        ("1", false) => parts.join(" "),
        _ => format!("{c} {}", parts.join(" ")),
    }
}

fn laurent_string(p: &LaurentPoly3) -> String {
    let mut terms: Vec<String> = p.terms().map(|(e, c)| monomial(e, c)).collect();
    terms.reverse();
    terms.join(" + ")
}

fn cmd_compute(rho: &str, format: Format) -> anyhow::Result<()> {
    let f = parse_fraction(rho)?;
    let m = Engine::new().markov_polynomial(f).map_err(|e| usage(e.to_string()))?;
    let text = match format {
        Format::Grid => {
            let [x, y, z] = m.denom_exponents;
            let mut s = format!("rho {f}  markov number {}  degree {}\n", m.markov_number(), m.numerator.degree());
            s += &format!("denominator x^{x} y^{y} z^{z}\n");
            let l = m.to_laurent();
            if l.len() <= 4 {
                s += &format!("M = {}\n", laurent_string(&l));
            }
            s + &m.numerator.to_grid()
        }
        Format::Json => {
            let mut v = serde_json::to_value(&m)?;
            v["markov_number"] = serde_json::Value::String(m.markov_number().to_string());
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => m.numerator.to_csv(),
    };
    emit(&text)
}

fn cmd_selftest(row1_as_printed: bool, skip: &[String]) -> anyhow::Result<bool> {
    let skip: Vec<Group> =
        skip.iter().map(|s| s.parse::<Group>().map_err(|e| usage(e.to_string()))).collect::<anyhow::Result<_>>()?;
    let entries = run_selftest(&SelftestOptions { row1_as_printed, skip });
    emit(&render_table(&entries))?;
    Ok(entries.iter().all(|e| e.status != Status::Fail))
}

fn cmd_sweep(config: SweepConfig, out: &PathBuf) -> anyhow::Result<bool> {
    std::fs::create_dir_all(out).map_err(|e| usage(format!("{}: {e}", out.display())))?;
    let probe = out.join(JSONL_NAME);
    std::fs::OpenOptions::new()
        .create(true)
        .truncate(true)
        .write(true)
        .open(&probe)
        .map_err(|e| usage(format!("{}: {e}", probe.display())))?;
    let records = run_sweep_to(&config, out).context("sweep")?;
    let failures = failure_counts(&records);
    let mut s = format!("{} fractions with a + b <= {}\n", records.len(), config.max_sum);
    for (check, n) in &failures {
        let v = if *n == 0 { "pass".to_string() } else { format!("{n} failing") };
        s += &format!("{:<11} {v}\n", check.name());
    }
    s += &format!("wrote {} and {}\n", out.join(JSONL_NAME).display(), out.join(CSV_NAME).display());
    emit(&s)?;
    Ok(failures.iter().all(|(_, n)| *n == 0))
}

fn cmd_entropy(n: u64, grid: usize, out: Option<&PathBuf>) -> anyhow::Result<()> {
    if grid < 2 {
        return Err(usage("grid must be at least 2"));
    }
    let csv = surface_csv(n, grid).map_err(|e| usage(e.to_string()))?;
    match out {
        Some(p) => std::fs::write(p, csv).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => emit(&csv)?,
    }
    Ok(())
}

fn cmd_sail(rho: &str) -> anyhow::Result<()> {
    let f = parse_fraction(rho)?;
    if f.num() == 0 || f.num() >= f.den() {
        return Err(usage(format!("{f}: sails need 1 <= a < b")));
    }
    let report = if f.num() == 1 {
        empty_report(f)?
    } else {
        duality_check(&Engine::new().markov_polynomial(f)?)?
    };
    let mut v = serde_json::to_value(&report)?;
    if report.empty {
        v["note"] = serde_json::Value::String(format!("empty sail: the critical triangle of {f} has no lattice points"));
    }
    emit(&(serde_json::to_string_pretty(&v)? + "\n"))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Compute { rho, format } => cmd_compute(&rho, format).map(|_| true),
        Command::Selftest { row1_as_printed, skip } => cmd_selftest(row1_as_printed, &skip),
        Command::Sweep { max_sum, checks, out, workers, seed, timings } => {
            if max_sum < 3 {
                return Err(usage("--max-sum must be at least 3"));
            }
            let checks = parse_checks(&checks).map_err(|e| usage(e.to_string()))?;
            if workers == Some(0) {
                return Err(usage("--workers must be positive"));
            }
            cmd_sweep(SweepConfig { max_sum, checks, workers, seed, timings }, &out)
        }
        Command::Entropy { family: Family::Fib, n, grid, out } => cmd_entropy(n, grid, out.as_ref()).map(|_| true),
        Command::Sail { rho } => cmd_sail(&rho).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
