//! Batch evidence collection over all reduced `a/b` in `(0, 1)` with
//! `a + b <= max_sum`: one [`SweepRecord`] per fraction, written as JSON lines
//! plus a CSV summary. Output is identical for any worker count.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::analysis::{factor4_check, log_concavity_check, saturation_check, Direction};
use crate::farey::{descent_path, fractions_up_to, Fraction};
use crate::par::map_with_engine;
use crate::sails::{duality_check, DualityOutcome, SailReport};
use crate::topograph::{vertex_seed, verify_equation, Engine, EquationMode, MarkovTriple};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Saturation,
    Logconcave,
    Factor4,
    Duality,
    Location4,
    Equation,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Saturation,
        Check::Logconcave,
        Check::Factor4,
        Check::Duality,
        Check::Location4,
        Check::Equation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Saturation => "saturation",
            Check::Logconcave => "logconcave",
            Check::Factor4 => "factor4",
            Check::Duality => "duality",
            Check::Location4 => "location4",
            Check::Equation => "equation",
        }
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check '{s}'")))
    }
}

/// Parses `all` or a comma-separated list of check names.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out: Vec<Check> = s.split(',').map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::InvalidArgument("no checks selected".into()));
    }
    Ok(out)
}

/// Largest `a + b` whose generalised Markov equation is checked symbolically;
/// above it the check evaluates at random rational points.
pub const EXACT_EQUATION_MAX_SUM: u64 = 20;
pub const RANDOM_EQUATION_POINTS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_sum: u64,
    pub checks: Vec<Check>,
    /// `None` lets rayon choose; `Some(1)` runs on the calling thread.
    pub workers: Option<usize>,
    pub seed: u64,
    pub timings: bool,
}

impl SweepConfig {
    pub fn new(max_sum: u64) -> Self {
        SweepConfig { max_sum, checks: Check::ALL.to_vec(), workers: None, seed: 0, timings: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing to check: empty critical triangle or empty sail.
    Vacuous,
}

impl Verdict {
    fn from_bool(pass: bool) -> Verdict {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub rho: Fraction,
    pub height: u64,
    pub markov_number: String,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl SweepRecord {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }
}

fn outcome(check: Check, verdict: Verdict, counterexample: Option<String>) -> CheckOutcome {
    CheckOutcome { check, verdict, counterexample }
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Row => "row",
        Direction::Column => "column",
        Direction::Diagonal => "diagonal",
    }
}

fn sail_outcomes(report: &Result<SailReport>, check: Check) -> CheckOutcome {
    let r = match report {
        Ok(r) => r,
        Err(e) => return outcome(check, Verdict::Fail, Some(e.to_string())),
    };
    if r.empty {
        return outcome(check, Verdict::Vacuous, None);
    }
    match check {
        Check::Duality => {
            let cx = r
                .segments
                .iter()
                .find(|s| s.covered && !s.arithmetic)
                .map(|s| format!("{} not arithmetic: {:?}", s.name, s.m_values))
                .or_else(|| {
                    (!r.duality_pass).then(|| {
                        r.duality
                            .iter()
                            .find(|e| e.outcome == DualityOutcome::Mismatch || e.outcome == DualityOutcome::SignFlipped)
                            .map(|e| {
                                format!(
                                    "d({}) = {} vs M({}) = {}",
                                    e.segment,
                                    e.difference.as_deref().unwrap_or("-"),
                                    e.dual_vertex,
                                    e.dual_value.as_deref().unwrap_or("-")
                                )
                            })
                            .unwrap_or_default()
                    })
                });
            outcome(check, Verdict::from_bool(r.duality_verdict()), cx)
        }
        _ => {
            let cx = match &r.location_of_four {
                Some(l) if !l.pass => {
                    Some(format!("{} {:?} = {}", l.vertex, l.point, l.value.as_deref().unwrap_or("outside")))
                }
                _ => r
                    .reconstruction
                    .mismatches
                    .first()
                    .map(|(p, pred, act)| format!("{p:?} predicted {pred}, actual {act}")),
            };
            outcome(check, Verdict::from_bool(r.location_verdict()), cx)
        }
    }
}

fn equation_outcome(engine: &mut Engine, f: Fraction, seed: u64) -> CheckOutcome {
    let mut run = || -> Result<CheckOutcome> {
        let last = *descent_path(f)?.last().expect("nonempty descent");
        let t = MarkovTriple::at_vertex(engine, last.left, last.right)?;
        let mode = if f.height() <= EXACT_EQUATION_MAX_SUM {
            EquationMode::Exact
        } else {
            EquationMode::RandomPoints { count: RANDOM_EQUATION_POINTS, seed: vertex_seed(seed, last.left, last.right) }
        };
        let v = verify_equation(&t, mode);
        let cx = (!v.pass).then(|| match v.failing_point {
            Some([x, y, z]) => format!("({}, {}, {}) at ({x}, {y}, {z})", last.left, last.right, f),
            None => format!("({}, {}, {}) symbolic", last.left, last.right, f),
        });
        Ok(outcome(Check::Equation, Verdict::from_bool(v.pass), cx))
    };
    run().unwrap_or_else(|e| outcome(Check::Equation, Verdict::Fail, Some(e.to_string())))
}

/// Runs the selected checks on one fraction.
pub fn sweep_one(engine: &mut Engine, f: Fraction, config: &SweepConfig) -> Result<SweepRecord> {
    let start = Instant::now();
    let m = engine.markov_polynomial(f)?;
    let needs_sail = config.checks.iter().any(|c| matches!(c, Check::Duality | Check::Location4));
    let sail = if needs_sail && f.num() >= 2 { Some(duality_check(&m)) } else { None };
    let mut checks = Vec::new();
    for &c in &config.checks {
        let o = match c {
            Check::Saturation => {
                let v = saturation_check(&m);
                let cx = v
                    .missing
                    .first()
                    .map(|p| format!("{p:?} missing"))
                    .or_else(|| v.extra.first().map(|p| format!("{p:?} outside polygon")));
                outcome(c, Verdict::from_bool(v.pass), cx)
            }
            Check::Logconcave => {
                let v = log_concavity_check(&m);
                let cx = v.first_violation.map(|x| {
                    format!("{} {:?}: {}", direction_name(x.direction), x.points, x.values.join(","))
                });
                outcome(c, Verdict::from_bool(v.pass), cx)
            }
            Check::Factor4 => {
                let v = factor4_check(&m);
                if v.points_checked == 0 {
                    outcome(c, Verdict::Vacuous, None)
                } else {
                    let cx = v.offending.first().map(|(p, x)| format!("{p:?} = {x}"));
                    outcome(c, Verdict::from_bool(v.pass), cx)
                }
            }
            Check::Duality | Check::Location4 => match &sail {
                None => outcome(c, Verdict::Vacuous, None),
                Some(r) => sail_outcomes(r, c),
            },
            Check::Equation => equation_outcome(engine, f, config.seed),
        };
        checks.push(o);
    }
    Ok(SweepRecord {
        rho: f,
        height: f.height(),
        markov_number: m.markov_number().to_string(),
        checks,
        wall_ms: config.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Runs the sweep for one batch of fractions, in order.
fn sweep_batch(fractions: &[Fraction], config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    map_with_engine(fractions, config.workers, |e, f| sweep_one(e, *f, config)).into_iter().collect()
}

/// Whole sweep in memory, sorted by `(a + b, a)`.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    if config.max_sum < 3 {
        return Err(Error::InvalidArgument(format!("max sum {} below 3", config.max_sum)));
    }
    sweep_batch(&fractions_up_to(config.max_sum), config)
}

pub const JSONL_NAME: &str = "sweep.jsonl";
pub const CSV_NAME: &str = "summary.csv";

/// Runs the sweep level by level in `a + b`, appending each finished level to
/// `out/sweep.jsonl`, then writes `out/summary.csv`.
pub fn run_sweep_to(config: &SweepConfig, out: &Path) -> Result<Vec<SweepRecord>> {
    if config.max_sum < 3 {
        return Err(Error::InvalidArgument(format!("max sum {} below 3", config.max_sum)));
    }
    let io_err = |e: io::Error| Error::InvalidArgument(format!("{}: {e}", out.display()));
    fs::create_dir_all(out).map_err(io_err)?;
    let mut jsonl = BufWriter::new(File::create(out.join(JSONL_NAME)).map_err(io_err)?);
    let all = fractions_up_to(config.max_sum);
    let mut records = Vec::with_capacity(all.len());
    for level in all.chunk_by(|x, y| x.height() == y.height()) {
        let batch = sweep_batch(level, config)?;
        for r in &batch {
            let line = serde_json::to_string(r).expect("records serialise");
            writeln!(jsonl, "{line}").map_err(io_err)?;
        }
        jsonl.flush().map_err(io_err)?;
        records.extend(batch);
    }
    fs::write(out.join(CSV_NAME), summary_csv(&records, config)).map_err(io_err)?;
    Ok(records)
}

pub fn summary_csv(records: &[SweepRecord], config: &SweepConfig) -> String {
    let mut s = String::from("rho,a,b,height,markov_number");
    for c in &config.checks {
        write!(s, ",{}", c.name()).expect("write to string");
    }
    if config.timings {
        s.push_str(",wall_ms");
    }
    s.push('\n');
    for r in records {
        write!(s, "{},{},{},{},{}", r.rho, r.rho.num(), r.rho.den(), r.height, r.markov_number)
            .expect("write to string");
        for c in &config.checks {
            let v = r.outcome(*c).map(|o| o.verdict.name()).unwrap_or("");
            write!(s, ",{v}").expect("write to string");
        }
        if let Some(ms) = r.wall_ms {
            write!(s, ",{ms:.3}").expect("write to string");
        }
        s.push('\n');
    }
    s
}

/// Failure count per check.
pub fn failure_counts(records: &[SweepRecord]) -> Vec<(Check, usize)> {
    Check::ALL
        .into_iter()
        .map(|c| {
            (c, records.iter().filter(|r| r.outcome(c).is_some_and(|o| o.verdict == Verdict::Fail)).count())
        })
        .filter(|(c, _)| records.iter().any(|r| r.outcome(*c).is_some()))
        .collect()
}
