use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use qwalk_core::harness::{self, random_coin, trial_rng, StepRange, SweepGrid};
use qwalk_core::oracle;
use qwalk_core::routing::{self, diagonal_coin, RoutingPlan};
use qwalk_core::{compile, Execution, Schedule, WalkerState};

#[derive(Parser, Debug)]
#[command(
    name = "qwalk",
    version,
    about = "Perfect qudit transfer and routing on lackadaisical quantum walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile the transfer schedule for (d, n, p) to JSON.
    Compile {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a coin state under a schedule and report the transfer fidelity.
    Run {
        /// Schedule file; when absent the schedule is compiled from --d/--n/--p.
        #[arg(long)]
        schedule: Option<PathBuf>,
        #[command(flatten)]
        target: OptTarget,
        #[command(flatten)]
        input: Input,
        /// Emit one JSON snapshot per step (JSON lines) instead of the summary.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Route an m-qudit coin state from the origin to a lattice point.
    Route {
        #[arg(long)]
        d: Option<usize>,
        /// Comma-separated target coordinates, one per axis.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        targets: Vec<i64>,
        /// Common step count; defaults to the smallest feasible one.
        #[arg(long)]
        n: Option<u32>,
        /// Routing plan file to use instead of compiling one.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Write the plan used to this file.
        #[arg(long)]
        plan_out: Option<PathBuf>,
        /// Weights a_i of sum_i a_i |i...i> (normalized), instead of --input/--random.
        #[arg(long, allow_hyphen_values = true)]
        diagonal: Option<String>,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a schedule file on basis inputs plus random trials.
    Validate {
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, env = "QWALK_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count lazy-walk words of length n - 2 with displacement p.
    CountPaths {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        /// Also count by brute-force enumeration.
        #[arg(long)]
        enumerate: bool,
    },
    /// Compare compiled schedules with the flow-tracking oracle over a grid.
    Sweep {
        /// Coin dimensions, e.g. `3..4` (inclusive) or `3`.
        #[arg(long)]
        d: String,
        /// Targets, e.g. `-3..3` (inclusive); p = 0 is listed as skipped.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Absolute step range, e.g. `4..9`. Overrides --slack.
        #[arg(long)]
        n: Option<String>,
        /// Steps above the smallest feasible n for each (d, p).
        #[arg(long, default_value_t = 3)]
        slack: u32,
        /// Random inputs per tuple on top of the d basis inputs.
        #[arg(long, default_value_t = 5)]
        random: usize,
        #[arg(long, env = "QWALK_SEED", default_value_t = 0)]
        seed: u64,
        /// Run tuples one after another.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
}

#[derive(Args, Debug)]
struct OptTarget {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
}

#[derive(Args, Debug)]
struct Input {
    /// Coin amplitudes, comma-separated complex numbers (`0.6,0,0,0.8i`).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
    input: Option<String>,
    /// Draw a random unit coin state from --seed.
    #[arg(long)]
    random: bool,
    #[arg(long, env = "QWALK_SEED", default_value_t = 0)]
    seed: u64,
}

impl Input {
    fn coin(&self, dim: usize) -> Result<Vec<Complex64>> {
        match (&self.input, self.random) {
            (Some(text), _) => {
                let v = parse_complex_list(text)?;
                if v.len() != dim {
                    bail!("expected {dim} amplitudes, got {}", v.len());
                }
                Ok(v)
            }
            (None, true) => Ok(random_coin(dim, &mut trial_rng(self.seed, 0))),
            (None, false) => bail!("give --input or --random"),
        }
    }
}

fn parse_complex_list(text: &str) -> Result<Vec<Complex64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Complex64>()
                .map_err(|e| anyhow::anyhow!("bad amplitude {t:?}: {e}"))
        })
        .collect()
}

/// `a..b` or `a..=b` (both inclusive) or a single value.
fn parse_range<T>(text: &str) -> Result<(T, T)>
where
    T: std::str::FromStr + Copy,
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let text = text.trim();
    let parse = |s: &str| {
        s.trim()
            .parse::<T>()
            .with_context(|| format!("bad range bound {s:?}"))
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
        None => {
            let v = parse(text)?;
            Ok((v, v))
        }
    }
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read_schedule(path: &Path) -> Result<Schedule> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("malformed schedule file {}", path.display()))
}

#[derive(Serialize)]
struct RunSummary {
    d: usize,
    n: u32,
    p: i64,
    fidelity: f64,
    special_count: usize,
    #[serde(rename = "final")]
    final_state: qwalk_core::walk::Snapshot,
}

#[derive(Serialize)]
struct RouteSummary {
    d: usize,
    n: u32,
    targets: Vec<i64>,
    special_count: usize,
    fidelity: f64,
    /// Purity of axis 0's reduced state before and after routing.
    purity_initial: f64,
    purity_final: f64,
}

#[derive(Serialize)]
struct CountSummary {
    n: u32,
    p: i64,
    closed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<String>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compile { target, out } => {
            let s = compile(target.d, target.n, target.p)?;
            emit(out.as_deref(), &pretty(&s)?)?;
        }
        Command::Run {
            schedule,
            target,
            input,
            trace,
            out,
        } => {
            let s = match (schedule, target.d, target.n, target.p) {
                (Some(path), ..) => read_schedule(&path)?,
                (None, Some(d), Some(n), Some(p)) => compile(d, n, p)?,
                _ => bail!("give --schedule or all of --d, --n, --p"),
            };
            let coin = input.coin(s.d())?;
            let start = WalkerState::new_localized(s.d(), 0, &coin)?;
            let states = s.evolve_traced(&start)?;
            let last = states.last().expect("non-empty trace");
            let fidelity = last.fidelity(&WalkerState::new_localized(s.d(), s.p(), &coin)?)?;
            if trace {
                let mut body = String::new();
                for st in &states {
                    body.push_str(&serde_json::to_string(&st.snapshot())?);
                    body.push('\n');
                }
                emit(out.as_deref(), &body)?;
                eprintln!("fidelity {fidelity}");
            } else {
                let summary = RunSummary {
                    d: s.d(),
                    n: s.n(),
                    p: s.p(),
                    fidelity,
                    special_count: s.special_count(),
                    final_state: last.snapshot(),
                };
                emit(out.as_deref(), &pretty(&summary)?)?;
            }
        }
        Command::Route {
            d,
            targets,
            n,
            plan,
            plan_out,
            diagonal,
            input,
            trace,
            out,
        } => {
            let plan = match plan {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str::<RoutingPlan>(&text)
                        .with_context(|| format!("malformed plan file {}", path.display()))?
                }
                None => {
                    let d = d.context("give --d (or --plan)")?;
                    match n {
                        Some(n) => RoutingPlan::compile(d, n, &targets)?,
                        None => RoutingPlan::minimal(d, &targets)?,
                    }
                }
            };
            if let Some(path) = plan_out {
                emit(Some(&path), &pretty(&plan)?)?;
            }
            let dim = plan.d().pow(plan.m() as u32);
            let coin = match diagonal {
                Some(text) => {
                    let w = parse_complex_list(&text)?;
                    if w.len() != plan.d() {
                        bail!("--diagonal needs {} weights", plan.d());
                    }
                    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    let w: Vec<Complex64> = w.iter().map(|z| z / norm).collect();
                    diagonal_coin(&w, plan.m())
                }
                None => input.coin(dim)?,
            };
            let states = routing::route_traced(&plan, &coin)?;
            let last = states.last().expect("non-empty trace");
            let fidelity = routing::entanglement_check(last, plan.targets(), &coin)?;
            if trace {
                let mut body = String::new();
                for st in &states {
                    body.push_str(&serde_json::to_string(&st.snapshot())?);
                    body.push('\n');
                }
                emit(out.as_deref(), &body)?;
                eprintln!("fidelity {fidelity}");
            } else {
                let summary = RouteSummary {
                    d: plan.d(),
                    n: plan.n(),
                    targets: plan.targets().to_vec(),
                    special_count: plan.special_count(),
                    fidelity,
                    purity_initial: states[0].reduced_purity(&[0])?,
                    purity_final: last.reduced_purity(&[0])?,
                };
                emit(out.as_deref(), &pretty(&summary)?)?;
            }
        }
        Command::Validate {
            schedule,
            trials,
            seed,
            out,
        } => {
            let s = read_schedule(&schedule)?;
            let report = harness::validate(&s, trials, seed, Execution::default())?;
            emit(out.as_deref(), &pretty(&report)?)?;
            if !report.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::CountPaths { n, p, enumerate } => {
            let closed = oracle::count_paths_closed(n, p);
            let enumerated = if enumerate {
                Some(oracle::count_paths_enum(n, p)?.to_string())
            } else {
                None
            };
            emit(
                None,
                &pretty(&CountSummary {
                    n,
                    p,
                    closed: closed.to_string(),
                    enumerated,
                })?,
            )?;
        }
        Command::Sweep {
            d,
            p,
            n,
            slack,
            random,
            seed,
            sequential,
            out,
        } => {
            let (d_lo, d_hi) = parse_range::<usize>(&d)?;
            let (p_lo, p_hi) = parse_range::<i64>(&p)?;
            let steps = match n {
                Some(text) => {
                    let (lo, hi) = parse_range::<u32>(&text)?;
                    StepRange::Absolute(lo, hi)
                }
                None => StepRange::Slack(slack),
            };
            let grid = SweepGrid {
                dims: (d_lo..=d_hi).collect(),
                targets: (p_lo..=p_hi).collect(),
                steps,
                random_inputs: random,
                seed,
            };
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let report = harness::sweep(&grid, exec)?;
            emit(out.as_deref(), &pretty(&report)?)?;
            if !report.oracle_ok() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
