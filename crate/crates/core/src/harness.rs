//! Validation and sweep harness: checks compiled schedules by simulation and
//! compares them against the flow-tracking oracle over parameter grids.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::oracle::track_flows;
use crate::schedule::{compile, min_steps, Schedule, ScheduleError};

/// A transfer counts as perfect when its fidelity is at least `1 - PASS_TOLERANCE`.
pub const PASS_TOLERANCE: f64 = 1e-10;

pub const MAX_SWEEP_TUPLES: usize = 20_000;
pub const MAX_SWEEP_D: usize = 8;
pub const MAX_SWEEP_N: u32 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("sweep exceeds the budget: {0}")]
    Budget(String),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// Independent stream for item `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-random unit vector in `C^d` (normalized complex Gaussian).
pub fn random_coin<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn basis_coin(d: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); d];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub min_fidelity: f64,
    /// Random inputs checked in addition to the basis inputs.
    pub trials: usize,
    pub basis_checks: usize,
    pub pass: bool,
}

/// Worst fidelity over the `d` basis inputs and `trials` random inputs.
pub fn validate(
    schedule: &Schedule,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<ValidationReport, ScheduleError> {
    let d = schedule.d();
    let inputs: Vec<Vec<Complex64>> = (0..d)
        .map(|i| basis_coin(d, i))
        .chain((0..trials as u64).map(|i| random_coin(d, &mut trial_rng(seed, i))))
        .collect();
    let min_fidelity = min_transfer_fidelity(schedule, inputs, exec)?;
    Ok(ValidationReport {
        min_fidelity,
        trials,
        basis_checks: d,
        pass: min_fidelity >= 1.0 - PASS_TOLERANCE,
    })
}

fn min_transfer_fidelity(
    schedule: &Schedule,
    inputs: Vec<Vec<Complex64>>,
    exec: Execution,
) -> Result<f64, ScheduleError> {
    exec.map(inputs, |v| schedule.transfer_fidelity(&v))
        .into_iter()
        .try_fold(f64::INFINITY, |acc, f| Ok(acc.min(f?)))
}

/// How the step counts of a sweep are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRange {
    /// Every `n` in `lo..=hi`.
    Absolute(u32, u32),
    /// `n` from the smallest accepted value for `(d, p)` up to `extra` more.
    Slack(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub dims: Vec<usize>,
    pub targets: Vec<i64>,
    pub steps: StepRange,
    /// Random inputs per tuple, on top of the `d` basis inputs.
    pub random_inputs: usize,
    pub seed: u64,
}

impl SweepGrid {
    /// `(d, n, p)` tuples in sweep order.
    pub fn tuples(&self) -> Result<Vec<(usize, u32, i64)>, HarnessError> {
        if let Some(&d) = self.dims.iter().find(|&&d| d > MAX_SWEEP_D) {
            return Err(HarnessError::Budget(format!("d = {d} > {MAX_SWEEP_D}")));
        }
        let mut out = Vec::new();
        for &d in &self.dims {
            for &p in &self.targets {
                let (lo, hi) = match self.steps {
                    StepRange::Absolute(lo, hi) => (lo, hi),
                    StepRange::Slack(extra) => match min_steps(d, p) {
                        Ok(m) => (m, m + extra),
                        // unsupported (d, p): keep a single tuple so it is reported
                        Err(_) => (1, 1),
                    },
                };
                if hi > MAX_SWEEP_N {
                    return Err(HarnessError::Budget(format!("n = {hi} > {MAX_SWEEP_N}")));
                }
                out.extend((lo..=hi).map(|n| (d, n, p)));
                if out.len() > MAX_SWEEP_TUPLES {
                    return Err(HarnessError::Budget(format!(
                        "more than {MAX_SWEEP_TUPLES} tuples"
                    )));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Divergence {
    pub d: usize,
    pub n: u32,
    pub p: i64,
    pub compiled_fidelity: f64,
    pub oracle_fidelity: f64,
    /// First step at which some basis input sits at a different site under
    /// the compiled schedule than under the oracle schedule.
    pub first_divergent_step: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compile_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub d: usize,
    pub n: u32,
    pub p: i64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleFailure {
    pub d: usize,
    pub n: u32,
    pub p: i64,
    pub oracle_fidelity: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TupleResult {
    pub d: usize,
    pub n: u32,
    pub p: i64,
    pub compiled_fidelity: f64,
    pub oracle_fidelity: f64,
    pub compiled_specials: Option<usize>,
    pub oracle_specials: usize,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub checked: Vec<TupleResult>,
    pub divergences: Vec<Divergence>,
    pub skipped: Vec<Skipped>,
    pub oracle_failures: Vec<OracleFailure>,
}

impl SweepReport {
    pub fn oracle_ok(&self) -> bool {
        self.oracle_failures.is_empty()
    }
}

enum Outcome {
    Checked(TupleResult, Option<Divergence>),
    Skipped(Skipped),
    OracleFailed(OracleFailure),
}

/// First step at which any basis input's site differs between the two schedules.
pub fn first_divergent_step(a: &Schedule, b: &Schedule) -> Result<Option<u32>, ScheduleError> {
    let mut first = None;
    for coin in 0..a.d() {
        let pa = a.basis_path(coin)?;
        let pb = b.basis_path(coin)?;
        if let Some(t) = pa.iter().zip(&pb).position(|(u, v)| u.0 != v.0) {
            let t = t as u32;
            first = Some(first.map_or(t, |f: u32| f.min(t)));
        }
    }
    Ok(first)
}

fn sweep_tuple(d: usize, n: u32, p: i64, index: u64, grid: &SweepGrid) -> Outcome {
    let skip = |reason: String| Outcome::Skipped(Skipped { d, n, p, reason });
    if p == 0 {
        return skip(ScheduleError::UnsupportedTarget.to_string());
    }
    // Feasibility is decided by the compiler's own bounds; the oracle shares them.
    let compiled = compile(d, n, p);
    match &compiled {
        Err(e @ (ScheduleError::Infeasible { .. } | ScheduleError::Dimension { .. })) => {
            return skip(e.to_string())
        }
        Ok(_) if d == 2 && p.abs() > i64::from(n) - 2 => {
            return skip(format!(
                "qubit transfer needs |p| <= n - 2, got |p| = {}",
                p.abs()
            ));
        }
        _ => {}
    }

    let mut rng = trial_rng(grid.seed, index);
    let inputs: Vec<Vec<Complex64>> = (0..d)
        .map(|i| basis_coin(d, i))
        .chain((0..grid.random_inputs).map(|_| random_coin(d, &mut rng)))
        .collect();
    let fid = |s: &Schedule| -> Result<f64, ScheduleError> {
        min_transfer_fidelity(s, inputs.clone(), Execution::Sequential)
    };

    let oracle = match track_flows(d, n, p) {
        Ok(s) => s,
        Err(e) => {
            return Outcome::OracleFailed(OracleFailure {
                d,
                n,
                p,
                oracle_fidelity: None,
                error: Some(e.to_string()),
            })
        }
    };
    let oracle_fidelity = match fid(&oracle) {
        Ok(f) => f,
        Err(e) => {
            return Outcome::OracleFailed(OracleFailure {
                d,
                n,
                p,
                oracle_fidelity: None,
                error: Some(e.to_string()),
            })
        }
    };
    if oracle_fidelity < 1.0 - PASS_TOLERANCE {
        return Outcome::OracleFailed(OracleFailure {
            d,
            n,
            p,
            oracle_fidelity: Some(oracle_fidelity),
            error: None,
        });
    }

    let (compiled_fidelity, compiled_specials, flagged, divergence) = match compiled {
        Ok(s) => {
            let f = fid(&s).unwrap_or(0.0);
            let div = (f < 1.0 - PASS_TOLERANCE).then(|| Divergence {
                d,
                n,
                p,
                compiled_fidelity: f,
                oracle_fidelity,
                first_divergent_step: first_divergent_step(&s, &oracle).ok().flatten(),
                compile_error: None,
            });
            (f, Some(s.special_count()), s.is_flagged(), div)
        }
        Err(e) => (
            0.0,
            None,
            true,
            Some(Divergence {
                d,
                n,
                p,
                compiled_fidelity: 0.0,
                oracle_fidelity,
                first_divergent_step: None,
                compile_error: Some(e.to_string()),
            }),
        ),
    };
    Outcome::Checked(
        TupleResult {
            d,
            n,
            p,
            compiled_fidelity,
            oracle_fidelity,
            compiled_specials,
            oracle_specials: oracle.special_count(),
            flagged,
        },
        divergence,
    )
}

/// Runs the compiled-vs-oracle comparison over `grid`.
pub fn sweep(grid: &SweepGrid, exec: Execution) -> Result<SweepReport, HarnessError> {
    let tuples: Vec<(u64, (usize, u32, i64))> = grid
        .tuples()?
        .into_iter()
        .enumerate()
        .map(|(i, t)| (i as u64, t))
        .collect();
    let outcomes = exec.map(tuples, |(i, (d, n, p))| sweep_tuple(d, n, p, i, grid));
    let mut report = SweepReport {
        checked: Vec::new(),
        divergences: Vec::new(),
        skipped: Vec::new(),
        oracle_failures: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Checked(r, div) => {
                report.checked.push(r);
                report.divergences.extend(div);
            }
            Outcome::Skipped(s) => report.skipped.push(s),
            Outcome::OracleFailed(f) => report.oracle_failures.push(f),
        }
    }
    Ok(report)
}
