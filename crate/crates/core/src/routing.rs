//! Routing an `m`-qudit coin state on an `m`-axis lattice.
//!
//! Each axis carries its own walker and coin. The joint coin at lattice point
//! `(x_1, ..., x_m)` during step `k` is the tensor product of the per-axis
//! schedule coins at `(k, x_i)`, so the joint evolution factorizes and an
//! entangled coin register is delivered intact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::schedule::{compile, min_steps, Schedule, ScheduleError};
use crate::walk::{Direction, NORM_TOLERANCE, PRUNE_THRESHOLD};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RoutingError {
    #[error("need at least one axis")]
    NoAxes,
    #[error("coin dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("expected {expected} joint coin amplitudes (d^m), got {got}")]
    CoinLength { expected: usize, got: usize },
    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),
    #[error("step {k} outside 1..={n}")]
    StepOutOfRange { k: u32, n: u32 },
    #[error("axis count or dimension mismatch: {0}")]
    Mismatch(String),
    #[error("no common step count: {0}")]
    NoCommonSteps(String),
    #[error("axis {axis}: {source}")]
    Axis {
        axis: usize,
        #[source]
        source: ScheduleError,
    },
}

/// Joint basis label: one position and one coin index per axis.
pub type JointKey = (Vec<i64>, Vec<usize>);

/// Sparse amplitude table over `(positions, coins)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiWalkerState {
    m: usize,
    d: usize,
    amplitudes: BTreeMap<JointKey, Complex64>,
    step: u32,
}

/// Coin indices of joint coin basis state `index`; axis 0 is most significant.
pub fn coin_digits(index: usize, d: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = rest % d;
        rest /= d;
    }
    out
}

/// Inverse of [`coin_digits`].
pub fn coin_index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &c| acc * d + c)
}

/// Tensor product of single-axis coin states, axis 0 most significant.
pub fn product_coin(factors: &[Vec<Complex64>]) -> Vec<Complex64> {
    factors
        .iter()
        .fold(vec![Complex64::new(1.0, 0.0)], |acc, f| {
            acc.iter()
                .flat_map(|a| f.iter().map(move |b| a * b))
                .collect()
        })
}

/// `sum_i a_i |i, i, ..., i>` over `m` axes.
pub fn diagonal_coin(weights: &[Complex64], m: usize) -> Vec<Complex64> {
    let d = weights.len();
    let mut out = vec![Complex64::new(0.0, 0.0); d.pow(m as u32)];
    for (i, &w) in weights.iter().enumerate() {
        out[coin_index(&vec![i; m], d)] = w;
    }
    out
}

impl MultiWalkerState {
    /// Joint coin state `coin` (length `d^m`) placed at `origin`.
    pub fn new_localized(
        d: usize,
        origin: &[i64],
        coin: &[Complex64],
    ) -> Result<Self, RoutingError> {
        let m = origin.len();
        if m == 0 {
            return Err(RoutingError::NoAxes);
        }
        if d < 2 {
            return Err(RoutingError::Dimension(d));
        }
        let expected = d.pow(m as u32);
        if coin.len() != expected {
            return Err(RoutingError::CoinLength {
                expected,
                got: coin.len(),
            });
        }
        let amplitudes: BTreeMap<JointKey, Complex64> = coin
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() >= PRUNE_THRESHOLD)
            .map(|(i, &a)| ((origin.to_vec(), coin_digits(i, d, m)), a))
            .collect();
        let state = MultiWalkerState {
            m,
            d,
            amplitudes,
            step: 0,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(RoutingError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn step_count(&self) -> u32 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, positions: &[i64], coins: &[usize]) -> Complex64 {
        self.amplitudes
            .get(&(positions.to_vec(), coins.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], &[usize], Complex64)> + '_ {
        self.amplitudes
            .iter()
            .map(|((x, c), &a)| (x.as_slice(), c.as_slice(), a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &MultiWalkerState) -> Result<Complex64, RoutingError> {
        if self.m != other.m || self.d != other.d {
            return Err(RoutingError::Mismatch(format!(
                "(m, d) = ({}, {}) vs ({}, {})",
                self.m, self.d, other.m, other.d
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .filter_map(|(k, a)| other.amplitudes.get(k).map(|b| a.conj() * b))
            .sum())
    }

    pub fn fidelity(&self, other: &MultiWalkerState) -> Result<f64, RoutingError> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Purity `tr(rho^2)` of the reduced state of the axes in `keep`
    /// (position and coin of each kept axis), tracing out the rest.
    pub fn reduced_purity(&self, keep: &[usize]) -> Result<f64, RoutingError> {
        if keep.iter().any(|&a| a >= self.m) {
            return Err(RoutingError::Mismatch(format!(
                "axes {keep:?} out of range for m = {}",
                self.m
            )));
        }
        // Group amplitudes by the traced-out label; rho_kept = sum_b |psi_b><psi_b|.
        type Label = (Vec<i64>, Vec<usize>);
        let split = |key: &JointKey, kept: bool| -> Label {
            let sel = |axis: usize| keep.contains(&axis) == kept;
            (
                (0..self.m).filter(|&i| sel(i)).map(|i| key.0[i]).collect(),
                (0..self.m).filter(|&i| sel(i)).map(|i| key.1[i]).collect(),
            )
        };
        let mut blocks: BTreeMap<Label, BTreeMap<Label, Complex64>> = BTreeMap::new();
        for (key, &a) in &self.amplitudes {
            blocks
                .entry(split(key, false))
                .or_default()
                .insert(split(key, true), a);
        }
        // tr(rho^2) = sum_{b, b'} |<psi_b|psi_b'>|^2
        let vecs: Vec<&BTreeMap<Label, Complex64>> = blocks.values().collect();
        let mut purity = 0.0;
        for u in &vecs {
            for v in &vecs {
                let ov: Complex64 = u
                    .iter()
                    .filter_map(|(k, a)| v.get(k).map(|b| a.conj() * b))
                    .sum();
                purity += ov.norm_sqr();
            }
        }
        Ok(purity)
    }

    pub fn snapshot(&self) -> MultiSnapshot {
        MultiSnapshot {
            step: self.step,
            entries: self
                .amplitudes
                .iter()
                .map(|((x, c), a)| MultiSnapshotEntry {
                    positions: x.clone(),
                    coins: c.clone(),
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        }
    }
}

/// One routing trace line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiSnapshot {
    pub step: u32,
    pub entries: Vec<MultiSnapshotEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiSnapshotEntry {
    pub positions: Vec<i64>,
    pub coins: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

/// Per-axis schedules sharing `d` and `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "PlanFile", try_from = "PlanFile")]
pub struct RoutingPlan {
    d: usize,
    n: u32,
    targets: Vec<i64>,
    axes: Vec<Schedule>,
}

/// On-disk form: `{d, n, targets, axes: [schedule...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanFile {
    pub d: usize,
    pub n: u32,
    pub targets: Vec<i64>,
    pub axes: Vec<Schedule>,
}

impl From<RoutingPlan> for PlanFile {
    fn from(p: RoutingPlan) -> Self {
        PlanFile {
            d: p.d,
            n: p.n,
            targets: p.targets,
            axes: p.axes,
        }
    }
}

impl TryFrom<PlanFile> for RoutingPlan {
    type Error = RoutingError;

    fn try_from(f: PlanFile) -> Result<Self, Self::Error> {
        RoutingPlan::from_axes(f.axes).and_then(|p| {
            if p.d != f.d || p.n != f.n || p.targets != f.targets {
                Err(RoutingError::Mismatch(
                    "plan header disagrees with its axis schedules".into(),
                ))
            } else {
                Ok(p)
            }
        })
    }
}

impl RoutingPlan {
    /// Compiles one schedule per axis, all with `n` steps.
    pub fn compile(d: usize, n: u32, targets: &[i64]) -> Result<Self, RoutingError> {
        if targets.is_empty() {
            return Err(RoutingError::NoAxes);
        }
        let axes = targets
            .iter()
            .enumerate()
            .map(|(axis, &p)| {
                compile(d, n, p).map_err(|source| RoutingError::Axis { axis, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_axes(axes)
    }

    /// Smallest `n` every axis accepts.
    pub fn common_steps(d: usize, targets: &[i64]) -> Result<u32, RoutingError> {
        if targets.is_empty() {
            return Err(RoutingError::NoAxes);
        }
        let mins = targets
            .iter()
            .enumerate()
            .map(|(axis, &p)| min_steps(d, p).map_err(|source| RoutingError::Axis { axis, source }))
            .collect::<Result<Vec<_>, _>>()?;
        let n = *mins.iter().max().expect("non-empty");
        if d == 2 {
            let parities: Vec<i64> = targets.iter().map(|p| p.rem_euclid(2)).collect();
            if parities.iter().any(|&q| q != parities[0]) {
                let bounds: Vec<String> = targets
                    .iter()
                    .zip(&mins)
                    .enumerate()
                    .map(|(i, (p, m))| format!("axis {i}: n >= {m}, n = {p} (mod 2)"))
                    .collect();
                return Err(RoutingError::NoCommonSteps(bounds.join("; ")));
            }
        }
        Ok(n)
    }

    /// [`compile`](Self::compile) with the smallest common `n`.
    pub fn minimal(d: usize, targets: &[i64]) -> Result<Self, RoutingError> {
        let n = Self::common_steps(d, targets)?;
        Self::compile(d, n, targets)
    }

    /// Assembles a plan from existing schedules.
    pub fn from_axes(axes: Vec<Schedule>) -> Result<Self, RoutingError> {
        let first = axes.first().ok_or(RoutingError::NoAxes)?;
        let (d, n) = (first.d(), first.n());
        if let Some((i, s)) = axes
            .iter()
            .enumerate()
            .find(|(_, s)| s.d() != d || s.n() != n)
        {
            return Err(RoutingError::Mismatch(format!(
                "axis {i} has (d, n) = ({}, {}), axis 0 has ({d}, {n})",
                s.d(),
                s.n()
            )));
        }
        let targets = axes.iter().map(|s| s.p()).collect();
        Ok(RoutingPlan {
            d,
            n,
            targets,
            axes,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.axes.len()
    }

    pub fn targets(&self) -> &[i64] {
        &self.targets
    }

    pub fn axes(&self) -> &[Schedule] {
        &self.axes
    }

    /// Sum of per-axis special counts.
    pub fn special_count(&self) -> usize {
        self.axes.iter().map(|s| s.special_count()).sum()
    }
}

/// Step `k`: tensor-product coins, then the per-axis shift.
pub fn route_step(
    state: &MultiWalkerState,
    plan: &RoutingPlan,
    k: u32,
) -> Result<MultiWalkerState, RoutingError> {
    if state.m != plan.m() || state.d != plan.d {
        return Err(RoutingError::Mismatch(format!(
            "state (m, d) = ({}, {}), plan ({}, {})",
            state.m,
            state.d,
            plan.m(),
            plan.d
        )));
    }
    if k == 0 || k > plan.n {
        return Err(RoutingError::StepOutOfRange { k, n: plan.n });
    }
    let d = state.d;
    let coin_maps: Vec<_> = plan.axes.iter().map(|s| s.coins_at(k)).collect();
    let mut amplitudes = BTreeMap::new();
    for ((xs, cs), &a) in &state.amplitudes {
        let mut nx = xs.clone();
        let mut nc = cs.clone();
        for axis in 0..state.m {
            let c = coin_maps[axis]
                .get(&xs[axis])
                .map_or(cs[axis], |op| op.image(cs[axis], d));
            nc[axis] = c;
            nx[axis] += Direction::of(c, d).displacement();
        }
        if a.norm() >= PRUNE_THRESHOLD {
            amplitudes.insert((nx, nc), a);
        }
    }
    Ok(MultiWalkerState {
        m: state.m,
        d,
        amplitudes,
        step: k,
    })
}

/// Evolves `coin` (length `d^m`) from the origin under `plan`.
pub fn route(plan: &RoutingPlan, coin: &[Complex64]) -> Result<MultiWalkerState, RoutingError> {
    Ok(route_traced(plan, coin)?.pop().expect("non-empty trace"))
}

/// Every state from the initial one through step `n`.
pub fn route_traced(
    plan: &RoutingPlan,
    coin: &[Complex64],
) -> Result<Vec<MultiWalkerState>, RoutingError> {
    let origin = vec![0; plan.m()];
    let mut trace = vec![MultiWalkerState::new_localized(plan.d, &origin, coin)?];
    for k in 1..=plan.n {
        let next = route_step(trace.last().expect("non-empty"), plan, k)?;
        trace.push(next);
    }
    Ok(trace)
}

/// Overlap squared between `state` and `|targets>|reference>`.
pub fn entanglement_check(
    state: &MultiWalkerState,
    targets: &[i64],
    reference: &[Complex64],
) -> Result<f64, RoutingError> {
    if targets.len() != state.m {
        return Err(RoutingError::Mismatch(format!(
            "{} targets for {} axes",
            targets.len(),
            state.m
        )));
    }
    let want = MultiWalkerState::new_localized(state.d, targets, reference)?;
    state.fidelity(&want)
}
