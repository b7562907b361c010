//! Walker state on the line with `d - 2` self-loops per site.
//!
//! Coin index `0` moves the walker left, `d - 1` moves it right, and every
//! index in between is a self-loop. One step applies the per-site coins and
//! then the conditional shift.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::coins::{CoinError, CoinOp};

/// Unit-norm tolerance for every "exact" check in the crate.
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Amplitudes below this modulus are dropped after each step.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Coins applied at each site during one step. Missing sites get the identity.
pub type CoinMap = BTreeMap<i64, CoinOp>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("coin dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("expected {expected} coin amplitudes, got {got}")]
    CoinLength { expected: usize, got: usize },
    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),
    #[error("coin index {coin} out of range for d = {d}")]
    CoinIndex { coin: usize, d: usize },
    #[error("coin dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Coin(#[from] CoinError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Stay,
    Right,
}

impl Direction {
    /// Direction selected by coin index `m` in dimension `d`.
    pub fn of(m: usize, d: usize) -> Direction {
        if m == 0 {
            Direction::Left
        } else if m + 1 == d {
            Direction::Right
        } else {
            Direction::Stay
        }
    }

    pub fn displacement(self) -> i64 {
        match self {
            Direction::Left => -1,
            Direction::Stay => 0,
            Direction::Right => 1,
        }
    }

    pub fn label(self) -> char {
        match self {
            Direction::Left => 'l',
            Direction::Stay => 's',
            Direction::Right => 'r',
        }
    }
}

/// Labelling of the coin basis for dimension `d = lambda + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoinBasis {
    d: usize,
}

impl CoinBasis {
    pub fn new(d: usize) -> Result<Self, WalkError> {
        if d < 2 {
            return Err(WalkError::Dimension(d));
        }
        Ok(CoinBasis { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of self-loops per site.
    pub fn lambda(&self) -> usize {
        self.d - 2
    }

    pub fn left(&self) -> usize {
        0
    }

    pub fn right(&self) -> usize {
        self.d - 1
    }

    pub fn stays(&self) -> std::ops::Range<usize> {
        1..self.d - 1
    }

    /// The coin index that realizes `dir`, using `stay` for self-loops.
    pub fn index_for(&self, dir: Direction, stay: usize) -> usize {
        match dir {
            Direction::Left => self.left(),
            Direction::Right => self.right(),
            Direction::Stay => stay,
        }
    }

    pub fn direction(&self, m: usize) -> Direction {
        Direction::of(m, self.d)
    }
}

/// Sparse amplitude table over `(position, coin)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    d: usize,
    amplitudes: BTreeMap<(i64, usize), Complex64>,
    step: u32,
}

impl WalkerState {
    /// Coin state `coin` placed at site `x0`, before any step.
    pub fn new_localized(d: usize, x0: i64, coin: &[Complex64]) -> Result<Self, WalkError> {
        if d < 2 {
            return Err(WalkError::Dimension(d));
        }
        if coin.len() != d {
            return Err(WalkError::CoinLength {
                expected: d,
                got: coin.len(),
            });
        }
        let amplitudes = coin
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() >= PRUNE_THRESHOLD)
            .map(|(c, &a)| ((x0, c), a))
            .collect();
        Self::from_amplitudes(d, 0, amplitudes)
    }

    /// Basis state `|x0>|coin>`.
    pub fn basis(d: usize, x0: i64, coin: usize) -> Result<Self, WalkError> {
        if d < 2 {
            return Err(WalkError::Dimension(d));
        }
        if coin >= d {
            return Err(WalkError::CoinIndex { coin, d });
        }
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert((x0, coin), Complex64::new(1.0, 0.0));
        Ok(WalkerState {
            d,
            amplitudes,
            step: 0,
        })
    }

    /// Builds a state from an explicit table; the table must have unit norm.
    pub fn from_amplitudes(
        d: usize,
        step: u32,
        amplitudes: BTreeMap<(i64, usize), Complex64>,
    ) -> Result<Self, WalkError> {
        if d < 2 {
            return Err(WalkError::Dimension(d));
        }
        if let Some(&(_, coin)) = amplitudes.keys().find(|(_, c)| *c >= d) {
            return Err(WalkError::CoinIndex { coin, d });
        }
        let state = WalkerState {
            d,
            amplitudes,
            step,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(WalkError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn step_count(&self) -> u32 {
        self.step
    }

    pub fn amplitude(&self, x: i64, coin: usize) -> Complex64 {
        self.amplitudes.get(&(x, coin)).copied().unwrap_or_default()
    }

    /// Entries in `(x, coin)` order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, usize, Complex64)> + '_ {
        self.amplitudes.iter().map(|(&(x, c), &a)| (x, c, a))
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// Smallest and largest occupied position.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.amplitudes.keys().next()?.0;
        let hi = self.amplitudes.keys().next_back()?.0;
        Some((lo, hi))
    }

    /// Coin amplitudes at site `x`.
    pub fn coin_at(&self, x: i64) -> Vec<Complex64> {
        (0..self.d).map(|c| self.amplitude(x, c)).collect()
    }

    /// Conditional shift: coin 0 moves left, coin `d - 1` moves right, self-loops stay.
    pub fn shift(&self) -> WalkerState {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(&(x, c), &a)| ((x + Direction::of(c, self.d).displacement(), c), a))
            .collect();
        WalkerState {
            d: self.d,
            amplitudes,
            step: self.step,
        }
    }

    /// Inverse of [`shift`](Self::shift).
    pub fn unshift(&self) -> WalkerState {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(&(x, c), &a)| ((x - Direction::of(c, self.d).displacement(), c), a))
            .collect();
        WalkerState {
            d: self.d,
            amplitudes,
            step: self.step,
        }
    }

    /// Applies `coins[x]` to the coin register at every site `x`.
    pub fn apply_coins(&self, coins: &CoinMap) -> Result<WalkerState, WalkError> {
        for op in coins.values() {
            op.validate(self.d)?;
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(&(x, c), &a)| {
                let img = coins.get(&x).map_or(c, |op| op.image(c, self.d));
                ((x, img), a)
            })
            .collect();
        Ok(WalkerState {
            d: self.d,
            amplitudes,
            step: self.step,
        })
    }

    /// One walk step: coins, then shift. Increments the step counter.
    pub fn step(&self, coins: &CoinMap) -> Result<WalkerState, WalkError> {
        let mut next = self.apply_coins(coins)?.shift();
        next.step += 1;
        next.prune();
        Ok(next)
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, a| a.norm() >= PRUNE_THRESHOLD);
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &WalkerState) -> Result<Complex64, WalkError> {
        if self.d != other.d {
            return Err(WalkError::DimensionMismatch(self.d, other.d));
        }
        let (small, large, flip) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let sum: Complex64 = small
            .amplitudes
            .iter()
            .filter_map(|(k, a)| large.amplitudes.get(k).map(|b| a.conj() * b))
            .sum();
        Ok(if flip { sum.conj() } else { sum })
    }

    /// `|<self|other>|^2`, insensitive to global phase.
    pub fn fidelity(&self, other: &WalkerState) -> Result<f64, WalkError> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            d: self.d,
            step: self.step,
            entries: self
                .iter()
                .map(|(x, coin, a)| SnapshotEntry {
                    x,
                    coin,
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        }
    }

    pub fn from_snapshot(snap: &Snapshot) -> Result<Self, WalkError> {
        let amplitudes = snap
            .entries
            .iter()
            .map(|e| ((e.x, e.coin), Complex64::new(e.re, e.im)))
            .collect();
        Self::from_amplitudes(snap.d, snap.step, amplitudes)
    }
}

/// Serialized form of a [`WalkerState`], entries sorted by `(x, coin)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub d: usize,
    pub step: u32,
    pub entries: Vec<SnapshotEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub x: i64,
    pub coin: usize,
    pub re: f64,
    pub im: f64,
}
