//! Coin operators: identity, powers of the increment gate, and two-level swaps.
//!
//! Every operator in this family is a permutation of the coin basis, so it is
//! stored symbolically and applied as an index permutation. [`CoinOp::realize`]
//! builds the dense unitary when one is actually needed.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::walk::Direction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoinError {
    #[error("coin dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("increment power {k} outside 1..={max} for d = {d}")]
    IncrementPower { k: usize, d: usize, max: usize },
    #[error("swap indices ({i}, {j}) invalid for d = {d}")]
    SwapIndices { i: usize, j: usize, d: usize },
}

/// Symbolic coin operator.
///
/// JSON encoding: `{"op":"I"}`, `{"op":"Xk","k":2}`, `{"op":"swap","i":0,"j":3}`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(tag = "op")]
pub enum CoinOp {
    #[default]
    #[serde(rename = "I")]
    Identity,
    /// `X^k`, mapping `|m>` to `|(m + k) mod d>`.
    #[serde(rename = "Xk")]
    Increment { k: usize },
    /// Exchanges `|i>` and `|j>`, fixes every other basis state.
    #[serde(rename = "swap")]
    Swap { i: usize, j: usize },
}

impl CoinOp {
    pub fn increment(k: usize) -> Self {
        CoinOp::Increment { k }
    }

    pub fn swap(i: usize, j: usize) -> Self {
        CoinOp::Swap { i, j }
    }

    /// Checks the operator is well formed for coin dimension `d`.
    pub fn validate(&self, d: usize) -> Result<(), CoinError> {
        if d < 2 {
            return Err(CoinError::Dimension(d));
        }
        match *self {
            CoinOp::Identity => Ok(()),
            CoinOp::Increment { k } => {
                if k == 0 || k >= d {
                    Err(CoinError::IncrementPower { k, d, max: d - 1 })
                } else {
                    Ok(())
                }
            }
            CoinOp::Swap { i, j } => {
                if i == j || i >= d || j >= d {
                    Err(CoinError::SwapIndices { i, j, d })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// A coin is special when it is anything other than the identity.
    pub fn is_special(&self) -> bool {
        !matches!(self, CoinOp::Identity)
    }

    /// Image of basis state `m`. Assumes `self` was validated for `d`.
    #[inline]
    pub fn image(&self, m: usize, d: usize) -> usize {
        match *self {
            CoinOp::Identity => m,
            CoinOp::Increment { k } => (m + k) % d,
            CoinOp::Swap { i, j } => {
                if m == i {
                    j
                } else if m == j {
                    i
                } else {
                    m
                }
            }
        }
    }

    /// `perm[m]` is the image of `|m>`.
    pub fn permutation(&self, d: usize) -> Result<Vec<usize>, CoinError> {
        self.validate(d)?;
        Ok((0..d).map(|m| self.image(m, d)).collect())
    }

    /// Dense `d x d` unitary with column `m` equal to the image of `|m>`.
    pub fn realize(&self, d: usize) -> Result<Array2<Complex64>, CoinError> {
        let perm = self.permutation(d)?;
        let mut u = Array2::zeros((d, d));
        for (m, &img) in perm.iter().enumerate() {
            u[(img, m)] = Complex64::new(1.0, 0.0);
        }
        Ok(u)
    }

    /// Recognises a basis permutation as a member of the family, preferring
    /// identity, then increments, then swaps.
    pub fn from_permutation(perm: &[usize]) -> Option<CoinOp> {
        let d = perm.len();
        if d < 2 {
            return None;
        }
        if perm.iter().enumerate().all(|(m, &img)| m == img) {
            return Some(CoinOp::Identity);
        }
        let k = perm[0];
        if perm.iter().enumerate().all(|(m, &img)| img == (m + k) % d) {
            return Some(CoinOp::Increment { k });
        }
        let moved: Vec<usize> = (0..d).filter(|&m| perm[m] != m).collect();
        if let [i, j] = moved[..] {
            if perm[i] == j && perm[j] == i {
                return Some(CoinOp::Swap { i, j });
            }
        }
        None
    }

    /// The single operator equal to applying `self` and then `next`, if the
    /// product stays inside the family.
    pub fn then(&self, next: &CoinOp, d: usize) -> Result<Option<CoinOp>, CoinError> {
        self.validate(d)?;
        next.validate(d)?;
        let perm: Vec<usize> = (0..d).map(|m| next.image(self.image(m, d), d)).collect();
        Ok(CoinOp::from_permutation(&perm))
    }

    /// Direction labels of basis state `m` before and after the operator acts.
    pub fn transition(&self, m: usize, d: usize) -> (Direction, Direction) {
        (Direction::of(m, d), Direction::of(self.image(m, d), d))
    }

    /// Every operator of the family for dimension `d`, identity first.
    pub fn family(d: usize) -> Vec<CoinOp> {
        let mut ops = vec![CoinOp::Identity];
        for i in 0..d {
            for j in i + 1..d {
                ops.push(CoinOp::Swap { i, j });
            }
        }
        ops.extend((1..d).map(|k| CoinOp::Increment { k }));
        ops
    }
}

impl fmt::Display for CoinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoinOp::Identity => write!(f, "I"),
            CoinOp::Increment { k: 1 } => write!(f, "X"),
            CoinOp::Increment { k } => write!(f, "X^{k}"),
            CoinOp::Swap { i, j } => write!(f, "X[{i}<->{j}]"),
        }
    }
}
