//! Reference schedules and path counts that do not use the closed forms.
//!
//! [`track_flows`] writes down, for every basis coin state, the l/s/r
//! itinerary it should follow from site 0 to site `p`, then solves each
//! occupied cell for the simplest coin of the family that realizes all the
//! required coin changes there at once. The result is checked by simulating
//! every basis input before it is returned.

use num_integer::binomial;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::coins::CoinOp;
use crate::exec::Execution;
use crate::schedule::{Schedule, ScheduleError};
use crate::walk::{CoinBasis, Direction};

/// Largest middle-segment length [`count_paths_enum`] will enumerate.
pub const ENUMERATION_BUDGET: u32 = 22;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("infeasible (d = {d}, n = {n}, p = {p}): {bound} violated")]
    Infeasible {
        d: usize,
        n: u32,
        p: i64,
        bound: String,
    },
    #[error("target p = 0 is not supported")]
    UnsupportedTarget,
    #[error("flows {first:?} and {second:?} both carry coin {coin} at (step {step}, x {x})")]
    Collision {
        step: u32,
        x: i64,
        coin: usize,
        first: FlowId,
        second: FlowId,
    },
    #[error("no coin of the family realizes the required changes at (step {step}, x {x})")]
    NoCoin { step: u32, x: i64 },
    #[error("basis input {coin} does not arrive intact (ended at x = {x}, coin {got})")]
    Verification { coin: usize, x: i64, got: usize },
    #[error("enumeration of 3^{len} sequences exceeds the budget 3^{max}")]
    Budget { len: u32, max: u32 },
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// Which basis component of the coin state a flow carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlowId {
    /// Coin index 0.
    Alpha,
    /// Self-loop coin index `i`, `1 <= i <= d - 2`.
    Beta(usize),
    /// Coin index `d - 1`.
    Gamma,
}

impl FlowId {
    pub fn coin(self, d: usize) -> usize {
        match self {
            FlowId::Alpha => 0,
            FlowId::Beta(i) => i,
            FlowId::Gamma => d - 1,
        }
    }
}

/// Intended itinerary of one flow: one move per step, `n` moves in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowPath {
    pub flow: FlowId,
    pub moves: Vec<Direction>,
    /// Self-loop index used whenever the flow stays put.
    pub stay_coin: usize,
}

impl FlowPath {
    /// Positions before the first step and after each step.
    pub fn positions(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut x = 0;
        out.push(x);
        for m in &self.moves {
            x += m.displacement();
            out.push(x);
        }
        out
    }

    /// Coin carried before the first step and after the coin of each step.
    pub fn coins(&self, basis: CoinBasis) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(self.flow.coin(basis.d()));
        out.extend(
            self.moves
                .iter()
                .map(|&m| basis.index_for(m, self.stay_coin)),
        );
        out
    }

    pub fn count(&self, dir: Direction) -> usize {
        self.moves.iter().filter(|&&m| m == dir).count()
    }

    pub fn word(&self) -> String {
        self.moves.iter().map(|m| m.label()).collect()
    }
}

/// `(n_l, n_s, n_r)` for the middle `n - 2` moves of the extreme flows.
pub fn middle_counts(n: u32, p: i64) -> (usize, usize, usize) {
    let len = i64::from(n) - 2;
    let a = p.abs();
    if (len - p).rem_euclid(2) == 0 {
        (((len - p) / 2) as usize, 0, ((len + p) / 2) as usize)
    } else {
        let ns = len - a;
        (((a - p) / 2) as usize, ns as usize, ((a + p) / 2) as usize)
    }
}

fn check_feasible(d: usize, n: u32, p: i64) -> Result<(), OracleError> {
    if p == 0 {
        return Err(OracleError::UnsupportedTarget);
    }
    let n_i = i64::from(n);
    let a = p.abs();
    let fail = |bound: String| OracleError::Infeasible { d, n, p, bound };
    match d {
        0 | 1 => Err(fail("d >= 2".into())),
        2 if (n_i - p).rem_euclid(2) != 0 => Err(fail("n = p (mod 2)".into())),
        2 if n_i < a + 2 => Err(fail(format!("n >= |p| + 2 = {}", a + 2))),
        _ if d > 2 && n_i < a + d as i64 - 1 => {
            Err(fail(format!("n >= |p| + d - 1 = {}", a + d as i64 - 1)))
        }
        _ => Ok(()),
    }
}

/// Canonical itineraries of all `d` flows.
///
/// The extreme flows go out one site at step 1, then either reverse once
/// (`n = p mod 2`) or move, idle on a self-loop and move again, and come back
/// one site at step `n`. The middle flows leave the origin one per step from
/// step 2 on, travel straight to `p` and idle there.
pub fn itineraries(d: usize, n: u32, p: i64) -> Result<Vec<FlowPath>, OracleError> {
    check_feasible(d, n, p)?;
    let n = n as usize;
    let a = p.unsigned_abs() as usize;
    let (nl, ns, nr) = middle_counts(n as u32, p);
    let rep = |dir: Direction, k: usize| std::iter::repeat_n(dir, k);
    use Direction::*;

    let mut out = Vec::with_capacity(d);
    let alpha: Vec<Direction> = std::iter::once(Right)
        .chain(rep(Right, nr))
        .chain(rep(Stay, ns))
        .chain(rep(Left, nl))
        .chain(std::iter::once(Left))
        .collect();
    out.push(FlowPath {
        flow: FlowId::Alpha,
        moves: alpha,
        stay_coin: 1,
    });

    let forward = if p > 0 { Right } else { Left };
    for i in 1..d - 1 {
        let depart = if p > 0 { d - i } else { i + 1 };
        let moves: Vec<Direction> = rep(Stay, depart - 1)
            .chain(rep(forward, a))
            .chain(rep(Stay, n - (depart - 1) - a))
            .collect();
        out.push(FlowPath {
            flow: FlowId::Beta(i),
            moves,
            stay_coin: i,
        });
    }

    let gamma: Vec<Direction> = std::iter::once(Left)
        .chain(rep(Left, nl))
        .chain(rep(Stay, ns))
        .chain(rep(Right, nr))
        .chain(std::iter::once(Right))
        .collect();
    out.push(FlowPath {
        flow: FlowId::Gamma,
        moves: gamma,
        stay_coin: 1,
    });
    Ok(out)
}

/// Simplest family member consistent with a partial map of coin indices.
fn solve_cell(d: usize, required: &[(usize, usize)]) -> Option<CoinOp> {
    CoinOp::family(d)
        .into_iter()
        .find(|op| required.iter().all(|&(from, to)| op.image(from, d) == to))
}

/// Derives a transfer schedule from the flow itineraries and verifies it on
/// every basis input.
pub fn track_flows(d: usize, n: u32, p: i64) -> Result<Schedule, OracleError> {
    let paths = itineraries(d, n, p)?;
    let basis = CoinBasis::new(d).expect("checked d >= 2");
    let positions: Vec<Vec<i64>> = paths.iter().map(|f| f.positions()).collect();
    let coins: Vec<Vec<usize>> = paths.iter().map(|f| f.coins(basis)).collect();
    let mut schedule = Schedule::new(d, n, p)?;

    for step in 1..=n {
        let t = step as usize;
        // cell -> [(flow, coin before, coin after)]
        let mut cells: BTreeMap<i64, Vec<(FlowId, usize, usize)>> = BTreeMap::new();
        for (k, path) in paths.iter().enumerate() {
            cells.entry(positions[k][t - 1]).or_default().push((
                path.flow,
                coins[k][t - 1],
                coins[k][t],
            ));
        }
        for (x, flows) in cells {
            for (a, fa) in flows.iter().enumerate() {
                for fb in &flows[a + 1..] {
                    if fa.1 == fb.1 || fa.2 == fb.2 {
                        let coin = if fa.1 == fb.1 { fa.1 } else { fa.2 };
                        return Err(OracleError::Collision {
                            step,
                            x,
                            coin,
                            first: fa.0,
                            second: fb.0,
                        });
                    }
                }
            }
            let required: Vec<(usize, usize)> = flows.iter().map(|f| (f.1, f.2)).collect();
            let op = solve_cell(d, &required).ok_or(OracleError::NoCoin { step, x })?;
            schedule.set(step, x, op)?;
        }
    }

    for coin in 0..d {
        let path = schedule.basis_path(coin)?;
        let (x, got) = *path.last().expect("non-empty path");
        if x != p || got != coin {
            return Err(OracleError::Verification { coin, x, got });
        }
    }
    Ok(schedule)
}

/// Every `(n_l, n_s, n_r)` solving `n_l + n_s + n_r = n - 2`, `n_r - n_l = p`,
/// indexed by `n_delta = min(n_l, n_r)`.
pub fn solution_family(n: u32, p: i64) -> Vec<(u64, u64, u64)> {
    let len = i64::from(n) - 2;
    let a = p.abs();
    (0..)
        .map(|nd| len - a - 2 * nd)
        .take_while(|&ns| ns >= 0)
        .map(|ns| {
            let nl = (len - ns - p) / 2;
            let nr = (len - ns + p) / 2;
            (nl as u64, ns as u64, nr as u64)
        })
        .collect()
}

/// Number of lazy-walk words of length `n - 2` with displacement `p`, from
/// the binomial sum over the number of stays. Terms whose lower binomial
/// argument is fractional or out of range are zero.
pub fn count_paths_closed(n: u32, p: i64) -> u128 {
    if n < 2 {
        return 0;
    }
    let len = u128::from(n - 2);
    let a = u128::from(p.unsigned_abs());
    if a > len {
        return 0;
    }
    (0..=len - a)
        .map(|ns| {
            let rest = len - ns;
            let signed = rest as i128 + i128::from(p);
            if signed < 0 || signed % 2 != 0 {
                return 0;
            }
            let k = (signed / 2) as u128;
            if k > rest {
                return 0;
            }
            binomial(len, ns) * binomial(rest, k)
        })
        .sum()
}

/// Brute-force count of words in `{l, s, r}^(n - 2)` with `#r - #l = p`.
pub fn count_paths_enum(n: u32, p: i64) -> Result<u128, OracleError> {
    count_paths_enum_with(n, p, Execution::default())
}

pub fn count_paths_enum_with(n: u32, p: i64, exec: Execution) -> Result<u128, OracleError> {
    if n < 2 {
        return Ok(0);
    }
    let len = n - 2;
    if len > ENUMERATION_BUDGET {
        return Err(OracleError::Budget {
            len,
            max: ENUMERATION_BUDGET,
        });
    }
    let total = 3u64.pow(len);
    Ok(exec.sum_indexed(total, |mut word| {
        let mut disp = 0i64;
        for _ in 0..len {
            // digit 0 = l, 1 = s, 2 = r
            disp += (word % 3) as i64 - 1;
            word /= 3;
        }
        u128::from(disp == p)
    }))
}

/// The words themselves, for small `len`.
pub fn enumerate_words(len: u32, p: i64) -> Vec<String> {
    let mut out = Vec::new();
    for word in 0..3u64.pow(len) {
        let mut w = word;
        let mut s = String::with_capacity(len as usize);
        let mut disp = 0i64;
        for _ in 0..len {
            let digit = w % 3;
            w /= 3;
            disp += digit as i64 - 1;
            s.push(['l', 's', 'r'][digit as usize]);
        }
        if disp == p {
            // most significant digit first
            out.push(s.chars().rev().collect());
        }
    }
    out.sort();
    out
}
