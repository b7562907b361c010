//! Closed-form coin schedules for perfect transfer of a coin state from site 0
//! to site `p` in exactly `n` steps.
//!
//! A schedule is a sparse table `(step, site) -> CoinOp`; every cell that is
//! not listed applies the identity. Three compilers are provided:
//! [`compile_qubit`] (`d = 2`, no self-loop), [`compile_qutrit`] (`d = 3`,
//! written with increment powers only) and [`compile_qudit`] (any `d >= 3`).
//!
//! The schedules are built from three groups of placements:
//!
//! * the middle coin states leave site 0 one per step, travel to `p` and are
//!   parked there again,
//! * the two extreme coin states take a detour of one site on either side
//!   and turn around at fixed cells which depend on whether `n` and `p` have
//!   the same parity,
//! * a swap of the extremes at `(1, 0)` starts the detour.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::coins::{CoinError, CoinOp};
use crate::walk::{CoinMap, WalkError, WalkerState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("unsupported coin dimension {d} for this compiler (need {need})")]
    Dimension { d: usize, need: &'static str },
    #[error("infeasible (d = {d}, n = {n}, p = {p}): {bound} violated")]
    Infeasible {
        d: usize,
        n: u32,
        p: i64,
        bound: String,
    },
    #[error("target p = 0 is not supported")]
    UnsupportedTarget,
    #[error("step {step} outside 1..={n}")]
    StepOutOfRange { step: u32, n: u32 },
    #[error("placements {first} and {second} collide at (step {step}, x {x}) and do not compose inside the coin family")]
    Conflict {
        step: u32,
        x: i64,
        first: CoinOp,
        second: CoinOp,
    },
    #[error("state has coin dimension {state}, schedule has {schedule}")]
    DimensionMismatch { state: usize, schedule: usize },
    #[error(transparent)]
    Coin(#[from] CoinError),
    #[error(transparent)]
    Walk(#[from] WalkError),
}

/// Something the compiler did that a reader of the schedule should know about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompileNote {
    /// Two closed-form placements landed on the same cell and were composed
    /// (`first` acts before `second`).
    Merged {
        step: u32,
        x: i64,
        first: CoinOp,
        second: CoinOp,
        result: CoinOp,
    },
    /// A closed-form placement fell outside `1..=n` and was dropped.
    OutOfRange { step: u32, x: i64, op: CoinOp },
}

/// Sign selectors and offsets shared by the placement formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCombinators {
    pub d: usize,
    pub n: u32,
    pub p: i64,
    /// 1 for `p > 0`, else 0.
    pub delta1: i64,
    /// `1 - delta1`.
    pub delta2: i64,
    /// `p * delta1`.
    pub a1: i64,
    /// `p * delta2`.
    pub a2: i64,
}

impl SignCombinators {
    pub fn new(d: usize, n: u32, p: i64) -> Result<Self, ScheduleError> {
        if p == 0 {
            return Err(ScheduleError::UnsupportedTarget);
        }
        let delta1 = i64::from(p > 0);
        let delta2 = 1 - delta1;
        Ok(SignCombinators {
            d,
            n,
            p,
            delta1,
            delta2,
            a1: p * delta1,
            a2: p * delta2,
        })
    }

    pub fn same_parity(&self) -> bool {
        (i64::from(self.n) - self.p).rem_euclid(2) == 0
    }

    /// `(n + p) / 2`, defined only when `n` and `p` share parity.
    pub fn b_plus(&self) -> Option<i64> {
        self.same_parity().then(|| (i64::from(self.n) + self.p) / 2)
    }

    /// `(n - p) / 2`, defined only when `n` and `p` share parity.
    pub fn b_minus(&self) -> Option<i64> {
        self.same_parity().then(|| (i64::from(self.n) - self.p) / 2)
    }

    /// Increment power used at the origin while the middle flows leave.
    pub fn k(&self) -> usize {
        (self.delta1 + (self.d as i64 - 1) * self.delta2) as usize
    }

    /// Coin index of the middle flow that leaves the origin at step `j`.
    pub fn f(&self, j: usize) -> usize {
        let (d, j) = (self.d as i64, j as i64);
        ((d - j) * self.delta1 + (j - 1) * self.delta2) as usize
    }

    /// Coin index carried by a middle flow while it travels toward `p`.
    pub fn d_target(&self) -> usize {
        ((self.d as i64 - 1) * self.delta1) as usize
    }
}

/// Coin schedule for one transfer `0 -> p` in `n` steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ScheduleFile", try_from = "ScheduleFile")]
pub struct Schedule {
    d: usize,
    n: u32,
    p: i64,
    entries: BTreeMap<(u32, i64), CoinOp>,
    notes: Vec<CompileNote>,
}

impl Schedule {
    /// Empty (all-identity) schedule.
    pub fn new(d: usize, n: u32, p: i64) -> Result<Self, ScheduleError> {
        if d < 2 {
            return Err(ScheduleError::Dimension { d, need: "d >= 2" });
        }
        Ok(Schedule {
            d,
            n,
            p,
            entries: BTreeMap::new(),
            notes: Vec::new(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn notes(&self) -> &[CompileNote] {
        &self.notes
    }

    /// True when the compiler had to merge or drop a closed-form placement.
    pub fn is_flagged(&self) -> bool {
        !self.notes.is_empty()
    }

    pub fn get(&self, step: u32, x: i64) -> CoinOp {
        self.entries.get(&(step, x)).copied().unwrap_or_default()
    }

    /// Non-identity entries in `(step, x)` order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, i64, CoinOp)> + '_ {
        self.entries.iter().map(|(&(s, x), &op)| (s, x, op))
    }

    /// Sets the coin at `(step, x)`, replacing whatever was there.
    pub fn set(&mut self, step: u32, x: i64, op: CoinOp) -> Result<(), ScheduleError> {
        self.check_step(step)?;
        op.validate(self.d)?;
        if op.is_special() {
            self.entries.insert((step, x), op);
        } else {
            self.entries.remove(&(step, x));
        }
        Ok(())
    }

    pub fn remove(&mut self, step: u32, x: i64) -> Option<CoinOp> {
        self.entries.remove(&(step, x))
    }

    /// Adds a closed-form placement. A placement on an occupied cell is
    /// composed with the existing coin; a placement outside `1..=n` is
    /// dropped. Both are recorded in [`notes`](Self::notes).
    pub fn place(&mut self, step: u32, x: i64, op: CoinOp) -> Result<(), ScheduleError> {
        op.validate(self.d)?;
        if step == 0 || step > self.n {
            self.notes.push(CompileNote::OutOfRange { step, x, op });
            return Ok(());
        }
        match self.entries.get(&(step, x)).copied() {
            None => self.set(step, x, op),
            Some(first) => {
                let result = first.then(&op, self.d)?.ok_or(ScheduleError::Conflict {
                    step,
                    x,
                    first,
                    second: op,
                })?;
                self.notes.push(CompileNote::Merged {
                    step,
                    x,
                    first,
                    second: op,
                    result,
                });
                self.set(step, x, result)
            }
        }
    }

    fn place_at(&mut self, step: i64, x: i64, op: CoinOp) -> Result<(), ScheduleError> {
        match u32::try_from(step) {
            Ok(s) => self.place(s, x, op),
            Err(_) => {
                self.notes.push(CompileNote::OutOfRange { step: 0, x, op });
                Ok(())
            }
        }
    }

    fn check_step(&self, step: u32) -> Result<(), ScheduleError> {
        if step == 0 || step > self.n {
            Err(ScheduleError::StepOutOfRange { step, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Number of non-identity cells.
    pub fn special_count(&self) -> usize {
        self.entries.len()
    }

    /// Coins applied during `step`.
    pub fn coins_at(&self, step: u32) -> CoinMap {
        self.entries
            .range((step, i64::MIN)..=(step, i64::MAX))
            .map(|(&(_, x), &op)| (x, op))
            .collect()
    }

    /// Advances `state` by one step, using the step index the state is at.
    pub fn apply_step(&self, state: &WalkerState) -> Result<WalkerState, ScheduleError> {
        if state.d() != self.d {
            return Err(ScheduleError::DimensionMismatch {
                state: state.d(),
                schedule: self.d,
            });
        }
        let step = state.step_count() + 1;
        self.check_step(step)?;
        Ok(state.step(&self.coins_at(step))?)
    }

    /// Runs the remaining steps up to `n`.
    pub fn evolve(&self, initial: &WalkerState) -> Result<WalkerState, ScheduleError> {
        let mut state = initial.clone();
        while state.step_count() < self.n {
            state = self.apply_step(&state)?;
        }
        Ok(state)
    }

    /// Like [`evolve`](Self::evolve) but keeps every intermediate state,
    /// starting with `initial`.
    pub fn evolve_traced(&self, initial: &WalkerState) -> Result<Vec<WalkerState>, ScheduleError> {
        let mut trace = vec![initial.clone()];
        while trace.last().map_or(0, |s| s.step_count()) < self.n {
            let next = self.apply_step(trace.last().expect("non-empty"))?;
            trace.push(next);
        }
        Ok(trace)
    }

    /// Fidelity between the evolved state started at `|0>|coin>` and `|p>|coin>`.
    pub fn transfer_fidelity(&self, coin: &[Complex64]) -> Result<f64, ScheduleError> {
        let start = WalkerState::new_localized(self.d, 0, coin)?;
        let target = WalkerState::new_localized(self.d, self.p, coin)?;
        Ok(self.evolve(&start)?.fidelity(&target)?)
    }

    /// Site of basis input `|0>|coin>` after every step; the coin family only
    /// permutes basis states, so a basis input stays a single basis state.
    pub fn basis_path(&self, coin: usize) -> Result<Vec<(i64, usize)>, ScheduleError> {
        let mut path = vec![(0, coin)];
        let mut state = WalkerState::basis(self.d, 0, coin)?;
        while state.step_count() < self.n {
            state = self.apply_step(&state)?;
            let (x, c, _) = state.iter().next().expect("basis state has one entry");
            path.push((x, c));
        }
        Ok(path)
    }
}

/// On-disk form: `{d, n, p, entries: [{step, x, op}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub d: usize,
    pub n: u32,
    pub p: i64,
    pub entries: Vec<ScheduleEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<CompileNote>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub step: u32,
    pub x: i64,
    pub op: CoinOp,
}

impl From<Schedule> for ScheduleFile {
    fn from(s: Schedule) -> Self {
        ScheduleFile {
            d: s.d,
            n: s.n,
            p: s.p,
            entries: s
                .entries
                .iter()
                .map(|(&(step, x), &op)| ScheduleEntry { step, x, op })
                .collect(),
            notes: s.notes,
        }
    }
}

impl TryFrom<ScheduleFile> for Schedule {
    type Error = ScheduleError;

    fn try_from(f: ScheduleFile) -> Result<Self, Self::Error> {
        let mut s = Schedule::new(f.d, f.n, f.p)?;
        for e in f.entries {
            s.set(e.step, e.x, e.op)?;
        }
        s.notes = f.notes;
        Ok(s)
    }
}

fn infeasible(d: usize, n: u32, p: i64, bound: String) -> ScheduleError {
    ScheduleError::Infeasible { d, n, p, bound }
}

/// Dispatches to [`compile_qubit`] for `d = 2` and [`compile_qudit`] otherwise.
pub fn compile(d: usize, n: u32, p: i64) -> Result<Schedule, ScheduleError> {
    match d {
        2 => compile_qubit(n, p),
        _ => compile_qudit(d, n, p),
    }
}

/// Smallest `n` for which [`compile`] accepts `(d, p)`.
pub fn min_steps(d: usize, p: i64) -> Result<u32, ScheduleError> {
    if d < 2 {
        return Err(ScheduleError::Dimension { d, need: "d >= 2" });
    }
    let a = p.unsigned_abs() as u32;
    if d == 2 {
        // |p| <= n - 2 with n = p (mod 2).
        return Ok(a + 2);
    }
    if p == 0 {
        return Err(ScheduleError::UnsupportedTarget);
    }
    Ok(a + d as u32 - 1)
}

/// Schedule for a qudit (`d >= 3`): requires `n >= |p| + d - 1`.
pub fn compile_qudit(d: usize, n: u32, p: i64) -> Result<Schedule, ScheduleError> {
    if d < 3 {
        return Err(ScheduleError::Dimension { d, need: "d >= 3" });
    }
    let sc = SignCombinators::new(d, n, p)?;
    let n_i = i64::from(n);
    let a = p.abs();
    if n_i < a + d as i64 - 1 {
        return Err(infeasible(
            d,
            n,
            p,
            format!("n >= |p| + d - 1 = {}", a + d as i64 - 1),
        ));
    }
    let mut s = Schedule::new(d, n, p)?;

    // Middle flows: leave the origin one per step, re-parked on arrival at p.
    s.place(1, 0, CoinOp::swap(0, d - 1))?;
    for j in 2..d {
        s.place_at(j as i64, 0, CoinOp::increment(sc.k()))?;
        s.place_at(a + j as i64, p, CoinOp::swap(sc.d_target(), sc.f(j)))?;
    }

    // Extreme flows.
    match (sc.b_plus(), sc.b_minus()) {
        (Some(bp), Some(bm)) => {
            s.place_at(bp + 1, bp, CoinOp::increment(1))?;
            s.place_at(bm + 1, -bm, CoinOp::increment(d - 1))?;
        }
        _ => {
            let (a1, a2) = (sc.a1, sc.a2);
            s.place_at(a1.abs() + 2, a1 + 1, CoinOp::increment(2))?;
            s.place_at(n_i - a2.abs(), a1 + 1, CoinOp::increment(d - 1))?;
            s.place_at(a2.abs() + 2, a2 - 1, CoinOp::increment(1))?;
            s.place_at(n_i - a1.abs(), a2 - 1, CoinOp::increment(d - 2))?;
        }
    }
    Ok(s)
}

/// Schedule for a qutrit written with `X` and `X^2` only; transfer-equivalent
/// to `compile_qudit(3, n, p)`.
pub fn compile_qutrit(n: u32, p: i64) -> Result<Schedule, ScheduleError> {
    let sc = SignCombinators::new(3, n, p)?;
    let n_i = i64::from(n);
    if n_i - 2 < p.abs() {
        return Err(infeasible(3, n, p, format!("n - 2 >= |p| = {}", p.abs())));
    }
    let (a1, a2) = (sc.a1, sc.a2);
    let x = CoinOp::increment(1);
    let x2 = CoinOp::increment(2);
    let mut s = Schedule::new(3, n, p)?;

    s.place(1, 0, CoinOp::swap(0, 2))?;
    s.place_at(a2.abs() + 2, a2, x)?;
    s.place_at(a1.abs() + 2, a1, x2)?;

    match (sc.b_plus(), sc.b_minus()) {
        (Some(bp), Some(bm)) => {
            s.place_at(bp + 1, bp, x)?;
            s.place_at(bm + 1, -bm, x2)?;
        }
        _ => {
            s.place_at(a1.abs() + 2, a1 + 1, x2)?;
            s.place_at(n_i - a2.abs(), a1 + 1, x2)?;
            s.place_at(a2.abs() + 2, a2 - 1, x)?;
            s.place_at(n_i - a1.abs(), a2 - 1, x)?;
        }
    }
    Ok(s)
}

/// Qubit schedule (`d = 2`): sigma_x at `(1, 0)`, `(b- + 1, -b-)` and
/// `(b+ + 1, b+)`.
///
/// Requires `n = p (mod 2)` and `|p| <= n`. At `|p| = n` the placements
/// collide and overrun the last step; the result is returned flagged and does
/// not transfer (no schedule can: both extreme flows would need to move
/// toward `p` on every step). `p = 0` is accepted since only `b+-` enter.
pub fn compile_qubit(n: u32, p: i64) -> Result<Schedule, ScheduleError> {
    let n_i = i64::from(n);
    if (n_i - p).rem_euclid(2) != 0 {
        return Err(infeasible(2, n, p, "n = p (mod 2)".to_string()));
    }
    if p.abs() > n_i {
        return Err(infeasible(2, n, p, "|p| <= n".to_string()));
    }
    let (bp, bm) = ((n_i + p) / 2, (n_i - p) / 2);
    let sx = CoinOp::swap(0, 1);
    let mut s = Schedule::new(2, n, p)?;
    s.place(1, 0, sx)?;
    s.place_at(bm + 1, -bm, sx)?;
    s.place_at(bp + 1, bp, sx)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn specials(s: &Schedule) -> Vec<(u32, i64, CoinOp)> {
        s.entries().collect()
    }

    #[test]
    fn combinators_follow_sign() {
        let sc = SignCombinators::new(4, 5, 2).unwrap();
        assert_eq!((sc.a1, sc.a2), (2, 0));
        assert_eq!(sc.k(), 1);
        assert_eq!(sc.d_target(), 3);
        assert_eq!((sc.f(2), sc.f(3)), (2, 1));
        assert_eq!(sc.b_plus(), None);

        let sc = SignCombinators::new(4, 6, -2).unwrap();
        assert_eq!((sc.a1, sc.a2), (0, -2));
        assert_eq!(sc.k(), 3);
        assert_eq!(sc.d_target(), 0);
        assert_eq!((sc.f(2), sc.f(3)), (1, 2));
        assert_eq!(sc.b_plus(), Some(2));
        assert_eq!(sc.b_minus(), Some(4));

        assert_eq!(
            SignCombinators::new(3, 4, 0),
            Err(ScheduleError::UnsupportedTarget)
        );
    }

    #[test]
    fn four_step_qutrit_placements() {
        let s = compile_qudit(3, 4, 2).unwrap();
        assert_eq!(
            specials(&s),
            vec![
                (1, 0, CoinOp::swap(0, 2)),
                (2, -1, CoinOp::increment(2)),
                (2, 0, CoinOp::increment(1)),
                (4, 2, CoinOp::swap(2, 1)),
                (4, 3, CoinOp::increment(1)),
            ]
        );
        assert_eq!(s.special_count(), 5);
        assert!(!s.is_flagged());
    }

    #[test]
    fn five_step_qutrit_placements() {
        let s = compile_qudit(3, 5, 2).unwrap();
        assert_eq!(s.special_count(), 7);
        assert_eq!(s.get(4, 3), CoinOp::increment(2));
        assert_eq!(s.get(5, 3), CoinOp::increment(2));
        assert_eq!(s.get(2, -1), CoinOp::increment(1));
        assert_eq!(s.get(3, -1), CoinOp::increment(1));
    }

    #[test]
    fn four_level_five_step_placements() {
        let s = compile_qudit(4, 5, 2).unwrap();
        assert_eq!(s.get(1, 0), CoinOp::swap(0, 3));
        assert_eq!(s.get(2, 0), CoinOp::increment(1));
        assert_eq!(s.get(3, 0), CoinOp::increment(1));
        assert_eq!(s.get(4, 2), CoinOp::swap(3, 2));
        assert_eq!(s.get(5, 2), CoinOp::swap(3, 1));
        assert_eq!(s.special_count(), 9);
        assert!(!s.is_flagged());
    }

    #[test]
    fn qutrit_and_qudit_share_cells() {
        for (n, p) in [(4, 2), (5, 2), (6, -2), (7, 3), (5, -1)] {
            let a = compile_qutrit(n, p).unwrap();
            let b = compile_qudit(3, n, p).unwrap();
            let cells = |s: &Schedule| s.entries().map(|(t, x, _)| (t, x)).collect::<Vec<_>>();
            assert_eq!(cells(&a), cells(&b), "n = {n}, p = {p}");
        }
    }

    #[test]
    fn infeasible_inputs() {
        let err = compile_qudit(3, 3, 2).unwrap_err();
        assert!(err.to_string().contains("n >= |p| + d - 1"), "{err}");
        assert_eq!(
            compile_qudit(3, 5, 0),
            Err(ScheduleError::UnsupportedTarget)
        );
        assert!(matches!(
            compile_qudit(2, 5, 1),
            Err(ScheduleError::Dimension { .. })
        ));
        assert!(matches!(
            compile_qutrit(3, 2),
            Err(ScheduleError::Infeasible { .. })
        ));
        assert!(matches!(
            compile_qubit(3, 2),
            Err(ScheduleError::Infeasible { .. })
        ));
        assert!(matches!(
            compile_qubit(2, 4),
            Err(ScheduleError::Infeasible { .. })
        ));
    }

    #[test]
    fn qubit_placements() {
        let s = compile_qubit(4, 2).unwrap();
        let sx = CoinOp::swap(0, 1);
        assert_eq!(specials(&s), vec![(1, 0, sx), (2, -1, sx), (4, 3, sx)]);
    }

    #[test]
    fn qubit_full_distance_is_flagged() {
        let s = compile_qubit(2, 2).unwrap();
        assert!(s.is_flagged());
        assert_eq!(s.special_count(), 0);
        assert!(s
            .notes()
            .iter()
            .any(|n| matches!(n, CompileNote::OutOfRange { step: 3, .. })));
        assert!(s.notes().iter().any(|n| matches!(
            n,
            CompileNote::Merged {
                result: CoinOp::Identity,
                ..
            }
        )));
    }

    #[test]
    fn conflicting_placement_is_reported() {
        let mut s = Schedule::new(4, 3, 1).unwrap();
        s.place(2, 0, CoinOp::increment(1)).unwrap();
        let err = s.place(2, 0, CoinOp::swap(0, 1)).unwrap_err();
        assert!(matches!(err, ScheduleError::Conflict { step: 2, x: 0, .. }));
    }

    #[test]
    fn coincident_placements_compose() {
        let mut s = Schedule::new(4, 3, 1).unwrap();
        s.place(2, 0, CoinOp::increment(1)).unwrap();
        s.place(2, 0, CoinOp::increment(2)).unwrap();
        assert_eq!(s.get(2, 0), CoinOp::increment(3));
        assert_eq!(s.special_count(), 1);
        assert!(s.is_flagged());
    }

    #[test]
    fn json_file_format() {
        let s = compile_qudit(3, 4, 2).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with(
            r#"{"d":3,"n":4,"p":2,"entries":[{"step":1,"x":0,"op":{"op":"swap","i":0,"j":2}}"#
        ));
        assert!(!json.contains("notes"));
        let back: Schedule = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_rejects_bad_entries() {
        let bad = r#"{"d":3,"n":4,"p":2,"entries":[{"step":5,"x":0,"op":{"op":"I"}}]}"#;
        assert!(serde_json::from_str::<Schedule>(bad).is_err());
        let bad = r#"{"d":3,"n":4,"p":2,"entries":[{"step":1,"x":0,"op":{"op":"Xk","k":3}}]}"#;
        assert!(serde_json::from_str::<Schedule>(bad).is_err());
    }

    #[test]
    fn step_counter_guards_misuse() {
        let s = compile_qudit(3, 4, 2).unwrap();
        let done = s.evolve(&WalkerState::basis(3, 0, 1).unwrap()).unwrap();
        assert_eq!(done.step_count(), 4);
        assert!(matches!(
            s.apply_step(&done),
            Err(ScheduleError::StepOutOfRange { step: 5, n: 4 })
        ));
        assert!(matches!(
            s.apply_step(&WalkerState::basis(4, 0, 1).unwrap()),
            Err(ScheduleError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn min_steps_values() {
        assert_eq!(min_steps(3, 2).unwrap(), 4);
        assert_eq!(min_steps(5, -3).unwrap(), 7);
        assert_eq!(min_steps(2, 3).unwrap(), 5);
        assert!(min_steps(3, 0).is_err());
    }
}
