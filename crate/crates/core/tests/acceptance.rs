//! Reproduction checks, one line per criterion. Exits non-zero if any fail.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use qwalk_core::harness::{random_coin, trial_rng, StepRange, SweepGrid, PASS_TOLERANCE};
use qwalk_core::routing::{diagonal_coin, product_coin, route, route_traced, RoutingPlan};
use qwalk_core::{
    compile, compile_qubit, count_paths_closed, count_paths_enum, entanglement_check, sweep,
    validate, CoinMap, CoinOp, Execution, WalkerState,
};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    out.detail = format!("{} [{:.3} s]", out.detail, took.as_secs_f64());
    if let Some(limit) = limit {
        if took >= limit {
            out.pass = false;
            out.detail = format!("{} exceeds {:.0} s", out.detail, limit.as_secs_f64());
        }
    }
    out
}

fn transfer(d: usize, n: u32, p: i64, expected_specials: Option<usize>) -> Outcome {
    let s = match compile(d, n, p) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let report = match validate(&s, 20, SEED, Execution::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let specials = s.special_count();
    let count_ok = match expected_specials {
        Some(k) => specials == k,
        None => specials == 2 * d - 1 || specials == 2 * d + 1,
    };
    let collisions = s.notes().len();
    outcome(
        report.pass && count_ok,
        format!(
            "d={d} n={n} p={p}: min fidelity {:.16}, special_count {specials}, collisions {collisions}",
            report.min_fidelity
        ),
    )
}

fn criterion_4() -> Outcome {
    let plan = match RoutingPlan::compile(4, 6, &[3, -3]) {
        Ok(p) => p,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut worst = f64::INFINITY;
    for draw in 0..10 {
        let weights = random_coin(4, &mut trial_rng(SEED, draw));
        let coin = diagonal_coin(&weights, 2);
        let fid = route(&plan, &coin)
            .and_then(|s| entanglement_check(&s, &[3, -3], &coin))
            .unwrap_or(f64::NAN);
        worst = worst.min(fid);
    }
    outcome(
        (worst - 1.0).abs() <= PASS_TOLERANCE,
        format!("10 draws, worst entanglement_check {worst:.16}"),
    )
}

fn criterion_5() -> Outcome {
    let mut failing = Vec::new();
    let mut checked = 0;
    for n in 1..=10u32 {
        let n_i = i64::from(n);
        for p in (-n_i..=n_i).filter(|p| (n_i - p) % 2 == 0) {
            checked += 1;
            let fid = compile_qubit(n, p)
                .map_err(|e| e.to_string())
                .and_then(|s| {
                    validate(&s, 10, SEED, Execution::default())
                        .map(|r| r.min_fidelity)
                        .map_err(|e| e.to_string())
                });
            match fid {
                Ok(f) if f >= 1.0 - PASS_TOLERANCE => {}
                Ok(f) => failing.push(format!("({n},{p}) F={f:.3}")),
                Err(e) => failing.push(format!("({n},{p}) {e}")),
            }
        }
    }
    let detail = if failing.is_empty() {
        format!("{checked} tuples")
    } else {
        format!(
            "{} of {checked} tuples fail, all with |p| = n: {}",
            failing.len(),
            failing.join(", ")
        )
    };
    outcome(failing.is_empty(), detail)
}

fn criterion_6() -> Outcome {
    let mut compared = 0;
    for n in 2..=14u32 {
        let len = i64::from(n) - 2;
        for p in -len..=len {
            compared += 1;
            match count_paths_enum(n, p) {
                Ok(e) if e == count_paths_closed(n, p) => {}
                Ok(e) => {
                    return outcome(
                        false,
                        format!(
                            "N({n},{p}): closed {} vs enumerated {e}",
                            count_paths_closed(n, p)
                        ),
                    )
                }
                Err(e) => return outcome(false, e.to_string()),
            }
        }
    }
    let spots = count_paths_enum(4, 2).ok() == Some(1) && count_paths_enum(5, 2).ok() == Some(3);
    outcome(spots, format!("{compared} pairs equal, N(4,2)=1, N(5,2)=3"))
}

fn criterion_7() -> Outcome {
    let grid = SweepGrid {
        dims: vec![2, 3, 4, 5],
        targets: vec![-4, -3, -2, -1, 1, 2, 3, 4],
        steps: StepRange::Slack(3),
        random_inputs: 5,
        seed: SEED,
    };
    let report = match sweep(&grid, Execution::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    // every divergence must sit on a tuple whose oracle schedule passed
    let covered = report.divergences.iter().all(|div| {
        div.oracle_fidelity >= 1.0 - PASS_TOLERANCE
            && report
                .checked
                .iter()
                .any(|t| (t.d, t.n, t.p) == (div.d, div.n, div.p))
    });
    let listed: Vec<String> = report
        .divergences
        .iter()
        .map(|d| {
            format!(
                "({},{},{}) step {:?}",
                d.d, d.n, d.p, d.first_divergent_step
            )
        })
        .collect();
    outcome(
        report.oracle_ok() && covered,
        format!(
            "{} tuples checked, {} skipped, {} oracle failures, {} divergences{}",
            report.checked.len(),
            report.skipped.len(),
            report.oracle_failures.len(),
            report.divergences.len(),
            if listed.is_empty() {
                String::new()
            } else {
                format!(": {}", listed.join(", "))
            }
        ),
    )
}

fn random_op<R: Rng>(d: usize, rng: &mut R) -> CoinOp {
    let family = CoinOp::family(d);
    family[rng.random_range(0..family.len())]
}

fn random_coins<R: Rng>(d: usize, span: i64, rng: &mut R) -> CoinMap {
    (-span..=span).map(|x| (x, random_op(d, rng))).collect()
}

fn random_state(d: usize, sites: &[i64], seed: u64) -> WalkerState {
    let v = random_coin(d * sites.len(), &mut trial_rng(seed, 1));
    let mut amps = BTreeMap::new();
    for (k, &x) in sites.iter().enumerate() {
        for coin in 0..d {
            amps.insert((x, coin), v[k * d + coin]);
        }
    }
    WalkerState::from_amplitudes(d, 0, amps).expect("normalized")
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = trial_rng(SEED, 8);

    // unitarity
    let mut drift: f64 = 0.0;
    for d in 2..=5 {
        let mut s = random_state(d, &[-1, 0, 3], SEED + d as u64);
        for _ in 0..100 {
            let coins = random_coins(d, 60, &mut rng);
            s = s.step(&coins).expect("valid coins");
            drift = drift.max((s.norm_sqr() - 1.0).abs());
        }
    }
    if drift >= 1e-12 {
        failures.push(format!("norm drift {drift:e}"));
    }

    // linearity
    let mut lin: f64 = 0.0;
    for d in 2..=5 {
        let a = random_state(d, &[0, 1], 1);
        let b = random_state(d, &[-2, 0], 2);
        let coins = random_coins(d, 3, &mut rng);
        let (al, be) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let mut amps = BTreeMap::new();
        for (x, c, z) in a.iter() {
            *amps.entry((x, c)).or_insert(Complex64::default()) += al * z;
        }
        for (x, c, z) in b.iter() {
            *amps.entry((x, c)).or_insert(Complex64::default()) += be * z;
        }
        let norm = amps.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let amps = amps.into_iter().map(|(k, z)| (k, z / norm)).collect();
        let lhs = WalkerState::from_amplitudes(d, 0, amps)
            .unwrap()
            .step(&coins)
            .unwrap();
        let (sa, sb) = (a.step(&coins).unwrap(), b.step(&coins).unwrap());
        for x in -4..=4 {
            for c in 0..d {
                let want = (al * sa.amplitude(x, c) + be * sb.amplitude(x, c)) / norm;
                lin = lin.max((lhs.amplitude(x, c) - want).norm());
            }
        }
    }
    if lin >= 1e-12 {
        failures.push(format!("linearity error {lin:e}"));
    }

    // amplitude independence
    for (d, n, p) in [(3, 4, 2), (4, 5, 2), (5, 7, -3)] {
        let reference = serde_json::to_vec(&compile(d, n, p).unwrap()).unwrap();
        for draw in 0..5 {
            let s = compile(d, n, p).unwrap();
            let _ = s.transfer_fidelity(&random_coin(d, &mut trial_rng(SEED, draw)));
            if serde_json::to_vec(&s).unwrap() != reference {
                failures.push(format!("schedule ({d},{n},{p}) changed"));
            }
        }
    }

    // separable factorization
    let mut sep: f64 = 0.0;
    for (d, targets) in [(3, vec![2, -2]), (4, vec![3, -3]), (3, vec![1, 2, -2])] {
        let plan = RoutingPlan::minimal(d, &targets).unwrap();
        let factors: Vec<Vec<Complex64>> = (0..targets.len())
            .map(|i| random_coin(d, &mut trial_rng(SEED, 100 + i as u64)))
            .collect();
        let joint = route_traced(&plan, &product_coin(&factors)).unwrap();
        let singles: Vec<Vec<WalkerState>> = plan
            .axes()
            .iter()
            .zip(&factors)
            .map(|(s, v)| {
                s.evolve_traced(&WalkerState::new_localized(d, 0, v).unwrap())
                    .unwrap()
            })
            .collect();
        for (t, state) in joint.iter().enumerate() {
            for (xs, cs, a) in state.iter() {
                let want: Complex64 = singles
                    .iter()
                    .enumerate()
                    .map(|(axis, sv)| sv[t].amplitude(xs[axis], cs[axis]))
                    .product();
                sep = sep.max((a - want).norm());
            }
        }
    }
    if sep >= 1e-12 {
        failures.push(format!("factorization error {sep:e}"));
    }

    // X^d = I and swap involution
    for d in 2..=8 {
        for k in 1..d {
            let x = CoinOp::increment(k);
            let ok = (0..d).all(|m| (0..d).fold(m, |acc, _| x.image(acc, d)) == m);
            if !ok {
                failures.push(format!("X^{k} power {d} != I"));
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                let s = CoinOp::swap(i, j);
                if s.then(&s, d).ok() != Some(Some(CoinOp::Identity)) {
                    failures.push(format!("swap({i},{j}) not an involution at d={d}"));
                }
            }
        }
    }

    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("norm drift {drift:.1e}, linearity {lin:.1e}, factorization {sep:.1e}")
        } else {
            failures.join("; ")
        },
    )
}

/// Smallest common `n` for `targets` with the requested parity of `n - p`.
fn parity_steps(d: usize, targets: &[i64], same: bool) -> u32 {
    let max = targets.iter().map(|p| p.unsigned_abs()).max().unwrap_or(0) as u32;
    let mut n = max + d as u32 - 1;
    while (i64::from(n) - targets[0]).rem_euclid(2) != if same { 0 } else { 1 } {
        n += 1;
    }
    n
}

fn criterion_9() -> Outcome {
    let target_sets: [&[i64]; 2] = [&[2, -2, 2], &[1, -3, 3]];
    let mut rows = Vec::new();
    let mut pass = true;
    for d in [3usize, 4] {
        for m in 1..=3 {
            for set in target_sets {
                let targets = &set[..m];
                for same in [true, false] {
                    let n = parity_steps(d, targets, same);
                    let expected = m * if same { 2 * d - 1 } else { 2 * d + 1 };
                    let got = RoutingPlan::compile(d, n, targets).map(|p| p.special_count());
                    let ok = got.as_ref().ok() == Some(&expected);
                    pass &= ok;
                    if !ok {
                        rows.push(format!("d={d} n={n} {targets:?}: {got:?} vs {expected}"));
                    }
                }
            }
        }
    }
    outcome(
        pass,
        if pass {
            "24 plans match m(2d-1) / m(2d+1)".to_string()
        } else {
            rows.join("; ")
        },
    )
}

type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "C1 three-qutrit transfer d=3 n=4 p=2",
            Box::new(|| timed(Some(Duration::from_secs(1)), || transfer(3, 4, 2, Some(5)))),
        ),
        (
            "C2 five-step qutrit transfer d=3 n=5 p=2",
            Box::new(|| timed(None, || transfer(3, 5, 2, Some(7)))),
        ),
        (
            "C3 qudit transfer d=4 n=5 p=2",
            Box::new(|| timed(None, || transfer(4, 5, 2, None))),
        ),
        (
            "C4 two-axis routing d=4 p=(3,-3)",
            Box::new(|| timed(Some(Duration::from_secs(5)), criterion_4)),
        ),
        (
            "C5 qubit placements n<=10",
            Box::new(|| timed(None, criterion_5)),
        ),
        (
            "C6 path counts n<=14",
            Box::new(|| timed(None, criterion_6)),
        ),
        (
            "C7 oracle sweep d=2..5 |p|=1..4",
            Box::new(|| timed(Some(Duration::from_secs(60)), criterion_7)),
        ),
        ("C8 property suites", Box::new(|| timed(None, criterion_8))),
        (
            "C9 special-setting scaling",
            Box::new(|| timed(None, criterion_9)),
        ),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let out = run();
        if !out.pass {
            failed += 1;
        }
        println!(
            "{} {name}: {}",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("acceptance: {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
