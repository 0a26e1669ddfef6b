//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Two criteria cannot be met by any correct implementation (see the oracle
//! functions below); they are evaluated as stated and reported as FAIL, and
//! the test instead requires the measured values to agree with the oracles.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use cqregion::channel::{depolarizing, trine};
use cqregion::region::{compare_time_sharing, holevo_capacity, q1_capacity, sweep_curve, OptimizerConfig};
use cqregion_cli::suites;

const SEED: u64 = 2024;

struct Outcome {
    id: u32,
    passed: bool,
    detail: String,
}

fn report(o: &Outcome) {
    let line = format!(
        "criterion {:>2}: {} {}\n",
        o.id,
        if o.passed { "PASS" } else { "FAIL" },
        o.detail
    );
    // bypass the harness's output capture so the lines always show up
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}

fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

fn entropy(ps: &[f64]) -> f64 {
    ps.iter().filter(|&&p| p > 1e-15).map(|p| -p * p.log2()).sum()
}

fn eig2(a: f64, off: f64, c: f64) -> [f64; 2] {
    let m = 0.5 * (a + c);
    let d = (0.25 * (a - c).powi(2) + off * off).sqrt();
    [m + d, m - d]
}

/// Qubit depolarizing channel `(1−p)ρ + (p/3)(XρX + YρY + ZρZ)` fed the
/// equiprobable inputs `(I ± a Z)/2`. Returns `(r, R)`; the environment state
/// splits into two 2×2 blocks, so no general eigensolver is needed.
fn depolarizing_family(p: f64, a: f64) -> (f64, f64) {
    let c = 1.0 - 4.0 * p / 3.0;
    let (w0, w) = (1.0 - p, p / 3.0);
    let hb = h2(0.5 * (1.0 + c * a));
    let [e0, e1] = eig2(w0, a * (w0 * w).sqrt(), w);
    let [e2, e3] = eig2(w, a * w, w);
    let he = entropy(&[e0, e1, e2, e3]);
    (1.0 - hb, hb - he)
}

/// Largest gap between the upper hull of the family and the time-sharing chord.
fn depolarizing_excess_oracle(p: f64) -> f64 {
    let mut pts: Vec<(f64, f64)> = (0..=20000).map(|i| depolarizing_family(p, i as f64 / 20000.0)).collect();
    let (c, q) = (pts[20000].0, pts[0].1);
    pts.sort_by(|x, y| x.0.total_cmp(&y.0).then(y.1.total_cmp(&x.1)));
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.iter().map(|&(r, big_r)| big_r - q * (1.0 - r / c)).fold(0.0, f64::max)
}

/// `Q⁽¹⁾ = 1 − h₂(p) − p log₂ 3` for the qubit depolarizing channel.
fn depolarizing_q1_oracle(p: f64) -> f64 {
    (1.0 - h2(p) - p * 3f64.log2()).max(0.0)
}

fn suite_outcome(id: u32, rep: &suites::SuiteReport, prefix: &str, extra: &str) -> Outcome {
    let checks: Vec<_> = rep.matching(prefix).collect();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
    let detail = if failed.is_empty() {
        format!("{} checks passed{extra}", checks.len())
    } else {
        format!("{} of {} checks failed: {}{extra}", failed.len(), checks.len(), failed.join("; "))
    };
    Outcome { id, passed: !checks.is_empty() && failed.is_empty(), detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn curve_body(channel: &str, threads: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ch.json");
    std::fs::write(&cfg, channel).unwrap();
    let out = dir.path().join("curve.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_cqregion"))
        .args(["curve", "--channel", cfg.to_str().unwrap(), "--seed", "7", "--restarts", "6"])
        .args(["--lambda-grid", "1,1.5,2,4", "--refine-rounds", "2", "--out", out.to_str().unwrap()])
        .env("CQREGION_THREADS", threads)
        .status()
        .unwrap();
    assert!(status.success());
    cqregion_cli::output::csv_body(&std::fs::read_to_string(out).unwrap())
}

#[test]
fn acceptance_criteria() {
    let config = OptimizerConfig { seed: SEED, ..Default::default() };
    let mut outcomes = Vec::new();
    let mut push = |o: Outcome| {
        report(&o);
        outcomes.push(o);
    };

    // 1 and 2: numerical dephasing curves against the closed form
    let (oracle, t1) = timed(|| suites::dephasing_oracle(SEED));
    let mut o1 = suite_outcome(1, &oracle, "oracle", &format!(", {:.0}s", t1.as_secs_f64()));
    if t1 >= Duration::from_secs(300) {
        o1.passed = false;
        o1.detail.push_str(" (over the 5 minute budget)");
    }
    push(o1);
    push(suite_outcome(2, &oracle, "strict concavity", ""));

    // 3: depolarizing zero crossing
    let q1 = q1_capacity(&depolarizing(0.189, 2).unwrap(), &config).unwrap().quantum;
    let q1_oracle = depolarizing_q1_oracle(0.189);
    push(Outcome {
        id: 3,
        passed: q1.abs() <= 1e-3,
        detail: format!("Q1(depolarizing 0.189) = {q1:.6e} (closed form {q1_oracle:.6e}; zero lies at p = 0.18929)"),
    });

    // 4: time-sharing crossover
    let excess = |p: f64| {
        let curve = sweep_curve(&depolarizing(p, 2).unwrap(), &config).unwrap();
        compare_time_sharing(&curve, 201).unwrap().iter().map(|r| r.delta).fold(f64::NEG_INFINITY, f64::max)
    };
    let (e03, e06) = (excess(0.03), excess(0.06));
    let oracle03 = depolarizing_excess_oracle(0.03);
    push(Outcome {
        id: 4,
        passed: e03 >= 1e-3 && e06 <= 1e-3,
        detail: format!(
            "max excess p=0.03: {e03:.4e} (needs >= 1e-3; oracle {oracle03:.4e}), p=0.06: {e06:.3e} (needs <= 1e-3)"
        ),
    });

    // 5: trine
    let t = trine().unwrap();
    let c1 = holevo_capacity(&t, &config).unwrap().classical;
    let tq1 = q1_capacity(&t, &config).unwrap().quantum;
    push(Outcome {
        id: 5,
        passed: (c1 - 1.0).abs() <= 1e-3 && tq1.abs() <= 1e-4,
        detail: format!("C1 = {c1:.6}, Q1 = {tq1:.3e}"),
    });

    // 6 and 7: property sweeps
    let l2 = suites::lemma2(SEED, 1000);
    push(suite_outcome(6, &l2, "pair", &format!(", {}", l2.notes.join(", "))));
    let conc = suites::concavity(SEED, 200);
    push(suite_outcome(7, &conc, "triple", ""));

    // 8: f_λ additivity
    let (add, t8) = timed(|| suites::additivity(SEED));
    let mut o8 = suite_outcome(8, &add, "f_", &format!(", {:.0}s", t8.as_secs_f64()));
    if t8 >= Duration::from_secs(600) {
        o8.passed = false;
        o8.detail.push_str(" (over the 10 minute budget)");
    }
    push(o8);

    // 9: cardinality
    push(suite_outcome(9, &suites::cardinality(SEED), "", ""));

    // 10 and 11: degradability and the R < 0 continuation
    let core = suites::core(SEED);
    push(suite_outcome(10, &core, "degradability", ""));
    push(suite_outcome(11, &core, "negative-R", ""));

    // 12: determinism across runs and thread counts
    let channel = r#"{"kind": "depolarizing", "param": 0.05}"#;
    let a = curve_body(channel, "1");
    let b = curve_body(channel, "1");
    let c = curve_body(channel, "3");
    push(Outcome {
        id: 12,
        passed: a == b && a == c && a.lines().count() > 2,
        detail: format!("{} CSV rows; identical across two runs and 1 vs 3 threads: {}", a.lines().count() - 1, a == b && a == c),
    });

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let _ = std::io::stderr()
        .lock()
        .write_all(format!("acceptance: {} of 12 criteria passed; failing: {failed:?}\n", 12 - failed.len()).as_bytes());

    // criteria 3 and 4 fail by construction; hold the measurements to the oracles instead
    assert!((q1 - q1_oracle).abs() <= 1e-6, "Q1 {q1} departs from closed form {q1_oracle}");
    assert!(
        e03 <= oracle03 + 1e-5 && e03 >= oracle03 - 5e-5,
        "p=0.03 excess {e03} departs from oracle {oracle03}"
    );
    assert_eq!(failed, vec![3, 4], "unexpected acceptance outcome");
}
