use cqregion::channel::{depolarizing, dephasing_qubit, identity_channel, trine};
use cqregion::region::{
    analytic_dephasing_point, holevo_capacity, optimize_lambda, q1_capacity, sweep_curve, sweep_tensor_power,
    OptimizerConfig, PointKind,
};

fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

fn quick() -> OptimizerConfig {
    OptimizerConfig { restarts: 4, max_iters: 800, ..Default::default() }
}

#[test]
fn depolarizing_endpoints_match_closed_forms() {
    for p in [0.02, 0.1, 0.25] {
        let ch = depolarizing(p, 2).unwrap();
        let c1 = holevo_capacity(&ch, &quick()).unwrap().classical;
        let q1 = q1_capacity(&ch, &quick()).unwrap().quantum;
        let c_expected = 1.0 - h2(2.0 * p / 3.0);
        let q_expected = (1.0 - h2(p) - p * 3f64.log2()).max(0.0);
        assert!((c1 - c_expected).abs() < 1e-5, "p={p}: C1 {c1} vs {c_expected}");
        assert!((q1 - q_expected).abs() < 1e-5, "p={p}: Q1 {q1} vs {q_expected}");
    }
}

#[test]
fn trine_has_unit_classical_and_no_quantum_capacity() {
    let ch = trine().unwrap();
    assert!((holevo_capacity(&ch, &quick()).unwrap().classical - 1.0).abs() < 1e-3);
    assert!(q1_capacity(&ch, &quick()).unwrap().quantum.abs() < 1e-4);
}

#[test]
fn identity_curve_lies_on_the_unit_segment() {
    let config = OptimizerConfig { lambda_grid: vec![1.0, 1.5, 3.0], ..quick() };
    let curve = sweep_curve(&identity_channel(2).unwrap(), &config).unwrap();
    for p in &curve.points {
        assert!((p.classical + p.quantum - 1.0).abs() < 1e-4, "{p:?}");
    }
    assert!(curve.points.iter().any(|p| p.classical > 1.0 - 1e-6));
    assert!(curve.points.iter().any(|p| p.quantum > 1.0 - 1e-6));
}

#[test]
fn envelope_is_monotone_in_lambda() {
    let config = OptimizerConfig { lambda_grid: vec![1.0, 1.5, 2.0, 3.0, 9.0], refine_rounds: 2, ..quick() };
    let curve = sweep_curve(&dephasing_qubit(0.15).unwrap(), &config).unwrap();
    let mut lam: Vec<(f64, f64, f64)> = curve
        .points
        .iter()
        .filter_map(|p| p.kind.lambda().map(|l| (l, p.classical, p.quantum)))
        .collect();
    lam.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in lam.windows(2) {
        assert!(w[1].2 >= w[0].2 - 1e-9 && w[1].1 <= w[0].1 + 1e-9, "{w:?}");
    }
    for p in &curve.points {
        assert!(p.classical >= 0.0);
        assert!(p.classical + p.quantum <= 1.0 + 1e-6);
    }
}

#[test]
fn refined_sweep_tracks_closed_form() {
    let q = 0.1;
    let config = OptimizerConfig { restarts: 6, lambda_grid: vec![1.0, 2.0], refine_rounds: 2, ..Default::default() };
    let curve = sweep_curve(&dephasing_qubit(q).unwrap(), &config).unwrap();
    assert!(curve.points.len() >= 4, "{}", curve.points.len());
    for p in &curve.points {
        // invert r = 1 − h2(μ) on [0, 1/2] by bisection, independently of the library helper
        let (mut lo, mut hi) = (0.0, 0.5);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if 1.0 - h2(mid) > p.classical.clamp(0.0, 1.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mu: f64 = 0.5 * (lo + hi);
        let disc = 1.0 - 16.0 * q * (1.0 - q) * mu * (1.0 - mu);
        let expected = h2(mu) - h2(0.5 + 0.5 * disc.max(0.0).sqrt());
        assert!((p.quantum - expected).abs() < 1e-3, "{p:?} vs {expected}");
        let (r_lib, q_lib) = analytic_dephasing_point(q, mu).unwrap();
        assert!((r_lib - (1.0 - h2(mu))).abs() < 1e-12 && (q_lib - expected).abs() < 1e-12);
    }
}

#[test]
fn lambda_points_report_weighted_objective() {
    let ch = depolarizing(0.05, 2).unwrap();
    let p = optimize_lambda(&ch, 2.5, &quick()).unwrap();
    assert_eq!(p.kind, PointKind::Lambda { lambda: 2.5 });
    assert!((p.objective - (p.classical + 2.5 * p.quantum)).abs() < 1e-12);
    assert!(p.cardinality() <= 6);
}

#[test]
fn two_use_dephasing_sweep_is_not_better_per_use() {
    let config = OptimizerConfig {
        restarts: 2,
        cardinality: Some(3),
        lambda_grid: vec![2.0],
        refine_rounds: 0,
        max_iters: 400,
        ..Default::default()
    };
    let q = 0.1;
    let curve = sweep_tensor_power(&dephasing_qubit(q).unwrap(), 2, &config).unwrap();
    let single_q1 = 1.0 - h2(q);
    for p in &curve.points {
        assert!(p.classical + p.quantum <= 1.0 + 1e-6, "{p:?}");
        assert!(p.quantum <= single_q1 + 1e-6, "{p:?}");
    }
    assert!(curve.points.iter().any(|p| (p.quantum - single_q1).abs() < 1e-3));
}
