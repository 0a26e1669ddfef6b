//! Self-check suites run by `cqregion check`.

use std::fmt;

use cqregion::channel::{
    degradability_residual, depolarizing, dephasing_qubit, erasure, generalized_dephasing, identity_channel,
    random_channel, trine, DegradabilityConfig, DegradabilityMethod, GeneralizedDephasingSpec, KrausChannel,
};
use cqregion::infoquant::{
    avg_coherent_information, convex_join, holevo_information, info_breakdown, lemma2_margin, probability_entropy,
    ContinuityDim, Ensemble,
};
use cqregion::qcore::{self, random_density, random_pure, DensityOperator, SystemLayout};
use cqregion::region::{
    analytic_quantum_rate_at, cardinality_experiment, compare_time_sharing, f_lambda, negative_r_map, sweep_curve,
    OptimizerConfig, PointKind, RatePoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Core,
    Concavity,
    Lemma2,
    Additivity,
    Cardinality,
    DephasingOracle,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Concavity => "concavity",
            Suite::Lemma2 => "lemma2",
            Suite::Additivity => "additivity",
            Suite::Cardinality => "cardinality",
            Suite::DephasingOracle => "dephasing-oracle",
        }
    }

    pub fn run(&self, seed: u64) -> SuiteReport {
        match self {
            Suite::Core => core(seed),
            Suite::Concavity => concavity(seed, 200),
            Suite::Lemma2 => lemma2(seed, 1000),
            Suite::Additivity => additivity(seed),
            Suite::Cardinality => cardinality(seed),
            Suite::DephasingOracle => dephasing_oracle(seed),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.label, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Informational lines that are not assertions.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self { name, checks: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { label: label.into(), passed, detail: detail.into() });
    }

    /// Records `|actual − expected| ≤ tol`.
    fn close(&mut self, label: impl Into<String>, actual: f64, expected: f64, tol: f64) {
        let err = (actual - expected).abs();
        self.check(label, err <= tol, format!("got {actual:.10}, expected {expected:.10}, |err| {err:.3e} (tol {tol:e})"));
    }

    fn error(&mut self, label: impl Into<String>, e: impl fmt::Display) {
        self.check(label, false, format!("error: {e}"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    /// Checks whose label starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.label.starts_with(prefix))
    }

    pub fn summary(&self) -> String {
        format!(
            "suite {}: {}/{} checks passed",
            self.name,
            self.checks.len() - self.failures(),
            self.checks.len()
        )
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cqregion::optim::stream_seed(seed, &[0xC4EC, stream]))
}

fn ket(d: usize, i: usize) -> DensityOperator {
    DensityOperator::pure(&qcore::basis_ket(d, i)).expect("basis kets are normalised")
}

fn point_from(ch: &KrausChannel, e: Ensemble) -> cqregion::Result<RatePoint> {
    let b = info_breakdown(&e, ch)?;
    Ok(RatePoint {
        kind: PointKind::Lambda { lambda: 1.0 },
        classical: b.holevo,
        quantum: b.avg_coherent,
        objective: b.holevo + b.avg_coherent,
        ensemble: Some(e),
        stats: None,
    })
}

fn random_ensemble<R: Rng>(d: usize, rng: &mut R) -> Ensemble {
    let n = rng.gen_range(1..=4);
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let entries = weights
        .into_iter()
        .map(|w| {
            let rho = if rng.gen_bool(0.3) { random_pure(d, rng) } else { random_density(d, rng) };
            (w / total, rho)
        })
        .collect();
    Ensemble::new(entries).expect("weights are normalised")
}

fn random_pool_channel<R: Rng>(rng: &mut R) -> KrausChannel {
    match rng.gen_range(0..6) {
        0 => dephasing_qubit(rng.gen_range(0.0..0.5)).unwrap(),
        1 => depolarizing(rng.gen_range(0.0..0.75), 2).unwrap(),
        2 => erasure(rng.gen_range(0.0..1.0), 2).unwrap(),
        3 => trine().unwrap(),
        4 => generalized_dephasing(&GeneralizedDephasingSpec::uniform_overlap(3, rng.gen_range(0.0..1.0))).unwrap(),
        _ => {
            let din: usize = rng.gen_range(2..=3);
            let dout: usize = rng.gen_range(2..=3);
            let nk = rng.gen_range(1..=3).max(din.div_ceil(dout));
            random_channel(din, dout, nk, rng).unwrap()
        }
    }
}

/// Closed-form and identity checks on the linear-algebra, channel and
/// information layers, plus degradability and the `R < 0` bijection.
pub fn core(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("core");
    let one_minus_h01 = 1.0 - qcore::binary_entropy(0.1).unwrap();

    rep.close("entropy of pi_2", qcore::entropy(&DensityOperator::maximally_mixed(2)).unwrap(), 1.0, 1e-12);
    rep.close("entropy of |0><0|", qcore::entropy(&ket(2, 0)).unwrap(), 0.0, 1e-12);
    rep.close("h2(0.1)", qcore::binary_entropy(0.1).unwrap(), 0.468_995_593_589_281_2, 1e-12);

    let id2 = identity_channel(2).unwrap();
    let deph = dephasing_qubit(0.1).unwrap();
    let pi = DensityOperator::maximally_mixed(2);
    let basis = Ensemble::uniform(vec![ket(2, 0), ket(2, 1)]).unwrap();
    rep.close(
        "I_c(pi, identity)",
        cqregion::infoquant::coherent_information(&pi, &id2).unwrap(),
        1.0,
        1e-12,
    );
    rep.close(
        "I_c(pi, dephasing 0.1)",
        cqregion::infoquant::coherent_information(&pi, &deph).unwrap(),
        one_minus_h01,
        1e-12,
    );
    rep.close("Holevo of basis through identity", holevo_information(&basis, &id2).unwrap(), 1.0, 1e-12);
    let trine_basis = Ensemble::uniform((0..3).map(|i| ket(3, i)).collect()).unwrap();
    rep.close("Holevo of basis through trine", holevo_information(&trine_basis, &trine().unwrap()).unwrap(), 1.0, 1e-12);

    // degradability: dephasing channels through T = N^c, the identity trivially
    let cfg = DegradabilityConfig { seed, ..Default::default() };
    for q in [0.05, 0.1, 0.2, 0.35] {
        let r = degradability_residual(&dephasing_qubit(q).unwrap(), &cfg);
        rep.check(
            format!("degradability dephasing_qubit({q})"),
            r.residual < 1e-8 && r.method == DegradabilityMethod::DephasingIdentity,
            format!("residual {:.3e} via {:?}", r.residual, r.method),
        );
    }
    let g = generalized_dephasing(&GeneralizedDephasingSpec::uniform_overlap(3, 0.4)).unwrap();
    let r = degradability_residual(&g, &cfg);
    rep.check("degradability generalized_dephasing(3, 0.4)", r.residual < 1e-8, format!("residual {:.3e}", r.residual));
    let r = degradability_residual(&id2, &cfg);
    rep.check("degradability identity(2)", r.certified && r.residual < 1e-8, format!("residual {:.3e}", r.residual));

    // R < 0 continuation
    let bell_point = point_from(&id2, Ensemble::single(pi.clone())).unwrap();
    match negative_r_map(&bell_point, &id2) {
        Ok(m) => {
            let err = [bell_point.classical, bell_point.quantum - 1.0, m.classical - 2.0, m.quantum + 1.0]
                .iter()
                .fold(0.0_f64, |a, x| a.max(x.abs()));
            rep.check(
                "negative-R map of Bell input",
                err <= 1e-10,
                format!(
                    "({:.10}, {:.10}) -> ({:.10}, {:.10})",
                    bell_point.classical, bell_point.quantum, m.classical, m.quantum
                ),
            );
        }
        Err(e) => rep.error("negative-R map of Bell input", e),
    }
    let mut rng = rng_for(seed, 1);
    let mut worst_sum: f64 = 0.0;
    let mut worst_eq8: f64 = 0.0;
    let mut worst_label = 0.0_f64;
    for _ in 0..100 {
        let ch = random_pool_channel(&mut rng);
        let e = random_ensemble(ch.dim_in(), &mut rng);
        let p = point_from(&ch, e.clone()).unwrap();
        let m = negative_r_map(&p, &ch).unwrap();
        worst_sum = worst_sum.max(((m.classical + m.quantum) - (p.classical + p.quantum)).abs());
        let b = info_breakdown(&e, &ch).unwrap();
        worst_eq8 = worst_eq8.max((b.avg_coherent - b.cond_mutual - b.neg_cond_entropy).abs());
        worst_label = worst_label.max(b.holevo - probability_entropy(&e));
    }
    rep.check("negative-R map preserves r + R", worst_sum <= 1e-10, format!("max |Δ(r + R)| {worst_sum:.3e} over 100 ensembles"));
    rep.check(
        "I(A>BX) - I(A;B|X) = -H(A|X)",
        worst_eq8 <= 1e-10,
        format!("max deviation {worst_eq8:.3e} over 100 ensembles"),
    );
    rep.check("Holevo <= H(p)", worst_label <= 1e-9, format!("max excess {worst_label:.3e}"));
    rep.check(
        "missing ensemble rejected",
        negative_r_map(&RatePoint { ensemble: None, ..bell_point }, &id2).is_err(),
        "negative_r_map without ensemble",
    );
    rep
}

/// Concavity of the region: joining ensembles with a flag never lowers the
/// Holevo information below the mixture and leaves the average coherent
/// information exactly linear.
pub fn concavity(seed: u64, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("concavity");
    let mut rng = rng_for(seed, 2);
    for t in 0..trials {
        let ch = random_pool_channel(&mut rng);
        let d = ch.dim_in();
        let e0 = random_ensemble(d, &mut rng);
        let e1 = random_ensemble(d, &mut rng);
        let lambda: f64 = rng.gen_range(0.0..=1.0);
        let joined = convex_join(&e0, &e1, lambda).unwrap();
        let h = |e: &Ensemble| holevo_information(e, &ch).unwrap();
        let q = |e: &Ensemble| avg_coherent_information(e, &ch).unwrap();
        let slack = h(&joined) - (lambda * h(&e0) + (1.0 - lambda) * h(&e1));
        rep.check(
            format!("triple {t} Holevo concavity"),
            slack >= -1e-9,
            format!("{} lambda={lambda:.4} slack {slack:.3e}", ch.name()),
        );
        let lin = q(&joined) - (lambda * q(&e0) + (1.0 - lambda) * q(&e1));
        rep.check(
            format!("triple {t} coherent linearity"),
            lin.abs() <= 1e-10,
            format!("{} lambda={lambda:.4} deviation {lin:.3e}", ch.name()),
        );
    }
    rep
}

fn random_pair<R: Rng>(dim: usize, kind: usize, rng: &mut R) -> (DensityOperator, DensityOperator) {
    let rho = random_density(dim, rng);
    match kind % 4 {
        0 => (rho, random_density(dim, rng)),
        1 => (random_pure(dim, rng), random_pure(dim, rng)),
        2 => {
            // nearby states probe the small-(1 − F) end of the bound
            let eps: f64 = 10f64.powf(rng.gen_range(-6.0..-1.0));
            let tau = random_density(dim, rng);
            let sigma = DensityOperator::from_psd_unnormalized(&(rho.matrix().scale(1.0 - eps) + tau.matrix().scale(eps)))
                .unwrap();
            (rho, sigma)
        }
        _ => {
            let psi = random_pure(dim, rng);
            let mixed = DensityOperator::from_psd_unnormalized(
                &(psi.matrix().scale(0.5) + DensityOperator::maximally_mixed(dim).matrix().scale(0.5)),
            )
            .unwrap();
            (psi, mixed)
        }
    }
}

/// The continuity bound on coherent information over random state pairs.
pub fn lemma2(seed: u64, pairs: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("lemma2");
    let mut rng = rng_for(seed, 3);
    let mut ref_only_violations = 0usize;
    for (i, (a, b)) in std::iter::repeat([(2usize, 2usize), (2, 3)]).flatten().take(pairs).enumerate() {
        let layout = SystemLayout::bipartite(a, b).unwrap();
        let (rho, sigma) = random_pair(a * b, i / 2, &mut rng);
        let margin = lemma2_margin(&rho, &sigma, &layout, ContinuityDim::Joint).unwrap();
        rep.check(format!("pair {i} ({a}x{b})"), margin >= 0.0, format!("margin {margin:.6}"));
        if lemma2_margin(&rho, &sigma, &layout, ContinuityDim::ReferenceOnly).unwrap() < 0.0 {
            ref_only_violations += 1;
        }
    }
    let min = rep
        .checks
        .iter()
        .filter_map(|c| c.detail.strip_prefix("margin ").and_then(|m| m.parse::<f64>().ok()))
        .fold(f64::INFINITY, f64::min);
    rep.notes.push(format!("minimum margin with d = dim(AB): {min:.6}"));
    rep.notes.push(format!("pairs violating the bound with d = dim(A): {ref_only_violations}"));
    rep
}

/// `f_λ(N₁⊗N₂) = f_λ(N₁) + f_λ(N₂)` for two qubit dephasing channels.
pub fn additivity(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("additivity");
    let config = OptimizerConfig { seed, ..Default::default() };
    let (q1, q2) = (0.1, 0.2);
    let n1 = dephasing_qubit(q1).unwrap();
    let n2 = dephasing_qubit(q2).unwrap();
    let joint = n1.tensor(&n2).unwrap();
    for lambda in [1.0, 2.0, 4.0] {
        let label = format!("f_{lambda} dephasing({q1}) x dephasing({q2})");
        match (f_lambda(&n1, lambda, &config), f_lambda(&n2, lambda, &config), f_lambda(&joint, lambda, &config)) {
            (Ok(a), Ok(b), Ok(ab)) => rep.close(label, ab.value, a.value + b.value, 5e-3),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rep.error(label, e),
        }
    }
    rep
}

/// Doubling the ensemble size beyond `d² + 2` does not raise the optimum.
pub fn cardinality(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("cardinality");
    let config = OptimizerConfig { seed, ..Default::default() };
    let channels = [
        ("dephasing_qubit(0.1)", dephasing_qubit(0.1).unwrap()),
        ("depolarizing(0.03)", depolarizing(0.03, 2).unwrap()),
    ];
    for (name, ch) in &channels {
        for lambda in [1.0, 2.0] {
            let label = format!("{name} lambda={lambda}");
            match cardinality_experiment(ch, lambda, &config) {
                Ok(r) => rep.check(
                    label,
                    r.gap.abs() <= 1e-3,
                    format!(
                        "|X|={}: {:.8}, |X|={}: {:.8}, gap {:.3e}",
                        r.base_cardinality, r.base_objective, r.doubled_cardinality, r.doubled_objective, r.gap
                    ),
                ),
                Err(e) => rep.error(label, e),
            }
        }
    }
    rep
}

/// Numerical sweeps of qubit dephasing channels against the closed-form curve.
pub fn dephasing_oracle(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("dephasing-oracle");
    let config = OptimizerConfig { seed, ..Default::default() };
    for q in [0.05, 0.1, 0.2] {
        let ch = dephasing_qubit(q).unwrap();
        let curve = match sweep_curve(&ch, &config) {
            Ok(c) => c,
            Err(e) => {
                rep.error(format!("oracle q={q}"), e);
                continue;
            }
        };
        let mut worst: f64 = 0.0;
        let mut worst_outer: f64 = f64::NEG_INFINITY;
        let mut negative_r = false;
        for p in &curve.points {
            negative_r |= p.classical < 0.0;
            worst_outer = worst_outer.max(p.classical + p.quantum - 1.0);
            let r = p.classical.clamp(0.0, 1.0);
            worst = worst.max((analytic_quantum_rate_at(q, r).unwrap() - p.quantum).abs());
        }
        rep.check(
            format!("oracle q={q} matched points"),
            worst <= 1e-3,
            format!("{} points, max |R - R_closed(r)| {worst:.3e}", curve.points.len()),
        );
        let rows = compare_time_sharing(&curve, 101).unwrap();
        let hull_err = rows
            .iter()
            .map(|row| (analytic_quantum_rate_at(q, row.r.min(1.0)).unwrap() - row.r_opt).abs())
            .fold(0.0, f64::max);
        rep.check(
            format!("oracle q={q} interpolated curve"),
            hull_err <= 1e-3,
            format!("max |R_opt(r) - R_closed(r)| {hull_err:.3e} on 101 r values"),
        );
        rep.check(
            format!("oracle q={q} rate bounds"),
            !negative_r && worst_outer <= 1e-6,
            format!("min r >= 0: {}, max r + R - C {worst_outer:.3e}", !negative_r),
        );
        if q == 0.1 {
            let max = rows.iter().map(|r| r.delta).fold(f64::NEG_INFINITY, f64::max);
            let min = rows.iter().map(|r| r.delta).fold(f64::INFINITY, f64::min);
            rep.check(
                "strict concavity q=0.1 max delta",
                max >= 1e-3,
                format!("max (R_opt - R_timeshare) {max:.6e}"),
            );
            rep.check(
                "strict concavity q=0.1 min delta",
                min >= -1e-6,
                format!("min (R_opt - R_timeshare) {min:.3e}"),
            );
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_suite_passes() {
        let rep = core(0);
        for c in &rep.checks {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn small_property_sweeps_pass() {
        assert!(concavity(5, 20).passed());
        assert!(lemma2(5, 40).passed());
    }

    #[test]
    fn report_helpers() {
        let mut rep = SuiteReport::new("x");
        rep.close("a", 1.0, 1.0 + 1e-4, 1e-3);
        rep.close("b", 1.0, 2.0, 1e-3);
        assert_eq!(rep.failures(), 1);
        assert!(!rep.passed());
        assert_eq!(rep.matching("a").count(), 1);
        assert_eq!(rep.summary(), "suite x: 1/2 checks passed");
        assert!(rep.checks[1].to_string().starts_with("FAIL b:"));
    }
}
