//! The single-letter (classical, quantum) rate region and its trade-off curve.
//!
//! Boundary points are found by maximising `I(X;B) + λ I(A⟩BX)` over finite
//! input ensembles for a grid of slopes `λ ≥ 1`, together with the two
//! endpoints `(C⁽¹⁾, 0)` and `(0, Q⁽¹⁾)`. The region is closed under lowering
//! either rate, so envelopes only keep non-dominated points.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::infoquant::{self, info_breakdown, Ensemble, PRUNE_THRESHOLD};
use crate::optim::{self, AscentSettings, Objective};
use crate::qcore::{basis_ket, DensityOperator};

pub mod dephasing;
mod objective;

pub use dephasing::{
    analytic_dephasing_curve, analytic_dephasing_point, analytic_ensemble, analytic_quantum_rate_at, dephased_value,
    f_lambda, FLambda,
};

use objective::{EnsembleParam, MemberShape, OutputRegister, WeightedRates};

pub const DEFAULT_LAMBDA_GRID: [f64; 11] = [1.0, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 9.0, 17.0, 33.0, 65.0];

/// Equal-`R` tolerance used when building envelopes.
pub const TIE_TOL: f64 = 1e-9;

/// Largest input dimension accepted for tensor-power sweeps.
pub const MAX_SWEEP_DIM: usize = 4;

// stream tags keep every optimisation task on its own random stream
const TAG_LAMBDA: u64 = 1;
const TAG_HOLEVO: u64 = 2;
const TAG_Q1: u64 = 3;
pub(crate) const TAG_FLAMBDA: u64 = 4;
const TAG_CARD_DOUBLED: u64 = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iters: usize,
    /// Ensemble size; `None` means `dim_in² + 2`.
    pub cardinality: Option<usize>,
    pub fd_step: f64,
    pub lambda_grid: Vec<f64>,
    /// Standard deviation of the perturbation applied before each restart's second pass (0 disables it).
    pub jitter: f64,
    /// Rounds of slope refinement between adjacent envelope points (0 disables it).
    pub refine_rounds: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 0,
            tol: 1e-6,
            max_iters: 2000,
            cardinality: None,
            fd_step: 1e-5,
            lambda_grid: DEFAULT_LAMBDA_GRID.to_vec(),
            jitter: 0.1,
            refine_rounds: 4,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Validation("restarts must be at least 1".into()));
        }
        if self.cardinality == Some(0) {
            return Err(Error::Validation("cardinality must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Validation(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.fd_step > 0.0) {
            return Err(Error::Validation(format!("fd_step must be positive, got {}", self.fd_step)));
        }
        if !(self.jitter >= 0.0) {
            return Err(Error::Validation(format!("jitter must be nonnegative, got {}", self.jitter)));
        }
        check_grid(&self.lambda_grid)
    }

    pub fn cardinality_for(&self, dim_in: usize) -> usize {
        self.cardinality.unwrap_or(dim_in * dim_in + 2)
    }

    fn settings(&self) -> AscentSettings {
        AscentSettings {
            max_iters: self.max_iters,
            tol: self.tol,
            fd_step: self.fd_step,
            stall_window: 25,
        }
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::Domain {
            name: "lambda",
            value: lambda,
            domain: "[1, ∞)",
        });
    }
    Ok(())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    for &l in grid {
        check_lambda(l)?;
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Validation("lambda grid must be sorted ascending".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PointKind {
    Lambda { lambda: f64 },
    HolevoEndpoint,
    QuantumEndpoint,
    Analytic { mu: f64 },
    /// Image of a point under the `R ≥ 0 → R ≤ 0` bijection.
    EntanglementAssisted,
}

impl PointKind {
    pub fn lambda(&self) -> Option<f64> {
        match self {
            PointKind::Lambda { lambda } => Some(*lambda),
            _ => None,
        }
    }

    /// CSV label for the `lambda` column.
    pub fn label(&self) -> String {
        match self {
            PointKind::Lambda { lambda } => format_sig(*lambda),
            PointKind::HolevoEndpoint => "holevo-endpoint".into(),
            PointKind::QuantumEndpoint => "q1-endpoint".into(),
            PointKind::Analytic { .. } => "analytic".into(),
            PointKind::EntanglementAssisted => "ea-continuation".into(),
        }
    }
}

/// Diagnostics of the multistart search behind a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchStats {
    pub restarts: usize,
    pub converged_restarts: usize,
    pub best_restart: usize,
    pub best_iters: usize,
}

/// A `(r, R)` pair with its achieving ensemble.
///
/// `objective` is `r + λR` for λ-tagged points and `r + R` otherwise.
#[derive(Debug, Clone)]
pub struct RatePoint {
    pub kind: PointKind,
    pub classical: f64,
    pub quantum: f64,
    pub objective: f64,
    pub ensemble: Option<Ensemble>,
    pub stats: Option<SearchStats>,
}

impl RatePoint {
    fn from_ensemble(kind: PointKind, ch: &KrausChannel, ensemble: Ensemble, stats: Option<SearchStats>) -> Result<Self> {
        let b = info_breakdown(&ensemble, ch)?;
        let weight = kind.lambda().unwrap_or(1.0);
        Ok(Self {
            kind,
            classical: b.holevo,
            quantum: b.avg_coherent,
            objective: b.holevo + weight * b.avg_coherent,
            ensemble: Some(ensemble),
            stats,
        })
    }

    pub fn cardinality(&self) -> usize {
        self.ensemble.as_ref().map_or(0, Ensemble::len)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "r": self.classical,
            "R": self.quantum,
            "objective": self.objective,
            "stats": self.stats,
            "ensemble": self.ensemble.as_ref().map(ensemble_to_json),
        })
    }
}

pub fn ensemble_to_json(e: &Ensemble) -> Value {
    Value::Array(
        e.entries()
            .iter()
            .map(|(p, rho)| {
                let m = rho.matrix();
                let rows: Vec<Value> = (0..m.nrows())
                    .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
                    .collect();
                json!({ "p": p, "rho": rows })
            })
            .collect(),
    )
}

/// Ten significant digits, locale independent.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.9e}", x);
    // normalise "-0.000000000e0" style and strip trailing zeros in the mantissa
    let (mant, exp) = s.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        let trimmed = if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        };
        if trimmed == "-0" { "0".into() } else { trimmed }
    } else {
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{exp}")
    }
}

#[derive(Debug, Clone)]
pub struct TradeoffCurve {
    pub channel: String,
    /// `None` for closed-form curves.
    pub config: Option<OptimizerConfig>,
    /// Ordered by decreasing `R`.
    pub points: Vec<RatePoint>,
}

impl TradeoffCurve {
    pub fn max_classical(&self) -> f64 {
        self.points.iter().map(|p| p.classical).fold(0.0, f64::max)
    }

    pub fn max_quantum(&self) -> f64 {
        self.points.iter().map(|p| p.quantum).fold(0.0, f64::max)
    }
}

/// `I(X;B) + λ I(A⟩BX)`.
pub fn lagrangian(e: &Ensemble, ch: &KrausChannel, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let b = info_breakdown(e, ch)?;
    Ok(b.holevo + lambda * b.avg_coherent)
}

pub(crate) struct Best {
    pub x: Vec<f64>,
    pub stats: SearchStats,
}

pub(crate) fn multistart(obj: &WeightedRates, config: &OptimizerConfig, tags: &[u64]) -> Best {
    let settings = config.settings();
    let runs: Vec<optim::AscentResult> = (0..config.restarts)
        .into_par_iter()
        .map(|k| {
            let mut all_tags = tags.to_vec();
            all_tags.push(k as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(optim::stream_seed(config.seed, &all_tags));
            let x0 = optim::gaussian_vec(obj.dim(), 1.0, &mut rng);
            let first = optim::ascend(obj, x0, &settings);
            if config.jitter == 0.0 {
                return first;
            }
            let kick = optim::gaussian_vec(obj.dim(), config.jitter, &mut rng);
            let x1 = first.x.iter().zip(&kick).map(|(a, b)| a + b).collect();
            let second = optim::ascend(obj, x1, &settings);
            if second.value > first.value {
                optim::AscentResult { iters: first.iters + second.iters, ..second }
            } else {
                first
            }
        })
        .collect();
    let best = optim::argmax_stable(runs.iter().map(|r| r.value)).expect("at least one restart");
    let stats = SearchStats {
        restarts: runs.len(),
        converged_restarts: runs.iter().filter(|r| r.converged).count(),
        best_restart: best,
        best_iters: runs[best].iters,
    };
    Best {
        x: runs[best].x.clone(),
        stats,
    }
}

/// Maximises `I(X;B) + λ I(A⟩BX)` over ensembles of the configured cardinality.
pub fn optimize_lambda(ch: &KrausChannel, lambda: f64, config: &OptimizerConfig) -> Result<RatePoint> {
    check_lambda(lambda)?;
    config.validate()?;
    optimize_lambda_tagged(ch, lambda, config, config.cardinality_for(ch.dim_in()), &[TAG_LAMBDA, lambda.to_bits()])
}

fn optimize_lambda_tagged(
    ch: &KrausChannel,
    lambda: f64,
    config: &OptimizerConfig,
    members: usize,
    tags: &[u64],
) -> Result<RatePoint> {
    let param = EnsembleParam {
        dim: ch.dim_in(),
        members,
        shape: MemberShape::Full,
    };
    let obj = WeightedRates::new(ch, param, 1.0, lambda, OutputRegister::Channel);
    let best = multistart(&obj, config, tags);
    let ensemble = param.decode(&best.x).pruned(PRUNE_THRESHOLD);
    RatePoint::from_ensemble(PointKind::Lambda { lambda }, ch, ensemble, Some(best.stats))
}

/// `(C⁽¹⁾, 0)`: maximal Holevo information over pure-state ensembles.
pub fn holevo_capacity(ch: &KrausChannel, config: &OptimizerConfig) -> Result<RatePoint> {
    config.validate()?;
    let d = ch.dim_in();
    let param = EnsembleParam {
        dim: d,
        members: config.cardinality_for(d),
        shape: MemberShape::Pure,
    };
    let obj = WeightedRates::new(ch, param, 1.0, 0.0, OutputRegister::Channel);
    let best = multistart(&obj, config, &[TAG_HOLEVO]);
    let found = RatePoint::from_ensemble(
        PointKind::HolevoEndpoint,
        ch,
        param.decode(&best.x).pruned(PRUNE_THRESHOLD),
        Some(best.stats),
    )?;
    let basis = Ensemble::uniform((0..d).map(|i| DensityOperator::pure(&basis_ket(d, i))).collect::<Result<_>>()?)?;
    let candidate = RatePoint::from_ensemble(PointKind::HolevoEndpoint, ch, basis, None)?;
    Ok(if candidate.classical > found.classical { candidate } else { found })
}

/// `(0, Q⁽¹⁾)`: maximal coherent information over single input states.
pub fn q1_capacity(ch: &KrausChannel, config: &OptimizerConfig) -> Result<RatePoint> {
    config.validate()?;
    let d = ch.dim_in();
    let param = EnsembleParam {
        dim: d,
        members: 1,
        shape: MemberShape::Full,
    };
    let obj = WeightedRates::new(ch, param, 0.0, 1.0, OutputRegister::Channel);
    let best = multistart(&obj, config, &[TAG_Q1]);
    let mut point = RatePoint::from_ensemble(PointKind::QuantumEndpoint, ch, param.decode(&best.x), Some(best.stats))?;
    // pure inputs give exactly zero, the maximally mixed input is the usual symmetric optimum
    let candidates = [DensityOperator::pure(&basis_ket(d, 0))?, DensityOperator::maximally_mixed(d)];
    for rho in candidates {
        let c = RatePoint::from_ensemble(PointKind::QuantumEndpoint, ch, Ensemble::single(rho), None)?;
        if c.quantum > point.quantum {
            point = c;
        }
    }
    Ok(point)
}

/// Sorts by decreasing `R` and drops dominated points.
pub fn envelope(mut points: Vec<RatePoint>) -> Vec<RatePoint> {
    points.sort_by(|a, b| {
        if (a.quantum - b.quantum).abs() <= TIE_TOL {
            b.classical.total_cmp(&a.classical)
        } else {
            b.quantum.total_cmp(&a.quantum)
        }
    });
    let mut kept: Vec<RatePoint> = Vec::with_capacity(points.len());
    for p in points {
        let dominated = kept.iter().any(|k| {
            k.classical >= p.classical && (k.quantum >= p.quantum || (k.quantum - p.quantum).abs() <= TIE_TOL)
        });
        if !dominated {
            kept.push(p);
        }
    }
    kept
}

/// Adjacent envelope points closer than this in `r` are not refined further.
pub const REFINE_MIN_GAP: f64 = 1e-3;

/// Slopes `λ = Δr / ΔR` of the chords between adjacent envelope points that
/// are far enough apart and have not been tried yet.
fn chord_slopes(env: &[RatePoint], tried: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for w in env.windows(2) {
        let dr = w[1].classical - w[0].classical;
        let dq = w[0].quantum - w[1].quantum;
        if dr < REFINE_MIN_GAP || dq <= TIE_TOL {
            continue;
        }
        let l = dr / dq;
        let seen = |x: &f64| (x - l).abs() <= 1e-9 * l;
        if l >= 1.0 && l.is_finite() && !tried.iter().any(seen) && !out.iter().any(seen) {
            out.push(l);
        }
    }
    out
}

/// Trade-off curve from the configured λ grid plus both endpoints.
///
/// With `refine_rounds > 0` each round re-optimises at the slope of every
/// chord between neighbouring envelope points, which either finds a point
/// above the chord or shows the chord lies on the boundary.
pub fn sweep_curve(ch: &KrausChannel, config: &OptimizerConfig) -> Result<TradeoffCurve> {
    config.validate()?;
    let mut points: Vec<RatePoint> = config
        .lambda_grid
        .par_iter()
        .map(|&l| optimize_lambda(ch, l, config))
        .collect::<Result<_>>()?;
    points.push(holevo_capacity(ch, config)?);
    points.push(q1_capacity(ch, config)?);
    let mut tried = config.lambda_grid.clone();
    for _ in 0..config.refine_rounds {
        let slopes = chord_slopes(&envelope(points.clone()), &tried);
        if slopes.is_empty() {
            break;
        }
        let extra: Vec<RatePoint> = slopes
            .par_iter()
            .map(|&l| optimize_lambda(ch, l, config))
            .collect::<Result<_>>()?;
        tried.extend(slopes);
        points.extend(extra);
    }
    Ok(TradeoffCurve {
        channel: ch.name().to_string(),
        config: Some(config.clone()),
        points: envelope(points),
    })
}

/// Sweep of `N^{⊗l}` with rates divided by `l`.
pub fn sweep_tensor_power(ch: &KrausChannel, l: usize, config: &OptimizerConfig) -> Result<TradeoffCurve> {
    let power = ch.tensor_power(l)?;
    if power.dim_in() > MAX_SWEEP_DIM {
        return Err(Error::ResourceGuard(format!(
            "tensor-power sweep input dimension {} exceeds {MAX_SWEEP_DIM}",
            power.dim_in()
        )));
    }
    let mut curve = sweep_curve(&power, config)?;
    let scale = l as f64;
    for p in &mut curve.points {
        p.classical /= scale;
        p.quantum /= scale;
        p.objective /= scale;
    }
    Ok(curve)
}

/// Time-sharing inner bound and the `r + R ≤ C` outer bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub classical: f64,
    pub quantum: f64,
}

pub fn bounds(classical: f64, quantum: f64) -> Result<Bounds> {
    if !(classical >= 0.0) || !(quantum >= 0.0) {
        return Err(Error::Validation(format!(
            "capacities must be nonnegative, got C = {classical}, Q = {quantum}"
        )));
    }
    Ok(Bounds { classical, quantum })
}

impl Bounds {
    /// `R_ts(r) = Q (1 − r/C)` for `r ∈ [0, C]`.
    pub fn time_sharing(&self, r: f64) -> Result<f64> {
        if self.classical == 0.0 {
            if r > 0.0 {
                return Err(Error::Domain {
                    name: "r",
                    value: r,
                    domain: "{0} when C = 0",
                });
            }
            return Ok(self.quantum);
        }
        if !(0.0..=self.classical).contains(&r) {
            return Err(Error::Domain {
                name: "r",
                value: r,
                domain: "[0, C]",
            });
        }
        Ok(self.quantum * (1.0 - r / self.classical))
    }

    /// Largest `R` allowed by the outer bound at `r`.
    pub fn outer(&self, r: f64) -> f64 {
        self.classical - r
    }

    pub fn within_outer(&self, r: f64, big_r: f64, tol: f64) -> bool {
        r + big_r <= self.classical + tol
    }
}

/// `(r, R) ↦ (r + I(A;B|X), R − I(A;B|X))` for the point's own ensemble.
pub fn negative_r_map(pt: &RatePoint, ch: &KrausChannel) -> Result<RatePoint> {
    let e = pt.ensemble.as_ref().ok_or(Error::MissingEnsemble)?;
    let b = info_breakdown(e, ch)?;
    let r = pt.classical + b.cond_mutual;
    let big_r = pt.quantum - b.cond_mutual;
    Ok(RatePoint {
        kind: PointKind::EntanglementAssisted,
        classical: r,
        quantum: big_r,
        objective: r + big_r,
        ensemble: pt.ensemble.clone(),
        stats: pt.stats,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CardinalityReport {
    pub lambda: f64,
    pub base_cardinality: usize,
    pub doubled_cardinality: usize,
    pub base_objective: f64,
    pub doubled_objective: f64,
    /// `doubled − base`.
    pub gap: f64,
}

/// Compares the optimum at `|X| = d² + 2` against `|X| = 2(d² + 2)`.
pub fn cardinality_experiment(ch: &KrausChannel, lambda: f64, config: &OptimizerConfig) -> Result<CardinalityReport> {
    check_lambda(lambda)?;
    config.validate()?;
    let base = ch.dim_in() * ch.dim_in() + 2;
    let doubled = 2 * base;
    let a = optimize_lambda_tagged(ch, lambda, config, base, &[TAG_LAMBDA, lambda.to_bits()])?;
    let b = optimize_lambda_tagged(ch, lambda, config, doubled, &[TAG_CARD_DOUBLED, lambda.to_bits()])?;
    Ok(CardinalityReport {
        lambda,
        base_cardinality: base,
        doubled_cardinality: doubled,
        base_objective: a.objective,
        doubled_objective: b.objective,
        gap: b.objective - a.objective,
    })
}

/// Outcome of probing for a flat stretch of the curve at `R = Q⁽¹⁾`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatRegionProbe {
    pub q1: f64,
    pub lambda: f64,
    pub classical: f64,
    pub quantum: f64,
    /// Found `R ≥ Q⁽¹⁾ − 1e-4` together with `r > 1e-3`.
    pub flat: bool,
}

pub fn flat_region_probe(ch: &KrausChannel, config: &OptimizerConfig) -> Result<FlatRegionProbe> {
    const STEEP: f64 = 1000.0;
    let q1 = q1_capacity(ch, config)?.quantum;
    let p = optimize_lambda(ch, STEEP, config)?;
    Ok(FlatRegionProbe {
        q1,
        lambda: STEEP,
        classical: p.classical,
        quantum: p.quantum,
        flat: p.quantum >= q1 - 1e-4 && p.classical > 1e-3,
    })
}

/// One row of the optimal-vs-time-sharing comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub r: f64,
    pub r_opt: f64,
    pub r_timeshare: f64,
    pub delta: f64,
}

/// Upper concave hull of `(r, R)` pairs, sorted by `r`.
fn upper_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for p in pts {
        if hull.last().is_some_and(|h| h.0 == p.0) {
            continue;
        }
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn interpolate(hull: &[(f64, f64)], r: f64) -> f64 {
    let i = hull.partition_point(|p| p.0 < r);
    if i == 0 {
        return hull[0].1;
    }
    if i == hull.len() {
        return hull[hull.len() - 1].1;
    }
    let (a, b) = (hull[i - 1], hull[i]);
    a.1 + (b.1 - a.1) * (r - a.0) / (b.0 - a.0)
}

/// Samples the curve (as the concave hull of its points, including the
/// achievable corners `(0, max R)` and `(max r, 0)`) against time-sharing
/// between those corners on `grid_points` evenly spaced values of `r`.
pub fn compare_time_sharing(curve: &TradeoffCurve, grid_points: usize) -> Result<Vec<ComparisonRow>> {
    if grid_points < 2 {
        return Err(Error::Validation("need at least two grid points".into()));
    }
    let c = curve.max_classical();
    let q = curve.max_quantum();
    let tb = bounds(c, q)?;
    let mut pts: Vec<(f64, f64)> = curve
        .points
        .iter()
        .filter(|p| p.classical >= 0.0 && p.quantum >= 0.0)
        .map(|p| (p.classical.min(c), p.quantum))
        .collect();
    pts.push((0.0, q));
    pts.push((c, 0.0));
    let hull = upper_hull(pts);
    (0..grid_points)
        .map(|i| {
            let r = if i + 1 == grid_points { c } else { c * i as f64 / (grid_points - 1) as f64 };
            let r_opt = interpolate(&hull, r);
            let r_ts = tb.time_sharing(r)?;
            Ok(ComparisonRow {
                r,
                r_opt,
                r_timeshare: r_ts,
                delta: r_opt - r_ts,
            })
        })
        .collect()
}

/// The entanglement-assisted pair `(I(A;B), −H(A))` of a single input state.
pub fn ea_pair(rho: &DensityOperator, ch: &KrausChannel) -> Result<(f64, f64)> {
    let b = info_breakdown(&Ensemble::single(rho.clone()), ch)?;
    Ok((b.cond_mutual, b.neg_cond_entropy))
}

/// Holevo information of an ensemble never exceeds the entropy of its labels.
pub fn holevo_label_bound(e: &Ensemble) -> f64 {
    infoquant::probability_entropy(e)
}
