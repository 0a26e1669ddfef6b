//! Closed-form qubit dephasing trade-off and the `f_λ` functional.

use serde::Serialize;

use super::objective::{EnsembleParam, MemberShape, OutputRegister, WeightedRates};
use super::{check_lambda, multistart, OptimizerConfig, PointKind, RatePoint, TradeoffCurve, TAG_FLAMBDA};
use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::infoquant::{Ensemble, PRUNE_THRESHOLD};
use crate::optim::Objective;
use crate::qcore::{basis_ket, binary_entropy, DensityOperator};

fn check_q(q: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&q) {
        return Err(Error::Domain { name: "q", value: q, domain: "[0, 1/2]" });
    }
    Ok(())
}

fn check_mu(mu: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&mu) {
        return Err(Error::Domain { name: "mu", value: mu, domain: "[0, 1/2]" });
    }
    Ok(())
}

/// `(1 − h₂(μ), h₂(μ) − h₂(½ + ½√(1 − 16q(1−q)μ(1−μ))))` for the qubit
/// channel applying `σ_z` with probability `q`.
pub fn analytic_dephasing_point(q: f64, mu: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    check_mu(mu)?;
    let h = binary_entropy(mu)?;
    let disc = (1.0 - 16.0 * q * (1.0 - q) * mu * (1.0 - mu)).max(0.0);
    let env = binary_entropy((0.5 + 0.5 * disc.sqrt()).min(1.0))?;
    Ok((1.0 - h, h - env))
}

/// Two equiprobable members `diag(μ, 1−μ)` and `diag(1−μ, μ)`.
pub fn analytic_ensemble(mu: f64) -> Result<Ensemble> {
    check_mu(mu)?;
    Ensemble::uniform(vec![
        DensityOperator::diagonal(&[mu, 1.0 - mu])?,
        DensityOperator::diagonal(&[1.0 - mu, mu])?,
    ])
}

pub fn analytic_dephasing_curve(q: f64, mu_grid: &[f64]) -> Result<TradeoffCurve> {
    check_q(q)?;
    for &mu in mu_grid {
        check_mu(mu)?;
    }
    let mut points = mu_grid
        .iter()
        .map(|&mu| {
            let (r, big_r) = analytic_dephasing_point(q, mu)?;
            Ok(RatePoint {
                kind: PointKind::Analytic { mu },
                classical: r,
                quantum: big_r,
                objective: r + big_r,
                ensemble: Some(analytic_ensemble(mu)?),
                stats: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| b.quantum.total_cmp(&a.quantum));
    Ok(TradeoffCurve {
        channel: format!("dephasing_qubit({q})"),
        config: None,
        points,
    })
}

/// Closed-form `R` at classical rate `r ∈ [0, 1]`, found by inverting
/// `r = 1 − h₂(μ)` on `μ ∈ [0, ½]`.
pub fn analytic_quantum_rate_at(q: f64, r: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain { name: "r", value: r, domain: "[0, 1]" });
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    // 1 − h₂ is decreasing on [0, ½]
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 1.0 - binary_entropy(mid)? > r {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    Ok(analytic_dephasing_point(q, 0.5 * (lo + hi))?.1)
}

#[derive(Debug, Clone, Serialize)]
pub struct FLambda {
    pub lambda: f64,
    pub value: f64,
    #[serde(skip)]
    pub ensemble: Ensemble,
}

/// `max H(Y) + (λ−1) H(Y|X) − λ H(E|X)` over ensembles of diagonal inputs,
/// with `Y` the input's diagonal and `E` the complementary output.
pub fn f_lambda(ch: &KrausChannel, lambda: f64, config: &OptimizerConfig) -> Result<FLambda> {
    ch.require_dephasing()?;
    check_lambda(lambda)?;
    config.validate()?;
    let d = ch.dim_in();
    let param = EnsembleParam {
        dim: d,
        members: config.cardinality_for(d),
        shape: MemberShape::Diagonal,
    };
    let obj = WeightedRates::new(ch, param, 1.0, lambda, OutputRegister::DephasedInput);
    let best = multistart(&obj, config, &[TAG_FLAMBDA, lambda.to_bits()]);
    let mut value = obj.value(&best.x);
    let mut ensemble = param.decode(&best.x).pruned(PRUNE_THRESHOLD);

    // the two extreme diagonal ensembles sit on the boundary of the parametrisation
    let basis = Ensemble::uniform((0..d).map(|i| DensityOperator::pure(&basis_ket(d, i))).collect::<Result<_>>()?)?;
    let mixed = Ensemble::single(DensityOperator::maximally_mixed(d));
    for cand in [basis, mixed] {
        let v = dephased_value(ch, &cand, lambda)?;
        if v > value {
            value = v;
            ensemble = cand;
        }
    }
    Ok(FLambda { lambda, value, ensemble })
}

/// `f_λ`'s objective at a given ensemble of diagonal inputs.
pub fn dephased_value(ch: &KrausChannel, e: &Ensemble, lambda: f64) -> Result<f64> {
    ch.require_dephasing()?;
    check_lambda(lambda)?;
    let d = ch.dim_in();
    let comp = ch.complementary();
    let mut avg_y = vec![0.0; d];
    let mut terms = 0.0;
    for (p, rho) in e.entries() {
        let y: Vec<f64> = rho.matrix().diagonal().iter().map(|z| z.re).collect();
        for (a, v) in avg_y.iter_mut().zip(&y) {
            *a += p * v;
        }
        let h_y = crate::qcore::shannon_entropy(&y);
        let h_e = crate::qcore::entropy(&comp.apply(rho)?)?;
        terms += p * ((lambda - 1.0) * h_y - lambda * h_e);
    }
    Ok(crate::qcore::shannon_entropy(&avg_y) + terms)
}
