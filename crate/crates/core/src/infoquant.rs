//! Entropic quantities of channel-input ensembles.
//!
//! An ensemble `{p_x, ρ_x}` on the channel input stands for the classical-quantum
//! state `σ^{XAB} = Σ p_x |x⟩⟨x| ⊗ (1 ⊗ N)(φ_x)` where `φ_x` purifies `ρ_x`. All
//! quantities below depend only on the reduced members, so purifications are
//! never materialised: `H(AB|X=x) = H(E|X=x) = H(N^c(ρ_x))` and `H(A|X=x) = H(ρ_x)`.

use serde::Serialize;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::qcore::{self, matrix_entropy, DensityOperator, SystemLayout};

/// Probabilities below this are dropped after joins.
pub const PRUNE_THRESHOLD: f64 = 1e-12;
pub const PROB_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    entries: Vec<(f64, DensityOperator)>,
}

impl Ensemble {
    pub fn new(entries: Vec<(f64, DensityOperator)>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::Validation("empty ensemble".into()))?;
        let d = first.1.dim();
        if let Some((_, bad)) = entries.iter().find(|(_, r)| r.dim() != d) {
            return Err(Error::dim(format!(
                "ensemble members have dimensions {d} and {}",
                bad.dim()
            )));
        }
        if let Some((p, _)) = entries.iter().find(|(p, _)| !(*p >= 0.0)) {
            return Err(Error::Validation(format!("negative probability {p}")));
        }
        let total: f64 = entries.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::Validation(format!("probabilities sum to {total}")));
        }
        Ok(Self { entries })
    }

    pub fn single(rho: DensityOperator) -> Self {
        Self {
            entries: vec![(1.0, rho)],
        }
    }

    /// Equiprobable ensemble.
    pub fn uniform(states: Vec<DensityOperator>) -> Result<Self> {
        let w = 1.0 / states.len().max(1) as f64;
        Self::new(states.into_iter().map(|s| (w, s)).collect())
    }

    pub fn entries(&self) -> &[(f64, DensityOperator)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entries[0].1.dim()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.entries.iter().map(|(p, _)| *p).collect()
    }

    /// `Σ p_x ρ_x`.
    pub fn average(&self) -> DensityOperator {
        let d = self.dim();
        let m = self
            .entries
            .iter()
            .fold(qcore::CMatrix::zeros(d, d), |acc, (p, r)| acc + r.matrix().scale(*p));
        DensityOperator::from_psd_unnormalized(&m).expect("mixture of density operators")
    }

    /// Drops members with probability below `threshold` and renormalises.
    pub fn pruned(&self, threshold: f64) -> Ensemble {
        let kept: Vec<_> = self
            .entries
            .iter()
            .filter(|(p, _)| *p >= threshold)
            .cloned()
            .collect();
        let total: f64 = kept.iter().map(|(p, _)| p).sum();
        Ensemble {
            entries: kept.into_iter().map(|(p, r)| (p / total, r)).collect(),
        }
    }
}

fn check_input(e: &Ensemble, ch: &KrausChannel) -> Result<()> {
    if e.dim() != ch.dim_in() {
        return Err(Error::dim(format!(
            "ensemble dimension {} vs channel input {}",
            e.dim(),
            ch.dim_in()
        )));
    }
    Ok(())
}

/// `I_c(ρ, N) = H(N(ρ)) − H(N^c(ρ))`.
pub fn coherent_information(rho: &DensityOperator, ch: &KrausChannel) -> Result<f64> {
    if rho.dim() != ch.dim_in() {
        return Err(Error::dim(format!(
            "state dimension {} vs channel input {}",
            rho.dim(),
            ch.dim_in()
        )));
    }
    let hb = matrix_entropy(&ch.apply_matrix(rho.matrix()))?;
    let he = matrix_entropy(&ch.complementary().apply_matrix(rho.matrix()))?;
    Ok(hb - he)
}

/// Per-member entropies shared by every ensemble quantity.
struct MemberEntropies {
    p: f64,
    h_in: f64,
    h_out: f64,
    h_env: f64,
}

fn member_entropies(e: &Ensemble, ch: &KrausChannel) -> Result<(Vec<MemberEntropies>, f64)> {
    check_input(e, ch)?;
    let comp = ch.complementary();
    let mut avg_out = qcore::CMatrix::zeros(ch.dim_out(), ch.dim_out());
    let members = e
        .entries()
        .iter()
        .map(|(p, rho)| {
            let out = ch.apply_matrix(rho.matrix());
            let h_out = matrix_entropy(&out)?;
            avg_out += out.scale(*p);
            Ok(MemberEntropies {
                p: *p,
                h_in: matrix_entropy(rho.matrix())?,
                h_out,
                h_env: matrix_entropy(&comp.apply_matrix(rho.matrix()))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((members, matrix_entropy(&avg_out)?))
}

/// `I(X;B) = H(N(ρ̄)) − Σ p_x H(N(ρ_x))`.
pub fn holevo_information(e: &Ensemble, ch: &KrausChannel) -> Result<f64> {
    let (m, h_avg) = member_entropies(e, ch)?;
    Ok(h_avg - m.iter().map(|x| x.p * x.h_out).sum::<f64>())
}

/// `I(A⟩BX) = Σ p_x I_c(ρ_x, N)`.
pub fn avg_coherent_information(e: &Ensemble, ch: &KrausChannel) -> Result<f64> {
    let (m, _) = member_entropies(e, ch)?;
    Ok(m.iter().map(|x| x.p * (x.h_out - x.h_env)).sum())
}

/// `(I(A;B|X), −H(A|X))`.
pub fn cond_mutual_and_neg_entropy(e: &Ensemble, ch: &KrausChannel) -> Result<(f64, f64)> {
    let b = info_breakdown(e, ch)?;
    Ok((b.cond_mutual, b.neg_cond_entropy))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoBreakdown {
    /// `I(X;B)`
    pub holevo: f64,
    /// `I(A⟩BX)`
    pub avg_coherent: f64,
    /// `I(A;B|X)`
    pub cond_mutual: f64,
    /// `−H(A|X)`
    pub neg_cond_entropy: f64,
}

pub fn info_breakdown(e: &Ensemble, ch: &KrausChannel) -> Result<InfoBreakdown> {
    let (m, h_avg) = member_entropies(e, ch)?;
    let sum = |f: &dyn Fn(&MemberEntropies) -> f64| m.iter().map(|x| x.p * f(x)).sum::<f64>();
    Ok(InfoBreakdown {
        holevo: h_avg - sum(&|x| x.h_out),
        avg_coherent: sum(&|x| x.h_out - x.h_env),
        cond_mutual: sum(&|x| x.h_in + x.h_out - x.h_env),
        neg_cond_entropy: -sum(&|x| x.h_in),
    })
}

/// Entropy of the probability vector, an upper bound on the Holevo information.
pub fn probability_entropy(e: &Ensemble) -> f64 {
    qcore::shannon_entropy(&e.probabilities())
}

/// `λ E0 ⊕ (1 − λ) E1`, the flag `U` folded into the classical index.
pub fn convex_join(e0: &Ensemble, e1: &Ensemble, lambda: f64) -> Result<Ensemble> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain {
            name: "lambda",
            value: lambda,
            domain: "[0, 1]",
        });
    }
    if e0.dim() != e1.dim() {
        return Err(Error::dim(format!(
            "joining ensembles of dimension {} and {}",
            e0.dim(),
            e1.dim()
        )));
    }
    let entries = e0
        .entries()
        .iter()
        .map(|(p, r)| (lambda * p, r.clone()))
        .chain(e1.entries().iter().map(|(p, r)| ((1.0 - lambda) * p, r.clone())))
        .collect();
    Ok(Ensemble { entries }.pruned(PRUNE_THRESHOLD))
}

/// Which dimension the continuity bound's `log d` refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContinuityDim {
    /// `d = dim(A)·dim(B)`.
    #[default]
    Joint,
    /// `d = dim(A)`.
    ReferenceOnly,
}

/// `I(A⟩B) = H(B) − H(AB)` of a bipartite state.
pub fn bipartite_coherent_information(rho: &DensityOperator, layout: &SystemLayout) -> Result<f64> {
    if layout.len() != 2 || layout.total() != rho.dim() {
        return Err(Error::dim(format!(
            "layout {:?} does not describe a bipartite {}-dim state",
            layout.dims(),
            rho.dim()
        )));
    }
    let hb = qcore::entropy(&rho.partial_trace(layout, &[1])?)?;
    Ok(hb - qcore::entropy(rho)?)
}

/// `2/e + 4 log d √(1 − F) − |I(A⟩B)_ρ − I(A⟩B)_σ|`; nonnegative when the continuity bound holds.
pub fn lemma2_margin(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    layout: &SystemLayout,
    reading: ContinuityDim,
) -> Result<f64> {
    let ir = bipartite_coherent_information(rho, layout)?;
    let is = bipartite_coherent_information(sigma, layout)?;
    let f = qcore::fidelity(rho, sigma)?;
    let d = match reading {
        ContinuityDim::Joint => layout.total(),
        ContinuityDim::ReferenceOnly => layout.dims()[0],
    } as f64;
    let bound = 2.0 / std::f64::consts::E + 4.0 * d.log2() * (1.0 - f).max(0.0).sqrt();
    Ok(bound - (ir - is).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{completely_dephasing, depolarizing, dephasing_qubit, identity_channel, trine};
    use crate::qcore::{basis_ket, random_density, CVector, c};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // 1 - h2(0.1)
    const ONE_MINUS_H01: f64 = 0.531_004_406_410_718_8;

    fn ket(d: usize, i: usize) -> DensityOperator {
        DensityOperator::pure(&basis_ket(d, i)).unwrap()
    }

    fn pi2() -> DensityOperator {
        DensityOperator::maximally_mixed(2)
    }

    #[test]
    fn coherent_information_examples() {
        assert_abs_diff_eq!(coherent_information(&pi2(), &identity_channel(2).unwrap()).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            coherent_information(&pi2(), &dephasing_qubit(0.1).unwrap()).unwrap(),
            ONE_MINUS_H01,
            epsilon = 1e-12
        );
        // 1 − h₂(p) − p log₂3; the exact zero sits at p ≈ 0.189290
        let z = coherent_information(&pi2(), &depolarizing(0.189, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(z, 0.001_067_243_399_605_5, epsilon = 1e-12);
        assert!(coherent_information(&pi2(), &trine().unwrap()).is_err());
    }

    #[test]
    fn coherent_information_of_identity_is_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for d in 2..5 {
            let rho = random_density(d, &mut rng);
            let ic = coherent_information(&rho, &identity_channel(d).unwrap()).unwrap();
            assert_abs_diff_eq!(ic, qcore::entropy(&rho).unwrap(), epsilon = 1e-10);
        }
    }

    #[test]
    fn holevo_examples() {
        let id = identity_channel(2).unwrap();
        assert_abs_diff_eq!(holevo_information(&Ensemble::single(pi2()), &id).unwrap(), 0.0, epsilon = 1e-12);
        let e = Ensemble::uniform(vec![ket(3, 0), ket(3, 1), ket(3, 2)]).unwrap();
        assert_abs_diff_eq!(holevo_information(&e, &trine().unwrap()).unwrap(), 1.0, epsilon = 1e-12);
        let e = Ensemble::uniform(vec![ket(2, 0), ket(2, 1)]).unwrap();
        assert_abs_diff_eq!(holevo_information(&e, &id).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn avg_coherent_examples() {
        let id = identity_channel(2).unwrap();
        assert_abs_diff_eq!(avg_coherent_information(&Ensemble::single(pi2()), &id).unwrap(), 1.0, epsilon = 1e-12);

        let mu = 0.5;
        let e = Ensemble::uniform(vec![
            DensityOperator::diagonal(&[mu, 1.0 - mu]).unwrap(),
            DensityOperator::diagonal(&[1.0 - mu, mu]).unwrap(),
        ])
        .unwrap();
        assert_abs_diff_eq!(
            avg_coherent_information(&e, &dephasing_qubit(0.1).unwrap()).unwrap(),
            ONE_MINUS_H01,
            epsilon = 1e-12
        );

        let e = Ensemble::new(vec![(0.3, ket(2, 0)), (0.7, ket(2, 1))]).unwrap();
        assert_abs_diff_eq!(avg_coherent_information(&e, &completely_dephasing(2).unwrap()).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn cond_mutual_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let e = Ensemble::uniform(vec![qcore::random_pure(2, &mut rng), qcore::random_pure(2, &mut rng)]).unwrap();
        let (cm, nh) = cond_mutual_and_neg_entropy(&e, &depolarizing(0.2, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(cm, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(nh, 0.0, epsilon = 1e-9);

        let (cm, nh) = cond_mutual_and_neg_entropy(&Ensemble::single(pi2()), &identity_channel(2).unwrap()).unwrap();
        assert_abs_diff_eq!(cm, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nh, -1.0, epsilon = 1e-12);

        let ch = dephasing_qubit(0.1).unwrap();
        let b = info_breakdown(&Ensemble::single(pi2()), &ch).unwrap();
        // H(ρ) + H(N ρ) - H(N^c ρ) = 1 + 1 - h2(0.1)
        assert_abs_diff_eq!(b.cond_mutual, 1.0 + ONE_MINUS_H01, epsilon = 1e-12);
        assert_abs_diff_eq!(b.avg_coherent - b.cond_mutual, b.neg_cond_entropy, epsilon = 1e-10);
    }

    #[test]
    fn breakdown_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let chans = [depolarizing(0.1, 2).unwrap(), dephasing_qubit(0.3).unwrap(), trine().unwrap()];
        for ch in &chans {
            for _ in 0..10 {
                let states = (0..3).map(|_| random_density(ch.dim_in(), &mut rng)).collect();
                let e = Ensemble::new(
                    [0.2, 0.5, 0.3].into_iter().zip::<Vec<_>>(states).collect(),
                )
                .unwrap();
                let b = info_breakdown(&e, ch).unwrap();
                assert_abs_diff_eq!(b.avg_coherent - b.cond_mutual, b.neg_cond_entropy, epsilon = 1e-10);
                assert!(b.holevo <= probability_entropy(&e) + 1e-9);
                assert!(b.holevo >= -1e-12);
                assert!(b.holevo <= (ch.dim_out() as f64).log2() + 1e-12);
            }
        }
    }

    #[test]
    fn ensemble_validation() {
        assert!(Ensemble::new(vec![]).is_err());
        assert!(Ensemble::new(vec![(0.5, pi2()), (0.4, pi2())]).is_err());
        assert!(Ensemble::new(vec![(1.2, pi2()), (-0.2, pi2())]).is_err());
        assert!(Ensemble::new(vec![(0.5, pi2()), (0.5, ket(3, 0))]).is_err());
        assert!(holevo_information(&Ensemble::single(ket(3, 0)), &identity_channel(2).unwrap()).is_err());
    }

    #[test]
    fn convex_join_examples() {
        let e0 = Ensemble::new(vec![(0.4, ket(2, 0)), (0.6, ket(2, 1))]).unwrap();
        let e1 = Ensemble::single(pi2());
        let j = convex_join(&e0, &e1, 1.0).unwrap();
        assert_eq!(j, e0);
        let a = Ensemble::single(ket(2, 0));
        let j = convex_join(&a, &e1, 0.5).unwrap();
        assert_eq!(j.probabilities(), vec![0.5, 0.5]);
        assert!(convex_join(&a, &e1, 1.5).is_err());
        assert!(convex_join(&a, &Ensemble::single(ket(3, 0)), 0.5).is_err());
    }

    #[test]
    fn lemma2_examples() {
        let l = SystemLayout::bipartite(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let rho = random_density(4, &mut rng);
        let m = lemma2_margin(&rho, &rho, &l, ContinuityDim::Joint).unwrap();
        assert_abs_diff_eq!(m, 2.0 / std::f64::consts::E, epsilon = 1e-6);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DensityOperator::pure(&CVector::from_vec(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)])).unwrap();
        let mixed = DensityOperator::maximally_mixed(4);
        // |1 - (-1)| = 2; F = 1/4; bound = 2/e + 4·2·√(3/4)
        let m = lemma2_margin(&bell, &mixed, &l, ContinuityDim::Joint).unwrap();
        assert_abs_diff_eq!(m, 2.0 / std::f64::consts::E + 8.0 * 0.75f64.sqrt() - 2.0, epsilon = 1e-9);
        assert!(m >= 0.0);
        let bad = SystemLayout::bipartite(2, 3).unwrap();
        assert!(lemma2_margin(&bell, &mixed, &bad, ContinuityDim::Joint).is_err());
    }
}
