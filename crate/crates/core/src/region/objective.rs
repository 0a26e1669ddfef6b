//! Unconstrained parametrisation of finite ensembles and the weighted
//! rate objective `a·I(X;B) + b·I(A⟩BX)` evaluated on it.

use crate::channel::KrausChannel;
use crate::infoquant::Ensemble;
use crate::optim::Objective;
use crate::qcore::{c, entropy_unchecked, shannon_entropy, CMatrix, DensityOperator};

/// How each ensemble member is generated from its parameter block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MemberShape {
    /// `G G† / Tr(G G†)` with `G` a free complex `d × d` matrix.
    Full,
    /// `|g⟩⟨g| / ⟨g|g⟩` with `g` a free complex vector.
    Pure,
    /// `diag(a_i²) / Σ a_i²`.
    Diagonal,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct EnsembleParam {
    pub dim: usize,
    pub members: usize,
    pub shape: MemberShape,
}

impl EnsembleParam {
    pub fn member_len(&self) -> usize {
        match self.shape {
            MemberShape::Full => 2 * self.dim * self.dim,
            MemberShape::Pure => 2 * self.dim,
            MemberShape::Diagonal => self.dim,
        }
    }

    /// Leading softmax logits; omitted for a single member.
    pub fn logit_len(&self) -> usize {
        if self.members > 1 {
            self.members
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.logit_len() + self.members * self.member_len()
    }

    pub fn block<'a>(&self, x: &'a [f64], i: usize) -> &'a [f64] {
        let start = self.logit_len() + i * self.member_len();
        &x[start..start + self.member_len()]
    }

    pub fn probabilities(&self, x: &[f64]) -> Vec<f64> {
        if self.members == 1 {
            return vec![1.0];
        }
        softmax(&x[..self.members])
    }

    /// Unit-trace member matrix from a parameter block.
    pub fn member(&self, block: &[f64]) -> CMatrix {
        let d = self.dim;
        let m = match self.shape {
            MemberShape::Full => {
                let g = CMatrix::from_fn(d, d, |i, j| {
                    let k = 2 * (i * d + j);
                    c(block[k], block[k + 1])
                });
                &g * g.adjoint()
            }
            MemberShape::Pure => {
                let g = CMatrix::from_fn(d, 1, |i, _| c(block[2 * i], block[2 * i + 1]));
                &g * g.adjoint()
            }
            MemberShape::Diagonal => {
                let mut m = CMatrix::zeros(d, d);
                for i in 0..d {
                    m[(i, i)] = c(block[i] * block[i], 0.0);
                }
                m
            }
        };
        let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
        if tr > 0.0 {
            m.unscale(tr)
        } else {
            CMatrix::identity(d, d).unscale(d as f64)
        }
    }

    pub fn decode(&self, x: &[f64]) -> Ensemble {
        let probs = self.probabilities(x);
        let entries = (0..self.members)
            .map(|i| {
                let m = self.member(self.block(x, i));
                let rho = DensityOperator::from_psd_unnormalized(&m).expect("Gram-form members are PSD");
                (probs[i], rho)
            })
            .collect();
        Ensemble::new(entries).expect("softmax probabilities are normalised")
    }
}

pub(crate) fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ex: Vec<f64> = logits.iter().map(|&l| (l - max).exp()).collect();
    let total: f64 = ex.iter().sum();
    ex.into_iter().map(|e| e / total).collect()
}

/// What plays the role of Bob's system in the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OutputRegister {
    /// `B = N(ρ)`.
    Channel,
    /// `Y`, the diagonal of the input; equals `B` for dephasing channels on diagonal inputs.
    DephasedInput,
}

struct MemberEval {
    out: CMatrix,
    h_out: f64,
    h_env: f64,
}

/// `w_c·H(B̄) + Σ p_x [(w_q − w_c) H(B_x) − w_q H(E_x)]`
/// which equals `w_c·I(X;B) + w_q·I(A⟩BX)`.
pub(crate) struct WeightedRates {
    pub param: EnsembleParam,
    kraus: Vec<CMatrix>,
    comp: Vec<CMatrix>,
    pub w_classical: f64,
    pub w_quantum: f64,
    register: OutputRegister,
}

fn conjugate_sum(ops: &[CMatrix], rho: &CMatrix) -> CMatrix {
    let n = ops[0].nrows();
    let mut out = CMatrix::zeros(n, n);
    for k in ops {
        out += k * rho * k.adjoint();
    }
    out
}

impl WeightedRates {
    pub fn new(
        ch: &KrausChannel,
        param: EnsembleParam,
        w_classical: f64,
        w_quantum: f64,
        register: OutputRegister,
    ) -> Self {
        Self {
            param,
            kraus: ch.kraus().to_vec(),
            comp: ch.complementary().kraus().to_vec(),
            w_classical,
            w_quantum,
            register,
        }
    }

    fn eval_member(&self, rho: &CMatrix) -> MemberEval {
        let out = match self.register {
            OutputRegister::Channel => conjugate_sum(&self.kraus, rho),
            OutputRegister::DephasedInput => {
                let d = rho.nrows();
                CMatrix::from_fn(d, d, |i, j| if i == j { rho[(i, i)] } else { c(0.0, 0.0) })
            }
        };
        let h_out = match self.register {
            OutputRegister::Channel => entropy_unchecked(&out),
            OutputRegister::DephasedInput => {
                shannon_entropy(&out.diagonal().iter().map(|z| z.re).collect::<Vec<_>>())
            }
        };
        let h_env = if self.w_quantum != 0.0 {
            entropy_unchecked(&conjugate_sum(&self.comp, rho))
        } else {
            0.0
        };
        MemberEval { out, h_out, h_env }
    }

    fn member_term(&self, e: &MemberEval) -> f64 {
        (self.w_quantum - self.w_classical) * e.h_out - self.w_quantum * e.h_env
    }

    fn avg_entropy(&self, avg: &CMatrix) -> f64 {
        if self.w_classical == 0.0 {
            return 0.0;
        }
        match self.register {
            OutputRegister::Channel => entropy_unchecked(avg),
            OutputRegister::DephasedInput => {
                shannon_entropy(&avg.diagonal().iter().map(|z| z.re).collect::<Vec<_>>())
            }
        }
    }

    fn combine(&self, probs: &[f64], evals: &[MemberEval]) -> (CMatrix, f64) {
        let n = evals[0].out.nrows();
        let mut avg = CMatrix::zeros(n, n);
        let mut terms = 0.0;
        for (p, e) in probs.iter().zip(evals) {
            avg += e.out.scale(*p);
            terms += p * self.member_term(e);
        }
        (avg, terms)
    }

    fn evals(&self, x: &[f64]) -> Vec<MemberEval> {
        (0..self.param.members)
            .map(|i| self.eval_member(&self.param.member(self.param.block(x, i))))
            .collect()
    }
}

impl Objective for WeightedRates {
    fn dim(&self) -> usize {
        self.param.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let probs = self.param.probabilities(x);
        let evals = self.evals(x);
        let (avg, terms) = self.combine(&probs, &evals);
        self.w_classical * self.avg_entropy(&avg) + terms
    }

    /// Perturbing one member's block only changes that member's entropies and
    /// its share of the average output, so those are updated incrementally.
    fn gradient(&self, x: &[f64], _fx: f64, step: f64, grad: &mut [f64]) {
        let probs = self.param.probabilities(x);
        let evals = self.evals(x);
        let (avg, terms) = self.combine(&probs, &evals);
        let f0 = self.w_classical * self.avg_entropy(&avg) + terms;

        let nl = self.param.logit_len();
        if nl > 0 {
            let mut logits = x[..nl].to_vec();
            for j in 0..nl {
                let orig = logits[j];
                logits[j] = orig + step;
                let p = softmax(&logits);
                let (a, t) = self.combine(&p, &evals);
                grad[j] = (self.w_classical * self.avg_entropy(&a) + t - f0) / step;
                logits[j] = orig;
            }
        }

        let ml = self.param.member_len();
        for i in 0..self.param.members {
            let mut block = self.param.block(x, i).to_vec();
            let base_term = self.member_term(&evals[i]);
            for j in 0..ml {
                let orig = block[j];
                block[j] = orig + step;
                let e = self.eval_member(&self.param.member(&block));
                let a = &avg + (&e.out - &evals[i].out).scale(probs[i]);
                let t = terms + probs[i] * (self.member_term(&e) - base_term);
                grad[nl + i * ml + j] = (self.w_classical * self.avg_entropy(&a) + t - f0) / step;
                block[j] = orig;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{depolarizing, dephasing_qubit, trine};
    use crate::infoquant::info_breakdown;
    use crate::optim::gaussian_vec;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn value_matches_breakdown() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for ch in [depolarizing(0.1, 2).unwrap(), trine().unwrap()] {
            for shape in [MemberShape::Full, MemberShape::Pure, MemberShape::Diagonal] {
                let param = EnsembleParam { dim: ch.dim_in(), members: 4, shape };
                let obj = WeightedRates::new(&ch, param, 1.0, 2.5, OutputRegister::Channel);
                let x = gaussian_vec(param.len(), 1.0, &mut rng);
                let b = info_breakdown(&param.decode(&x), &ch).unwrap();
                assert_abs_diff_eq!(obj.value(&x), b.holevo + 2.5 * b.avg_coherent, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn incremental_gradient_matches_plain_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let ch = depolarizing(0.07, 2).unwrap();
        let param = EnsembleParam { dim: 2, members: 3, shape: MemberShape::Full };
        let obj = WeightedRates::new(&ch, param, 1.0, 1.7, OutputRegister::Channel);
        let x = gaussian_vec(param.len(), 1.0, &mut rng);
        let fx = obj.value(&x);
        let mut fast = vec![0.0; param.len()];
        obj.gradient(&x, fx, 1e-6, &mut fast);
        for (j, g) in fast.iter().enumerate() {
            let mut xp = x.clone();
            xp[j] += 1e-6;
            let plain = (obj.value(&xp) - fx) / 1e-6;
            assert_abs_diff_eq!(*g, plain, epsilon = 1e-6);
        }
    }

    #[test]
    fn dephased_register_agrees_for_dephasing_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let ch = dephasing_qubit(0.2).unwrap();
        let param = EnsembleParam { dim: 2, members: 3, shape: MemberShape::Diagonal };
        let a = WeightedRates::new(&ch, param, 1.0, 3.0, OutputRegister::Channel);
        let b = WeightedRates::new(&ch, param, 1.0, 3.0, OutputRegister::DephasedInput);
        for _ in 0..5 {
            let x = gaussian_vec(param.len(), 1.0, &mut rng);
            assert_abs_diff_eq!(a.value(&x), b.value(&x), epsilon = 1e-12);
        }
    }

    #[test]
    fn single_member_has_no_logits() {
        let p = EnsembleParam { dim: 3, members: 1, shape: MemberShape::Full };
        assert_eq!(p.len(), 18);
        assert_eq!(p.probabilities(&vec![0.3; 18]), vec![1.0]);
    }
}
