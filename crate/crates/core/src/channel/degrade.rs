//! Numerical degradability certificates.
//!
//! A channel `N` is degradable when some CPTP `T` satisfies `N^c = T ∘ N`. For
//! generalized dephasing channels `T = N^c` works exactly; otherwise we search
//! over degrading maps given by a Stinespring isometry and report the smallest
//! squared Choi-matrix distance found.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::KrausChannel;
use crate::optim::{self, AscentSettings, Negated, Objective};
use crate::qcore::{self, c, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegradabilityConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub tol: f64,
    pub fd_step: f64,
    /// Residuals below this certify degradability.
    pub threshold: f64,
}

impl Default for DegradabilityConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            seed: 0,
            max_iters: 400,
            tol: 1e-12,
            fd_step: 1e-6,
            threshold: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegradabilityMethod {
    /// `T = N^c`, exact for generalized dephasing channels.
    DephasingIdentity,
    Search,
}

#[derive(Debug, Clone)]
pub struct DegradabilityReport {
    /// Squared Frobenius distance between the Choi states of `T ∘ N` and `N^c`.
    pub residual: f64,
    pub map: KrausChannel,
    pub method: DegradabilityMethod,
    pub certified: bool,
}

/// Squared Frobenius distance between Choi states of `degrader ∘ ch` and `ch^c`.
pub fn degrading_residual(ch: &KrausChannel, degrader: &KrausChannel) -> crate::Result<f64> {
    let composed = degrader.compose(ch)?;
    let target = ch.complementary().choi();
    let diff = composed.choi() - target;
    Ok(diff.iter().map(|z| z.norm_sqr()).sum())
}

pub fn degradability_residual(ch: &KrausChannel, config: &DegradabilityConfig) -> DegradabilityReport {
    if ch.is_generalized_dephasing() {
        let map = ch.complementary();
        let residual = degrading_residual(ch, &map).expect("complement composes with channel");
        return DegradabilityReport {
            residual,
            map,
            method: DegradabilityMethod::DephasingIdentity,
            certified: residual < config.threshold,
        };
    }

    let problem = DegraderSearch::new(ch);
    let settings = AscentSettings {
        max_iters: config.max_iters,
        tol: config.tol,
        fd_step: config.fd_step,
        stall_window: 25,
    };
    let restarts = if problem.dim() > FULL_RESTART_PARAMS {
        (config.restarts * FULL_RESTART_PARAMS / problem.dim()).max(2)
    } else {
        config.restarts
    };
    let runs: Vec<(f64, Vec<f64>)> = (0..restarts.max(1))
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(optim::stream_seed(config.seed, &[0xDE6, k as u64]));
            let x0 = optim::gaussian_vec(problem.dim(), 1.0, &mut rng);
            let res = optim::ascend(&Negated(&problem), x0, &settings);
            (-res.value, res.x)
        })
        .collect();
    let best = optim::argmax_stable(runs.iter().map(|(r, _)| -r)).expect("at least one restart");
    let (residual, x) = &runs[best];
    let map = problem.degrader(x);
    DegradabilityReport {
        residual: *residual,
        map,
        method: DegradabilityMethod::Search,
        certified: *residual < config.threshold,
    }
}

/// Cap on real search parameters; larger problems get fewer degrader Kraus operators.
const MAX_SEARCH_PARAMS: usize = 300;
/// Restarts are scaled down once the parameter count exceeds this.
const FULL_RESTART_PARAMS: usize = 128;

/// Candidate degrading maps `B → E` from a free complex matrix `A` via the polar
/// isometry `W = A (A†A)^{-1/2}`, `W|b⟩ = Σ_a T_a|b⟩ ⊗ |a⟩`.
struct DegraderSearch {
    choi_n: CMatrix,
    target: CMatrix,
    dim_in: usize,
    dim_b: usize,
    dim_e: usize,
    aux: usize,
}

impl DegraderSearch {
    fn new(ch: &KrausChannel) -> Self {
        let dim_b = ch.dim_out();
        let dim_e = ch.dim_env();
        let budget = (MAX_SEARCH_PARAMS / (2 * dim_e * dim_b)).max(dim_b.div_ceil(dim_e));
        Self {
            choi_n: ch.choi(),
            target: ch.complementary().choi(),
            dim_in: ch.dim_in(),
            dim_b,
            dim_e,
            aux: (dim_b * dim_e).min(budget),
        }
    }

    fn rows(&self) -> usize {
        self.dim_e * self.aux
    }

    fn kraus(&self, x: &[f64]) -> Vec<CMatrix> {
        let rows = self.rows();
        let cols = self.dim_b;
        let a = CMatrix::from_fn(rows, cols, |i, j| {
            let k = 2 * (i * cols + j);
            c(x[k], x[k + 1])
        });
        let gram = a.adjoint() * &a;
        let (vals, vecs) = qcore::hermitian_eigen(&gram);
        let inv_sqrt = qcore::diag(
            &vals
                .iter()
                .map(|&v| if v > 1e-14 { 1.0 / v.sqrt() } else { 0.0 })
                .collect::<Vec<_>>(),
        );
        let w = a * (&vecs * inv_sqrt * vecs.adjoint());
        (0..self.aux)
            .map(|t| CMatrix::from_fn(self.dim_e, self.dim_b, |e, b| w[(e * self.aux + t, b)]))
            .collect()
    }

    fn degrader(&self, x: &[f64]) -> KrausChannel {
        KrausChannel {
            name: "degrader".into(),
            kraus: self.kraus(x),
            dim_in: self.dim_b,
            dim_out: self.dim_e,
        }
    }
}

impl Objective for DegraderSearch {
    fn dim(&self) -> usize {
        2 * self.rows() * self.dim_b
    }

    fn value(&self, x: &[f64]) -> f64 {
        let id = qcore::identity(self.dim_in);
        let n = self.dim_in * self.dim_e;
        let mut composed = CMatrix::zeros(n, n);
        for t in self.kraus(x) {
            let big = id.kronecker(&t);
            composed += &big * &self.choi_n * big.adjoint();
        }
        let diff = composed - &self.target;
        diff.iter().map(|z| z.norm_sqr()).sum()
    }
}
