//! Finite-difference gradient ascent with backtracking line search.

use rand::Rng;
use rand_distr::StandardNormal;

/// A smooth(ish) function of a real parameter vector, to be maximised.
pub trait Objective: Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// Forward-difference gradient at `x` given `fx = value(x)`.
    fn gradient(&self, x: &[f64], fx: f64, step: f64, grad: &mut [f64]) {
        let mut probe = x.to_vec();
        for i in 0..x.len() {
            let orig = probe[i];
            probe[i] = orig + step;
            grad[i] = (self.value(&probe) - fx) / step;
            probe[i] = orig;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentSettings {
    pub max_iters: usize,
    /// Converged once the objective gains less than this over `stall_window` iterations.
    pub tol: f64,
    pub fd_step: f64,
    pub stall_window: usize,
}

impl Default for AscentSettings {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            tol: 1e-6,
            fd_step: 1e-5,
            stall_window: 25,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AscentResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iters: usize,
    pub converged: bool,
}

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-16;
const MAX_STEP: f64 = 1e4;

pub fn ascend<O: Objective + ?Sized>(obj: &O, x0: Vec<f64>, settings: &AscentSettings) -> AscentResult {
    let n = obj.dim();
    assert_eq!(x0.len(), n, "starting point has wrong length");
    let mut x = x0;
    let mut fx = obj.value(&x);
    let mut grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut history = Vec::with_capacity(settings.max_iters + 1);
    history.push(fx);
    let mut step: f64 = 1.0;

    for iter in 0..settings.max_iters {
        obj.gradient(&x, fx, settings.fd_step, &mut grad);
        let g2: f64 = grad.iter().map(|g| g * g).sum();
        if !g2.is_finite() || g2 < 1e-24 {
            return AscentResult { x, value: fx, iters: iter, converged: g2.is_finite() };
        }
        let mut t = (step * 2.0).min(MAX_STEP);
        let accepted = loop {
            for i in 0..n {
                trial[i] = x[i] + t * grad[i];
            }
            let ft = obj.value(&trial);
            if ft.is_finite() && ft >= fx + ARMIJO * t * g2 {
                break Some(ft);
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some(ft) = accepted else {
            // no ascent along the (noisy) gradient: local optimum at FD resolution
            return AscentResult { x, value: fx, iters: iter, converged: true };
        };
        std::mem::swap(&mut x, &mut trial);
        fx = ft;
        step = t;
        history.push(fx);
        let w = settings.stall_window;
        if history.len() > w && fx - history[history.len() - 1 - w] < settings.tol {
            return AscentResult { x, value: fx, iters: iter + 1, converged: true };
        }
    }
    AscentResult { x, value: fx, iters: settings.max_iters, converged: false }
}

/// Negates an objective so [`ascend`] minimises it.
pub struct Negated<'a, O: ?Sized>(pub &'a O);

impl<O: Objective + ?Sized> Objective for Negated<'_, O> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        -self.0.value(x)
    }

    fn gradient(&self, x: &[f64], fx: f64, step: f64, grad: &mut [f64]) {
        self.0.gradient(x, -fx, step, grad);
        grad.iter_mut().for_each(|g| *g = -*g);
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream seed for a task identified by `tags` under a base seed.
pub fn stream_seed(seed: u64, tags: &[u64]) -> u64 {
    tags.iter()
        .fold(splitmix64(seed), |acc, &t| splitmix64(acc ^ splitmix64(t.wrapping_add(0x5151))))
}

pub fn gaussian_vec<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Index of the largest value; ties go to the lowest index so results do not
/// depend on evaluation order.
pub fn argmax_stable(values: impl IntoIterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        match best {
            Some((_, b)) if !(v > b) => {}
            _ if v.is_nan() => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}
