//! Dense complex-matrix primitives and quantum-state quantities.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`; every dimension handled by this
//! crate is small (at most 64), so a single dense Hermitian eigensolver backs all
//! spectral quantities. Entropies are in bits.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Entrywise tolerance for the Hermitian check.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues below this are an error, not drift.
pub const NEG_EIGEN_TOL: f64 = 1e-10;
/// Eigenvalues below this contribute nothing to entropies.
pub const ZERO_EIGEN_CUTOFF: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// `|v⟩⟨v|`.
pub fn outer(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn basis_ket(d: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[i] = c(1.0, 0.0);
    v
}

pub fn diag(values: &[f64]) -> CMatrix {
    let n = values.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &x) in values.iter().enumerate() {
        m[(i, i)] = c(x, 0.0);
    }
    m
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(m, &m.adjoint())
}

/// Kronecker product.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a CMatrix>) -> CMatrix {
    factors
        .into_iter()
        .fold(CMatrix::identity(1, 1), |acc, m| acc.kronecker(m))
}

/// Ordered subsystem dimensions of a composite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemLayout {
    dims: Vec<usize>,
}

impl SystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::dim(format!("invalid layout {dims:?}")));
        }
        Ok(Self { dims })
    }

    pub fn bipartite(a: usize, b: usize) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }
}

/// Mixed-radix digits of `index` in `dims`, most significant first.
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = index % d;
        index /= d;
    }
}

/// Reduced operator on the subsystems listed in `keep` (strictly increasing).
pub fn partial_trace(m: &CMatrix, layout: &SystemLayout, keep: &[usize]) -> Result<CMatrix> {
    let n = layout.total();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::dim(format!(
            "matrix is {}x{} but layout {:?} has total dimension {n}",
            m.nrows(),
            m.ncols(),
            layout.dims()
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= layout.len()) {
        return Err(Error::dim(format!(
            "keep list {keep:?} must be strictly increasing indices into {:?}",
            layout.dims()
        )));
    }
    let dims = layout.dims();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let keep_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let nk: usize = keep_dims.iter().product();
    let nt: usize = traced_dims.iter().product();

    // full[a * nt + t] is the composite index for kept combo a and traced combo t
    let mut full = vec![0usize; nk * nt];
    let mut kd = vec![0usize; keep.len()];
    let mut td = vec![0usize; traced.len()];
    let mut all = vec![0usize; dims.len()];
    for a in 0..nk {
        digits(a, &keep_dims, &mut kd);
        for t in 0..nt {
            digits(t, &traced_dims, &mut td);
            for (i, &k) in keep.iter().enumerate() {
                all[k] = kd[i];
            }
            for (i, &k) in traced.iter().enumerate() {
                all[k] = td[i];
            }
            let idx = all.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x);
            full[a * nt + t] = idx;
        }
    }

    let mut out = CMatrix::zeros(nk, nk);
    for a in 0..nk {
        for b in 0..nk {
            let mut s = c(0.0, 0.0);
            for t in 0..nt {
                s += m[(full[a * nt + t], full[b * nt + t])];
            }
            out[(a, b)] = s;
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    let mut ev = match n {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
            let mean = 0.5 * (a + d);
            let half = 0.5 * (a - d);
            let rad = (half * half + b.norm_sqr()).sqrt();
            vec![mean - rad, mean + rad]
        }
        _ => {
            let h = (m + m.adjoint()).scale(0.5);
            h.symmetric_eigenvalues().iter().copied().collect()
        }
    };
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Full eigendecomposition of a Hermitian matrix; eigenvalues descending, eigenvectors as columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vecs)
}

/// Shannon entropy in bits of a probability-like vector, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x > ZERO_EIGEN_CUTOFF)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

pub fn binary_entropy(mu: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Domain {
            name: "mu",
            value: mu,
            domain: "[0, 1]",
        });
    }
    let h = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    Ok(h(mu) + h(1.0 - mu))
}

/// Entropy of a spectrum, clamping drift in `[-NEG_EIGEN_TOL, ZERO_EIGEN_CUTOFF)` to zero.
pub fn spectrum_entropy(eigenvalues: &[f64]) -> Result<f64> {
    if let Some(&bad) = eigenvalues.iter().find(|&&x| x < -NEG_EIGEN_TOL) {
        return Err(Error::Validation(format!(
            "eigenvalue {bad:.3e} is below -{NEG_EIGEN_TOL:e}"
        )));
    }
    Ok(shannon_entropy(eigenvalues))
}

/// Von Neumann entropy (bits) of a Hermitian PSD matrix that need not have unit trace.
pub fn matrix_entropy(m: &CMatrix) -> Result<f64> {
    spectrum_entropy(&hermitian_eigenvalues(m))
}

/// Entropy without the negativity check, for operators that are PSD by construction.
pub(crate) fn entropy_unchecked(m: &CMatrix) -> f64 {
    shannon_entropy(&hermitian_eigenvalues(m))
}

/// A validated density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::dim(format!(
                "density operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermitian_deviation(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::Validation(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::Validation(format!("trace is {tr}, expected 1")));
        }
        let min = hermitian_eigenvalues(&matrix)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -NEG_EIGEN_TOL {
            return Err(Error::Validation(format!(
                "smallest eigenvalue {min:.3e} is negative"
            )));
        }
        Ok(Self { matrix })
    }

    /// Builds from a matrix known to be PSD up to scale, normalising the trace
    /// and symmetrising away rounding noise.
    pub fn from_psd_unnormalized(m: &CMatrix) -> Result<Self> {
        let tr = trace(m).re;
        if !(tr > 0.0) {
            return Err(Error::Validation(format!("trace {tr} is not positive")));
        }
        let h = (m + m.adjoint()).scale(0.5 / tr);
        Self::new(h)
    }

    pub fn pure(v: &CVector) -> Result<Self> {
        let n = v.norm();
        if n == 0.0 {
            return Err(Error::Validation("zero state vector".into()));
        }
        Self::new(outer(&v.unscale(n)))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: identity(d).unscale(d as f64),
        }
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(diag(probs))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        DensityOperator {
            matrix: tensor(&self.matrix, &other.matrix),
        }
    }

    pub fn partial_trace(&self, layout: &SystemLayout, keep: &[usize]) -> Result<DensityOperator> {
        let m = partial_trace(&self.matrix, layout, keep)?;
        Ok(DensityOperator { matrix: m })
    }
}

pub fn entropy(rho: &DensityOperator) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let s = diag(&vals.iter().map(|&x| x.max(0.0).sqrt()).collect::<Vec<_>>());
    &vecs * s * vecs.adjoint()
}

fn same_dim(a: &DensityOperator, b: &DensityOperator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::dim(format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    Ok(())
}

/// Uhlmann fidelity `(Tr |√ρ √σ|)²`.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    same_dim(rho, sigma)?;
    let sr = psd_sqrt(rho.matrix());
    let inner = &sr * sigma.matrix() * &sr;
    let root_sum: f64 = hermitian_eigenvalues(&inner)
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .sum();
    Ok((root_sum * root_sum).clamp(0.0, 1.0))
}

/// `½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    same_dim(rho, sigma)?;
    let diff = rho.matrix() - sigma.matrix();
    let d = 0.5 * hermitian_eigenvalues(&diff).iter().map(|x| x.abs()).sum::<f64>();
    Ok(d.clamp(0.0, 1.0))
}

/// A purification `Σ √λ_i |i⟩_R |e_i⟩_S` on reference ⊗ system.
#[derive(Debug, Clone)]
pub struct Purification {
    pub vector: CVector,
    pub layout: SystemLayout,
}

impl Purification {
    pub fn density(&self) -> DensityOperator {
        DensityOperator {
            matrix: outer(&self.vector),
        }
    }

    /// Reduced state on the system factor.
    pub fn system_state(&self) -> Result<DensityOperator> {
        self.density().partial_trace(&self.layout, &[1])
    }
}

pub fn purify(rho: &DensityOperator) -> Purification {
    let d = rho.dim();
    let (vals, vecs) = hermitian_eigen(rho.matrix());
    let mut v = CVector::zeros(d * d);
    for (i, &lam) in vals.iter().enumerate() {
        let w = lam.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        for s in 0..d {
            v[i * d + s] += vecs[(s, i)] * w;
        }
    }
    let n = v.norm();
    Purification {
        vector: v.unscale(n),
        layout: SystemLayout { dims: vec![d, d] },
    }
}

/// Complex Gaussian matrix with unit-variance real and imaginary parts.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random full-rank density operator (Hilbert–Schmidt measure).
pub fn random_density<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityOperator {
    let g = ginibre(d, d, rng);
    DensityOperator::from_psd_unnormalized(&(&g * g.adjoint())).expect("Ginibre product is PSD")
}

pub fn random_pure<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityOperator {
    let g = ginibre(d, 1, rng);
    let v: CVector = g.column(0).into_owned();
    DensityOperator::pure(&v).expect("nonzero Gaussian vector")
}

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(d, d, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let ph = r[(j, j)];
        let ph = if ph.norm() > 0.0 { ph / ph.norm() } else { c(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= ph;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bell() -> DensityOperator {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = CVector::from_vec(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        DensityOperator::pure(&v).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor(&identity(2), &identity(2)), identity(4));
        let p0 = diag(&[1.0, 0.0]);
        let p1 = diag(&[0.0, 1.0]);
        let t = tensor(&p0, &p1);
        let mut expect = CMatrix::zeros(4, 4);
        expect[(1, 1)] = c(1.0, 0.0);
        assert_eq!(t, expect);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = ginibre(2, 2, &mut rng);
        let b = ginibre(3, 3, &mut rng);
        let ab = tensor(&a, &b);
        assert_eq!(ab.shape(), (6, 6));
        assert_abs_diff_eq!((ab[(0, 0)] - a[(0, 0)] * b[(0, 0)]).norm(), 0.0);
    }

    #[test]
    fn partial_trace_examples() {
        let layout = SystemLayout::bipartite(2, 2).unwrap();
        let red = bell().partial_trace(&layout, &[0]).unwrap();
        assert!(max_abs_diff(red.matrix(), &identity(2).unscale(2.0)) < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random_density(2, &mut rng);
        let sigma = random_density(3, &mut rng);
        let joint = rho.tensor(&sigma);
        let l = SystemLayout::bipartite(2, 3).unwrap();
        let back = joint.partial_trace(&l, &[0]).unwrap();
        assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
        let back = joint.partial_trace(&l, &[1]).unwrap();
        assert!(max_abs_diff(back.matrix(), sigma.matrix()) < 1e-12);

        let r4 = random_density(4, &mut rng);
        let red = partial_trace(r4.matrix(), &layout, &[1]).unwrap();
        assert_abs_diff_eq!(trace(&red).re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_three_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_density(2, &mut rng);
        let b = random_density(3, &mut rng);
        let cc = random_density(2, &mut rng);
        let joint = a.tensor(&b).tensor(&cc);
        let l = SystemLayout::new(vec![2, 3, 2]).unwrap();
        let ac = joint.partial_trace(&l, &[0, 2]).unwrap();
        assert!(max_abs_diff(ac.matrix(), a.tensor(&cc).matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_layout_errors() {
        let l = SystemLayout::bipartite(2, 3).unwrap();
        assert!(matches!(
            partial_trace(&identity(4), &l, &[0]),
            Err(Error::Dimension(_))
        ));
        let l = SystemLayout::bipartite(2, 2).unwrap();
        assert!(partial_trace(&identity(4), &l, &[1, 0]).is_err());
        assert!(partial_trace(&identity(4), &l, &[2]).is_err());
        assert!(SystemLayout::new(vec![2, 0]).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(entropy(&DensityOperator::maximally_mixed(2)).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(entropy(&bell()).unwrap(), 0.0, epsilon = 1e-12);
        let r = DensityOperator::diagonal(&[0.9, 0.1]).unwrap();
        // -0.9 log2 0.9 - 0.1 log2 0.1
        assert_abs_diff_eq!(entropy(&r).unwrap(), 0.468_995_593_589_281_2, epsilon = 1e-12);
        let r = DensityOperator::maximally_mixed(5);
        assert_abs_diff_eq!(entropy(&r).unwrap(), 5f64.log2(), epsilon = 1e-12);
    }

    #[test]
    fn entropy_clamps_and_rejects() {
        assert_eq!(spectrum_entropy(&[1.0, -5e-11]).unwrap(), 0.0);
        assert!(matches!(
            spectrum_entropy(&[1.1, -0.1]),
            Err(Error::Validation(_))
        ));
        assert!(DensityOperator::new(diag(&[1.2, -0.2])).is_err());
        assert!(DensityOperator::new(diag(&[0.6, 0.6])).is_err());
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.2).unwrap(), 0.721_928_094_887_362_3, epsilon = 1e-12);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = random_density(3, &mut rng);
        assert_abs_diff_eq!(fidelity(&rho, &rho).unwrap(), 1.0, epsilon = 1e-9);
        let k0 = DensityOperator::pure(&basis_ket(2, 0)).unwrap();
        let k1 = DensityOperator::pure(&basis_ket(2, 1)).unwrap();
        assert_abs_diff_eq!(fidelity(&k0, &k1).unwrap(), 0.0, epsilon = 1e-12);
        let plus = DensityOperator::pure(&CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)])).unwrap();
        assert_abs_diff_eq!(fidelity(&k0, &plus).unwrap(), 0.5, epsilon = 1e-12);
        assert!(fidelity(&k0, &rho).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let k0 = DensityOperator::pure(&basis_ket(2, 0)).unwrap();
        let k1 = DensityOperator::pure(&basis_ket(2, 1)).unwrap();
        assert_abs_diff_eq!(trace_distance(&k0, &k0).unwrap(), 0.0);
        assert_abs_diff_eq!(trace_distance(&k0, &k1).unwrap(), 1.0, epsilon = 1e-14);
        let pi = DensityOperator::maximally_mixed(2);
        assert_abs_diff_eq!(trace_distance(&pi, &k0).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn purify_examples() {
        let p = purify(&DensityOperator::maximally_mixed(2));
        // Bell vector up to local basis: reduced states on both sides are maximally mixed
        let red_r = p.density().partial_trace(&p.layout, &[0]).unwrap();
        assert!(max_abs_diff(red_r.matrix(), &identity(2).unscale(2.0)) < 1e-12);

        let pure = DensityOperator::pure(&basis_ket(3, 1)).unwrap();
        let p = purify(&pure);
        let red_r = p.density().partial_trace(&p.layout, &[0]).unwrap();
        assert_abs_diff_eq!(entropy(&red_r).unwrap(), 0.0, epsilon = 1e-12);

        let rho = DensityOperator::diagonal(&[0.9, 0.1]).unwrap();
        let p = purify(&rho);
        assert_abs_diff_eq!(p.vector[0].norm(), 0.9f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(p.vector[3].norm(), 0.1f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(p.vector[1].norm() + p.vector[2].norm(), 0.0, epsilon = 1e-12);
        let back = p.system_state().unwrap();
        assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-10);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(4, &mut rng);
        assert!(max_abs_diff(&(u.adjoint() * &u), &identity(4)) < 1e-12);
    }

    #[test]
    fn eigen_fast_path_matches_general() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let g = ginibre(2, 2, &mut rng);
            let h = &g + g.adjoint();
            let fast = hermitian_eigenvalues(&h);
            let slow: Vec<f64> = {
                let mut v: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
                v.sort_by(|a, b| a.total_cmp(b));
                v
            };
            for (a, b) in fast.iter().zip(&slow) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }
}
