//! Quantum channels in Kraus form, their Stinespring dilations and complements.

use std::fmt;

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::qcore::{
    self, basis_ket, c, identity, max_abs_diff, CMatrix, CVector, DensityOperator, SystemLayout,
};

pub mod degrade;

pub use degrade::{degradability_residual, DegradabilityConfig, DegradabilityMethod, DegradabilityReport};

/// Tolerance on `Σ K†K = I`.
pub const TP_TOL: f64 = 1e-9;
/// Largest input dimension a tensor power may produce.
pub const MAX_TENSOR_DIM: usize = 64;

/// A CPTP map `ρ ↦ Σ_k K_k ρ K_k†`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    name: String,
    kraus: Vec<CMatrix>,
    dim_in: usize,
    dim_out: usize,
}

/// Outcome of a trace-preservation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus_count: usize,
    pub max_deviation: f64,
}

/// Checks shapes and `Σ K†K = I` for a raw Kraus list.
pub fn validate_kraus(kraus: &[CMatrix], dim_in: usize, dim_out: usize) -> Result<ValidationReport> {
    if kraus.is_empty() {
        return Err(Error::Validation("empty Kraus list".into()));
    }
    if dim_in == 0 || dim_out == 0 {
        return Err(Error::dim("channel dimensions must be positive"));
    }
    for (i, k) in kraus.iter().enumerate() {
        if k.shape() != (dim_out, dim_in) {
            return Err(Error::dim(format!(
                "Kraus operator {i} is {}x{}, expected {dim_out}x{dim_in}",
                k.nrows(),
                k.ncols()
            )));
        }
    }
    let sum = kraus
        .iter()
        .fold(CMatrix::zeros(dim_in, dim_in), |acc, k| acc + k.adjoint() * k);
    let max_deviation = max_abs_diff(&sum, &identity(dim_in));
    let report = ValidationReport {
        dim_in,
        dim_out,
        kraus_count: kraus.len(),
        max_deviation,
    };
    if max_deviation > TP_TOL {
        return Err(Error::InvalidChannel {
            deviation: max_deviation,
        });
    }
    Ok(report)
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Domain {
            name,
            value,
            domain: "[0, 1]",
        });
    }
    Ok(())
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain {
            name: "d",
            value: d as f64,
            domain: "d >= 2",
        });
    }
    Ok(())
}

impl KrausChannel {
    pub fn new(kraus: Vec<CMatrix>, dim_in: usize, dim_out: usize) -> Result<Self> {
        Self::named("kraus", kraus, dim_in, dim_out)
    }

    pub fn named(
        name: impl Into<String>,
        kraus: Vec<CMatrix>,
        dim_in: usize,
        dim_out: usize,
    ) -> Result<Self> {
        validate_kraus(&kraus, dim_in, dim_out)?;
        Ok(Self {
            name: name.into(),
            kraus,
            dim_in,
            dim_out,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Dimension of the canonical Stinespring environment.
    pub fn dim_env(&self) -> usize {
        self.kraus.len()
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        validate_kraus(&self.kraus, self.dim_in, self.dim_out)
    }

    /// `Σ K m K†` on an arbitrary `dim_in × dim_in` matrix.
    pub fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += k * m * k.adjoint();
        }
        out
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.dim() != self.dim_in {
            return Err(Error::dim(format!(
                "state has dimension {}, channel input is {}",
                rho.dim(),
                self.dim_in
            )));
        }
        DensityOperator::from_psd_unnormalized(&self.apply_matrix(rho.matrix()))
    }

    /// `(1_A ⊗ N)(ρ_AB)` where `layout = [dim A, dim_in]`.
    pub fn apply_to_part(&self, rho_ab: &DensityOperator, layout: &SystemLayout) -> Result<DensityOperator> {
        let dims = layout.dims();
        if dims.len() != 2 || dims[1] != self.dim_in || layout.total() != rho_ab.dim() {
            return Err(Error::dim(format!(
                "layout {:?} does not match a {}-dim state with channel input {}",
                dims,
                rho_ab.dim(),
                self.dim_in
            )));
        }
        let id = identity(dims[0]);
        let mut out = CMatrix::zeros(dims[0] * self.dim_out, dims[0] * self.dim_out);
        for k in &self.kraus {
            let big = id.kronecker(k);
            out += &big * rho_ab.matrix() * big.adjoint();
        }
        DensityOperator::from_psd_unnormalized(&out)
    }

    /// Canonical dilation `V|ψ⟩ = Σ_k K_k|ψ⟩ ⊗ |k⟩_E`, output ordered B ⊗ E.
    pub fn stinespring(&self) -> StinespringIsometry {
        let de = self.dim_env();
        let mut v = CMatrix::zeros(self.dim_out * de, self.dim_in);
        for (k, op) in self.kraus.iter().enumerate() {
            for b in 0..self.dim_out {
                for i in 0..self.dim_in {
                    v[(b * de + k, i)] = op[(b, i)];
                }
            }
        }
        StinespringIsometry {
            v,
            dim_out: self.dim_out,
            dim_env: de,
        }
    }

    /// Channel into the environment of [`Self::stinespring`].
    pub fn complementary(&self) -> KrausChannel {
        let de = self.dim_env();
        let kraus = (0..self.dim_out)
            .map(|b| {
                CMatrix::from_fn(de, self.dim_in, |k, i| self.kraus[k][(b, i)])
            })
            .collect();
        KrausChannel {
            name: format!("complement[{}]", self.name),
            kraus,
            dim_in: self.dim_in,
            dim_out: de,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &KrausChannel) -> Result<KrausChannel> {
        if inner.dim_out != self.dim_in {
            return Err(Error::dim(format!(
                "cannot compose: inner output {} vs outer input {}",
                inner.dim_out, self.dim_in
            )));
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| inner.kraus.iter().map(move |b| a * b))
            .collect();
        Ok(KrausChannel {
            name: format!("{}∘{}", self.name, inner.name),
            kraus,
            dim_in: inner.dim_in,
            dim_out: self.dim_out,
        })
    }

    pub fn tensor(&self, other: &KrausChannel) -> Result<KrausChannel> {
        let dim_in = self.dim_in * other.dim_in;
        if dim_in > MAX_TENSOR_DIM {
            return Err(Error::ResourceGuard(format!(
                "tensor product input dimension {dim_in} exceeds {MAX_TENSOR_DIM}"
            )));
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| a.kronecker(b)))
            .collect();
        Ok(KrausChannel {
            name: format!("{}⊗{}", self.name, other.name),
            kraus,
            dim_in,
            dim_out: self.dim_out * other.dim_out,
        })
    }

    /// `N^{⊗l}` for `l ∈ {1, 2}`.
    pub fn tensor_power(&self, l: usize) -> Result<KrausChannel> {
        match l {
            1 => Ok(self.clone()),
            2 => Ok(self.tensor(self)?.with_name(format!("{}^⊗2", self.name))),
            _ => Err(Error::ResourceGuard(format!(
                "tensor power {l} not supported (only 1 or 2)"
            ))),
        }
    }

    /// Normalised Choi state `(1 ⊗ N)(|Φ⟩⟨Φ|)`, layout `[dim_in, dim_out]`, trace one.
    pub fn choi(&self) -> CMatrix {
        choi_from_kraus(&self.kraus, self.dim_in, self.dim_out)
    }

    /// Whether every Kraus operator is diagonal in the computational basis,
    /// i.e. the channel is a generalized dephasing channel in that basis.
    pub fn is_generalized_dephasing(&self) -> bool {
        self.dim_in == self.dim_out
            && self.kraus.iter().all(|k| {
                (0..self.dim_in).all(|i| {
                    (0..self.dim_in).all(|j| i == j || k[(i, j)].norm() <= TP_TOL)
                })
            })
    }

    pub fn require_dephasing(&self) -> Result<()> {
        if self.is_generalized_dephasing() {
            Ok(())
        } else {
            Err(Error::NotDephasing(format!(
                "`{}` has off-diagonal Kraus entries or unequal input/output dimensions",
                self.name
            )))
        }
    }
}

impl fmt::Display for KrausChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} -> {}, {} Kraus)",
            self.name,
            self.dim_in,
            self.dim_out,
            self.kraus.len()
        )
    }
}

/// `Σ_{ij} |i⟩⟨j| ⊗ Σ_k K|i⟩⟨j|K† / d` for an arbitrary Kraus list.
pub fn choi_from_kraus(kraus: &[CMatrix], dim_in: usize, dim_out: usize) -> CMatrix {
    let n = dim_in * dim_out;
    let mut j = CMatrix::zeros(n, n);
    let w = 1.0 / dim_in as f64;
    for k in kraus {
        // column i of K is K|i⟩
        for a in 0..dim_in {
            for b in 0..dim_in {
                for x in 0..dim_out {
                    for y in 0..dim_out {
                        j[(a * dim_out + x, b * dim_out + y)] += k[(x, a)] * k[(y, b)].conj() * w;
                    }
                }
            }
        }
    }
    j
}

/// Choi-side CPTP check: PSD and output-traced marginal `I/d`.
/// Returns the larger of the marginal deviation (rescaled to `Σ K†K` units) and the PSD violation.
pub fn choi_cptp_deviation(choi: &CMatrix, dim_in: usize, dim_out: usize) -> Result<f64> {
    let layout = SystemLayout::bipartite(dim_in, dim_out)?;
    let marginal = qcore::partial_trace(choi, &layout, &[0])?;
    let target = identity(dim_in).unscale(dim_in as f64);
    let marg_dev = max_abs_diff(&marginal, &target) * dim_in as f64;
    let min_eig = qcore::hermitian_eigenvalues(choi)
        .first()
        .copied()
        .unwrap_or(0.0);
    Ok(marg_dev.max(-min_eig))
}

#[derive(Debug, Clone)]
pub struct StinespringIsometry {
    pub v: CMatrix,
    pub dim_out: usize,
    pub dim_env: usize,
}

impl StinespringIsometry {
    pub fn isometry_deviation(&self) -> f64 {
        max_abs_diff(&(self.v.adjoint() * &self.v), &identity(self.v.ncols()))
    }

    /// `V ρ V†` on B ⊗ E.
    pub fn dilate(&self, rho: &CMatrix) -> CMatrix {
        &self.v * rho * self.v.adjoint()
    }

    fn layout(&self) -> SystemLayout {
        SystemLayout::bipartite(self.dim_out, self.dim_env).expect("positive dims")
    }

    pub fn output(&self, rho: &CMatrix) -> Result<CMatrix> {
        qcore::partial_trace(&self.dilate(rho), &self.layout(), &[0])
    }

    pub fn environment(&self, rho: &CMatrix) -> Result<CMatrix> {
        qcore::partial_trace(&self.dilate(rho), &self.layout(), &[1])
    }
}

/// Environment description of a generalized dephasing channel `U|i⟩ = |i⟩|φ_i⟩`.
#[derive(Debug, Clone)]
pub enum GeneralizedDephasingSpec {
    /// Unit environment vectors, one per basis state.
    EnvStates(Vec<CVector>),
    /// `d × d` Gram matrix `G_ij = ⟨φ_i|φ_j⟩`.
    Gram(CMatrix),
}

pub const GRAM_TOL: f64 = 1e-9;

impl GeneralizedDephasingSpec {
    /// Gram matrix with unit diagonal and every off-diagonal overlap equal to `overlap`.
    pub fn uniform_overlap(d: usize, overlap: f64) -> Self {
        let g = CMatrix::from_fn(d, d, |i, j| if i == j { c(1.0, 0.0) } else { c(overlap, 0.0) });
        GeneralizedDephasingSpec::Gram(g)
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::EnvStates(v) => v.len(),
            Self::Gram(g) => g.nrows(),
        }
    }

    /// Environment vectors as the columns of a matrix `W` with `W†W = G`.
    fn env_matrix(&self) -> Result<CMatrix> {
        match self {
            Self::EnvStates(states) => {
                let d = states.len();
                if d == 0 {
                    return Err(Error::Validation("no environment states".into()));
                }
                let m = states[0].len();
                let mut w = CMatrix::zeros(m, d);
                for (i, s) in states.iter().enumerate() {
                    if s.len() != m {
                        return Err(Error::dim("environment states differ in dimension"));
                    }
                    if (s.norm() - 1.0).abs() > GRAM_TOL {
                        return Err(Error::Validation(format!(
                            "environment state {i} has norm {}",
                            s.norm()
                        )));
                    }
                    w.set_column(i, s);
                }
                Ok(w)
            }
            Self::Gram(g) => {
                let d = g.nrows();
                if !g.is_square() || d == 0 {
                    return Err(Error::dim("Gram matrix must be square and nonempty"));
                }
                if qcore::hermitian_deviation(g) > GRAM_TOL {
                    return Err(Error::Validation("Gram matrix is not Hermitian".into()));
                }
                for i in 0..d {
                    if (g[(i, i)] - c(1.0, 0.0)).norm() > GRAM_TOL {
                        return Err(Error::Validation(format!("Gram diagonal entry {i} is not 1")));
                    }
                }
                let (vals, vecs) = qcore::hermitian_eigen(g);
                if vals.last().copied().unwrap_or(0.0) < -GRAM_TOL {
                    return Err(Error::Validation("Gram matrix is not PSD".into()));
                }
                // W = sqrt(Λ) U†
                let s = qcore::diag(&vals.iter().map(|&x| x.max(0.0).sqrt()).collect::<Vec<_>>());
                Ok(s * vecs.adjoint())
            }
        }
    }
}

pub fn identity_channel(d: usize) -> Result<KrausChannel> {
    check_dim(d)?;
    KrausChannel::named(format!("identity({d})"), vec![identity(d)], d, d)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn pauli_z() -> CMatrix {
    qcore::diag(&[1.0, -1.0])
}

/// Qubit dephasing applying `σ_z` with probability `q`; coherences shrink by `1 − 2q`.
pub fn dephasing_qubit(q: f64) -> Result<KrausChannel> {
    check_unit("q", q)?;
    KrausChannel::named(
        format!("dephasing({q})"),
        vec![identity(2).scale((1.0 - q).sqrt()), pauli_z().scale(q.sqrt())],
        2,
        2,
    )
}

pub fn generalized_dephasing(spec: &GeneralizedDephasingSpec) -> Result<KrausChannel> {
    let d = spec.dim();
    check_dim(d)?;
    let w = spec.env_matrix()?;
    let m = w.nrows();
    // K_k = Σ_i ⟨k|φ_i⟩ |i⟩⟨i|
    let kraus: Vec<CMatrix> = (0..m)
        .map(|k| CMatrix::from_fn(d, d, |i, j| if i == j { w[(k, i)] } else { c(0.0, 0.0) }))
        .filter(|op| op.iter().any(|z| z.norm() > 0.0))
        .collect();
    KrausChannel::named(format!("generalized_dephasing({d})"), kraus, d, d)
}

/// Generalized Weyl operators `X^a Z^b` on `C^d`.
fn weyl(d: usize, a: usize, b: usize) -> CMatrix {
    let omega = 2.0 * std::f64::consts::PI / d as f64;
    CMatrix::from_fn(d, d, |row, col| {
        if row == (col + a) % d {
            Complex64::from_polar(1.0, omega * (b * col) as f64)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `ρ ↦ (1 − p)ρ + p/(d² − 1) Σ W ρ W†` over the non-identity Weyl operators.
/// For `d = 2` this is `(1 − p)ρ + (p/3)(XρX + YρY + ZρZ)`.
pub fn depolarizing(p: f64, d: usize) -> Result<KrausChannel> {
    check_unit("p", p)?;
    check_dim(d)?;
    let mut kraus = vec![identity(d).scale((1.0 - p).sqrt())];
    let w = (p / (d * d - 1) as f64).sqrt();
    if d == 2 {
        kraus.extend([pauli_x(), pauli_y(), pauli_z()].into_iter().map(|m| m.scale(w)));
    } else {
        for a in 0..d {
            for b in 0..d {
                if a != 0 || b != 0 {
                    kraus.push(weyl(d, a, b).scale(w));
                }
            }
        }
    }
    KrausChannel::named(format!("depolarizing({p})"), kraus, d, d)
}

/// Erasure channel `C^d → C^{d+1}`; the last output basis vector flags an erasure.
pub fn erasure(p: f64, d: usize) -> Result<KrausChannel> {
    check_unit("p", p)?;
    check_dim(d)?;
    let mut kraus = vec![CMatrix::from_fn(d + 1, d, |i, j| {
        if i == j {
            c((1.0 - p).sqrt(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    })];
    for i in 0..d {
        let mut k = CMatrix::zeros(d + 1, d);
        k[(d, i)] = c(p.sqrt(), 0.0);
        kraus.push(k);
    }
    KrausChannel::named(format!("erasure({p})"), kraus, d, d + 1)
}

/// `Δ_d(ρ) = Σ |i⟩⟨i|ρ|i⟩⟨i|`.
pub fn completely_dephasing(d: usize) -> Result<KrausChannel> {
    check_dim(d)?;
    let kraus = (0..d).map(|i| qcore::outer(&basis_ket(d, i))).collect();
    KrausChannel::named(format!("completely_dephasing({d})"), kraus, d, d)
}

/// The qutrit-to-qubit channel with Kraus operators `|0⟩⟨0|, |ε+⟩⟨1|, |ε−⟩⟨2|`,
/// `|ε±⟩ = ½|0⟩ ± (√3/2)|1⟩`.
pub fn trine() -> Result<KrausChannel> {
    let s = 3f64.sqrt() / 2.0;
    let targets = [[1.0, 0.0], [0.5, s], [0.5, -s]];
    let kraus = targets
        .iter()
        .enumerate()
        .map(|(col, t)| {
            let mut k = CMatrix::zeros(2, 3);
            k[(0, col)] = c(t[0], 0.0);
            k[(1, col)] = c(t[1], 0.0);
            k
        })
        .collect();
    KrausChannel::named("trine", kraus, 3, 2)
}

/// A random channel with `kraus_count` operators, from the isometry of a Haar-random
/// `(dim_out·kraus_count) × dim_in` Ginibre matrix's QR factor.
pub fn random_channel<R: rand::Rng + ?Sized>(
    dim_in: usize,
    dim_out: usize,
    kraus_count: usize,
    rng: &mut R,
) -> Result<KrausChannel> {
    if dim_out * kraus_count < dim_in {
        return Err(Error::dim(format!(
            "{kraus_count} Kraus operators of shape {dim_out}x{dim_in} cannot be trace preserving"
        )));
    }
    let iso = qcore::ginibre(dim_out * kraus_count, dim_in, rng).qr().q();
    let kraus = (0..kraus_count)
        .map(|k| CMatrix::from_fn(dim_out, dim_in, |b, i| iso[(b * kraus_count + k, i)]))
        .collect();
    KrausChannel::named("random", kraus, dim_in, dim_out)
}

/// Parsed channel config file.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelConfig {
    pub kind: ChannelKind,
    pub dim: Option<usize>,
    pub param: Option<f64>,
    pub kraus: Option<Vec<Vec<Complex64>>>,
    pub dim_out: Option<usize>,
    pub env_states: Option<Vec<Vec<Complex64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Identity,
    Dephasing,
    GeneralizedDephasing,
    Depolarizing,
    Erasure,
    CompletelyDephasing,
    Trine,
    Kraus,
}

impl ChannelKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "identity" => Self::Identity,
            "dephasing" => Self::Dephasing,
            "generalized_dephasing" => Self::GeneralizedDephasing,
            "depolarizing" => Self::Depolarizing,
            "erasure" => Self::Erasure,
            "completely_dephasing" => Self::CompletelyDephasing,
            "trine" => Self::Trine,
            "kraus" => Self::Kraus,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::Dephasing => "dephasing",
            Self::GeneralizedDephasing => "generalized_dephasing",
            Self::Depolarizing => "depolarizing",
            Self::Erasure => "erasure",
            Self::CompletelyDephasing => "completely_dephasing",
            Self::Trine => "trine",
            Self::Kraus => "kraus",
        }
    }
}

fn parse_complex(v: &Value, field: &str) -> Result<Complex64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::config(field, "expected a [re, im] pair"))?;
    let re = pair[0]
        .as_f64()
        .ok_or_else(|| Error::config(field, "real part is not a number"))?;
    let im = pair[1]
        .as_f64()
        .ok_or_else(|| Error::config(field, "imaginary part is not a number"))?;
    Ok(c(re, im))
}

fn parse_complex_lists(v: &Value, field: &str) -> Result<Vec<Vec<Complex64>>> {
    let outer = v
        .as_array()
        .ok_or_else(|| Error::config(field, "expected a list of lists of [re, im] pairs"))?;
    outer
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let entries = op
                .as_array()
                .ok_or_else(|| Error::config(format!("{field}[{i}]"), "expected a list of [re, im] pairs"))?;
            entries
                .iter()
                .enumerate()
                .map(|(j, e)| parse_complex(e, &format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

impl ChannelConfig {
    const FIELDS: [&'static str; 6] = ["kind", "dim", "param", "kraus", "dim_out", "env_states"];

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::config("<document>", e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::config("<document>", "expected a JSON object"))?;
        if let Some(unknown) = obj.keys().find(|k| !Self::FIELDS.contains(&k.as_str())) {
            return Err(Error::config(unknown.clone(), "unknown field"));
        }
        let kind_str = obj
            .get("kind")
            .ok_or_else(|| Error::config("kind", "missing"))?
            .as_str()
            .ok_or_else(|| Error::config("kind", "expected a string"))?;
        let kind = ChannelKind::parse(kind_str)
            .ok_or_else(|| Error::config("kind", format!("unknown channel kind `{kind_str}`")))?;
        let count = |name: &str| -> Result<Option<usize>> {
            match obj.get(name) {
                None | Some(Value::Null) => Ok(None),
                Some(v) => v
                    .as_u64()
                    .map(|x| Some(x as usize))
                    .ok_or_else(|| Error::config(name, "expected a nonnegative integer")),
            }
        };
        let dim = count("dim")?;
        let dim_out = count("dim_out")?;
        let param = match obj.get("param") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_f64()
                    .ok_or_else(|| Error::config("param", "expected a number"))?,
            ),
        };
        let kraus = obj
            .get("kraus")
            .map(|v| parse_complex_lists(v, "kraus"))
            .transpose()?;
        let env_states = obj
            .get("env_states")
            .map(|v| parse_complex_lists(v, "env_states"))
            .transpose()?;
        Ok(Self {
            kind,
            dim,
            param,
            kraus,
            dim_out,
            env_states,
        })
    }

    /// Inline JSON echo used in output manifests.
    pub fn to_json(&self) -> Value {
        let pairs = |lists: &Vec<Vec<Complex64>>| -> Value {
            Value::Array(
                lists
                    .iter()
                    .map(|l| {
                        Value::Array(
                            l.iter()
                                .map(|z| serde_json::json!([z.re, z.im]))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let mut obj = serde_json::Map::new();
        obj.insert("kind".into(), self.kind.as_str().into());
        if let Some(d) = self.dim {
            obj.insert("dim".into(), d.into());
        }
        if let Some(p) = self.param {
            obj.insert("param".into(), p.into());
        }
        if let Some(d) = self.dim_out {
            obj.insert("dim_out".into(), d.into());
        }
        if let Some(k) = &self.kraus {
            obj.insert("kraus".into(), pairs(k));
        }
        if let Some(e) = &self.env_states {
            obj.insert("env_states".into(), pairs(e));
        }
        Value::Object(obj)
    }

    fn param_required(&self) -> Result<f64> {
        let p = self
            .param
            .ok_or_else(|| Error::config("param", format!("required for kind `{}`", self.kind.as_str())))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::config("param", format!("{p} is outside [0, 1]")));
        }
        Ok(p)
    }

    fn dim_or(&self, default: usize) -> Result<usize> {
        let d = self.dim.unwrap_or(default);
        if d < 2 {
            return Err(Error::config("dim", format!("{d} is below 2")));
        }
        if d > MAX_TENSOR_DIM {
            return Err(Error::config("dim", format!("{d} exceeds {MAX_TENSOR_DIM}")));
        }
        Ok(d)
    }

    fn fixed_dim(&self, expected: usize) -> Result<()> {
        match self.dim {
            Some(d) if d != expected => Err(Error::config(
                "dim",
                format!("kind `{}` has dimension {expected}, got {d}", self.kind.as_str()),
            )),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<KrausChannel> {
        let wrap = |field: &str, e: Error| match e {
            Error::Config { .. } => e,
            other => Error::config(field, other.to_string()),
        };
        match self.kind {
            ChannelKind::Identity => identity_channel(self.dim_or(2)?).map_err(|e| wrap("dim", e)),
            ChannelKind::Dephasing => {
                self.fixed_dim(2)?;
                dephasing_qubit(self.param_required()?).map_err(|e| wrap("param", e))
            }
            ChannelKind::GeneralizedDephasing => {
                let spec = match &self.env_states {
                    Some(states) => {
                        let d = states.len();
                        if let Some(dim) = self.dim {
                            if dim != d {
                                return Err(Error::config(
                                    "env_states",
                                    format!("{d} states given for dim {dim}"),
                                ));
                            }
                        }
                        GeneralizedDephasingSpec::EnvStates(
                            states.iter().map(|s| CVector::from_vec(s.clone())).collect(),
                        )
                    }
                    None => GeneralizedDephasingSpec::uniform_overlap(self.dim_or(2)?, self.param_required()?),
                };
                let field = if self.env_states.is_some() { "env_states" } else { "param" };
                generalized_dephasing(&spec).map_err(|e| wrap(field, e))
            }
            ChannelKind::Depolarizing => {
                depolarizing(self.param_required()?, self.dim_or(2)?).map_err(|e| wrap("param", e))
            }
            ChannelKind::Erasure => erasure(self.param_required()?, self.dim_or(2)?).map_err(|e| wrap("param", e)),
            ChannelKind::CompletelyDephasing => completely_dephasing(self.dim_or(2)?).map_err(|e| wrap("dim", e)),
            ChannelKind::Trine => {
                self.fixed_dim(3)?;
                trine()
            }
            ChannelKind::Kraus => {
                let ops = self
                    .kraus
                    .as_ref()
                    .ok_or_else(|| Error::config("kraus", "required for kind `kraus`"))?;
                let dim_in = self.dim.ok_or_else(|| Error::config("dim", "required for kind `kraus`"))?;
                if dim_in == 0 || dim_in > MAX_TENSOR_DIM {
                    return Err(Error::config("dim", format!("{dim_in} is out of range")));
                }
                let first = ops.first().ok_or_else(|| Error::config("kraus", "empty operator list"))?;
                let dim_out = match self.dim_out {
                    Some(d) => d,
                    None => {
                        if first.len() % dim_in != 0 {
                            return Err(Error::config(
                                "kraus[0]",
                                format!("{} entries is not a multiple of dim {dim_in}", first.len()),
                            ));
                        }
                        first.len() / dim_in
                    }
                };
                let mut mats = Vec::with_capacity(ops.len());
                for (i, op) in ops.iter().enumerate() {
                    if op.len() != dim_in * dim_out {
                        return Err(Error::config(
                            format!("kraus[{i}]"),
                            format!("expected {} entries, got {}", dim_in * dim_out, op.len()),
                        ));
                    }
                    mats.push(CMatrix::from_row_slice(dim_out, dim_in, op));
                }
                KrausChannel::named(format!("kraus({} ops)", mats.len()), mats, dim_in, dim_out)
                    .map_err(|e| wrap("kraus", e))
            }
        }
    }

    /// Short human-readable descriptor, e.g. `dephasing(param=0.1)`.
    pub fn descriptor(&self) -> String {
        let mut parts = Vec::new();
        if let Some(d) = self.dim {
            parts.push(format!("dim={d}"));
        }
        if let Some(p) = self.param {
            parts.push(format!("param={p}"));
        }
        if let Some(k) = &self.kraus {
            parts.push(format!("kraus={}", k.len()));
        }
        format!("{}({})", self.kind.as_str(), parts.join(","))
    }
}
