//! Quantum-state primitives: pure states, density operators, the Bell basis
//! and the polarization/spatial hyperentangled state of a photon pair.
//!
//! # Mode ordering
//!
//! A single photon carries a spatial qubit (rail 1 or rail 2) and a
//! polarization qubit (H or V). Its 4-dimensional space is ordered
//! spatial-major:
//!
//! | index | mode    |
//! |-------|---------|
//! | 0     | rail1 H |
//! | 1     | rail1 V |
//! | 2     | rail2 H |
//! | 3     | rail2 V |
//!
//! The 16-dimensional pair space is photon A (x) photon B, i.e. the qubit
//! order is `(spatial A, polarization A, spatial B, polarization B)`.
//! Two-qubit polarization states are ordered `(pol A, pol B)` and two-qubit
//! spatial states `(spatial A, spatial B)`, both with `H`/rail1 as `|0>`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ONE, ZERO};
use crate::tol;

/// Dimensions a [`DensityMatrix`] may have.
pub const SUPPORTED_DIMS: [usize; 4] = [2, 4, 8, 16];

fn check_supported(dim: usize) -> Result<()> {
    if SUPPORTED_DIMS.contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        check_supported(amplitudes.len())?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > tol::ALGEBRAIC {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes `amplitudes` before validating.
    pub fn normalize(amplitudes: Vec<C64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "inner",
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn kron(&self, other: &PureState) -> Result<PureState> {
        let dim = self.dim() * other.dim();
        check_supported(dim)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(Self { amplitudes })
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix { matrix: ComplexMatrix::outer(&self.amplitudes, &self.amplitudes) }
    }
}

/// The four Bell states, in the weight order used by [`BellDiagonal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] =
        [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Amplitudes over `(HH, HV, VH, VV)`.
    pub fn amplitudes(self) -> [C64; 4] {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            BellKind::PhiPlus => [h, ZERO, ZERO, h],
            BellKind::PhiMinus => [h, ZERO, ZERO, -h],
            BellKind::PsiPlus => [ZERO, h, h, ZERO],
            BellKind::PsiMinus => [ZERO, h, -h, ZERO],
        }
    }

    /// True for the two states with perfectly correlated `Z` outcomes.
    pub fn is_phi(self) -> bool {
        matches!(self, BellKind::PhiPlus | BellKind::PhiMinus)
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        })
    }
}

impl std::str::FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown Bell state `{s}` (phi+, phi-, psi+, psi-)")))
    }
}

/// `|phi+> = (|HH> + |VV>)/sqrt2`, `|phi-> = (|HH> - |VV>)/sqrt2`,
/// `|psi+-> = (|HV> +- |VH>)/sqrt2`.
pub fn bell_state(kind: BellKind) -> PureState {
    PureState { amplitudes: kind.amplitudes().to_vec() }
}

/// A trace-one, Hermitian, positive semidefinite operator.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `matrix` against the density-operator invariants.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self { matrix };
        rho.validate()?;
        Ok(rho)
    }

    /// Divides by the trace, then validates.
    pub fn normalized(matrix: ComplexMatrix) -> Result<Self> {
        let tr = matrix.trace().re;
        if tr <= 0.0 || !tr.is_finite() {
            return Err(Error::TraceNotOne(tr));
        }
        Self::new(matrix.scale_real(1.0 / tr))
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_supported(dim)?;
        Ok(Self { matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) })
    }

    /// Re-checks the invariants: shape, Hermiticity, unit trace and PSD.
    pub fn validate(&self) -> Result<()> {
        let m = &self.matrix;
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                op: "density",
                left: m.shape(),
                right: (m.cols(), m.rows()),
            });
        }
        check_supported(m.rows())?;
        let herm = m.hermiticity_defect();
        if herm > tol::ALGEBRAIC {
            return Err(Error::NotHermitian(herm));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol::ALGEBRAIC || tr.im.abs() > tol::ALGEBRAIC {
            return Err(Error::TraceNotOne(tr.re));
        }
        let min_eig = m.min_eigenvalue()?;
        if min_eig < -tol::PSD_FLOOR {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        tensor(self, other)
    }

    pub fn fidelity(&self, target: &PureState) -> Result<f64> {
        fidelity(self, target)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix.hermitian_eigen().map(|(v, _)| v).unwrap_or_default()
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let m = &self.matrix;
        m.as_slice().iter().map(|x| x.norm_sqr()).sum()
    }

    /// Reorders the qubits of a `2^n`-dimensional state. Qubit 0 is the most
    /// significant bit of the index; new qubit `k` is old qubit `order[k]`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<DensityMatrix> {
        let n = order.len();
        if 1usize << n != self.dim() {
            return Err(Error::InvalidFactorization { dims: vec![2; n], total: self.dim() });
        }
        let mut seen = vec![false; n];
        for &q in order {
            if q >= n || std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidSubsystem(order.to_vec()));
            }
        }
        let map = |new: usize| -> usize {
            (0..n).fold(0, |old, k| {
                let bit = (new >> (n - 1 - k)) & 1;
                old | (bit << (n - 1 - order[k]))
            })
        };
        let perm: Vec<usize> = (0..self.dim()).map(map).collect();
        let matrix = ComplexMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            self.matrix[(perm[r], perm[c])]
        });
        Ok(Self { matrix })
    }

    pub fn partial_trace(&self, dims: &[usize], trace_out: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, dims, trace_out)
    }

    /// Convex combination `sum_k w_k rho_k`. Weights must be a distribution.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::InvalidArgument("empty mixture".into()));
        };
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > tol::ALGEBRAIC {
            return Err(Error::InvalidWeights(total));
        }
        let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            acc.add_scaled(&rho.matrix, C64::new(*w, 0.0))?;
        }
        Ok(Self { matrix: acc })
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix({:?})", self.matrix)
    }
}

/// Shared on-disk matrix layout: `{dim, re, im}` with row-major entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.rows(),
            re: m.as_slice().iter().map(|x| x.re).collect(),
            im: m.as_slice().iter().map(|x| x.im).collect(),
        }
    }
}

impl From<DensityMatrix> for MatrixJson {
    fn from(rho: DensityMatrix) -> Self {
        Self::from(&rho.matrix)
    }
}

impl TryFrom<MatrixJson> for DensityMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        let n = json.dim * json.dim;
        if json.re.len() != n || json.im.len() != n {
            return Err(Error::EntryCount { expected: n, found: json.re.len().min(json.im.len()) });
        }
        let data = json.re.iter().zip(&json.im).map(|(&re, &im)| C64::new(re, im)).collect();
        DensityMatrix::new(ComplexMatrix::new(json.dim, json.dim, data)?)
    }
}

/// Kronecker product of two states; `a` is the outer factor.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let dim = a.dim() * b.dim();
    if dim > 16 {
        return Err(Error::UnsupportedDimension(dim));
    }
    check_supported(dim)?;
    Ok(DensityMatrix { matrix: a.matrix.kron(&b.matrix) })
}

/// `<target|rho|target>`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    if rho.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            op: "fidelity",
            left: rho.matrix.shape(),
            right: (target.dim(), 1),
        });
    }
    let v = rho.matrix.matvec(target.amplitudes())?;
    let f: C64 = target.amplitudes().iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
    Ok(f.re.clamp(0.0, 1.0))
}

/// Traces out the subsystems listed in `trace_out` from a state factored as
/// `dims[0] (x) dims[1] (x) ...`. Remaining subsystems keep their order.
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], trace_out: &[usize]) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if total != rho.dim() || dims.contains(&0) {
        return Err(Error::InvalidFactorization { dims: dims.to_vec(), total: rho.dim() });
    }
    let mut traced = vec![false; dims.len()];
    for &k in trace_out {
        if k >= dims.len() || std::mem::replace(&mut traced[k], true) {
            return Err(Error::InvalidSubsystem(trace_out.to_vec()));
        }
    }
    let kept_dims: Vec<usize> = (0..dims.len()).filter(|&k| !traced[k]).map(|k| dims[k]).collect();
    let traced_dims: Vec<usize> = (0..dims.len()).filter(|&k| traced[k]).map(|k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let sum_dim: usize = traced_dims.iter().product();
    if out_dim > 1 {
        check_supported(out_dim)?;
    }

    let digits = |mut x: usize, radix: &[usize]| -> Vec<usize> {
        let mut d = vec![0; radix.len()];
        for k in (0..radix.len()).rev() {
            d[k] = x % radix[k];
            x /= radix[k];
        }
        d
    };
    // Full index from kept and traced digit strings.
    let compose = |kept: &[usize], tr: &[usize]| -> usize {
        let (mut ki, mut ti) = (0, 0);
        dims.iter().enumerate().fold(0, |acc, (k, &d)| {
            let digit = if traced[k] {
                ti += 1;
                tr[ti - 1]
            } else {
                ki += 1;
                kept[ki - 1]
            };
            acc * d + digit
        })
    };

    let kept_digits: Vec<Vec<usize>> = (0..out_dim).map(|i| digits(i, &kept_dims)).collect();
    let traced_digits: Vec<Vec<usize>> = (0..sum_dim).map(|i| digits(i, &traced_dims)).collect();
    let matrix = ComplexMatrix::from_fn(out_dim, out_dim, |r, c| {
        traced_digits
            .iter()
            .map(|t| rho.matrix[(compose(&kept_digits[r], t), compose(&kept_digits[c], t))])
            .sum()
    });
    Ok(DensityMatrix { matrix })
}

/// Weights of a Bell-diagonal two-qubit state, ordered `(phi+, phi-, psi+, psi-)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonal {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
}

impl BellDiagonal {
    pub fn new(f1: f64, f2: f64, f3: f64, f4: f64) -> Result<Self> {
        let w = [f1, f2, f3, f4];
        let sum: f64 = w.iter().sum();
        if w.iter().any(|x| !(0.0..=1.0).contains(x)) || (sum - 1.0).abs() > tol::ALGEBRAIC {
            return Err(Error::InvalidWeights(sum));
        }
        Ok(Self { f1, f2, f3, f4 })
    }

    pub fn from_weights(w: [f64; 4]) -> Result<Self> {
        Self::new(w[0], w[1], w[2], w[3])
    }

    /// Scales nonnegative raw weights to unit sum.
    pub fn normalize(w: [f64; 4]) -> Result<Self> {
        let sum: f64 = w.iter().sum();
        if w.iter().any(|x| *x < 0.0 || !x.is_finite()) || sum <= 0.0 {
            return Err(Error::InvalidWeights(sum));
        }
        Self::from_weights(w.map(|x| x / sum))
    }

    /// Weight `f` on `phi+`, the rest spread evenly (Werner form).
    pub fn isotropic(f: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidProbability { name: "fidelity", value: f });
        }
        let r = (1.0 - f) / 3.0;
        Self::new(f, r, r, r)
    }

    pub fn pure(kind: BellKind) -> Self {
        let mut w = [0.0; 4];
        w[kind.index()] = 1.0;
        Self { f1: w[0], f2: w[1], f3: w[2], f4: w[3] }
    }

    pub fn weights(&self) -> [f64; 4] {
        [self.f1, self.f2, self.f3, self.f4]
    }

    pub fn weight(&self, kind: BellKind) -> f64 {
        self.weights()[kind.index()]
    }

    pub fn to_density(&self) -> DensityMatrix {
        bell_diagonal_to_density(self)
    }

    /// Draws weights uniformly from the probability simplex.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let e: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
        Self::normalize(e).expect("exponential draws are positive")
    }
}

/// `sum_i f_i |bell_i><bell_i|`.
pub fn bell_diagonal_to_density(w: &BellDiagonal) -> DensityMatrix {
    let mut acc = ComplexMatrix::zeros(4, 4);
    for kind in BellKind::ALL {
        let weight = w.weight(kind);
        if weight != 0.0 {
            let amp = kind.amplitudes();
            let proj = ComplexMatrix::outer(&amp, &amp);
            acc.add_scaled(&proj, C64::new(weight, 0.0)).expect("4x4 shapes agree");
        }
    }
    DensityMatrix { matrix: acc }
}

/// Bell-basis readout of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellReadout {
    pub weights: BellDiagonal,
    /// Set when the diagonal weights did not sum to 1 within `1e-9` and were
    /// rescaled.
    pub renormalized: bool,
    /// Largest off-diagonal modulus in the Bell basis that was dropped.
    pub discarded_coherence: f64,
}

/// `f_i = <bell_i|rho|bell_i>`. Coherences between Bell states are dropped.
pub fn density_to_bell_diagonal(rho: &DensityMatrix) -> Result<BellReadout> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { op: "bell readout", left: rho.matrix.shape(), right: (4, 4) });
    }
    let vecs: Vec<Vec<C64>> = BellKind::ALL.iter().map(|k| k.amplitudes().to_vec()).collect();
    let images: Vec<Vec<C64>> = vecs.iter().map(|v| rho.matrix.matvec(v)).collect::<Result<_>>()?;
    let elem = |a: usize, b: usize| -> C64 {
        vecs[a].iter().zip(&images[b]).map(|(x, y)| x.conj() * y).sum()
    };
    let mut raw = [0.0; 4];
    let mut coherence: f64 = 0.0;
    for a in 0..4 {
        raw[a] = elem(a, a).re.max(0.0);
        for b in 0..4 {
            if a != b {
                coherence = coherence.max(elem(a, b).norm());
            }
        }
    }
    let sum: f64 = raw.iter().sum();
    let renormalized = (sum - 1.0).abs() > tol::RENORMALIZE;
    let weights = if renormalized {
        BellDiagonal::normalize(raw)?
    } else {
        // Tiny rounding residue goes onto the largest weight.
        let k = (0..4).max_by(|&a, &b| raw[a].total_cmp(&raw[b])).unwrap_or(0);
        raw[k] += 1.0 - sum;
        BellDiagonal::from_weights(raw.map(|x| x.clamp(0.0, 1.0)))?
    };
    Ok(BellReadout { weights, renormalized, discarded_coherence: coherence })
}

/// Two-photon state carrying a polarization and a spatial qubit per photon.
#[derive(Debug, Clone, PartialEq)]
pub enum HyperState {
    /// `rho_pol (x) rho_spat`, each a 4-dimensional two-qubit state.
    Product { pol: DensityMatrix, spat: DensityMatrix },
    /// Arbitrary 16-dimensional state in photon-major mode order.
    Full(DensityMatrix),
}

/// Qubit permutation taking `(pol A, pol B, spat A, spat B)` to photon-major
/// `(spat A, pol A, spat B, pol B)`.
pub const PRODUCT_TO_PHOTON_ORDER: [usize; 4] = [2, 0, 3, 1];

impl HyperState {
    pub fn product(pol: DensityMatrix, spat: DensityMatrix) -> Result<Self> {
        for rho in [&pol, &spat] {
            if rho.dim() != 4 {
                return Err(Error::DimensionMismatch {
                    op: "hyperstate",
                    left: rho.matrix.shape(),
                    right: (4, 4),
                });
            }
        }
        Ok(Self::Product { pol, spat })
    }

    pub fn from_full(rho: DensityMatrix) -> Result<Self> {
        if rho.dim() != 16 {
            return Err(Error::DimensionMismatch { op: "hyperstate", left: rho.matrix.shape(), right: (16, 16) });
        }
        Ok(Self::Full(rho))
    }

    /// Bell-diagonal polarization noise on top of an ideal `|phi+>` spatial state.
    pub fn from_bell_diagonal(pol: &BellDiagonal) -> Self {
        Self::Product { pol: pol.to_density(), spat: bell_state(BellKind::PhiPlus).projector() }
    }

    /// `|phi+>_P (x) |phi+>_S`.
    pub fn ideal() -> Self {
        Self::from_bell_diagonal(&BellDiagonal::pure(BellKind::PhiPlus))
    }

    /// The 16-dimensional density matrix in photon-major mode order.
    pub fn full(&self) -> DensityMatrix {
        match self {
            HyperState::Full(rho) => rho.clone(),
            HyperState::Product { pol, spat } => DensityMatrix::from_matrix_unchecked(pol.matrix.kron(&spat.matrix))
                .permute_qubits(&PRODUCT_TO_PHOTON_ORDER)
                .expect("16-dimensional four-qubit state"),
        }
    }

    /// Reduced two-qubit polarization state.
    pub fn polarization(&self) -> DensityMatrix {
        match self {
            HyperState::Product { pol, .. } => pol.clone(),
            HyperState::Full(rho) => partial_trace(rho, &[2, 2, 2, 2], &[0, 2]).expect("16-dim"),
        }
    }

    /// Reduced two-qubit spatial state.
    pub fn spatial(&self) -> DensityMatrix {
        match self {
            HyperState::Product { spat, .. } => spat.clone(),
            HyperState::Full(rho) => partial_trace(rho, &[2, 2, 2, 2], &[1, 3]).expect("16-dim"),
        }
    }
}

/// Random mixed state `G G^dagger / Tr` from a complex Ginibre matrix `G`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_supported(dim)?;
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let m = g.matmul(&g.adjoint())?;
    let tr = m.trace().re;
    // Symmetrize away rounding so the Hermiticity check is exact.
    let m = m.add(&m.adjoint())?.scale_real(0.5 / tr);
    DensityMatrix::new(m)
}

/// Random pure state drawn from the unitarily invariant measure.
pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<PureState> {
    check_supported(dim)?;
    let v = (0..dim).map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect();
    PureState::normalize(v)
}

/// Computational basis vector `|k>`.
pub fn basis_vector(dim: usize, k: usize) -> Vec<C64> {
    (0..dim).map(|i| if i == k { ONE } else { ZERO }).collect()
}
