//! Simulated two-qubit polarization tomography.
//!
//! Nine local settings (`X`, `Y`, `Z` on each photon) are measured with
//! equal shot budgets. Outcomes per setting are ordered `(++, +-, -+, --)`
//! where `+` is the `+1` eigenstate (`H`, `D`, `R` for `Z`, `X`, `Y`).
//! Expectations are estimated from counts, inverted linearly and, when the
//! estimate is not positive semidefinite, repaired by clipping negative
//! eigenvalues and renormalizing.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, I, ONE, ZERO};
use crate::optics::{bd, hwp_on, propagate, Circuit, Rails};
use crate::qstate::{DensityMatrix, HyperState, PureState};
use crate::tol;

/// Photon pairs per second produced by the source.
pub const PAIR_RATE_HZ: f64 = 2400.0;
/// Fraction of produced pairs detected in coincidence.
pub const COINCIDENCE_EFFICIENCY: f64 = 0.2;

/// Coincidences collected per setting in `seconds` of integration.
pub fn shots_for_duration(seconds: f64) -> u64 {
    (PAIR_RATE_HZ * COINCIDENCE_EFFICIENCY * seconds).round().max(1.0) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliLabel {
    I,
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 4] = [PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];
    pub const MEASURED: [PauliLabel; 3] = [PauliLabel::X, PauliLabel::Y, PauliLabel::Z];

    pub fn matrix(self) -> ComplexMatrix {
        let m = match self {
            PauliLabel::I => [ONE, ZERO, ZERO, ONE],
            PauliLabel::X => [ZERO, ONE, ONE, ZERO],
            PauliLabel::Y => [ZERO, -I, I, ZERO],
            PauliLabel::Z => [ONE, ZERO, ZERO, -ONE],
        };
        ComplexMatrix::new(2, 2, m.to_vec()).expect("2x2")
    }

    /// `(+1 eigenvector, -1 eigenvector)`.
    fn eigenvectors(self) -> [[C64; 2]; 2] {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            PauliLabel::I | PauliLabel::Z => [[ONE, ZERO], [ZERO, ONE]],
            PauliLabel::X => [[s, s], [s, -s]],
            PauliLabel::Y => [[s, s * I], [s, -s * I]],
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A local measurement setting, photon A first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisPair(pub PauliLabel, pub PauliLabel);

impl BasisPair {
    /// The nine settings in `XX, XY, ..., ZZ` order.
    pub fn settings() -> Vec<BasisPair> {
        PauliLabel::MEASURED
            .iter()
            .flat_map(|&a| PauliLabel::MEASURED.iter().map(move |&b| BasisPair(a, b)))
            .collect()
    }

    /// Outcome probabilities `(++, +-, -+, --)`.
    pub fn probabilities(self, rho: &DensityMatrix) -> Result<[f64; 4]> {
        check_two_qubit(rho)?;
        let ea = self.0.eigenvectors();
        let eb = self.1.eigenvectors();
        let mut p = [0.0; 4];
        for (k, slot) in p.iter_mut().enumerate() {
            let (va, vb) = (ea[k / 2], eb[k % 2]);
            let v: Vec<C64> = (0..4).map(|i| va[i / 2] * vb[i % 2]).collect();
            let rv = rho.matrix().matvec(&v)?;
            let amp: C64 = v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum();
            *slot = amp.re.max(0.0);
        }
        let total: f64 = p.iter().sum();
        Ok(p.map(|x| x / total))
    }
}

impl fmt::Display for BasisPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

fn check_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { op: "tomography", left: (rho.dim(), rho.dim()), right: (4, 4) });
    }
    Ok(())
}

/// Counts for one setting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub basis: BasisPair,
    pub counts: [u64; 4],
    pub shots: u64,
}

impl MeasurementRecord {
    pub fn frequencies(&self) -> [f64; 4] {
        self.counts.map(|c| c as f64 / self.shots as f64)
    }
}

/// `<sigma_i (x) sigma_j>` indexed `[i][j]` over `I, X, Y, Z`.
pub type Expectations = [[f64; 4]; 4];

pub fn pauli_expectations(rho: &DensityMatrix) -> Result<Expectations> {
    check_two_qubit(rho)?;
    let mut e = [[0.0; 4]; 4];
    for a in PauliLabel::ALL {
        for b in PauliLabel::ALL {
            let op = a.matrix().kron(&b.matrix());
            e[a.index()][b.index()] = op.matmul(rho.matrix())?.trace().re;
        }
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReconstructionMethod {
    LinearInversion,
    Projected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconstruction {
    pub rho: DensityMatrix,
    pub method: ReconstructionMethod,
    pub fidelity_vs_target: Option<f64>,
    pub error_bar: Option<f64>,
}

/// `rho = 1/4 sum_ij <sigma_i sigma_j> sigma_i (x) sigma_j`, clipped to the
/// nearest positive semidefinite trace-one matrix if needed.
pub fn reconstruct(e: &Expectations) -> Result<Reconstruction> {
    if (e[0][0] - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!("<II> = {} must be 1", e[0][0])));
    }
    let mut m = ComplexMatrix::zeros(4, 4);
    for a in PauliLabel::ALL {
        for b in PauliLabel::ALL {
            let op = a.matrix().kron(&b.matrix());
            m.add_scaled(&op, C64::new(0.25 * e[a.index()][b.index()], 0.0))?;
        }
    }
    let (values, vectors) = m.hermitian_eigen()?;
    if values[0] >= -tol::PSD_FLOOR {
        return Ok(Reconstruction {
            rho: DensityMatrix::new(m)?,
            method: ReconstructionMethod::LinearInversion,
            fidelity_vs_target: None,
            error_bar: None,
        });
    }
    let clipped: Vec<f64> = values.iter().map(|v| v.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    let mut repaired = ComplexMatrix::zeros(4, 4);
    for (k, &lambda) in clipped.iter().enumerate() {
        if lambda > 0.0 {
            let v: Vec<C64> = (0..4).map(|r| vectors[(r, k)]).collect();
            repaired.add_scaled(&ComplexMatrix::outer(&v, &v), C64::new(lambda / total, 0.0))?;
        }
    }
    let repaired = repaired.add(&repaired.adjoint())?.scale_real(0.5);
    Ok(Reconstruction {
        rho: DensityMatrix::new(repaired)?,
        method: ReconstructionMethod::Projected,
        fidelity_vs_target: None,
        error_bar: None,
    })
}

fn multinomial<R: Rng + ?Sized>(shots: u64, p: &[f64; 4], rng: &mut R) -> [u64; 4] {
    let mut counts = [0u64; 4];
    let mut remaining = shots;
    let mut mass = 1.0;
    for k in 0..3 {
        if remaining == 0 {
            break;
        }
        let q = if mass > 0.0 { (p[k] / mass).clamp(0.0, 1.0) } else { 0.0 };
        counts[k] = Binomial::new(remaining, q).expect("q in [0, 1]").sample(rng);
        remaining -= counts[k];
        mass -= p[k];
    }
    counts[3] = remaining;
    counts
}

/// Multinomial draw of `shots` outcomes using the supplied generator.
pub fn sample_counts_with<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    basis: BasisPair,
    shots: u64,
    rng: &mut R,
) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let p = basis.probabilities(rho)?;
    Ok(MeasurementRecord { basis, counts: multinomial(shots, &p, rng), shots })
}

/// Seeded multinomial draw; identical seeds give identical counts.
pub fn sample_counts(rho: &DensityMatrix, basis: BasisPair, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    sample_counts_with(rho, basis, shots, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Pauli expectations estimated from the nine settings. Single-photon terms
/// pool the three settings that share the photon's basis.
pub fn expectations_from_records(records: &[MeasurementRecord]) -> Result<Expectations> {
    let mut sum = [[0.0; 4]; 4];
    let mut weight = [[0.0; 4]; 4];
    for rec in records {
        if rec.counts.iter().sum::<u64>() != rec.shots || rec.shots == 0 {
            return Err(Error::InvalidArgument(format!("counts for {} do not sum to shots", rec.basis)));
        }
        let n = rec.shots as f64;
        let [pp, pm, mp, mm] = rec.counts.map(|c| c as f64);
        let (a, b) = (rec.basis.0.index(), rec.basis.1.index());
        let terms = [((a, b), pp - pm - mp + mm), ((a, 0), pp + pm - mp - mm), ((0, b), pp - pm + mp - mm)];
        for ((i, j), v) in terms {
            sum[i][j] += v;
            weight[i][j] += n;
        }
    }
    let mut e = [[0.0; 4]; 4];
    e[0][0] = 1.0;
    for i in 0..4 {
        for j in 0..4 {
            if (i, j) != (0, 0) {
                if weight[i][j] == 0.0 {
                    return Err(Error::InvalidArgument("missing measurement settings".into()));
                }
                e[i][j] = sum[i][j] / weight[i][j];
            }
        }
    }
    Ok(e)
}

/// Exact probabilities or a finite multinomial budget per setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    Exact,
    Shots(u64),
}

/// Measures all nine settings and reconstructs. Settings draw from one
/// generator seeded with `seed`, in [`BasisPair::settings`] order.
pub fn simulate_tomography(rho: &DensityMatrix, sampling: Sampling, seed: u64) -> Result<(Vec<MeasurementRecord>, Reconstruction)> {
    check_two_qubit(rho)?;
    match sampling {
        Sampling::Exact => Ok((Vec::new(), reconstruct(&pauli_expectations(rho)?)?)),
        Sampling::Shots(shots) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let records = BasisPair::settings()
                .into_iter()
                .map(|basis| sample_counts_with(rho, basis, shots, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let rec = reconstruct(&expectations_from_records(&records)?)?;
            Ok((records, rec))
        }
    }
}

/// Seed for trial `k`, decorrelated from the base seed (SplitMix64 step).
pub fn trial_seed(seed: u64, k: u64) -> u64 {
    let mut z = seed.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Monte Carlo standard deviation of the reconstructed fidelity over
/// `trials` resampled tomography runs. Zero in exact mode.
pub fn error_bar(rho: &DensityMatrix, target: &PureState, sampling: Sampling, trials: usize, seed: u64) -> Result<f64> {
    if trials < 2 {
        return Err(Error::InvalidArgument("error bars need at least 2 trials".into()));
    }
    let Sampling::Shots(_) = sampling else {
        return Ok(0.0);
    };
    let fids = (0..trials as u64)
        .into_par_iter()
        .map(|k| simulate_tomography(rho, sampling, trial_seed(seed, k))?.1.rho.fidelity(target))
        .collect::<Result<Vec<f64>>>()?;
    let mean = fids.iter().sum::<f64>() / fids.len() as f64;
    let var = fids.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (fids.len() - 1) as f64;
    Ok(var.sqrt())
}

/// Full estimate: reconstruction from `seed`, fidelity against `target` and
/// an error bar from `trials` further resamples.
pub fn estimate(rho: &DensityMatrix, target: &PureState, sampling: Sampling, trials: usize, seed: u64) -> Result<Reconstruction> {
    let (_, mut rec) = simulate_tomography(rho, sampling, seed)?;
    rec.fidelity_vs_target = Some(rec.rho.fidelity(target)?);
    rec.error_bar = Some(error_bar(rho, target, sampling, trials, trial_seed(seed, u64::MAX))?);
    Ok(rec)
}

/// Beam-displacer stages that exchange each photon's spatial and
/// polarization qubits, so polarization analysis reads the spatial state.
pub fn spatial_measurement_map() -> Circuit {
    Circuit::symmetric(vec![bd(), hwp_on(45.0, Rails::Rail2), bd()])
}

/// Two-qubit state that polarization tomography sees after the conversion.
pub fn spatial_as_polarization(state: &HyperState) -> Result<DensityMatrix> {
    let converted = HyperState::from_full(propagate(state, &spatial_measurement_map())?)?;
    Ok(converted.polarization())
}
