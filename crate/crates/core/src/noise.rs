//! Pauli noise on the polarization qubits and the liquid-crystal duty-cycle
//! schedules that load it.
//!
//! Noise is applied to one photon. A schedule `(t1, t2, t3, t4)` holds the
//! identity, `sigma_x`, `sigma_y` and `sigma_z` settings for those durations
//! in each cycle; averaged over a cycle it is the Pauli channel with
//! probabilities proportional to the durations. `sigma_y` is realized as
//! `sigma_z sigma_x = i sigma_y`, which is the same channel.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ONE, ZERO};
use crate::optics::Photon;
use crate::qstate::{bell_state, partial_trace, BellDiagonal, BellKind, DensityMatrix};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Single-qubit operator, with `Y` as `Z X`.
    pub fn operator(self) -> ComplexMatrix {
        let m = match self {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, ONE, -ONE, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        ComplexMatrix::new(2, 2, m.to_vec()).expect("2x2")
    }

    /// The operator on one side of a two-qubit polarization state.
    pub fn on(self, side: Photon) -> ComplexMatrix {
        let id = ComplexMatrix::identity(2);
        match side {
            Photon::A => self.operator().kron(&id),
            Photon::B => id.kron(&self.operator()),
        }
    }

    /// Where each Bell state goes when `self` acts on one photon, indexed by
    /// [`BellKind::index`]. Global phases are ignored.
    pub fn bell_permutation(self) -> [BellKind; 4] {
        use BellKind::*;
        match self {
            Pauli::I => [PhiPlus, PhiMinus, PsiPlus, PsiMinus],
            Pauli::X => [PsiPlus, PsiMinus, PhiPlus, PhiMinus],
            Pauli::Y => [PsiMinus, PsiPlus, PhiMinus, PhiPlus],
            Pauli::Z => [PhiMinus, PhiPlus, PsiMinus, PsiPlus],
        }
    }
}

/// Probabilities of applying `I`, `sigma_x`, `sigma_y`, `sigma_z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliChannel {
    pub p_i: f64,
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl PauliChannel {
    pub fn new(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let p = [p_i, p_x, p_y, p_z];
        let sum: f64 = p.iter().sum();
        if p.iter().any(|x| *x < 0.0 || !x.is_finite()) || (sum - 1.0).abs() > tol::ALGEBRAIC {
            return Err(Error::InvalidWeights(sum));
        }
        Ok(Self { p_i, p_x, p_y, p_z })
    }

    pub fn identity() -> Self {
        Self { p_i: 1.0, p_x: 0.0, p_y: 0.0, p_z: 0.0 }
    }

    pub fn probabilities(&self) -> [f64; 4] {
        [self.p_i, self.p_x, self.p_y, self.p_z]
    }

    pub fn probability(&self, pauli: Pauli) -> f64 {
        match pauli {
            Pauli::I => self.p_i,
            Pauli::X => self.p_x,
            Pauli::Y => self.p_y,
            Pauli::Z => self.p_z,
        }
    }

    /// Total error probability `1 - p_i`.
    pub fn error_probability(&self) -> f64 {
        self.p_x + self.p_y + self.p_z
    }

    /// Kraus operators `sqrt(p_k) sigma_k` on one side of a polarization pair.
    pub fn kraus(&self, side: Photon) -> Vec<ComplexMatrix> {
        Pauli::ALL
            .iter()
            .filter(|&&k| self.probability(k) > 0.0)
            .map(|&k| k.on(side).scale_real(self.probability(k).sqrt()))
            .collect()
    }

    /// Choi matrix `sum_ij |i><j| (x) E(|i><j|)` of the one-sided channel on
    /// the 4-dimensional polarization pair (16x16).
    pub fn choi(&self, side: Photon) -> ComplexMatrix {
        let mut choi = ComplexMatrix::zeros(16, 16);
        for i in 0..4 {
            for j in 0..4 {
                let mut unit = ComplexMatrix::zeros(4, 4);
                unit[(i, j)] = ONE;
                let image = self.act(&unit, side);
                for r in 0..4 {
                    for c in 0..4 {
                        choi[(i * 4 + r, j * 4 + c)] = image[(r, c)];
                    }
                }
            }
        }
        choi
    }

    fn act(&self, m: &ComplexMatrix, side: Photon) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
        for k in self.kraus(side) {
            out.add_scaled(&k.conjugate(m).expect("4x4"), ONE).expect("4x4");
        }
        out
    }

    /// Checks complete positivity (Choi matrix PSD) and trace preservation
    /// (partial trace of the Choi matrix over the output is the identity).
    pub fn check_cptp(&self, side: Photon) -> Result<CptpReport> {
        let choi = self.choi(side);
        let min_eigenvalue = choi.min_eigenvalue()?;
        // Tracing the output out of the normalized Choi state leaves I/4.
        let state = DensityMatrix::from_matrix_unchecked(choi.scale_real(0.25));
        let input = partial_trace(&state, &[4, 4], &[1])?;
        let trace_defect = input.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) * 4.0;
        Ok(CptpReport { min_eigenvalue, trace_defect })
    }

    /// Weight transfer on a Bell-diagonal state.
    pub fn apply_to_bell_diagonal(&self, w: &BellDiagonal) -> BellDiagonal {
        let src = w.weights();
        let mut out = [0.0; 4];
        for pauli in Pauli::ALL {
            let p = self.probability(pauli);
            for (from, to) in pauli.bell_permutation().iter().enumerate() {
                out[to.index()] += p * src[from];
            }
        }
        BellDiagonal::normalize(out).expect("convex combination of valid weights")
    }
}

impl fmt::Display for PauliChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I {:.4}, X {:.4}, Y {:.4}, Z {:.4}", self.p_i, self.p_x, self.p_y, self.p_z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CptpReport {
    pub min_eigenvalue: f64,
    pub trace_defect: f64,
}

impl CptpReport {
    pub fn passes(&self) -> bool {
        self.min_eigenvalue >= -tol::PSD_FLOOR && self.trace_defect <= tol::ALGEBRAIC
    }
}

fn check_probability(name: &'static str, p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::InvalidProbability { name, value: p })
    }
}

/// `phi+ -> (1-p) phi+ + p psi+` when applied to one photon.
pub fn bf_channel(p: f64) -> Result<PauliChannel> {
    let p = check_probability("bit-flip probability", p)?;
    PauliChannel::new(1.0 - p, p, 0.0, 0.0)
}

/// Error probability `p` spread evenly over `sigma_x`, `sigma_y`, `sigma_z`.
pub fn white_channel(p: f64) -> Result<PauliChannel> {
    let p = check_probability("white-noise probability", p)?;
    PauliChannel::new(1.0 - p, p / 3.0, p / 3.0, p / 3.0)
}

/// `sum_k p_k K_k rho K_k^dagger` with the Paulis acting on `side`.
pub fn apply_channel(rho: &DensityMatrix, ch: &PauliChannel, side: Photon) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { op: "apply_channel", left: (rho.dim(), rho.dim()), right: (4, 4) });
    }
    DensityMatrix::new(ch.act(rho.matrix(), side))
}

/// Durations in seconds of the `I`, `sigma_x`, `sigma_y`, `sigma_z` settings
/// within one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LcSchedule {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl LcSchedule {
    pub fn new(t1: f64, t2: f64, t3: f64, t4: f64) -> Result<Self> {
        for t in [t1, t2, t3, t4] {
            if t < 0.0 || !t.is_finite() {
                return Err(Error::InvalidDuration(t));
            }
        }
        if t1 + t2 + t3 + t4 <= 0.0 {
            return Err(Error::EmptySchedule);
        }
        Ok(Self { t1, t2, t3, t4 })
    }

    pub fn durations(&self) -> [f64; 4] {
        [self.t1, self.t2, self.t3, self.t4]
    }

    pub fn cycle(&self) -> f64 {
        self.durations().iter().sum()
    }
}

/// Time-averaged channel over one cycle: probabilities `t_k / sum t`.
pub fn schedule_to_channel(s: &LcSchedule) -> Result<PauliChannel> {
    let s = LcSchedule::new(s.t1, s.t2, s.t3, s.t4)?;
    let total = s.cycle();
    let [p_i, p_x, p_y, p_z] = s.durations().map(|t| t / total);
    // Absorb rounding so the probabilities sum to 1 exactly enough.
    PauliChannel::new(1.0 - (p_x + p_y + p_z), p_x, p_y, p_z).or_else(|_| PauliChannel::new(p_i, p_x, p_y, p_z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NoiseKind {
    #[serde(rename = "bf")]
    BitFlip,
    #[serde(rename = "white")]
    White,
}

impl NoiseKind {
    pub fn channel(self, p: f64) -> Result<PauliChannel> {
        match self {
            NoiseKind::BitFlip => bf_channel(p),
            NoiseKind::White => white_channel(p),
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseKind::BitFlip => "bf",
            NoiseKind::White => "white",
        })
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bf" | "bit-flip" | "bitflip" => Ok(NoiseKind::BitFlip),
            "white" => Ok(NoiseKind::White),
            _ => Err(Error::InvalidArgument(format!("unknown noise kind `{s}`"))),
        }
    }
}

/// The six experimental noise settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoisePreset {
    Bf07,
    Bf05,
    Bf03,
    White07,
    White05,
    White03,
}

impl NoisePreset {
    /// In reporting order.
    pub const ALL: [NoisePreset; 6] = [
        NoisePreset::Bf07,
        NoisePreset::Bf05,
        NoisePreset::Bf03,
        NoisePreset::White07,
        NoisePreset::White05,
        NoisePreset::White03,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NoisePreset::Bf07 => "BF0.7",
            NoisePreset::Bf05 => "BF0.5",
            NoisePreset::Bf03 => "BF0.3",
            NoisePreset::White07 => "white0.7",
            NoisePreset::White05 => "white0.5",
            NoisePreset::White03 => "white0.3",
        }
    }

    pub fn kind(self) -> NoiseKind {
        match self {
            NoisePreset::Bf07 | NoisePreset::Bf05 | NoisePreset::Bf03 => NoiseKind::BitFlip,
            _ => NoiseKind::White,
        }
    }

    /// Nominal noise fraction in the preset name.
    pub fn nominal(self) -> f64 {
        match self {
            NoisePreset::Bf07 | NoisePreset::White07 => 0.7,
            NoisePreset::Bf05 | NoisePreset::White05 => 0.5,
            NoisePreset::Bf03 | NoisePreset::White03 => 0.3,
        }
    }

    /// LC timing per cycle, in seconds.
    ///
    /// The white0.7 column sums to 9.9 s and is used as listed. The white0.5
    /// column is listed as 1.67 s per Pauli, the two-decimal rounding of
    /// 5/3 s; 3 x 1.67 s would overrun the 10 s cycle, so 5/3 s is stored.
    pub fn schedule(self) -> LcSchedule {
        let (t1, t2, t3, t4) = match self {
            NoisePreset::Bf07 => (3.0, 7.0, 0.0, 0.0),
            NoisePreset::Bf05 => (5.0, 5.0, 0.0, 0.0),
            NoisePreset::Bf03 => (7.0, 3.0, 0.0, 0.0),
            NoisePreset::White07 => (3.0, 2.3, 2.3, 2.3),
            NoisePreset::White05 => (5.0, 5.0 / 3.0, 5.0 / 3.0, 5.0 / 3.0),
            NoisePreset::White03 => (7.0, 1.0, 1.0, 1.0),
        };
        LcSchedule { t1, t2, t3, t4 }
    }

    pub fn channel(self) -> PauliChannel {
        schedule_to_channel(&self.schedule()).expect("preset schedules are valid")
    }

    /// Polarization state after loading this noise on one photon of `|phi+>`.
    pub fn noisy_polarization(self) -> BellDiagonal {
        self.channel().apply_to_bell_diagonal(&BellDiagonal::pure(BellKind::PhiPlus))
    }
}

impl fmt::Display for NoisePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoisePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NoisePreset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownPreset(s.to_owned()))
    }
}

/// `|phi+><phi+|` after `ch` on photon B, as a full density matrix.
pub fn noisy_phi_plus(ch: &PauliChannel) -> Result<DensityMatrix> {
    apply_channel(&bell_state(BellKind::PhiPlus).projector(), ch, Photon::B)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{density_to_bell_diagonal, random_density};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const EPS: f64 = 1e-12;

    fn weights_close(a: &BellDiagonal, b: [f64; 4]) -> bool {
        a.weights().iter().zip(b).all(|(x, y)| (x - y).abs() < EPS)
    }

    fn readout(rho: &DensityMatrix) -> BellDiagonal {
        density_to_bell_diagonal(rho).unwrap().weights
    }

    #[test]
    fn bf_channel_examples() {
        assert_eq!(bf_channel(0.0).unwrap(), PauliChannel::identity());
        let rho = noisy_phi_plus(&bf_channel(0.7).unwrap()).unwrap();
        assert!(weights_close(&readout(&rho), [0.3, 0.0, 0.7, 0.0]));
        let rho = noisy_phi_plus(&bf_channel(0.5).unwrap()).unwrap();
        assert!((rho.fidelity(&bell_state(BellKind::PhiPlus)).unwrap() - 0.5).abs() < EPS);
        assert!(bf_channel(1.1).is_err());
        assert!(bf_channel(-0.1).is_err());
    }

    #[test]
    fn white_channel_examples() {
        let rho = noisy_phi_plus(&white_channel(0.7).unwrap()).unwrap();
        let r = 0.7 / 3.0;
        assert!(weights_close(&readout(&rho), [0.3, r, r, r]));
        let ch = white_channel(1.0).unwrap();
        let third = 1.0 / 3.0;
        assert!(weights_close(&ch.apply_to_bell_diagonal(&BellDiagonal::pure(BellKind::PhiPlus)), [0.0, third, third, third]));
        assert_eq!(white_channel(0.0).unwrap(), PauliChannel::identity());
    }

    #[test]
    fn schedule_examples() {
        let ch = schedule_to_channel(&LcSchedule::new(3.0, 7.0, 0.0, 0.0).unwrap()).unwrap();
        let bf = bf_channel(0.7).unwrap();
        assert!(ch.probabilities().iter().zip(bf.probabilities()).all(|(a, b)| (a - b).abs() < EPS));

        let ch = schedule_to_channel(&LcSchedule::new(3.0, 2.3, 2.3, 2.3).unwrap()).unwrap();
        for p in [ch.p_x, ch.p_y, ch.p_z] {
            assert!((p - 2.3 / 9.9).abs() < EPS);
        }
        let ch = schedule_to_channel(&LcSchedule::new(1.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(ch, PauliChannel::identity());
    }

    #[test]
    fn schedule_rejects_empty_and_negative() {
        assert_eq!(LcSchedule::new(0.0, 0.0, 0.0, 0.0), Err(Error::EmptySchedule));
        assert!(matches!(LcSchedule::new(1.0, -1.0, 0.0, 0.0), Err(Error::InvalidDuration(_))));
        let raw = LcSchedule { t1: 0.0, t2: 0.0, t3: 0.0, t4: 0.0 };
        assert_eq!(schedule_to_channel(&raw), Err(Error::EmptySchedule));
    }

    #[test]
    fn single_paulis_permute_bell_states() {
        for pauli in Pauli::ALL {
            let ch = PauliChannel::new(
                (pauli == Pauli::I) as u8 as f64,
                (pauli == Pauli::X) as u8 as f64,
                (pauli == Pauli::Y) as u8 as f64,
                (pauli == Pauli::Z) as u8 as f64,
            )
            .unwrap();
            for kind in BellKind::ALL {
                let out = apply_channel(&bell_state(kind).projector(), &ch, Photon::B).unwrap();
                let target = pauli.bell_permutation()[kind.index()];
                assert!((out.fidelity(&bell_state(target)).unwrap() - 1.0).abs() < EPS, "{pauli:?} {kind}");
                // Photon A gives the same permutation.
                let out_a = apply_channel(&bell_state(kind).projector(), &ch, Photon::A).unwrap();
                assert!((out_a.fidelity(&bell_state(target)).unwrap() - 1.0).abs() < EPS);
            }
        }
    }

    #[test]
    fn identity_channel_is_a_no_op() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let rho = random_density(4, &mut rng).unwrap();
            let out = apply_channel(&rho, &PauliChannel::identity(), Photon::B).unwrap();
            assert!(out.matrix().approx_eq(rho.matrix(), EPS));
        }
    }

    #[test]
    fn bell_diagonal_closed_form_matches_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let w = BellDiagonal::random(&mut rng);
            let ch = PauliChannel::new(0.1, 0.2, 0.3, 0.4).unwrap();
            let by_matrix = readout(&apply_channel(&w.to_density(), &ch, Photon::B).unwrap());
            assert!(weights_close(&ch.apply_to_bell_diagonal(&w), by_matrix.weights()));
            // Output stays Bell-diagonal.
            let r = density_to_bell_diagonal(&apply_channel(&w.to_density(), &ch, Photon::B).unwrap()).unwrap();
            assert!(r.discarded_coherence < EPS);
        }
    }

    #[test]
    fn channel_rejects_wrong_dimension() {
        let q = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(apply_channel(&q, &PauliChannel::identity(), Photon::A).is_err());
    }

    #[test]
    fn presets_are_cptp() {
        for preset in NoisePreset::ALL {
            for side in [Photon::A, Photon::B] {
                let rep = preset.channel().check_cptp(side).unwrap();
                assert!(rep.passes(), "{preset}: {rep:?}");
            }
        }
    }

    #[test]
    fn preset_before_fidelities() {
        let expect = [0.3, 0.5, 0.7, 3.0 / 9.9, 0.5, 0.7];
        for (preset, f) in NoisePreset::ALL.iter().zip(expect) {
            let w = preset.noisy_polarization();
            assert!((w.f1 - f).abs() < EPS, "{preset}: {}", w.f1);
            let via_matrix = noisy_phi_plus(&preset.channel()).unwrap();
            assert!((via_matrix.fidelity(&bell_state(BellKind::PhiPlus)).unwrap() - f).abs() < EPS);
        }
    }

    #[test]
    fn preset_names_round_trip() {
        for p in NoisePreset::ALL {
            assert_eq!(p.name().parse::<NoisePreset>().unwrap(), p);
        }
        assert_eq!("White0.7".parse::<NoisePreset>().unwrap(), NoisePreset::White07);
        assert!("BF0.9".parse::<NoisePreset>().is_err());
    }
}
