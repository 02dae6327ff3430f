//! Single-photon linear optics over the spatial x polarization modes of each
//! photon, the purification circuit presets and coincidence post-selection.
//!
//! Conventions (single-photon basis `rail1 H, rail1 V, rail2 H, rail2 V`):
//!
//! * Waveplate Jones matrices act on `(H, V)`. A half-wave plate at angle
//!   `theta` is `[[cos 2t, sin 2t], [sin 2t, -cos 2t]]`; a quarter-wave plate
//!   at `theta` is `[[cos^2 t + i sin^2 t, (1-i) sin t cos t], [(1-i) sin t cos t,
//!   sin^2 t + i cos^2 t]]`, i.e. `diag(1, i)` at 0 degrees with the global
//!   phase `e^{-i pi/4}` dropped.
//! * A PBS joining the two rails transmits H (stays on its rail) and reflects
//!   V (changes rail). On the (spatial, polarization) qubit pair this is a
//!   CNOT controlled by polarization. A beam displacer used to recombine the
//!   rails acts the same way, assuming perfect path-length compensation.
//! * Detectors: photon A owns `D1, D2, D5, D6` and photon B owns
//!   `D3, D4, D7, D8`. After the final combiner, rail 1 of photon A exits at
//!   `D2` and rail 2 at `D5`; rail 1 of photon B exits at `D4` and rail 2 at
//!   `D7`. The remaining ports are the unused outputs of the combiners. A
//!   detector click keeps the photon's polarization intact, so every
//!   coincidence pattern carries a conditional two-qubit polarization state.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, I, ONE, ZERO};
use crate::qstate::{DensityMatrix, HyperState};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Photon {
    A,
    B,
}

/// Spatial rails a polarization element is mounted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rails {
    Both,
    Rail1,
    Rail2,
}

impl Rails {
    fn covers(self, rail: usize) -> bool {
        match self {
            Rails::Both => true,
            Rails::Rail1 => rail == 0,
            Rails::Rail2 => rail == 1,
        }
    }
}

impl fmt::Display for Rails {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rails::Both => "both rails",
            Rails::Rail1 => "rail 1",
            Rails::Rail2 => "rail 2",
        })
    }
}

/// Liquid-crystal retarder drive voltage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LcVoltage {
    /// No retardance.
    V0,
    /// A relative `pi` phase between H and V.
    Vpi,
}

/// A 4x4 single-photon map.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalElement {
    name: String,
    map: ComplexMatrix,
}

impl OpticalElement {
    /// Wraps an arbitrary map; it must be 4x4.
    pub fn new(name: impl Into<String>, map: ComplexMatrix) -> Result<Self> {
        if map.shape() != (4, 4) {
            return Err(Error::DimensionMismatch { op: "optical element", left: map.shape(), right: (4, 4) });
        }
        Ok(Self { name: name.into(), map })
    }

    /// Lifts a 2x2 Jones matrix onto the selected rails, identity elsewhere.
    pub fn from_jones(name: impl Into<String>, jones: [[C64; 2]; 2], rails: Rails) -> Self {
        let map = ComplexMatrix::from_fn(4, 4, |r, c| {
            let (rail_r, pol_r) = (r / 2, r % 2);
            let (rail_c, pol_c) = (c / 2, c % 2);
            if rail_r != rail_c {
                ZERO
            } else if rails.covers(rail_r) {
                jones[pol_r][pol_c]
            } else if pol_r == pol_c {
                ONE
            } else {
                ZERO
            }
        });
        let name = name.into();
        let name = if rails == Rails::Both { name } else { format!("{name} on {rails}") };
        Self { name, map }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn map(&self) -> &ComplexMatrix {
        &self.map
    }

    pub fn is_unitary(&self) -> bool {
        self.map.is_unitary(tol::ALGEBRAIC)
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Half-wave plate at `theta_deg` on both rails.
pub fn hwp(theta_deg: f64) -> OpticalElement {
    hwp_on(theta_deg, Rails::Both)
}

pub fn hwp_on(theta_deg: f64, rails: Rails) -> OpticalElement {
    let t = 2.0 * theta_deg.to_radians();
    let (s, c) = t.sin_cos();
    OpticalElement::from_jones(format!("HWP({theta_deg} deg)"), [[re(c), re(s)], [re(s), re(-c)]], rails)
}

/// Quarter-wave plate with its fast axis at `theta_deg`, on both rails.
pub fn qwp(theta_deg: f64) -> OpticalElement {
    qwp_on(theta_deg, Rails::Both)
}

pub fn qwp_on(theta_deg: f64, rails: Rails) -> OpticalElement {
    let (s, c) = theta_deg.to_radians().sin_cos();
    let off = re(s * c) * C64::new(1.0, -1.0);
    let jones = [[re(c * c) + I * (s * s), off], [off, re(s * s) + I * (c * c)]];
    OpticalElement::from_jones(format!("QWP({theta_deg} deg)"), jones, rails)
}

/// Liquid-crystal phase plate with its axis at 0 degrees.
pub fn lc_phase(voltage: LcVoltage) -> OpticalElement {
    lc_phase_on(voltage, Rails::Both)
}

pub fn lc_phase_on(voltage: LcVoltage, rails: Rails) -> OpticalElement {
    let (name, v) = match voltage {
        LcVoltage::V0 => ("LC(V0)", ONE),
        LcVoltage::Vpi => ("LC(Vpi)", -ONE),
    };
    OpticalElement::from_jones(name, [[ONE, ZERO], [ZERO, v]], rails)
}

fn rail_swap_on_v(name: &str) -> OpticalElement {
    // (rail, H) -> (rail, H); (rail, V) -> (other rail, V)
    let map = ComplexMatrix::from_fn(4, 4, |r, c| {
        let (rail_c, pol_c) = (c / 2, c % 2);
        let out_rail = if pol_c == 1 { 1 - rail_c } else { rail_c };
        if r == out_rail * 2 + pol_c {
            ONE
        } else {
            ZERO
        }
    });
    OpticalElement { name: name.into(), map }
}

/// Polarizing beam splitter joining the two rails: H transmitted, V reflected.
pub fn pbs() -> OpticalElement {
    rail_swap_on_v("PBS")
}

/// Beam displacer pair recombining the two rails (V displaced across).
pub fn bd() -> OpticalElement {
    rail_swap_on_v("BD")
}

/// Detector label `D1..D8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DetectorLabel(u8);

impl DetectorLabel {
    pub fn new(n: u8) -> Result<Self> {
        if (1..=8).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::InvalidArgument(format!("detector D{n} does not exist")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn photon(self) -> Photon {
        if matches!(self.0, 1 | 2 | 5 | 6) {
            Photon::A
        } else {
            Photon::B
        }
    }
}

impl fmt::Display for DetectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.0)
    }
}

/// One click on each photon's side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DetectorPattern {
    a: DetectorLabel,
    b: DetectorLabel,
}

impl DetectorPattern {
    pub fn new(x: DetectorLabel, y: DetectorLabel) -> Result<Self> {
        match (x.photon(), y.photon()) {
            (Photon::A, Photon::B) => Ok(Self { a: x, b: y }),
            (Photon::B, Photon::A) => Ok(Self { a: y, b: x }),
            _ => Err(Error::InvalidArgument(format!("{x} and {y} sit on the same photon"))),
        }
    }

    pub fn from_numbers(x: u8, y: u8) -> Result<Self> {
        Self::new(DetectorLabel::new(x)?, DetectorLabel::new(y)?)
    }

    pub fn detector_a(self) -> DetectorLabel {
        self.a
    }

    pub fn detector_b(self) -> DetectorLabel {
        self.b
    }

    /// The four patterns kept by the purification protocol, in reporting order.
    pub fn accepted() -> [DetectorPattern; 4] {
        [
            Self::from_numbers(2, 4).unwrap(),
            Self::from_numbers(5, 7).unwrap(),
            Self::from_numbers(2, 7).unwrap(),
            Self::from_numbers(4, 5).unwrap(),
        ]
    }

    pub fn is_accepted(self) -> bool {
        Self::accepted().contains(&self)
    }
}

/// Printed with the lower-numbered detector first, e.g. `D4D5`.
impl fmt::Display for DetectorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = if self.a < self.b { (self.a, self.b) } else { (self.b, self.a) };
        write!(f, "{x}{y}")
    }
}

impl FromStr for DetectorPattern {
    type Err = Error;

    /// Accepts `D2D4`, `d5d4`, `D5-D7`, ... in either detector order.
    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .split(['D', 'd'])
            .map(|t| t.trim_matches(|c: char| !c.is_ascii_digit()))
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidArgument(format!("bad detector pattern `{s}`")))?;
        match digits[..] {
            [x, y] => Self::from_numbers(x, y),
            _ => Err(Error::InvalidArgument(format!("bad detector pattern `{s}`"))),
        }
    }
}

impl Serialize for DetectorPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DetectorPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Isometry from a photon's 4 modes into 4 labeled output ports, each
/// carrying the polarization qubit. Output rows are `port * 2 + pol`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorStage {
    labels: [DetectorLabel; 4],
    map: ComplexMatrix,
}

impl DetectorStage {
    pub fn new(labels: [DetectorLabel; 4], map: ComplexMatrix) -> Result<Self> {
        if map.shape() != (8, 4) {
            return Err(Error::DimensionMismatch { op: "detector stage", left: map.shape(), right: (8, 4) });
        }
        let defect = map.isometry_defect();
        if defect > tol::ALGEBRAIC {
            return Err(Error::InvalidArgument(format!("detector stage is not an isometry ({defect:e})")));
        }
        Ok(Self { labels, map })
    }

    /// Rail 1 to the second port, rail 2 to the third; polarization kept.
    pub fn standard(photon: Photon) -> Self {
        let numbers = match photon {
            Photon::A => [1, 2, 5, 6],
            Photon::B => [3, 4, 7, 8],
        };
        let labels = numbers.map(|n| DetectorLabel::new(n).unwrap());
        let map = ComplexMatrix::from_fn(8, 4, |r, c| {
            let (rail, pol) = (c / 2, c % 2);
            if r == (rail + 1) * 2 + pol {
                ONE
            } else {
                ZERO
            }
        });
        Self { labels, map }
    }

    pub fn labels(&self) -> &[DetectorLabel; 4] {
        &self.labels
    }

    pub fn map(&self) -> &ComplexMatrix {
        &self.map
    }

    /// The 2x4 block of the isometry feeding `port`.
    pub fn port_block(&self, port: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(2, 4, |r, c| self.map[(port * 2 + r, c)])
    }
}

/// Ordered element lists for both photons plus their detector stages.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub photon_a: Vec<OpticalElement>,
    pub photon_b: Vec<OpticalElement>,
    pub detectors_a: DetectorStage,
    pub detectors_b: DetectorStage,
}

impl Default for Circuit {
    fn default() -> Self {
        Self::empty()
    }
}

impl Circuit {
    pub fn empty() -> Self {
        Self {
            photon_a: Vec::new(),
            photon_b: Vec::new(),
            detectors_a: DetectorStage::standard(Photon::A),
            detectors_b: DetectorStage::standard(Photon::B),
        }
    }

    /// The same element sequence on both photons.
    pub fn symmetric(elements: Vec<OpticalElement>) -> Self {
        Self { photon_a: elements.clone(), photon_b: elements, ..Self::empty() }
    }

    pub fn push(&mut self, photon: Photon, element: OpticalElement) -> &mut Self {
        match photon {
            Photon::A => self.photon_a.push(element),
            Photon::B => self.photon_b.push(element),
        }
        self
    }

    pub fn elements(&self, photon: Photon) -> &[OpticalElement] {
        match photon {
            Photon::A => &self.photon_a,
            Photon::B => &self.photon_b,
        }
    }

    pub fn detectors(&self, photon: Photon) -> &DetectorStage {
        match photon {
            Photon::A => &self.detectors_a,
            Photon::B => &self.detectors_b,
        }
    }

    /// Total 4x4 map acting on `photon` before detection.
    pub fn photon_map(&self, photon: Photon) -> Result<ComplexMatrix> {
        compose(self.elements(photon))
    }
}

/// Product of the element maps in beam order (first element acts first).
pub fn compose(elements: &[OpticalElement]) -> Result<ComplexMatrix> {
    elements
        .iter()
        .try_fold(ComplexMatrix::identity(4), |acc, e| e.map.matmul(&acc))
}

/// Named purification circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircuitPreset {
    /// Rails converted then split: `phi`-class inputs give `phi+` and
    /// `psi`-class inputs give `psi+`, so the latter need a bit flip.
    Fig1,
    /// PBS, 45 degree HWP on rail 2 of each photon, beam-displacer
    /// recombination: every accepted pattern carries `phi+`.
    Fig2c,
}

impl CircuitPreset {
    pub const ALL: [CircuitPreset; 2] = [CircuitPreset::Fig1, CircuitPreset::Fig2c];

    pub fn name(self) -> &'static str {
        match self {
            CircuitPreset::Fig1 => "fig1",
            CircuitPreset::Fig2c => "fig2c",
        }
    }

    pub fn circuit(self) -> Circuit {
        match self {
            CircuitPreset::Fig1 => fig1_circuit(),
            CircuitPreset::Fig2c => fig2c_circuit(),
        }
    }
}

impl fmt::Display for CircuitPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CircuitPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" => Ok(CircuitPreset::Fig1),
            "fig2c" => Ok(CircuitPreset::Fig2c),
            _ => Err(Error::UnknownPreset(s.to_owned())),
        }
    }
}

/// On each photon: 45 degree HWP on rail 2, then the PBS.
pub fn fig1_circuit() -> Circuit {
    Circuit::symmetric(vec![hwp_on(45.0, Rails::Rail2), pbs()])
}

/// On each photon: PBS, 45 degree HWP on rail 2, BD recombination. The three
/// stages swap the spatial and polarization qubits of the photon.
pub fn fig2c_circuit() -> Circuit {
    Circuit::symmetric(vec![pbs(), hwp_on(45.0, Rails::Rail2), bd()])
}

/// Result of post-selecting on one detector pattern.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidenceOutcome {
    pub pattern: DetectorPattern,
    pub probability: f64,
    /// Normalized polarization state of the pair; `None` when the pattern's
    /// probability is below [`tol::NEGLIGIBLE_PROBABILITY`].
    pub conditional_pol: Option<DensityMatrix>,
}

/// Per-photon Kraus blocks `port block * photon map`, one per output port.
fn port_operators(circuit: &Circuit, photon: Photon) -> Result<Vec<(DetectorLabel, ComplexMatrix)>> {
    let u = circuit.photon_map(photon)?;
    let stage = circuit.detectors(photon);
    stage
        .labels()
        .iter()
        .enumerate()
        .map(|(port, &label)| Ok((label, stage.port_block(port).matmul(&u)?)))
        .collect()
}

/// Applies both photons' element maps (no detection) to the pair state.
pub fn propagate(state: &HyperState, circuit: &Circuit) -> Result<DensityMatrix> {
    let u = circuit.photon_map(Photon::A)?.kron(&circuit.photon_map(Photon::B)?);
    let out = u.conjugate(state.full().matrix())?;
    DensityMatrix::new(out.add(&out.adjoint())?.scale_real(0.5))
}

/// Propagates the pair through `circuit` and returns all 16 coincidence
/// patterns (photon A ports outer, photon B ports inner).
pub fn coincidences(state: &HyperState, circuit: &Circuit) -> Result<Vec<CoincidenceOutcome>> {
    let rho = state.full();
    let ops_a = port_operators(circuit, Photon::A)?;
    let ops_b = port_operators(circuit, Photon::B)?;
    let mut out = Vec::with_capacity(16);
    for (label_a, ka) in &ops_a {
        for (label_b, kb) in &ops_b {
            let pattern = DetectorPattern::new(*label_a, *label_b)?;
            let k = ka.kron(kb);
            let sigma = k.conjugate(rho.matrix())?;
            let probability = sigma.trace().re.max(0.0);
            let conditional_pol = if probability < tol::NEGLIGIBLE_PROBABILITY {
                None
            } else {
                let herm = sigma.add(&sigma.adjoint())?.scale_real(0.5 / probability);
                Some(DensityMatrix::new(herm)?)
            };
            out.push(CoincidenceOutcome { pattern, probability, conditional_pol });
        }
    }
    Ok(out)
}
