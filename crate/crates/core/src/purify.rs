//! One-step deterministic purification: a noisy hyperentangled pair goes
//! through a circuit preset, the four accepted coincidence patterns are kept
//! and each pattern's polarization state is scored against `|phi+>`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise::{NoiseKind, NoisePreset, Pauli};
use crate::optics::{coincidences, CircuitPreset, CoincidenceOutcome, DetectorPattern, Photon};
use crate::qstate::{bell_state, BellDiagonal, BellKind, DensityMatrix, HyperState};
use crate::tol;

/// Spatial-mode fidelity the experiment reported before purification.
pub const DEFAULT_SPATIAL_FIDELITY: f64 = 0.990;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternResult {
    pub pattern: DetectorPattern,
    pub probability: f64,
    /// Fidelity with `|phi+>` after any pattern-dependent correction;
    /// `None` when the pattern never fires.
    pub fidelity: Option<f64>,
    pub conditional_pol: Option<DensityMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PurifyReport {
    pub preset: CircuitPreset,
    /// Accepted patterns only, in `D2D4, D5D7, D2D7, D4D5` order.
    pub outcomes: Vec<PatternResult>,
    pub total_success_prob: f64,
    /// Success-probability-weighted mean fidelity over accepted patterns.
    pub aggregate_fidelity: Option<f64>,
}

impl PurifyReport {
    pub fn per_pattern_fidelity(&self) -> BTreeMap<String, Option<f64>> {
        self.outcomes.iter().map(|o| (o.pattern.to_string(), o.fidelity)).collect()
    }

    pub fn pattern(&self, pattern: DetectorPattern) -> Option<&PatternResult> {
        self.outcomes.iter().find(|o| o.pattern == pattern)
    }

    /// Polarization state averaged over all accepted clicks.
    pub fn mixed_output(&self) -> Result<DensityMatrix> {
        let parts: Vec<(f64, &DensityMatrix)> = self
            .outcomes
            .iter()
            .filter_map(|o| o.conditional_pol.as_ref().map(|rho| (o.probability, rho)))
            .collect();
        let total: f64 = parts.iter().map(|(p, _)| p).sum();
        if total <= 0.0 {
            return Err(Error::InvalidArgument("no accepted pattern fired".into()));
        }
        let normalized: Vec<(f64, &DensityMatrix)> = parts.iter().map(|(p, r)| (p / total, *r)).collect();
        DensityMatrix::mixture(&normalized)
    }
}

/// Patterns on which the `fig1` layout delivers `psi+` instead of `phi+`.
fn needs_bit_flip(preset: CircuitPreset, pattern: DetectorPattern) -> bool {
    let [_, _, d2d7, d4d5] = DetectorPattern::accepted();
    preset == CircuitPreset::Fig1 && (pattern == d2d7 || pattern == d4d5)
}

fn score(preset: CircuitPreset, outcome: CoincidenceOutcome) -> Result<PatternResult> {
    let target = bell_state(BellKind::PhiPlus);
    let conditional_pol = match outcome.conditional_pol {
        Some(rho) if needs_bit_flip(preset, outcome.pattern) => {
            let x = Pauli::X.on(Photon::B);
            Some(DensityMatrix::new(x.conjugate(rho.matrix())?)?)
        }
        other => other,
    };
    let fidelity = conditional_pol.as_ref().map(|rho| rho.fidelity(&target)).transpose()?;
    Ok(PatternResult { pattern: outcome.pattern, probability: outcome.probability, fidelity, conditional_pol })
}

/// Runs the pipeline on an arbitrary pair state.
pub fn purify(state: &HyperState, preset: CircuitPreset) -> Result<PurifyReport> {
    let all = coincidences(state, &preset.circuit())?;
    let mut outcomes = Vec::with_capacity(4);
    for pattern in DetectorPattern::accepted() {
        let outcome = all
            .iter()
            .find(|o| o.pattern == pattern)
            .cloned()
            .expect("circuit reports every pattern");
        outcomes.push(score(preset, outcome)?);
    }
    let total_success_prob: f64 = outcomes.iter().map(|o| o.probability).sum::<f64>().clamp(0.0, 1.0);
    let weighted: f64 = outcomes.iter().filter_map(|o| o.fidelity.map(|f| f * o.probability)).sum();
    let fired: f64 = outcomes.iter().filter(|o| o.fidelity.is_some()).map(|o| o.probability).sum();
    let aggregate_fidelity = (fired > tol::NEGLIGIBLE_PROBABILITY).then(|| (weighted / fired).clamp(0.0, 1.0));
    Ok(PurifyReport { preset, outcomes, total_success_prob, aggregate_fidelity })
}

/// Looks the preset up by name first.
pub fn purify_named(state: &HyperState, preset: &str) -> Result<PurifyReport> {
    purify(state, preset.parse()?)
}

/// Bell-diagonal polarization noise with an arbitrary spatial state.
pub fn purify_with_imperfect_spatial(
    pol: &BellDiagonal,
    spat: &DensityMatrix,
    preset: CircuitPreset,
) -> Result<PurifyReport> {
    spat.validate()?;
    purify(&HyperState::product(pol.to_density(), spat.clone())?, preset)
}

/// Spatial state with `phi+` weight `fidelity` and the remainder spread
/// evenly over the other Bell states.
pub fn spatial_state(fidelity: f64) -> Result<DensityMatrix> {
    Ok(BellDiagonal::isotropic(fidelity)?.to_density())
}

/// One line of a before/after fidelity table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub noise: String,
    pub kind: NoiseKind,
    /// Total polarization error probability loaded on one photon.
    pub p: f64,
    pub before_pol: f64,
    pub before_path: f64,
    /// Fidelities on `D2D4, D5D7, D2D7, D4D5`.
    pub after: [Option<f64>; 4],
    pub aggregate: Option<f64>,
    pub success_prob: f64,
}

fn row(noise: String, kind: NoiseKind, pol: BellDiagonal, spat: &DensityMatrix, preset: CircuitPreset) -> Result<SweepRow> {
    let report = purify_with_imperfect_spatial(&pol, spat, preset)?;
    let phi = bell_state(BellKind::PhiPlus);
    let mut after = [None; 4];
    for (slot, o) in after.iter_mut().zip(&report.outcomes) {
        *slot = o.fidelity;
    }
    Ok(SweepRow {
        noise,
        kind,
        p: 1.0 - pol.f1,
        before_pol: pol.f1,
        before_path: spat.fidelity(&phi)?,
        after,
        aggregate: report.aggregate_fidelity,
        success_prob: report.total_success_prob,
    })
}

/// Before/after fidelities for each noise strength in `p_values`.
pub fn sweep(kind: NoiseKind, p_values: &[f64], spatial_fidelity: f64, preset: CircuitPreset) -> Result<Vec<SweepRow>> {
    let spat = spatial_state(spatial_fidelity)?;
    p_values
        .par_iter()
        .map(|&p| {
            let pol = kind.channel(p)?.apply_to_bell_diagonal(&BellDiagonal::pure(BellKind::PhiPlus));
            row(format!("{kind}{p}"), kind, pol, &spat, preset)
        })
        .collect()
}

/// All six experimental noise presets, loaded through their LC schedules.
pub fn table1(spatial_fidelity: f64, preset: CircuitPreset) -> Result<Vec<SweepRow>> {
    let spat = spatial_state(spatial_fidelity)?;
    NoisePreset::ALL
        .par_iter()
        .map(|np| row(np.name().to_owned(), np.kind(), np.noisy_polarization(), &spat, preset))
        .collect()
}
