//! Two-copy recurrence purification and the pair-source efficiency model
//! used as the comparison baseline.
//!
//! A round takes two copies of a Bell-diagonal pair, applies a CNOT on each
//! side (first copy controls), measures the second copy in `Z` on both sides
//! and keeps the first copy when the outcomes agree. Writing Bell states as
//! (phase bit, parity bit), the kept state has parity `b1 = b2` and phase
//! `a1 xor a2`, which gives
//!
//! ```text
//! N   = (f1 + f2)^2 + (f3 + f4)^2
//! f1' = (f1^2 + f2^2) / N      f2' = 2 f1 f2 / N
//! f3' = (f3^2 + f4^2) / N      f4' = 2 f3 f4 / N
//! ```
//!
//! Iterated rounds re-twirl the output to isotropic (Werner) form before the
//! next round.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optics::CircuitPreset;
use crate::purify::{purify_with_imperfect_spatial, spatial_state};
use crate::qstate::BellDiagonal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecurrenceStep {
    pub input: BellDiagonal,
    pub output: BellDiagonal,
    pub success_prob: f64,
}

/// One recurrence round on a Bell-diagonal pair.
pub fn bbpssw_round(w: &BellDiagonal) -> Result<RecurrenceStep> {
    let [f1, f2, f3, f4] = w.weights();
    let phi = f1 + f2;
    let psi = f3 + f4;
    let success_prob = phi * phi + psi * psi;
    if success_prob <= 0.0 {
        return Err(Error::DegenerateRecurrence);
    }
    let output = BellDiagonal::normalize([f1 * f1 + f2 * f2, 2.0 * f1 * f2, f3 * f3 + f4 * f4, 2.0 * f3 * f4])?;
    Ok(RecurrenceStep { input: *w, output, success_prob })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceTrajectory {
    pub initial_fidelity: f64,
    pub steps: Vec<RecurrenceStep>,
    /// `2^rounds` raw input pairs per output pair.
    pub pair_cost: u64,
    /// Raw pairs per output pair once failed rounds are discarded.
    pub expected_pair_cost: f64,
    /// Probability that every round succeeds for one `2^rounds` batch.
    pub batch_success_prob: f64,
}

impl RecurrenceTrajectory {
    /// Fidelity after each round.
    pub fn fidelities(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.output.f1).collect()
    }

    pub fn final_fidelity(&self) -> f64 {
        self.steps.last().map_or(self.initial_fidelity, |s| s.output.f1)
    }
}

/// Chains `rounds` recurrence rounds starting from an isotropic state of
/// fidelity `f0`, twirling back to isotropic form between rounds.
pub fn bbpssw_iterate(f0: f64, rounds: usize) -> Result<RecurrenceTrajectory> {
    if !(f0 > 0.25 && f0 <= 1.0) {
        return Err(Error::NonPurifiable(f0));
    }
    if rounds == 0 {
        return Err(Error::InvalidArgument("at least one round is required".into()));
    }
    let mut steps = Vec::with_capacity(rounds);
    let mut fidelity = f0;
    let mut expected_pair_cost = 1.0;
    let mut batch_success_prob = 1.0;
    for round in 0..rounds {
        let step = bbpssw_round(&BellDiagonal::isotropic(fidelity)?)?;
        fidelity = step.output.f1;
        expected_pair_cost = 2.0 * expected_pair_cost / step.success_prob;
        // Round r runs 2^(rounds - 1 - r) times inside one batch.
        batch_success_prob *= step.success_prob.powf(2f64.powi((rounds - 1 - round) as i32));
        steps.push(step);
    }
    let pair_cost = 1u64.checked_shl(rounds as u32).unwrap_or(u64::MAX);
    Ok(RecurrenceTrajectory { initial_fidelity: f0, steps, pair_cost, expected_pair_cost, batch_success_prob })
}

/// Smallest number of rounds whose output reaches `target`, if any within
/// `max_rounds`. Zero when `f0` already meets the target.
pub fn rounds_to_reach(f0: f64, target: f64, max_rounds: usize) -> Result<Option<usize>> {
    if f0 >= target {
        return Ok(Some(0));
    }
    if max_rounds == 0 {
        return Ok(None);
    }
    let traj = bbpssw_iterate(f0, max_rounds)?;
    Ok(traj.fidelities().iter().position(|&f| f >= target).map(|k| k + 1))
}

/// Pair-source model for the efficiency comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpdcModel {
    /// Probability that one attempt yields a usable pair.
    pub pair_success_prob: f64,
    /// Pairs a two-copy scheme needs to fix one bit flip and one phase flip.
    pub copies_needed: u32,
}

impl SpdcModel {
    pub fn new(pair_success_prob: f64, copies_needed: u32) -> Result<Self> {
        if !(pair_success_prob > 0.0 && pair_success_prob <= 1.0) {
            return Err(Error::InvalidProbability { name: "pair success probability", value: pair_success_prob });
        }
        if copies_needed == 0 {
            return Err(Error::InvalidArgument("copies must be at least 1".into()));
        }
        Ok(Self { pair_success_prob, copies_needed })
    }
}

impl Default for SpdcModel {
    fn default() -> Self {
        Self { pair_success_prob: 0.001, copies_needed: 4 }
    }
}

/// `P_s / P_s^copies`: how much more often one pair is available than the
/// `copies` simultaneous pairs a two-copy scheme consumes.
pub fn efficiency_ratio(model: &SpdcModel) -> f64 {
    // (1/P_s)^(c-1) keeps 1/0.001 = 1000 exact in binary floating point.
    (1.0 / model.pair_success_prob).powi(model.copies_needed as i32 - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub initial_fidelity: f64,
    pub one_step_fidelity: f64,
    pub one_step_success_prob: f64,
    pub one_step_pairs: u32,
    /// False when isotropic input at this fidelity cannot be improved by
    /// recurrence (fidelity at or below 1/2).
    pub recurrence_purifiable: bool,
    pub target_fidelity: f64,
    pub recurrence_rounds_to_target: Option<usize>,
    /// Trajectory over `rounds` rounds; absent when `f0 <= 1/4`.
    pub recurrence: Option<RecurrenceTrajectory>,
    pub efficiency_ratio: f64,
    pub model: SpdcModel,
}

/// Side-by-side one-step vs recurrence figures for white-noise input of
/// fidelity `f0`.
pub fn compare(
    f0: f64,
    model: SpdcModel,
    rounds: usize,
    target_fidelity: f64,
    spatial_fidelity: f64,
) -> Result<Comparison> {
    let pol = BellDiagonal::isotropic(f0)?;
    let report = purify_with_imperfect_spatial(&pol, &spatial_state(spatial_fidelity)?, CircuitPreset::Fig2c)?;
    let recurrence = match bbpssw_iterate(f0, rounds) {
        Ok(t) => Some(t),
        Err(Error::NonPurifiable(_)) => None,
        Err(e) => return Err(e),
    };
    let recurrence_purifiable = f0 > 0.5 || f0 == 1.0;
    let recurrence_rounds_to_target = if f0 > 0.25 { rounds_to_reach(f0, target_fidelity, rounds.max(64))? } else { None };
    Ok(Comparison {
        initial_fidelity: f0,
        one_step_fidelity: report.aggregate_fidelity.unwrap_or(0.0),
        one_step_success_prob: report.total_success_prob,
        one_step_pairs: 1,
        recurrence_purifiable,
        target_fidelity,
        recurrence_rounds_to_target,
        recurrence,
        efficiency_ratio: efficiency_ratio(&model),
        model,
    })
}
