mod common;

use hyperpurify::noise::{NoiseKind, NoisePreset};
use hyperpurify::optics::{CircuitPreset, DetectorPattern};
use hyperpurify::purify::{purify, sweep, table1};
use hyperpurify::qstate::{bell_state, random_density, BellDiagonal, BellKind};
use hyperpurify::HyperState;
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = BellDiagonal> {
    prop::array::uniform4(0.0f64..1.0)
        .prop_filter("nonzero", |w| w.iter().sum::<f64>() > 1e-3)
        .prop_map(|w| BellDiagonal::normalize(w).unwrap())
}

proptest! {
    #[test]
    fn any_bell_diagonal_noise_is_removed(w in weights()) {
        for preset in CircuitPreset::ALL {
            let report = purify(&HyperState::from_bell_diagonal(&w), preset).unwrap();
            prop_assert!((report.total_success_prob - 1.0).abs() < 1e-10);
            for o in &report.outcomes {
                if let Some(f) = o.fidelity {
                    prop_assert!((f - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn phi_weight_sets_the_pattern_split(w in weights()) {
        let report = purify(&HyperState::from_bell_diagonal(&w), CircuitPreset::Fig2c).unwrap();
        let [d2d4, d5d7, d2d7, d4d5] = DetectorPattern::accepted();
        let prob = |p| report.pattern(p).unwrap().probability;
        let phi = w.f1 + w.f2;
        prop_assert!((prob(d2d4) + prob(d5d7) - phi).abs() < 1e-12);
        prop_assert!((prob(d2d7) + prob(d4d5) - (1.0 - phi)).abs() < 1e-12);
    }
}

#[test]
fn output_polarization_inherits_the_spatial_state() {
    // The circuit exchanges the two degrees of freedom on each photon, so
    // any product input leaves every fired pattern holding the spatial state.
    let mut r = common::rng(21);
    for _ in 0..20 {
        let pol = BellDiagonal::random(&mut r).to_density();
        let spat = random_density(4, &mut r).unwrap();
        let report = purify(&HyperState::product(pol, spat.clone()).unwrap(), CircuitPreset::Fig2c).unwrap();
        for o in &report.outcomes {
            if let Some(rho) = &o.conditional_pol {
                assert!(rho.matrix().approx_eq(spat.matrix(), 1e-10), "{}", o.pattern);
            }
        }
    }
}

#[test]
fn imperfect_spatial_fidelity_caps_the_output() {
    for f in [0.9, 0.95, 0.99] {
        for row in table1(f, CircuitPreset::Fig2c).unwrap() {
            for after in row.after {
                assert!((after.unwrap() - f).abs() < 1e-12, "{}", row.noise);
            }
            assert!((row.before_path - f).abs() < 1e-12);
        }
    }
}

#[test]
fn sweep_before_fidelity_is_one_minus_p() {
    let ps = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
    for kind in [NoiseKind::BitFlip, NoiseKind::White] {
        let rows = sweep(kind, &ps, 1.0, CircuitPreset::Fig2c).unwrap();
        for (row, p) in rows.iter().zip(ps) {
            assert!((row.before_pol - (1.0 - p)).abs() < 1e-12);
            assert!((row.success_prob - 1.0).abs() < 1e-10);
            assert!((row.aggregate.unwrap() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn fig1_with_correction_matches_fig2c() {
    for preset in NoisePreset::ALL {
        let state = HyperState::from_bell_diagonal(&preset.noisy_polarization());
        let a = purify(&state, CircuitPreset::Fig1).unwrap();
        let b = purify(&state, CircuitPreset::Fig2c).unwrap();
        assert!((a.aggregate_fidelity.unwrap() - b.aggregate_fidelity.unwrap()).abs() < 1e-12);
        let phi = bell_state(BellKind::PhiPlus);
        assert!((a.mixed_output().unwrap().fidelity(&phi).unwrap() - 1.0).abs() < 1e-10);
    }
}
