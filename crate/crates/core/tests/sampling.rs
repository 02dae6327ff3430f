use hyperpurify::qstate::{bell_state, BellDiagonal, BellKind};
use hyperpurify::tomography::{error_bar, sample_counts, simulate_tomography, trial_seed, BasisPair, PauliLabel, Sampling};

// Upper 0.1% point of chi-square with 3 degrees of freedom.
const CHI2_3DOF_P001: f64 = 16.266;

#[test]
fn counts_follow_outcome_probabilities() {
    let rho = BellDiagonal::new(0.55, 0.2, 0.15, 0.1).unwrap().to_density();
    let shots = 10_000u64;
    for basis in BasisPair::settings() {
        let p = basis.probabilities(&rho).unwrap();
        let mut stats = Vec::new();
        for seed in 0..100 {
            let rec = sample_counts(&rho, basis, shots, seed).unwrap();
            let chi2: f64 = rec
                .counts
                .iter()
                .zip(p)
                .filter(|(_, pk)| *pk > 0.0)
                .map(|(&c, pk)| {
                    let e = pk * shots as f64;
                    (c as f64 - e).powi(2) / e
                })
                .sum();
            stats.push(chi2);
        }
        let rejected = stats.iter().filter(|&&s| s > CHI2_3DOF_P001).count();
        assert!(rejected <= 2, "{basis}: {rejected} of 100 seeds rejected");
        let mean = stats.iter().sum::<f64>() / stats.len() as f64;
        // Mean of 100 chi-square(3) draws has standard deviation ~0.245.
        assert!((mean - 3.0).abs() < 1.0, "{basis}: mean statistic {mean}");
    }
}

#[test]
fn impossible_outcomes_never_occur() {
    let rho = bell_state(BellKind::PsiMinus).projector();
    for (a, b) in [(PauliLabel::X, PauliLabel::X), (PauliLabel::Y, PauliLabel::Y), (PauliLabel::Z, PauliLabel::Z)] {
        let rec = sample_counts(&rho, BasisPair(a, b), 5000, 3).unwrap();
        assert_eq!(rec.counts[0] + rec.counts[3], 0);
    }
}

#[test]
fn ten_thousand_shots_resolve_a_bell_state() {
    let phi = bell_state(BellKind::PhiPlus);
    let rho = phi.projector();
    let good = (0..100)
        .filter(|&seed| {
            let (_, rec) = simulate_tomography(&rho, Sampling::Shots(10_000), seed).unwrap();
            rec.rho.fidelity(&phi).unwrap() > 0.98
        })
        .count();
    assert!(good >= 99, "{good} of 100");
}

#[test]
fn error_bar_shrinks_with_shots() {
    let phi = bell_state(BellKind::PhiPlus);
    let rho = BellDiagonal::isotropic(0.7).unwrap().to_density();
    let small = error_bar(&rho, &phi, Sampling::Shots(2_500), 200, 1).unwrap();
    let large = error_bar(&rho, &phi, Sampling::Shots(10_000), 200, 1).unwrap();
    let ratio = small / large;
    assert!((1.6..2.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn error_bar_matches_shot_noise_estimate() {
    // Werner fidelity estimate is (1 + <XX> - <YY> + <ZZ>)/4 with each
    // correlator from an independent setting of variance (1 - E^2)/N.
    let f: f64 = 0.3;
    let e = (4.0 * f - 1.0) / 3.0;
    let n = 28_800.0;
    let predicted = (3.0 * (1.0 - e * e) / n).sqrt() / 4.0;
    let phi = bell_state(BellKind::PhiPlus);
    let rho = BellDiagonal::isotropic(f).unwrap().to_density();
    let measured = error_bar(&rho, &phi, Sampling::Shots(n as u64), 400, 9).unwrap();
    assert!((measured / predicted - 1.0).abs() < 0.15, "{measured} vs {predicted}");
}

#[test]
fn trial_seeds_are_distinct() {
    let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|k| trial_seed(5, k)).collect();
    assert_eq!(seeds.len(), 1000);
}
