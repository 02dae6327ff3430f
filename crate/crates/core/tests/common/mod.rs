#![allow(dead_code)]

use hyperpurify::optics::{Circuit, Photon};
use hyperpurify::{ComplexMatrix, HyperState};
use hyperpurify_oracle::{self as oracle, Mat};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn to_mat(m: &ComplexMatrix) -> Mat {
    oracle::from_flat(m.rows(), m.cols(), m.as_slice())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Alternates entangled 16-dim states with polarization (x) spatial products.
pub fn random_hyperstate(rng: &mut ChaCha8Rng) -> HyperState {
    use hyperpurify::qstate::random_density;
    if rng.random_bool(0.5) {
        HyperState::from_full(random_density(16, rng).unwrap()).unwrap()
    } else {
        HyperState::product(random_density(4, rng).unwrap(), random_density(4, rng).unwrap()).unwrap()
    }
}

/// Brute-force outcomes keyed by detector numbers `(a, b)`.
pub fn brute_outcomes(state: &HyperState, circuit: &Circuit) -> Vec<((u8, u8), f64, Mat)> {
    let maps = |p: Photon| circuit.elements(p).iter().map(|e| to_mat(e.map())).collect::<Vec<_>>();
    let brute = oracle::brute_force_coincidences(
        &to_mat(state.full().matrix()),
        &maps(Photon::A),
        &maps(Photon::B),
        &to_mat(circuit.detectors(Photon::A).map()),
        &to_mat(circuit.detectors(Photon::B).map()),
    );
    let la = circuit.detectors(Photon::A).labels();
    let lb = circuit.detectors(Photon::B).labels();
    brute
        .into_iter()
        .map(|o| ((la[o.port_a].number(), lb[o.port_b].number()), o.probability, o.block))
        .collect()
}
