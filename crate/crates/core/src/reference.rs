//! Measured fidelities and LC timings from the reference experiment.

use crate::noise::NoisePreset;

/// A measured value and its one-sigma uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measured {
    pub value: f64,
    pub sigma: f64,
}

const fn m(value: f64, sigma: f64) -> Measured {
    Measured { value, sigma }
}

/// One measured row: fidelities with `|phi+>` before and after purification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuredRow {
    pub preset: NoisePreset,
    pub before_pol: Measured,
    pub before_path: Measured,
    /// On `D2D4, D5D7, D2D7, D4D5`.
    pub after: [Measured; 4],
}

pub const MEASURED: [MeasuredRow; 6] = [
    MeasuredRow {
        preset: NoisePreset::Bf07,
        before_pol: m(0.295, 0.001),
        before_path: m(0.991, 0.001),
        after: [m(0.990, 0.001), m(0.986, 0.001), m(0.983, 0.001), m(0.991, 0.001)],
    },
    MeasuredRow {
        preset: NoisePreset::Bf05,
        before_pol: m(0.496, 0.001),
        before_path: m(0.990, 0.001),
        after: [m(0.990, 0.001), m(0.987, 0.001), m(0.985, 0.001), m(0.989, 0.001)],
    },
    MeasuredRow {
        preset: NoisePreset::Bf03,
        before_pol: m(0.693, 0.001),
        before_path: m(0.990, 0.001),
        after: [m(0.989, 0.001), m(0.988, 0.001), m(0.984, 0.001), m(0.988, 0.001)],
    },
    MeasuredRow {
        preset: NoisePreset::White07,
        before_pol: m(0.268, 0.002),
        before_path: m(0.990, 0.001),
        after: [m(0.989, 0.001), m(0.985, 0.001), m(0.980, 0.001), m(0.983, 0.001)],
    },
    MeasuredRow {
        preset: NoisePreset::White05,
        before_pol: m(0.493, 0.001),
        before_path: m(0.990, 0.001),
        after: [m(0.987, 0.001), m(0.988, 0.001), m(0.987, 0.001), m(0.985, 0.001)],
    },
    MeasuredRow {
        preset: NoisePreset::White03,
        before_pol: m(0.651, 0.001),
        before_path: m(0.990, 0.001),
        after: [m(0.988, 0.001), m(0.984, 0.001), m(0.983, 0.001), m(0.983, 0.001)],
    },
];

/// LC timings `(t1, t2, t3, t4)` in seconds as listed for the experiment.
pub const LISTED_TIMINGS: [(NoisePreset, [f64; 4]); 6] = [
    (NoisePreset::Bf07, [3.0, 7.0, 0.0, 0.0]),
    (NoisePreset::Bf05, [5.0, 5.0, 0.0, 0.0]),
    (NoisePreset::Bf03, [7.0, 3.0, 0.0, 0.0]),
    (NoisePreset::White07, [3.0, 2.3, 2.3, 2.3]),
    (NoisePreset::White05, [5.0, 1.67, 1.67, 1.67]),
    (NoisePreset::White03, [7.0, 1.0, 1.0, 1.0]),
];

pub fn measured(preset: NoisePreset) -> &'static MeasuredRow {
    MEASURED.iter().find(|r| r.preset == preset).expect("every preset has a row")
}
