//! Slow, direct reference computations for cross-checking the simulator.
//!
//! Everything here works on plain nested vectors and shares no code with the
//! library: full-space conjugations instead of factored ones, explicit
//! two-copy circuits instead of closed forms.

use num_complex::Complex64 as C64;

pub type Mat = Vec<Vec<C64>>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zeros(r: usize, c_: usize) -> Mat {
    vec![vec![C64::new(0.0, 0.0); c_]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn from_flat(rows: usize, cols: usize, data: &[C64]) -> Mat {
    assert_eq!(data.len(), rows * cols);
    data.chunks(cols).map(|r| r.to_vec()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    assert_eq!(a[0].len(), k);
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == c(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Mat) -> Mat {
    let mut out = zeros(a[0].len(), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[j][i] = x.conj();
        }
    }
    out
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac, br, bc) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn trace(a: &Mat) -> C64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `|v><v|`.
pub fn projector(v: &[C64]) -> Mat {
    v.iter().map(|a| v.iter().map(|b| a * b.conj()).collect()).collect()
}

/// Bell vectors over `(HH, HV, VH, VV)` in the order phi+, phi-, psi+, psi-.
pub fn bell_vectors() -> [[C64; 4]; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (z, p, m) = (c(0.0, 0.0), c(h, 0.0), c(-h, 0.0));
    [[p, z, z, p], [p, z, z, m], [z, p, p, z], [z, p, m, z]]
}

/// `<B_k| rho |B_k>` for each Bell state.
pub fn bell_weights(rho: &Mat) -> [f64; 4] {
    bell_vectors().map(|v| {
        let mut s = c(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                s += v[i].conj() * rho[i][j] * v[j];
            }
        }
        s.re
    })
}

pub fn bell_mixture(w: [f64; 4]) -> Mat {
    let mut out = zeros(4, 4);
    for (k, v) in bell_vectors().iter().enumerate() {
        let p = projector(v);
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] += p[i][j] * w[k];
            }
        }
    }
    out
}

/// Standard Pauli matrices `I, X, Y, Z` (with `Y = [[0, -i], [i, 0]]`).
pub fn pauli(k: usize) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match k {
        0 => vec![vec![o, z], vec![z, o]],
        1 => vec![vec![z, o], vec![o, z]],
        2 => vec![vec![z, -i], vec![i, z]],
        3 => vec![vec![o, z], vec![z, -o]],
        _ => panic!("pauli index {k}"),
    }
}

/// For `op` acting on the second photon, the Bell state each Bell state is
/// sent to (global phase ignored). Panics if the image is not a Bell state.
pub fn bell_image(op: &Mat) -> [usize; 4] {
    let full = kron(&identity(2), op);
    let bells = bell_vectors();
    bells.map(|v| {
        let col: Vec<C64> = (0..4).map(|i| (0..4).map(|j| full[i][j] * v[j]).sum()).collect();
        let overlaps: Vec<f64> = bells
            .iter()
            .map(|b| b.iter().zip(&col).map(|(x, y)| x.conj() * y).sum::<C64>().norm())
            .collect();
        overlaps.iter().position(|&o| (o - 1.0).abs() < 1e-12).expect("Bell image")
    })
}

/// One coincidence block from the full-space computation.
#[derive(Debug, Clone)]
pub struct BruteOutcome {
    pub port_a: usize,
    pub port_b: usize,
    /// Unnormalized two-qubit polarization block.
    pub block: Mat,
    pub probability: f64,
}

/// Propagates a 16x16 pair state through both photons' element maps
/// (first element acts first) and 8x4 detector isometries, forming the full
/// 64x64 output state before extracting each port pair's polarization block.
pub fn brute_force_coincidences(rho: &Mat, elements_a: &[Mat], elements_b: &[Mat], det_a: &Mat, det_b: &Mat) -> Vec<BruteOutcome> {
    let chain = |elements: &[Mat]| elements.iter().fold(identity(4), |acc, e| mul(e, &acc));
    let ua = mul(det_a, &chain(elements_a));
    let ub = mul(det_b, &chain(elements_b));
    let w = kron(&ua, &ub);
    let out = mul(&mul(&w, rho), &adjoint(&w));
    let mut outcomes = Vec::new();
    for port_a in 0..4 {
        for port_b in 0..4 {
            let idx = |pa: usize, pb: usize| (port_a * 2 + pa) * 8 + port_b * 2 + pb;
            let mut block = zeros(4, 4);
            for r in 0..4 {
                for s in 0..4 {
                    block[r][s] = out[idx(r / 2, r % 2)][idx(s / 2, s % 2)];
                }
            }
            let probability = trace(&block).re;
            outcomes.push(BruteOutcome { port_a, port_b, block, probability });
        }
    }
    outcomes
}

/// One two-copy recurrence round by explicit circuit: bilateral CNOT (first
/// pair controls), `Z` measurement of the second pair on both sides, keep on
/// equal outcomes. Returns the kept pair's Bell weights (renormalized) and
/// the success probability.
pub fn two_copy_round(w: [f64; 4]) -> ([f64; 4], f64) {
    // Qubit order (a1, b1, a2, b2), a1 most significant.
    let pair = bell_mixture(w);
    let rho = kron(&pair, &pair);
    let mut u = zeros(16, 16);
    for i in 0..16 {
        let (a1, b1, a2, b2) = (i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
        let j = (a1 << 3) | (b1 << 2) | ((a2 ^ a1) << 1) | (b2 ^ b1);
        u[j][i] = c(1.0, 0.0);
    }
    let out = mul(&mul(&u, &rho), &adjoint(&u));
    let mut kept = zeros(4, 4);
    for r in 0..4 {
        for s in 0..4 {
            for m in [0b00, 0b11] {
                kept[r][s] += out[r * 4 + m][s * 4 + m];
            }
        }
    }
    let p = trace(&kept).re;
    let weights = bell_weights(&kept).map(|x| x / p);
    (weights, p)
}
