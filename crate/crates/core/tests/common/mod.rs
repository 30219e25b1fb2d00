//! Test-only oracles and generators. Nothing here calls into the measure
//! pipeline; partial traces and Bloch vectors are computed from scratch.
#![allow(dead_code)]

use lqu::linalg::{kron, ComplexMatrix};
use lqu::rng::SeededRng;
use lqu::states::{mix_white_noise, random_pure, DensityMatrix};
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Reduced 2×2 state of `qubit` (big-endian), by explicit summation.
pub fn reduced_qubit(rho: &DensityMatrix, qubit: usize) -> [[Complex64; 2]; 2] {
    let n = rho.n_qubits();
    let shift = n - 1 - qubit;
    let m = rho.matrix();
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            // other bits must agree
            if (i ^ j) & !(1 << shift) != 0 {
                continue;
            }
            out[(i >> shift) & 1][(j >> shift) & 1] += m[(i, j)];
        }
    }
    out
}

/// (⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩) of one qubit, from its reduced state.
pub fn bloch_vector(rho: &DensityMatrix, qubit: usize) -> [f64; 3] {
    let r = reduced_qubit(rho, qubit);
    [
        2.0 * r[0][1].re,
        -2.0 * r[0][1].im,
        (r[0][0] - r[1][1]).re,
    ]
}

/// Random SU(2)·U(1) element: e^{iφ}(cos θ I - i sin θ n·σ).
pub fn random_qubit_unitary(rng: &mut SeededRng) -> ComplexMatrix {
    let n = rng.unit_vector3();
    let theta = std::f64::consts::PI * rng.uniform();
    let phi = std::f64::consts::TAU * rng.uniform();
    let (ct, st) = (theta.cos(), theta.sin());
    let g = Complex64::from_polar(1.0, phi);
    let mut u = ComplexMatrix::zeros(2);
    u[(0, 0)] = g * c(ct, -st * n[2]);
    u[(0, 1)] = g * c(-st * n[1], -st * n[0]);
    u[(1, 0)] = g * c(st * n[1], -st * n[0]);
    u[(1, 1)] = g * c(ct, st * n[2]);
    u
}

pub fn tensor_all(ops: &[ComplexMatrix]) -> ComplexMatrix {
    ops[1..].iter().fold(ops[0].clone(), |acc, u| kron(&acc, u))
}

/// (⊗U_k) ρ (⊗U_k)†.
pub fn conjugate(rho: &DensityMatrix, u: &ComplexMatrix) -> DensityMatrix {
    let m = &(u * rho.matrix()) * &u.adjoint();
    // remove the rounding-level anti-Hermitian part
    let m = m.add(&m.adjoint()).unwrap().scale(0.5);
    DensityMatrix::new(rho.n_qubits(), m).unwrap()
}

/// Full-rank random mixed state G G† / Tr(G G†) with Gaussian G.
pub fn random_mixed(n_qubits: usize, seed: u64) -> DensityMatrix {
    let mut rng = SeededRng::new(seed);
    let dim = 1 << n_qubits;
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let (a, b) = rng.normal_pair();
            g[(i, j)] = c(a, b);
        }
    }
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let m = gg.scale(1.0 / tr);
    let m = m.add(&m.adjoint()).unwrap().scale(0.5);
    DensityMatrix::new(n_qubits, m).unwrap()
}

/// Random pure state mixed with a seed-dependent amount of white noise.
pub fn random_noisy(n_qubits: usize, seed: u64) -> DensityMatrix {
    let mut rng = SeededRng::new(seed ^ 0x9e37_79b9_7f4a_7c15);
    mix_white_noise(&random_pure(n_qubits, seed).unwrap(), rng.uniform()).unwrap()
}

/// Random classical state: diagonal with random probabilities.
pub fn random_diagonal(n_qubits: usize, seed: u64) -> DensityMatrix {
    let mut rng = SeededRng::new(seed);
    let dim = 1 << n_qubits;
    // sparse-ish: some exact zeros so rank-deficient inputs are covered
    let p: Vec<f64> = (0..dim)
        .map(|_| {
            let u = rng.uniform();
            if u < 0.3 { 0.0 } else { u }
        })
        .collect();
    let total: f64 = p.iter().sum::<f64>().max(f64::MIN_POSITIVE);
    let mut p: Vec<f64> = p.iter().map(|x| x / total).collect();
    if p.iter().all(|&x| x == 0.0) {
        p[0] = 1.0;
    }
    let s: f64 = p.iter().sum();
    p[0] += 1.0 - s;
    DensityMatrix::new(n_qubits, ComplexMatrix::from_real_diagonal(&p)).unwrap()
}

pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + i as f64 * (to - from) / (steps - 1) as f64
            }
        })
        .collect()
}
