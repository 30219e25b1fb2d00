//! Local quantum uncertainty of multi-qubit states.
//!
//! For each qubit k the measure builds the real symmetric 3×3 matrix
//!
//! ```text
//! m_ij = Tr[ √ρ (σ_i on qubit k) √ρ (σ_j on qubit k) ]
//! ```
//!
//! and the uncertainty of the bipartition "k versus the rest" is
//! `1 - λ_max(M)`. The state-level figure is the arithmetic mean over all
//! qubits. A brute-force minimization of the skew information over sampled
//! measurement directions is provided as an independent upper bound.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    hermitian_eig, kron, matrix_sqrt_psd, trace_of_product, ComplexMatrix, LinalgError,
    DEFAULT_HERMITIAN_TOL, DEFAULT_NEG_TOL,
};
use crate::rng::SeededRng;
use crate::states::DensityMatrix;

/// Allowed imaginary residue of the (real in exact arithmetic) correlation traces.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;
/// Excursion outside [0, 1] that is treated as rounding and clamped.
pub const RANGE_CLAMP_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LquError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit state")]
    IndexOutOfRange { index: usize, n_qubits: usize },
    #[error("Pauli index {0} is not one of 1 (x), 2 (y), 3 (z)")]
    PauliIndex(usize),
    #[error("observable has dimension {found}, state has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("observable is not Hermitian (max |k - k†| = {0:e})")]
    NotHermitian(f64),
    #[error("variational search needs at least one sample")]
    NoSamples,
    #[error("numerical contract violated: {0}")]
    NumericalContractViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// 1, 2, 3 → x, y, z.
    pub fn from_index(i: usize) -> Result<Self, LquError> {
        match i {
            1 => Ok(Pauli::X),
            2 => Ok(Pauli::Y),
            3 => Ok(Pauli::Z),
            _ => Err(LquError::PauliIndex(i)),
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        match self {
            Pauli::X => ComplexMatrix::pauli_x(),
            Pauli::Y => ComplexMatrix::pauli_y(),
            Pauli::Z => ComplexMatrix::pauli_z(),
        }
    }

    fn block(self) -> Block2 {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::X => [[o, one], [one, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[one, o], [o, -one]],
        }
    }
}

type Block2 = [[Complex64; 2]; 2];

/// `n·σ` for a real 3-vector.
fn direction_block(n: [f64; 3]) -> Block2 {
    [
        [Complex64::new(n[2], 0.0), Complex64::new(n[0], -n[1])],
        [Complex64::new(n[0], n[1]), Complex64::new(-n[2], 0.0)],
    ]
}

fn check_qubit(index: usize, n_qubits: usize) -> Result<(), LquError> {
    if index >= n_qubits {
        return Err(LquError::IndexOutOfRange { index, n_qubits });
    }
    Ok(())
}

/// Dense `I ⊗ … ⊗ u ⊗ … ⊗ I` with `u` at position `qubit` (big-endian).
pub fn embed_single_qubit(
    n_qubits: usize,
    qubit: usize,
    u: &ComplexMatrix,
) -> Result<ComplexMatrix, LquError> {
    check_qubit(qubit, n_qubits)?;
    if u.dim() != 2 {
        return Err(LquError::DimensionMismatch {
            expected: 2,
            found: u.dim(),
        });
    }
    let i2 = ComplexMatrix::identity(2);
    let mut out = if qubit == 0 { u.clone() } else { i2.clone() };
    for k in 1..n_qubits {
        out = kron(&out, if k == qubit { u } else { &i2 });
    }
    Ok(out)
}

/// `σ_pauli` acting on `qubit` of an `n_qubits` register; `pauli_index` is 1, 2 or 3.
pub fn local_observable(
    n_qubits: usize,
    qubit: usize,
    pauli_index: usize,
) -> Result<ComplexMatrix, LquError> {
    let p = Pauli::from_index(pauli_index)?;
    embed_single_qubit(n_qubits, qubit, &p.matrix())
}

/// `m · (I ⊗ u ⊗ I)` without building the 2^N operator: each output column
/// mixes the two input columns that differ only in the target bit.
fn mul_local_right(m: &ComplexMatrix, n_qubits: usize, qubit: usize, u: &Block2) -> ComplexMatrix {
    let dim = m.dim();
    let shift = n_qubits - 1 - qubit;
    let mask = 1usize << shift;
    let mut out = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            let b = (c >> shift) & 1;
            let c0 = c & !mask;
            let c1 = c | mask;
            out[(r, c)] = m[(r, c0)] * u[0][b] + m[(r, c1)] * u[1][b];
        }
    }
    out
}

/// Skew information `Tr(ρk²) - Tr(√ρ k √ρ k)` for a Hermitian observable on the full space.
pub fn skew_information(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<f64, LquError> {
    let sqrt = SqrtDensity::new(rho)?;
    sqrt.skew_information(k)
}

/// A density matrix together with its principal square root, computed once
/// and shared by every bipartition and every sampled observable.
#[derive(Debug, Clone)]
pub struct SqrtDensity<'a> {
    rho: &'a DensityMatrix,
    sqrt: ComplexMatrix,
}

impl<'a> SqrtDensity<'a> {
    pub fn new(rho: &'a DensityMatrix) -> Result<Self, LquError> {
        let sqrt = matrix_sqrt_psd(rho.matrix(), DEFAULT_NEG_TOL)?;
        Ok(Self { rho, sqrt })
    }

    pub fn sqrt(&self) -> &ComplexMatrix {
        &self.sqrt
    }

    pub fn n_qubits(&self) -> usize {
        self.rho.n_qubits()
    }

    pub fn skew_information(&self, k: &ComplexMatrix) -> Result<f64, LquError> {
        if k.dim() != self.rho.dim() {
            return Err(LquError::DimensionMismatch {
                expected: self.rho.dim(),
                found: k.dim(),
            });
        }
        let dev = k.hermitian_deviation();
        if dev > DEFAULT_HERMITIAN_TOL {
            return Err(LquError::NotHermitian(dev));
        }
        let rho_k = self.rho.matrix().matmul(k)?;
        let sqrt_k = self.sqrt.matmul(k)?;
        Ok((trace_of_product(&rho_k, k) - trace_of_product(&sqrt_k, &sqrt_k)).re)
    }

    /// Skew information of `n·σ` on one qubit, using the structured product.
    fn local_skew(&self, qubit: usize, u: &Block2) -> f64 {
        let n = self.n_qubits();
        let rho_k = mul_local_right(self.rho.matrix(), n, qubit, u);
        let rho_kk = mul_local_right(&rho_k, n, qubit, u);
        let sqrt_k = mul_local_right(&self.sqrt, n, qubit, u);
        (rho_kk.trace() - trace_of_product(&sqrt_k, &sqrt_k)).re
    }

    pub fn m_matrix(&self, qubit: usize) -> Result<CorrelationMatrix3, LquError> {
        let n = self.n_qubits();
        check_qubit(qubit, n)?;
        let products: Vec<ComplexMatrix> = Pauli::ALL
            .iter()
            .map(|p| mul_local_right(&self.sqrt, n, qubit, &p.block()))
            .collect();
        let mut entries = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let t = trace_of_product(&products[i], &products[j]);
                if t.im.abs() > IMAG_RESIDUE_TOL {
                    return Err(LquError::NumericalContractViolation(format!(
                        "m[{i}][{j}] for qubit {qubit} has imaginary part {:e}",
                        t.im
                    )));
                }
                entries[i][j] = t.re;
                entries[j][i] = t.re;
            }
        }
        Ok(CorrelationMatrix3 {
            measured_qubit: qubit,
            entries,
        })
    }

    pub fn lqu_bipartition(&self, qubit: usize) -> Result<f64, LquError> {
        let m = self.m_matrix(qubit)?;
        clamp_unit(1.0 - m.max_eigenvalue()?, || format!("qubit {qubit}"))
    }

    pub fn lqu_all(&self) -> Result<LquReport, LquError> {
        let per_bipartition = (0..self.n_qubits())
            .map(|q| self.lqu_bipartition(q))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LquReport::new(per_bipartition))
    }

    /// Minimum skew information over `n_samples` directions drawn uniformly on S².
    pub fn lqu_variational(&self, qubit: usize, n_samples: usize, seed: u64) -> Result<f64, LquError> {
        check_qubit(qubit, self.n_qubits())?;
        if n_samples == 0 {
            return Err(LquError::NoSamples);
        }
        let mut rng = SeededRng::new(seed);
        let mut best = f64::INFINITY;
        for _ in 0..n_samples {
            let u = direction_block(rng.unit_vector3());
            best = best.min(self.local_skew(qubit, &u));
        }
        Ok(best)
    }
}

/// Maps rounding excursions just outside [0, 1] back inside; anything larger is a bug.
fn clamp_unit(x: f64, what: impl FnOnce() -> String) -> Result<f64, LquError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else if (-RANGE_CLAMP_TOL..0.0).contains(&x) {
        Ok(0.0)
    } else if x > 1.0 && x <= 1.0 + RANGE_CLAMP_TOL {
        Ok(1.0)
    } else {
        Err(LquError::NumericalContractViolation(format!(
            "{} has value {x} outside [0, 1]",
            what()
        )))
    }
}

/// The real symmetric 3×3 Pauli correlation matrix for one measured qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix3 {
    pub measured_qubit: usize,
    pub entries: [[f64; 3]; 3],
}

impl CorrelationMatrix3 {
    /// Ascending eigenvalues, from the general Hermitian solver.
    pub fn eigenvalues(&self) -> Result<[f64; 3], LquError> {
        let rows: Vec<&[f64]> = self.entries.iter().map(|r| r.as_slice()).collect();
        let eig = hermitian_eig(&ComplexMatrix::from_real_rows(&rows), DEFAULT_HERMITIAN_TOL)?;
        let ev = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        for &l in &ev {
            if !(-RANGE_CLAMP_TOL..=1.0 + RANGE_CLAMP_TOL).contains(&l) {
                return Err(LquError::NumericalContractViolation(format!(
                    "correlation matrix for qubit {} has eigenvalue {l} outside [0, 1]",
                    self.measured_qubit
                )));
            }
        }
        Ok(ev)
    }

    pub fn max_eigenvalue(&self) -> Result<f64, LquError> {
        Ok(self.eigenvalues()?[2])
    }

    /// nᵀ M n.
    pub fn quadratic_form(&self, n: [f64; 3]) -> f64 {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| n[i] * self.entries[i][j] * n[j])
            .sum()
    }
}

/// Per-bipartition uncertainties (indexed by measured qubit) and their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct LquReport {
    pub per_bipartition: Vec<f64>,
    pub mean: f64,
}

impl LquReport {
    pub fn new(per_bipartition: Vec<f64>) -> Self {
        // summed in ascending qubit order
        let mean = per_bipartition.iter().sum::<f64>() / per_bipartition.len() as f64;
        Self {
            per_bipartition,
            mean,
        }
    }

    pub fn min(&self) -> f64 {
        self.per_bipartition.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.per_bipartition
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn m_matrix(rho: &DensityMatrix, qubit: usize) -> Result<CorrelationMatrix3, LquError> {
    check_qubit(qubit, rho.n_qubits())?;
    SqrtDensity::new(rho)?.m_matrix(qubit)
}

pub fn lqu_bipartition(rho: &DensityMatrix, qubit: usize) -> Result<f64, LquError> {
    check_qubit(qubit, rho.n_qubits())?;
    SqrtDensity::new(rho)?.lqu_bipartition(qubit)
}

pub fn lqu_all(rho: &DensityMatrix) -> Result<LquReport, LquError> {
    SqrtDensity::new(rho)?.lqu_all()
}

pub fn lqu_mean(rho: &DensityMatrix) -> Result<f64, LquError> {
    Ok(lqu_all(rho)?.mean)
}

pub fn lqu_variational(
    rho: &DensityMatrix,
    qubit: usize,
    n_samples: usize,
    seed: u64,
) -> Result<f64, LquError> {
    check_qubit(qubit, rho.n_qubits())?;
    SqrtDensity::new(rho)?.lqu_variational(qubit, n_samples, seed)
}
