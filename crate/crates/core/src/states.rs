//! Multi-qubit states: validated density matrices, the named pure-state
//! families, white-noise mixing, Kay states and seeded Haar-random states.
//!
//! Basis ordering is big-endian throughout: qubit 0 (A) is the leftmost
//! tensor factor and the most significant bit of a basis index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{hermitian_eig, ComplexMatrix, LinalgError};
use crate::rng::SeededRng;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-8;
pub const NORM_TOL: f64 = 1e-12;
/// Largest register accepted anywhere; a 2^10 matrix already takes a while to diagonalize.
pub const MAX_QUBITS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("unknown state family '{0}'")]
    UnknownFamily(String),
    #[error("family '{0}' is not a pure state")]
    NotPureFamily(Family),
    #[error("noise fraction {0} is outside [0, 1]")]
    NoiseOutOfRange(f64),
    #[error("gamma = {gamma} does not give a valid Kay state (needs gamma >= 2){}", .min_eigenvalue.map(|m| format!("; min eigenvalue {m:e}")).unwrap_or_default())]
    GammaOutOfRange {
        gamma: f64,
        min_eigenvalue: Option<f64>,
    },
    #[error("qubit count {0} is outside 1..={MAX_QUBITS}")]
    InvalidQubitCount(usize),
    #[error("amplitude vector has length {0}, which is not a power of two >= 2")]
    BadAmplitudeLength(usize),
    #[error("state vector norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("invalid density matrix: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A broken density-matrix invariant together with the measured magnitude.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Dimension { expected: usize, found: usize },
    NonFinite { row: usize, col: usize },
    Hermiticity { max_deviation: f64 },
    Trace { trace: Complex64 },
    Psd { min_eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimension { expected, found } => {
                write!(f, "dimension {found} does not match 2^n_qubits = {expected}")
            }
            Violation::NonFinite { row, col } => write!(f, "non-finite entry at row {row}, column {col}"),
            Violation::Hermiticity { max_deviation } => {
                write!(f, "not Hermitian (max |m - m†| = {max_deviation:e}, tolerance {HERMITIAN_TOL:e})")
            }
            Violation::Trace { trace } => {
                write!(f, "trace is {}{:+}i, expected 1 (tolerance {TRACE_TOL:e})", trace.re, trace.im)
            }
            Violation::Psd { min_eigenvalue } => {
                write!(f, "not positive semidefinite (min eigenvalue {min_eigenvalue:e}, tolerance -{PSD_TOL:e})")
            }
        }
    }
}

/// Checks a candidate `n_qubits`-qubit density matrix against the
/// Hermiticity, trace and positivity invariants. An empty result means valid.
pub fn validate_matrix(n_qubits: usize, m: &ComplexMatrix) -> Vec<Violation> {
    let expected = 1usize << n_qubits.min(usize::BITS as usize - 1);
    if m.dim() != expected {
        return vec![Violation::Dimension {
            expected,
            found: m.dim(),
        }];
    }
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return vec![Violation::NonFinite { row: i, col: j }];
            }
        }
    }

    let mut out = Vec::new();
    let max_deviation = m.hermitian_deviation();
    if max_deviation > HERMITIAN_TOL {
        out.push(Violation::Hermiticity { max_deviation });
    }
    let trace = m.trace();
    if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
        out.push(Violation::Trace { trace });
    }
    // PSD is judged on the Hermitian part so it is reported even alongside a Hermiticity violation.
    match hermitian_eig(m, f64::INFINITY) {
        Ok(eig) => {
            let min_eigenvalue = eig.eigenvalues[0];
            if min_eigenvalue < -PSD_TOL {
                out.push(Violation::Psd { min_eigenvalue });
            }
        }
        Err(_) => out.push(Violation::Psd {
            min_eigenvalue: f64::NAN,
        }),
    }
    out
}

/// A `2^n × 2^n` matrix known to be Hermitian, unit-trace and PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self, StateError> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(StateError::InvalidQubitCount(n_qubits));
        }
        let violations = validate_matrix(n_qubits, &matrix);
        if !violations.is_empty() {
            return Err(StateError::Invalid(violations));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// For constructors whose output is valid by construction.
    pub(crate) fn new_unchecked(n_qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 1 << n_qubits);
        Self { n_qubits, matrix }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self, StateError> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(StateError::InvalidQubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        Ok(Self::new_unchecked(
            n_qubits,
            ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        ))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Re-checks the invariants; empty for every value built through this module.
    pub fn validate(&self) -> Vec<Violation> {
        validate_matrix(self.n_qubits, &self.matrix)
    }
}

/// A normalized state vector on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(StateError::BadAmplitudeLength(len));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(StateError::InvalidQubitCount(n_qubits));
        }
        let norm = norm(&amplitudes);
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(StateError::NotNormalized(norm));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Sparse constructor from `(bitstring, amplitude)` pairs, e.g. `("0011", 0.5)`.
    fn from_terms(n_qubits: usize, terms: &[(&str, f64)]) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        for (bits, a) in terms {
            debug_assert_eq!(bits.len(), n_qubits);
            let idx = usize::from_str_radix(bits, 2).expect("binary basis label");
            amplitudes[idx] += Complex64::new(*a, 0.0);
        }
        Self::new(amplitudes).expect("family coefficients are normalized")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::new_unchecked(self.n_qubits, ComplexMatrix::outer(&self.amplitudes))
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Named state families, including the random one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ghz3,
    W3,
    Kay,
    Ghz4,
    W4,
    Dicke24,
    Singlet4,
    Cluster4,
    Chi4,
    Random,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Ghz3,
        Family::W3,
        Family::Kay,
        Family::Ghz4,
        Family::W4,
        Family::Dicke24,
        Family::Singlet4,
        Family::Cluster4,
        Family::Chi4,
        Family::Random,
    ];

    /// Families defined as a fixed pure state mixed with white noise.
    pub const NOISY_PURE: [Family; 8] = [
        Family::Ghz3,
        Family::W3,
        Family::Ghz4,
        Family::W4,
        Family::Dicke24,
        Family::Singlet4,
        Family::Cluster4,
        Family::Chi4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz3 => "ghz3",
            Family::W3 => "w3",
            Family::Kay => "kay",
            Family::Ghz4 => "ghz4",
            Family::W4 => "w4",
            Family::Dicke24 => "dicke24",
            Family::Singlet4 => "singlet4",
            Family::Cluster4 => "cluster4",
            Family::Chi4 => "chi4",
            Family::Random => "random",
        }
    }

    /// Fixed register size, or `None` for `random`.
    pub fn n_qubits(self) -> Option<usize> {
        match self {
            Family::Ghz3 | Family::W3 | Family::Kay => Some(3),
            Family::Random => None,
            _ => Some(4),
        }
    }

    /// Inclusive parameter domain: noise fraction in [0, 1], or γ >= 2 for Kay states.
    pub fn param_domain(self) -> (f64, f64) {
        match self {
            Family::Kay => (2.0, f64::INFINITY),
            _ => (0.0, 1.0),
        }
    }

    pub fn param_in_domain(self, p: f64) -> bool {
        let (lo, hi) = self.param_domain();
        p.is_finite() && p >= lo && p <= hi
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| StateError::UnknownFamily(s.to_string()))
    }
}

/// The fixed pure state behind a noise-mixed family.
pub fn pure_state(family: Family) -> Result<PureState, StateError> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = 1.0 / 3f64.sqrt();
    let s = 1.0 / 6f64.sqrt();
    let state = match family {
        Family::Ghz3 => PureState::from_terms(3, &[("000", h), ("111", h)]),
        Family::W3 => PureState::from_terms(3, &[("001", t), ("010", t), ("100", t)]),
        Family::Ghz4 => PureState::from_terms(4, &[("0000", h), ("1111", h)]),
        Family::W4 => PureState::from_terms(
            4,
            &[("0001", 0.5), ("0010", 0.5), ("0100", 0.5), ("1000", 0.5)],
        ),
        Family::Dicke24 => PureState::from_terms(
            4,
            &[
                ("0011", s),
                ("1100", s),
                ("0101", s),
                ("0110", s),
                ("1001", s),
                ("1010", s),
            ],
        ),
        Family::Singlet4 => PureState::from_terms(
            4,
            &[
                ("0011", t),
                ("1100", t),
                ("0101", -0.5 * t),
                ("0110", -0.5 * t),
                ("1001", -0.5 * t),
                ("1010", -0.5 * t),
            ],
        ),
        Family::Cluster4 => PureState::from_terms(
            4,
            &[("0000", 0.5), ("0011", 0.5), ("1100", 0.5), ("1111", -0.5)],
        ),
        Family::Chi4 => PureState::from_terms(
            4,
            &[
                ("1111", 2f64.sqrt() * s),
                ("0001", s),
                ("0010", s),
                ("0100", s),
                ("1000", s),
            ],
        ),
        Family::Kay | Family::Random => return Err(StateError::NotPureFamily(family)),
    };
    Ok(state)
}

/// `(1 - noise) |ψ⟩⟨ψ| + noise · I / 2^N`.
pub fn mix_white_noise(psi: &PureState, noise: f64) -> Result<DensityMatrix, StateError> {
    if !(0.0..=1.0).contains(&noise) {
        return Err(StateError::NoiseOutOfRange(noise));
    }
    let dim = psi.amplitudes.len();
    let mut m = ComplexMatrix::outer(&psi.amplitudes).scale(1.0 - noise);
    let diag = noise / dim as f64;
    for i in 0..dim {
        m[(i, i)] += diag;
    }
    Ok(DensityMatrix::new_unchecked(psi.n_qubits, m))
}

/// Raw 8×8 Kay matrix for any γ, without a validity check.
pub fn kay_matrix(gamma: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::from_real_diagonal(&[
        4.0 + gamma,
        gamma,
        gamma,
        gamma,
        gamma,
        gamma,
        gamma,
        4.0 + gamma,
    ]);
    for (i, j, v) in [(0, 7, 2.0), (1, 6, 2.0), (2, 5, -2.0), (3, 4, 2.0)] {
        m[(i, j)] = Complex64::new(v, 0.0);
        m[(j, i)] = Complex64::new(v, 0.0);
    }
    m.scale(1.0 / (8.0 + 8.0 * gamma))
}

/// Three-qubit Kay state. Validity is decided by inspecting the spectrum,
/// which rejects everything below γ = 2 up to the PSD tolerance.
pub fn kay_state(gamma: f64) -> Result<DensityMatrix, StateError> {
    // γ <= -1 makes the normalization singular or flips its sign
    if !gamma.is_finite() || gamma <= -1.0 {
        return Err(StateError::GammaOutOfRange {
            gamma,
            min_eigenvalue: None,
        });
    }
    DensityMatrix::new(3, kay_matrix(gamma)).map_err(|e| match e {
        StateError::Invalid(v) => {
            let min_eigenvalue = v.iter().find_map(|x| match x {
                Violation::Psd { min_eigenvalue } => Some(*min_eigenvalue),
                _ => None,
            });
            StateError::GammaOutOfRange {
                gamma,
                min_eigenvalue,
            }
        }
        other => other,
    })
}

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes
/// (real and imaginary parts from one Box–Muller pair), then normalized.
pub fn random_pure(n_qubits: usize, seed: u64) -> Result<PureState, StateError> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(StateError::InvalidQubitCount(n_qubits));
    }
    let mut rng = SeededRng::new(seed);
    let mut amps: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|_| {
            let (re, im) = rng.normal_pair();
            Complex64::new(re, im)
        })
        .collect();
    let nrm = norm(&amps);
    for a in &mut amps {
        *a /= nrm;
    }
    PureState::new(amps)
}

/// A family plus parameter: the unit of work for the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub family: Family,
    /// Noise fraction, or γ for Kay states.
    pub param: f64,
    /// Register size for `random`; ignored otherwise.
    pub n_qubits: usize,
    /// Seed for `random`; ignored otherwise.
    pub seed: u64,
}

impl StateSpec {
    pub fn new(family: Family, param: f64) -> Self {
        Self {
            family,
            param,
            n_qubits: family.n_qubits().unwrap_or(3),
            seed: 0,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.family.n_qubits().unwrap_or(self.n_qubits)
    }

    pub fn build(&self) -> Result<DensityMatrix, StateError> {
        match self.family {
            Family::Kay => kay_state(self.param),
            Family::Random => mix_white_noise(&random_pure(self.n_qubits, self.seed)?, self.param),
            f => mix_white_noise(&pure_state(f)?, self.param),
        }
    }
}
