//! Local quantum uncertainty (LQU) for N-qubit density matrices.
//!
//! Each qubit in turn is treated as the measured party of a
//! qubit-versus-rest bipartition. Its uncertainty is one minus the largest
//! eigenvalue of a 3×3 Pauli correlation matrix built from √ρ, and the
//! state-level figure is the mean over qubits.
//!
//! ```
//! use lqu::states::{mix_white_noise, pure_state, Family};
//! use lqu::measure::lqu_all;
//!
//! let rho = mix_white_noise(&pure_state(Family::Ghz3).unwrap(), 0.5).unwrap();
//! let report = lqu_all(&rho).unwrap();
//! assert!((report.mean - 0.25).abs() < 1e-12);
//! ```

pub mod analytic;
pub mod cli;
pub mod density_json;
pub mod linalg;
pub mod measure;
pub mod rng;
pub mod states;

pub use linalg::{ComplexMatrix, HermitianEigenSystem, LinalgError};
pub use measure::{CorrelationMatrix3, LquError, LquReport};
pub use states::{DensityMatrix, Family, PureState, StateSpec};
