//! Solvers and verification tools for the Dirac delta potential in the
//! real Hilbert space formulation of quantum mechanics, covering complex
//! wave functions and both quaternionic wave equations (time derivative
//! multiplied by `i` from the left or from the right).
//!
//! The crate is organized around three solver modules and the machinery
//! that keeps them honest:
//!
//! - [`algebra`]: quaternion arithmetic in the symplectic representation.
//! - [`complex_delta`]: the complex equation — autonomous dispersion,
//!   stationarity classes, the delta bound state, and scattering with its
//!   closed-form flux balance.
//! - [`quat_left`] / [`quat_right`]: the two inequivalent quaternionic
//!   wave equations, their 2x2 eigenproblems and delta matching.
//! - [`observables`]: real-Hilbert-space expectation values, closed-form
//!   tables and the quadrature definition they must agree with.
//! - [`oracle`]: brute-force arbiters (eigen-solve, direct elimination,
//!   finite-difference and jump residuals).
//! - [`verify`]: the seeded suite that cross-checks every closed form
//!   against its oracle and reports printed-formula diagnostics.

pub mod algebra;
pub mod complex_delta;
pub mod error;
pub mod observables;
pub mod oracle;
pub mod quat_left;
pub mod quat_right;
pub mod state;
pub mod verify;

pub use algebra::{PhysicalConstants, Quaternion};
pub use complex_delta::{
    BoundState, ComplexBranch, ComplexPotential, ScatteringSolution, Sign, StationarityClass,
};
pub use error::{Error, Result};
pub use quat_left::{DeltaSolutionLeft, QuatBranch, QuaternionPotential};
pub use quat_right::RightBranch;
pub use state::{EquationForm, PotentialSpec, WaveState};
