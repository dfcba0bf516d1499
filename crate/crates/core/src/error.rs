use thiserror::Error;

/// Errors shared by the solver and verification modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude has zero norm")]
    ZeroAmplitude,
    #[error("no bound state: delta strength q0 = {q0} must be negative")]
    NoBoundState { q0: f64 },
    #[error("non-confining potential: imaginary delta strength q1 = {q1} forces K1 != 0")]
    NonConfining { q1: f64 },
    #[error("matching system is singular (parameter resonance)")]
    SingularMatching,
    #[error("flux formula pole: |1 + g| = {magnitude} below tolerance")]
    PoleAtG { magnitude: f64 },
    #[error("degenerate coupling: pure-quaternionic component vanishes, use the complex solver")]
    DegenerateCoupling,
    #[error("zero delta strength")]
    ZeroStrength,
    #[error("not confining: |Im Q| = {im_norm} must vanish")]
    NotConfining { im_norm: f64 },
    #[error("incident branch violates the pure stationary conditions: {reason}")]
    NotStationary { reason: String },
    #[error("norm integral diverges over the requested window")]
    DivergentNorm,
    #[error("adaptive quadrature failed to reach tolerance {tolerance} (estimate {estimate})")]
    QuadratureFailure { tolerance: f64, estimate: f64 },
    #[error("grid too coarse: collar {collar} must exceed twice the spacing {spacing}")]
    GridTooCoarse { collar: f64, spacing: f64 },
    #[error("wave function discontinuous at x = 0: |gap| = {gap}")]
    DiscontinuousAtZero { gap: f64 },
    #[error("invalid physical constant: {0}")]
    InvalidConstant(String),
    #[error("closed-form expectation needs a single exponential term per region; use quadrature")]
    NotSingleBranch,
    #[error("invalid window [{lo}, {hi}]")]
    InvalidWindow { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
