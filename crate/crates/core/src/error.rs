use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid amplifier parameters: {0}")]
    InvalidParams(String),

    #[error("Gaussian state is not normalizable: {0}")]
    NotNormalizable(String),

    /// `det λ₃(t)` vanishes, so the Green function is undefined at this time.
    #[error("propagator is singular at t = {t} (|det λ3| = {det:e})")]
    SingularPropagator { t: f64, det: f64 },

    #[error("outside the domain of the closed-form expression: {0}")]
    Domain(String),

    #[error("degenerate measurement frame: {0}")]
    DegenerateFrame(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// The discretized density matrix lost too much probability mass.
    #[error(
        "grid too small: discretized trace {trace} deviates from 1 by more than {tolerance:e}"
    )]
    GridTooSmall { trace: f64, tolerance: f64 },

    #[error("reduced density matrix has eigenvalue {0:e} below the clamp threshold")]
    NegativeSpectrum(f64),
}
