use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("ground level is degenerate (gap {gap:e})")]
    DegenerateGround { gap: f64 },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid time: {0}")]
    InvalidTime(String),

    #[error("integration step {dt} too large: dt·‖H‖ = {product} exceeds 0.1")]
    StepTooLarge { dt: f64, product: f64 },

    #[error("zero field: S_zA(t) is identically zero and has no maximum")]
    NoDynamics,

    #[error("no maximum of S_zA(t) found before t_max = {t_max}")]
    HorizonExceeded { t_max: f64 },

    #[error("invalid scan: {0}")]
    InvalidScan(String),

    #[error("field bracket [{lo}, {hi}] has no interior maximum")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("invalid physical units: {0}")]
    InvalidUnits(String),
}
