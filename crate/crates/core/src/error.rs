use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: no vectors supplied")]
    EmptyInput,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |A - A^H| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("iteration did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("spanning vectors are numerically zero")]
    ZeroSubspace,

    #[error("subspaces are not in general position (largest cos angle {cos_angle})")]
    NotGeneralPosition { cos_angle: f64 },

    #[error("sector {index} is degenerate (sin angle {sin_angle:e} below 1e-8)")]
    DegenerateSector { index: usize, sin_angle: f64 },

    #[error("invalid prior probability {0}: must lie in [0, 1]")]
    InvalidPrior(f64),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid angles: {0}")]
    InvalidAngles(String),

    #[error("problem has angles only; explicit Jordan frames are required")]
    MissingFrames,

    #[error("degenerate angles: cos^2 theta_1 = cos^2 theta_2 = {0}")]
    DegenerateAngles(f64),

    #[error("state is not normalized (norm {0})")]
    UnnormalizedState(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
