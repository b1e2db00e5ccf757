use alloc::string::String;

/// Errors raised by the numerical and geometric routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("index pair ({0}, {1}) is degenerate")]
    DegenerateIndex(usize, usize),
    #[error("axis {0} is out of range")]
    InvalidAxis(usize),
    #[error("invalid spin: {0}")]
    InvalidSpin(String),
    #[error("kappa must be positive and finite, got {0}")]
    InvalidKappa(f64),
    #[error("invalid quadrature settings: {0}")]
    InvalidSettings(String),
    #[error("quadrature did not converge: estimate {value:.6e}, error {error:.3e} after {evaluations} evaluations")]
    NonConvergence { value: f64, error: f64, evaluations: u64 },
    #[error("ambiguous piercing of {loop_name} through the surface boundary near s = {s:.6}")]
    AmbiguousPiercing { loop_name: String, s: f64 },
    #[error("insufficient resolution: residual {residual:.3e} from nearest integer ({hint})")]
    InsufficientResolution { residual: f64, hint: String },
    #[error("matter loop {0} has no irreducible representation attached")]
    UncoloredMatter(String),
    #[error("empty kappa schedule")]
    EmptySchedule,
}

pub type Result<T> = core::result::Result<T, Error>;
