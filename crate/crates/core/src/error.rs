use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector norm underflows; cannot normalize")]
    ZeroVector,
    #[error("error vector is zero; no decoupling axis needed (use gate-only mode)")]
    ZeroErrorVector,
    #[error("trigamma evaluated at a pole near z = {re} + {im}i")]
    PoleArgument { re: f64, im: f64 },
    #[error("quadrature did not converge (estimated error {estimate:e})")]
    QuadratureNotConverged { estimate: f64 },
    #[error("operation not available in {0} mode")]
    ModeMismatch(&'static str),
    #[error("rotation axis undefined near t/tau = {0}")]
    DegenerateAxis(f64),
    #[error("time {0} is not a node of the half-step grid")]
    GridMisaligned(f64),
    #[error("initial Bloch vector has norm {0}, exceeding 1/2")]
    InvalidInitialState(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
