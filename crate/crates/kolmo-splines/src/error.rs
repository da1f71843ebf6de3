use thiserror::Error;

/// Errors produced by spline construction, norm fitting and the extremal solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spline parameters: {0}")]
    InvalidParams(String),

    #[error("function has non-zero mean over one period (integral = {integral:.3e}, tolerance = {tol:.3e})")]
    NonZeroMean { integral: f64, tol: f64 },

    #[error("invalid order vector: {0}")]
    InvalidOrderVector(String),

    #[error("norm vector is infeasible: {0}")]
    InfeasibleNorms(String),

    #[error("derivative order {order} exceeds spline primitive order {s}")]
    OrderTooHigh { order: usize, s: usize },

    #[error("invalid derivative orders: k = {k}, r = {r} (need 0 < k < r)")]
    BadOrders { k: usize, r: usize },

    #[error("comparison hypotheses violated: {0}")]
    HypothesisViolated(String),

    #[error("no function in the class satisfies the constraints: {0}")]
    EmptyClass(String),

    #[error("unsupported class specification: {0}")]
    UnsupportedSpec(String),

    #[error("power-law self check failed: spread {spread:.3e} exceeds {tol:.3e}")]
    PowerLawMismatch { spread: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
