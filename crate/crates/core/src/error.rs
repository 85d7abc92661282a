use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("lambda_min(Im tau) = {lambda_min:e} is below the floor {floor:e}; point too close to the boundary")]
    BoundaryProximity { lambda_min: f64, floor: f64 },
    #[error("quadrature did not converge: level {level}, estimate {estimate:e}, last change {change:e}")]
    Quadrature { level: u32, estimate: f64, change: f64 },
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("cycle table error: {0}")]
    CycleTable(String),
    #[error("too close to a mirror: |denominator| = {magnitude:e} for {label}")]
    MirrorProximity { label: String, magnitude: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
