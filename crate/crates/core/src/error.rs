use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis mismatch: classes tagged k={0} and k={1}")]
    BasisMismatch(u32, u32),
    #[error("parity mismatch: cannot change basis from F_{from} to F_{to}")]
    Parity { from: u32, to: u32 },
    #[error("class is not Kähler on F_{k}: p={p}, q={q}")]
    NotKahler { k: u32, p: String, q: String },
    #[error("degenerate class: self-intersection {0} is not positive")]
    DegenerateClass(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point {0:?} lies outside the chart domain")]
    OutOfDomain([f64; 4]),
    #[error("non-finite derivative of metric component")]
    NonFinite,
    #[error("metric is not positive definite at {0:?}")]
    NotPositiveDefinite([f64; 4]),
    #[error("derivative order {0} is not supported")]
    UnsupportedOrder(usize),
    #[error("input is not trace-free (trace {0:e})")]
    NotTraceFree(f64),
    #[error("almost-complex structure is not compatible with the metric (defect {0:e})")]
    IncompatibleStructure(f64),
    #[error("configuration has no Kähler data")]
    MissingKahlerData,
    #[error("scalar curvature is not constant (relative spread {0:e})")]
    NonConstantScalar(f64),
    #[error("non-finite density at quadrature node")]
    NonFiniteDensity,
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation not supported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
