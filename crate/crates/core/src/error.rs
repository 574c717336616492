use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("degenerate amplitude: norm is zero")]
    DegenerateAmplitude,
    #[error("non-finite value in input at index {0}")]
    NonFinite(usize),
    #[error("invalid density: value {value} at index {index}")]
    InvalidDensity { index: usize, value: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("wrong representation: expected {expected}")]
    WrongRepresentation { expected: &'static str },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    AsymmetricMatrix(f64),
    #[error("grid is not symmetric about the origin")]
    AsymmetricGrid,
    #[error("initial coefficients are not normalized (|a1|^2+|a2|^2 = {0})")]
    NotNormalized(f64),
    #[error("basis is not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("resonant: approximation invalid")]
    Resonant,
    #[error("unsupported hydrogen state (n={n}, l={l}, m={m})")]
    UnsupportedState { n: u32, l: u32, m: i32 },
    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),
    #[error("series too short: need at least {needed} points, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
