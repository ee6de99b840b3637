use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole of the gamma function at x = {0}")]
    GammaPole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (a = {a}, b = {b}, x = {x})")]
    NonConvergence { a: f64, b: f64, x: f64, terms: usize },

    #[error("term outside the transform grammar: {0}")]
    Unsupported(String),

    #[error("image is not invertible within the grammar: {0}")]
    NotInvertible(String),

    #[error("u = {u} lies outside the convergence region (0, {radius})")]
    OutsideConvergence { u: f64, radius: f64 },

    #[error("expected {expected} initial values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite result: {0}")]
    NonFinite(String),

    #[error("parameters are not quantized: p = {p}, expected p = -{n}")]
    NotQuantized { p: f64, n: u32 },

    #[error("state n = {n} is not normalizable: 2p + C/B = {b} must be positive")]
    NonNormalizable { n: u32, b: f64 },

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("complex singularity exponent: discriminant {0} < 0")]
    ComplexRoot(f64),

    #[error("only {found} bound states below threshold {threshold}, {requested} requested")]
    InsufficientBoundStates { requested: usize, found: usize, threshold: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("integral diverges: {0}")]
    Divergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
