use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },

    #[error("besselj order must be a non-negative integer literal (byte {offset})")]
    BesselOrder { offset: usize },

    #[error("unbound symbol `{name}`")]
    UnboundSymbol { name: String },

    #[error("domain error in `{expr}`: {detail}")]
    Domain { expr: String, detail: String },

    #[error("x = {x} lies outside the field domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("domain too small for the finite-difference stencil at x = {x}")]
    StencilDomain { x: f64 },

    #[error("quadrature did not converge; worst subinterval [{lo}, {hi}] with error estimate {error:e}")]
    NonConvergence { lo: f64, hi: f64, error: f64 },

    #[error("generating function is negative: f({x}) = {value}")]
    NegativeGenerating { x: f64, value: f64 },

    #[error("coefficient c vanishes near x = {x}")]
    VanishingCoefficient { x: f64 },

    #[error("denominator of the constructed c crosses zero at x = {x}")]
    DenominatorZero { x: f64 },

    #[error("degenerate constant: {0}")]
    Degenerate(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
