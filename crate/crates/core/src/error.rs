use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: gamma function has a pole at x = {x}")]
    Pole { op: &'static str, x: f64 },

    #[error("fractional order must satisfy 0 < alpha <= 1, got {0}")]
    InvalidOrder(f64),

    #[error("term with exponent {exponent} is not representable as a power sum (output exponent <= -1)")]
    NonRepresentable { exponent: f64 },

    #[error("power sum is singular at t = {t}")]
    Singular { t: f64 },

    #[error("divergent term: integrand exponent {exponent} <= -1")]
    NonIntegrable { exponent: f64 },

    #[error("non-finite value {value} at t = {t}")]
    Evaluation { t: f64, value: f64 },

    #[error("grid needs at least 2 cells, got {0}")]
    GridSize(usize),

    #[error("grid intervals or sizes differ")]
    GridMismatch,

    #[error("boundary mismatch: {0}")]
    Admissibility(String),

    #[error("not representable in closed form: {0}")]
    Representation(String),

    #[error("degenerate normal equations: {0}")]
    Degenerate(String),

    #[error("first variation disagreement: finite difference {finite_difference} vs analytic {analytic}")]
    Inconsistent { finite_difference: f64, analytic: f64 },

    #[error("functional failed at coefficients {coefficients:?}: {reason}")]
    Search {
        coefficients: Vec<f64>,
        reason: String,
    },

    #[error("{0}")]
    Unsupported(String),

    #[error("parse error at byte {offset}: expected {expected}, found {found}")]
    Parse {
        offset: usize,
        expected: String,
        found: String,
    },

    #[error("line {line}, column {column}: {message}")]
    Format {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot evaluate `{expr}`: {reason}")]
    ExprEval { expr: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
