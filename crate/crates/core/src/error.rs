use thiserror::Error;

/// Errors raised by the algebra, calculus, state and Weyl routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-square input: {rows} rows, row {row} has {cols} columns")]
    NonSquare { rows: usize, row: usize, cols: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("element is not invertible (smallest singular value {smallest_singular:e}, largest {largest_singular:e})")]
    NotInvertible {
        smallest_singular: f64,
        largest_singular: f64,
    },

    #[error("eigensolver did not converge (condition estimate {condition_estimate:e})")]
    EigenNotConverged { condition_estimate: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element is not self-adjoint (||A - A*|| = {defect:e})")]
    NotSelfAdjoint { defect: f64 },

    #[error("element is not normal (||AA* - A*A|| = {defect:e})")]
    NotNormal { defect: f64 },

    #[error("element is not positive: eigenvalue {eigenvalue:e} below tolerance")]
    NotPositive { eigenvalue: f64 },

    #[error("function is not finite at eigenvalue {re} + {im}i")]
    NonFiniteFunction { re: f64, im: f64 },

    #[error("functional is not a state: {0}")]
    NotAState(String),

    #[error("functional not positive: Gram eigenvalue {eigenvalue:e}")]
    FunctionalNotPositive { eigenvalue: f64 },

    #[error("states differ: expectation mismatch {mismatch:e} on basis element {index}")]
    StatesDiffer { index: usize, mismatch: f64 },

    #[error("algebra is not commutative: basis elements {first} and {second} do not commute (defect {defect:e})")]
    NonCommutative { first: usize, second: usize, defect: f64 },

    #[error("unsupported modulus {0}: discrete Weyl systems need an odd modulus >= 3")]
    UnsupportedModulus(usize),

    #[error("group average vanished for {attempts} seeds (norm {norm:e})")]
    DegenerateAverage { attempts: usize, norm: f64 },

    #[error("kernel is not integrable on the plane at this cutoff (boundary/peak ratio {tail_ratio:e})")]
    NonIntegrableKernel { tail_ratio: f64 },

    #[error("operator vanished numerically (norm {norm:e})")]
    ZeroOperator { norm: f64 },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown function {0:?}")]
    UnknownFunction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
