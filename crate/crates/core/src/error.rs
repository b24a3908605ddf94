//! Error type shared by every module of the engine.

use thiserror::Error;

/// Unified error for exact-arithmetic, tensor and constructor failures.
///
/// Constructors validate their inputs exactly; when an algebraic
/// precondition fails the violated identity's residual is attached so a
/// caller (or a scenario author) can see *why* the input was rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero in Q(rho)")]
    DivisionByZero,

    #[error("division by the zero rational function")]
    ZeroFunctionDivisor,

    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,

    #[error("coordinate index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("chart dimension must be at least 1")]
    EmptyChart,

    #[error("metric is not symmetric at entry ({row},{col})")]
    NonSymmetricMetric { row: usize, col: usize },

    #[error("metric is degenerate: det(g) is the zero function")]
    DegenerateMetric,

    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a root of {cubic}: residual {residual}")]
    CubicViolated { cubic: String, residual: String },

    #[error("condition {condition} violated: residual {residual}")]
    ConditionViolated { condition: String, residual: String },

    #[error("metallic branch inapplicable: p^2 + q - 1 = 0")]
    BranchInapplicable,

    #[error("infeasible constraint combination: {0}")]
    Infeasible(String),

    #[error("unknown suite id: {0}")]
    UnknownSuite(String),

    #[error("float cross-check hit poles at every sample ({attempts} attempts)")]
    PersistentPole { attempts: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
