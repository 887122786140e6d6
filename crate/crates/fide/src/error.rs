//! Error type shared by the numeric modules.
//!
//! The expression language and the problem-config loader have their own
//! richer error types ([`crate::expr::ParseError`], [`crate::expr::EvalError`],
//! [`crate::problems::ConfigError`]); this enum covers the solver core, where
//! payloads are plain numbers and indices. Scalars are stored as `f64` so the
//! enum stays comparable and independent of the generic scalar parameter.

use thiserror::Error;

/// Errors produced by the mesh, quadrature, weight, solve and analysis paths.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma is implemented on (0, 171) only; 171 guards f64 overflow.
    #[error("gamma argument {x} outside the supported domain (0, 171)")]
    GammaDomain { x: f64 },

    /// Gauss-Legendre rules are generated for orders 2 through 64.
    #[error("unsupported quadrature order {order} (supported range is 2..=64)")]
    QuadratureOrder { order: usize },

    /// An integrand returned NaN or an infinity at a quadrature abscissa.
    #[error("integrand is not finite at abscissa {abscissa}")]
    NonFiniteIntegrand { abscissa: f64 },

    /// A mesh needs at least one subinterval.
    #[error("mesh requires at least one subinterval")]
    EmptyMesh,

    /// The fractional order must satisfy 0 < alpha < 1.
    #[error("fractional order alpha = {alpha} outside (0, 1)")]
    AlphaOutOfRange { alpha: f64 },

    /// Step size must be positive.
    #[error("step size h = {h} is not positive")]
    NonPositiveStep { h: f64 },

    /// A weight row was applied to a value slice of the wrong length.
    #[error("row of length {expected} applied to {got} values")]
    LengthMismatch { expected: usize, got: usize },

    /// The diagonal of an assembled row fell below the solvability guard,
    /// meaning the kernel weight overwhelmed the derivative weight.
    #[error("near-singular pivot {pivot:e} at row {k}")]
    NearSingularPivot { k: usize, pivot: f64 },

    /// Forward substitution produced NaN or an infinity.
    #[error("solution value at node {k} is not finite")]
    NonFiniteValue { k: usize },

    /// Error metrics need a problem with a known exact solution.
    #[error("problem has no exact solution, so nodal errors are unavailable")]
    MissingExactSolution,

    /// Convergence order is a log of positive error ratios.
    #[error("convergence order needs positive errors, got coarse = {coarse:e}, fine = {fine:e}")]
    NonPositiveError { coarse: f64, fine: f64 },

    /// Refinement ladders must double n at each step.
    #[error("refinement ladder must double at every step ({prev} -> {next})")]
    LadderNotDoubling { prev: usize, next: usize },

    /// Refinement ladders need at least one entry.
    #[error("refinement ladder is empty")]
    EmptyLadder,

    /// The multi-interval error bounds divide by (x_k - x_1).
    #[error("error bound for k >= 2 requires x_k > x_1 (got x_k = {x_k}, x_1 = {x_1})")]
    DegenerateBoundInterval { x_k: f64, x_1: f64 },

    /// Bound evaluation was asked for a problem whose derivative maxima
    /// are unbounded on the unit interval.
    #[error(
        "derivative maxima of {problem:?} are unbounded on [0, 1]; the error bounds do not apply"
    )]
    UnboundedDerivatives { problem: String },
}

/// Crate-wide result alias for the numeric modules.
pub type Result<T> = std::result::Result<T, Error>;
