//! Product-integration solvers for linear fractional integro-differential
//! equations
//!
//! ```text
//! D^alpha phi(x) = f(x) + ∫₀ˣ K(x, t) phi(t) dt,   x in [0, 1],  0 < alpha < 1,
//! ```
//!
//! with the Caputo derivative and initial value phi(0) = delta.
//!
//! Three discretizations are provided, selected by [`SchemeKind`]:
//!
//! - **s1** (`Linear`): piecewise-linear interpolation of the unknown on both
//!   sides; order 2 - alpha.
//! - **s2** (`Quadratic`): piecewise-quadratic interpolation on both sides
//!   (linear on the first subinterval); order about 2.
//! - **s3** (`QuadraticLinear`): quadratic on the derivative side, linear
//!   under the kernel integral.
//!
//! Each scheme yields a lower-triangular linear system solved by forward
//! substitution ([`solve`]). Error metrics, convergence studies and the
//! theoretical error-bound evaluators live in [`analysis`]; three classic
//! benchmark problems and a config-file loader live in [`problems`]; the
//! small expression language for user-defined problems lives in [`expr`].
//!
//! The numeric core is generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the `*64` aliases below cover the common case.
//!
//! # Example
//!
//! ```
//! use fide::{analysis, problems, solver, quadrature, SchemeKind};
//!
//! let problem = problems::example_5_1::<f64>();
//! let rule = quadrature::gauss_legendre(10).unwrap();
//! let result = solver::solve(problem.spec(), SchemeKind::Quadratic, 20, &rule).unwrap();
//! let mae = analysis::mae(&result).unwrap();
//! assert!(mae < 1e-3);
//! ```

// validation guards use negated comparisons so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod caputo;
pub mod error;
pub mod expr;
pub mod gamma;
pub mod kernel;
pub mod mesh;
pub mod problem;
pub mod problems;
pub mod quadrature;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use problem::SchemeKind;
pub use scalar::Real;

pub use analysis::{bound_s1, bound_s2, bound_s3, convergence_order, convergence_study, mae};
pub use gamma::gamma;
pub use quadrature::{gauss_legendre, integrate_01, DEFAULT_ORDER};
pub use solver::{assemble_row, residual, solve};

/// `f64` instantiations of the core types.
pub type Mesh64 = mesh::Mesh<f64>;
pub type Problem64 = problem::ProblemSpec<f64>;
pub type QuadratureRule64 = quadrature::QuadratureRule<f64>;
pub type CaputoRow64 = caputo::CaputoRow<f64>;
pub type KernelRow64 = kernel::KernelRow<f64>;
pub type SolveResult64 = solver::SolveResult<f64>;
pub type ConvergenceReport64 = analysis::ConvergenceReport<f64>;
pub type BoundInputs64 = analysis::BoundInputs<f64>;
pub type BuiltinProblem64 = problems::BuiltinProblem<f64>;
