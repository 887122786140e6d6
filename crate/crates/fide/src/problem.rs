//! Problem definition: the equation data and the scheme selector.
//!
//! A problem is D^alpha phi(x) = f(x) + integral over (0, x) of K(x, t) phi(t) dt
//! on the unit interval, with Caputo order 0 < alpha < 1 and initial value
//! phi(0) = delta. The forcing, kernel and optional exact solution are stored
//! behind shared callables so native closures and parsed expressions are
//! interchangeable.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Shared scalar function of one variable on [0, 1].
pub type ScalarFn<R> = Arc<dyn Fn(R) -> R + Send + Sync>;

/// Shared kernel function K(x, t) on the unit square.
pub type KernelFn<R> = Arc<dyn Fn(R, R) -> R + Send + Sync>;

/// Which discretization to use.
///
/// `Linear` interpolates the unknown piecewise-linearly on both sides of the
/// equation. `Quadratic` upgrades both sides to piecewise-quadratic
/// interpolation (linear on the first subinterval). `QuadraticLinear` is the
/// hybrid: quadratic on the derivative side, linear under the kernel integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Linear,
    Quadratic,
    QuadraticLinear,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [
        SchemeKind::Linear,
        SchemeKind::Quadratic,
        SchemeKind::QuadraticLinear,
    ];

    /// Short label used by the CLI and table titles: s1, s2, s3.
    pub fn label(self) -> &'static str {
        match self {
            SchemeKind::Linear => "s1",
            SchemeKind::Quadratic => "s2",
            SchemeKind::QuadraticLinear => "s3",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The equation data for one solve.
#[derive(Clone)]
pub struct ProblemSpec<R: Real> {
    name: String,
    alpha: R,
    delta: R,
    f: ScalarFn<R>,
    kernel: KernelFn<R>,
    exact: Option<ScalarFn<R>>,
}

impl<R: Real> ProblemSpec<R> {
    /// Build a problem, rejecting fractional orders outside (0, 1).
    pub fn new(
        name: impl Into<String>,
        alpha: R,
        delta: R,
        f: ScalarFn<R>,
        kernel: KernelFn<R>,
        exact: Option<ScalarFn<R>>,
    ) -> Result<Self> {
        if !(alpha > R::zero() && alpha < R::one()) {
            return Err(Error::AlphaOutOfRange {
                alpha: alpha.as_f64(),
            });
        }
        Ok(ProblemSpec {
            name: name.into(),
            alpha,
            delta,
            f,
            kernel,
            exact,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Caputo order, in (0, 1).
    pub fn alpha(&self) -> R {
        self.alpha
    }

    /// Initial value phi(0).
    pub fn delta(&self) -> R {
        self.delta
    }

    /// Forcing term f(x).
    pub fn forcing(&self, x: R) -> R {
        (self.f)(x)
    }

    /// Kernel K(x, t).
    pub fn kernel(&self, x: R, t: R) -> R {
        (self.kernel)(x, t)
    }

    /// Borrow the kernel callable for the weight generators.
    pub fn kernel_fn(&self) -> &KernelFn<R> {
        &self.kernel
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact solution at x, when known.
    pub fn exact(&self, x: R) -> Option<R> {
        self.exact.as_ref().map(|e| e(x))
    }
}

impl<R: Real> fmt::Debug for ProblemSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("alpha", &self.alpha)
            .field("delta", &self.delta)
            .field("exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}
