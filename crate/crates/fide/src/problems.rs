//! Built-in test problems and the config-file loader.
//!
//! The three built-ins are classic benchmark equations with closed-form
//! forcing terms and exact solutions. Each carries the derivative maxima and
//! kernel bound that the error-bound evaluators need, plus the expression
//! form of its functions so it can be serialized to a config document and
//! reloaded through the expression language.

use std::sync::Arc;

use crate::analysis::BoundInputs;
use crate::error::{Error, Result};
use crate::expr::{parse, EvalError, ParseError};
use crate::gamma::gamma;
use crate::problem::{KernelFn, ProblemSpec, ScalarFn};
use crate::scalar::Real;

/// A derivative maximum over [0, 1], or the marker that none exists.
///
/// Solutions with fractional powers at the origin (like x^(3/2)) have
/// unbounded higher derivatives; the bound evaluators must refuse those
/// rather than receive a large sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMax<R: Real> {
    Bounded(R),
    Unbounded,
}

impl<R: Real> DerivativeMax<R> {
    pub fn bounded(&self) -> Option<R> {
        match self {
            DerivativeMax::Bounded(v) => Some(*v),
            DerivativeMax::Unbounded => None,
        }
    }
}

/// A built-in problem: a ProblemSpec plus bound metadata and expression forms.
#[derive(Debug, Clone)]
pub struct BuiltinProblem<R: Real> {
    spec: ProblemSpec<R>,
    max2_first: DerivativeMax<R>,
    max2: DerivativeMax<R>,
    max3: DerivativeMax<R>,
    kernel_bound: R,
    alpha_text: &'static str,
    f_text: &'static str,
    kernel_text: &'static str,
    exact_text: &'static str,
}

impl<R: Real> BuiltinProblem<R> {
    pub fn spec(&self) -> &ProblemSpec<R> {
        &self.spec
    }

    pub fn into_spec(self) -> ProblemSpec<R> {
        self.spec
    }

    pub fn name(&self) -> &str {
        self.spec.name()
    }

    /// max |phi''| over the first subinterval (here: over all of [0, 1]).
    pub fn max2_first(&self) -> DerivativeMax<R> {
        self.max2_first
    }

    /// max |phi''| over [0, 1].
    pub fn max2(&self) -> DerivativeMax<R> {
        self.max2
    }

    /// max |phi'''| over [0, 1].
    pub fn max3(&self) -> DerivativeMax<R> {
        self.max3
    }

    /// Uniform kernel bound M over the closed unit square.
    pub fn kernel_bound(&self) -> R {
        self.kernel_bound
    }

    /// Bound-evaluator inputs at the last node of an n-subinterval mesh.
    ///
    /// Fails for problems whose derivative maxima are unbounded.
    pub fn bound_inputs(&self, n: usize) -> Result<BoundInputs<R>> {
        if n == 0 {
            return Err(Error::EmptyMesh);
        }
        let unbounded = || Error::UnboundedDerivatives {
            problem: self.name().to_string(),
        };
        let h = R::one() / R::of_usize(n);
        Ok(BoundInputs {
            alpha: self.spec.alpha(),
            h,
            x_k: R::one(),
            x_1: h,
            max2_first: self.max2_first.bounded().ok_or_else(unbounded)?,
            max2: self.max2.bounded().ok_or_else(unbounded)?,
            max3: self.max3.bounded().ok_or_else(unbounded)?,
            kernel_bound: self.kernel_bound,
        })
    }

    /// Serialize to the key-value config format understood by
    /// [`load_problem`].
    pub fn config_document(&self) -> String {
        format!(
            "# {name}\nname = {name}\nalpha = {alpha}\ndelta = 0\nf = {f}\nkernel = {kernel}\nexact = {exact}\n",
            name = self.name(),
            alpha = self.alpha_text,
            f = self.f_text,
            kernel = self.kernel_text,
            exact = self.exact_text,
        )
    }
}

/// Look a built-in up by its CLI name: ex5.1, ex5.2 or ex5.3.
pub fn builtin<R: Real>(name: &str) -> Option<BuiltinProblem<R>> {
    match name {
        "ex5.1" => Some(example_5_1()),
        "ex5.2" => Some(example_5_2()),
        "ex5.3" => Some(example_5_3()),
        _ => None,
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 3] = ["ex5.1", "ex5.2", "ex5.3"];

/// ex5.1: order 1/2, kernel x t, exact solution x^2 - x.
pub fn example_5_1<R: Real>() -> BuiltinProblem<R> {
    let sqrt_pi = R::of(std::f64::consts::PI).sqrt();
    let f: ScalarFn<R> = Arc::new(move |x: R| {
        let third_eight = R::of(8.0 / 3.0);
        (third_eight * x.powf(R::of(1.5)) - R::of(2.0) * x.sqrt()) / sqrt_pi
            - (R::of(3.0) * x.powi(5) - R::of(4.0) * x.powi(4)) / R::of(12.0)
    });
    let kernel: KernelFn<R> = Arc::new(|x: R, t: R| x * t);
    let exact: ScalarFn<R> = Arc::new(|x: R| x * x - x);
    BuiltinProblem {
        spec: ProblemSpec::new("ex5.1", R::of(0.5), R::zero(), f, kernel, Some(exact))
            .expect("valid alpha"),
        max2_first: DerivativeMax::Bounded(R::of(2.0)),
        max2: DerivativeMax::Bounded(R::of(2.0)),
        max3: DerivativeMax::Bounded(R::zero()),
        kernel_bound: R::one(),
        alpha_text: "1/2",
        f_text: "(8/3*x^(3/2) - 2*x^(1/2))/sqrt(pi) - (3*x^5 - 4*x^4)/12",
        kernel_text: "x*t",
        exact_text: "x^2 - x",
    }
}

/// ex5.2: order 5/6, kernel x e^t, exact solution x - x^3.
pub fn example_5_2<R: Real>() -> BuiltinProblem<R> {
    let pi = R::of(std::f64::consts::PI);
    let g56 = gamma(R::of(5.0 / 6.0)).expect("5/6 inside gamma domain");
    let f: ScalarFn<R> = Arc::new(move |x: R| {
        let leading = -R::of(3.0 / 91.0)
            * g56
            * x.powf(R::of(1.0 / 6.0))
            * (R::of(216.0) * x * x - R::of(91.0))
            / pi;
        let polynomial = R::of(5.0) - R::of(5.0) * x + R::of(3.0) * x * x - x * x * x;
        leading + R::of(5.0) * x - x * x.exp() * polynomial
    });
    let kernel: KernelFn<R> = Arc::new(|x: R, t: R| x * t.exp());
    let exact: ScalarFn<R> = Arc::new(|x: R| x - x * x * x);
    BuiltinProblem {
        spec: ProblemSpec::new("ex5.2", R::of(5.0 / 6.0), R::zero(), f, kernel, Some(exact))
            .expect("valid alpha"),
        max2_first: DerivativeMax::Bounded(R::of(6.0)),
        max2: DerivativeMax::Bounded(R::of(6.0)),
        max3: DerivativeMax::Bounded(R::of(6.0)),
        kernel_bound: R::of(std::f64::consts::E),
        alpha_text: "5/6",
        f_text:
            "-(3/91)*gamma(5/6)*x^(1/6)*(-91 + 216*x^2)/pi + 5*x - x*exp(x)*(5 - 5*x + 3*x^2 - x^3)",
        kernel_text: "x*exp(t)",
        exact_text: "x - x^3",
    }
}

/// ex5.3: order 1/3, kernel x t + x^2 t^2, exact solution x^(3/2).
///
/// The exact solution has unbounded second and third derivatives at the
/// origin, so the error bounds do not apply; the metadata says so explicitly.
pub fn example_5_3<R: Real>() -> BuiltinProblem<R> {
    let sqrt_pi = R::of(std::f64::consts::PI).sqrt();
    let g136 = gamma(R::of(13.0 / 6.0)).expect("13/6 inside gamma domain");
    let f: ScalarFn<R> = Arc::new(move |x: R| {
        R::of(3.0) * sqrt_pi * x.powf(R::of(7.0 / 6.0)) / (R::of(4.0) * g136)
            - R::of(2.0 / 63.0) * x.powf(R::of(4.5)) * (R::of(9.0) + R::of(7.0) * x * x)
    });
    let kernel: KernelFn<R> = Arc::new(|x: R, t: R| x * t + x * x * t * t);
    let exact: ScalarFn<R> = Arc::new(|x: R| x.powf(R::of(1.5)));
    BuiltinProblem {
        spec: ProblemSpec::new("ex5.3", R::of(1.0 / 3.0), R::zero(), f, kernel, Some(exact))
            .expect("valid alpha"),
        max2_first: DerivativeMax::Unbounded,
        max2: DerivativeMax::Unbounded,
        max3: DerivativeMax::Unbounded,
        kernel_bound: R::of(2.0),
        alpha_text: "1/3",
        f_text: "3*sqrt(pi)*x^(7/6)/(4*gamma(13/6)) - (2/63)*x^(9/2)*(9 + 7*x^2)",
        kernel_text: "x*t + x^2*t^2",
        exact_text: "x^(3/2)",
    }
}

/// Errors from [`load_problem`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("missing required field `{field}`")]
    MissingField { field: &'static str },
    #[error("line {line} is not a `key = value` pair")]
    MalformedLine { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { key: String, line: usize },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { key: String, line: usize },
    #[error("field `{field}`: {source}")]
    Expr {
        field: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("field `{field}` must be a constant expression")]
    NotConstant { field: &'static str },
    #[error("field `{field}` does not evaluate: {source}")]
    ConstEval {
        field: &'static str,
        #[source]
        source: EvalError,
    },
    #[error("alpha = {alpha} outside (0, 1)")]
    AlphaOutOfRange { alpha: f64 },
}

const FIELDS: [&str; 6] = ["name", "alpha", "delta", "f", "kernel", "exact"];

/// Load a problem from a key-value document.
///
/// One `key = value` per line, `#` starts a comment, expression values run
/// unquoted to end of line. Required keys: name, alpha, delta, f, kernel;
/// `exact` is optional. `alpha` and `delta` are constant expressions, so
/// `alpha = 5/6` works verbatim.
pub fn load_problem<R: Real>(text: &str) -> std::result::Result<ProblemSpec<R>, ConfigError> {
    let mut fields: [Option<String>; 6] = Default::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or(ConfigError::MalformedLine { line })?;
        let key = key.trim();
        let value = value.trim();
        let slot =
            FIELDS
                .iter()
                .position(|f| *f == key)
                .ok_or_else(|| ConfigError::UnknownKey {
                    key: key.to_string(),
                    line,
                })?;
        if fields[slot].is_some() {
            return Err(ConfigError::DuplicateKey {
                key: key.to_string(),
                line,
            });
        }
        fields[slot] = Some(value.to_string());
    }
    let [name, alpha, delta, f, kernel, exact] = fields;

    let required = |field: &'static str, value: Option<String>| {
        value.ok_or(ConfigError::MissingField { field })
    };
    let name = required("name", name)?;
    let alpha: R = constant("alpha", &required("alpha", alpha)?)?;
    let delta: R = constant("delta", &required("delta", delta)?)?;
    let f = expression("f", &required("f", f)?)?;
    let kernel = expression("kernel", &required("kernel", kernel)?)?;
    let exact = exact.map(|text| expression("exact", &text)).transpose()?;

    let f: ScalarFn<R> = Arc::new(move |x: R| f.eval(x, R::zero()).unwrap_or_else(|_| R::nan()));
    let kernel: KernelFn<R> =
        Arc::new(move |x: R, t: R| kernel.eval(x, t).unwrap_or_else(|_| R::nan()));
    let exact: Option<ScalarFn<R>> = exact.map(|e| -> ScalarFn<R> {
        Arc::new(move |x: R| e.eval(x, R::zero()).unwrap_or_else(|_| R::nan()))
    });

    ProblemSpec::new(name, alpha, delta, f, kernel, exact).map_err(|err| match err {
        Error::AlphaOutOfRange { alpha } => ConfigError::AlphaOutOfRange { alpha },
        other => unreachable!("constructor only validates alpha: {other}"),
    })
}

fn expression(
    field: &'static str,
    text: &str,
) -> std::result::Result<crate::expr::Expr, ConfigError> {
    parse(text).map_err(|source| ConfigError::Expr { field, source })
}

fn constant<R: Real>(field: &'static str, text: &str) -> std::result::Result<R, ConfigError> {
    let expr = expression(field, text)?;
    if !expr.is_constant() {
        return Err(ConfigError::NotConstant { field });
    }
    expr.eval(R::zero(), R::zero())
        .map_err(|source| ConfigError::ConstEval { field, source })
}
