//! Row assembly and the forward-substitution solve.
//!
//! Node k's equation involves only phi_0..phi_k, so the assembled system is
//! lower triangular and is solved in a single sweep: each row is built, used
//! to produce phi_k, and discarded. Only the solution prefix and the pivot
//! magnitudes are retained.

use crate::caputo;
use crate::error::{Error, Result};
use crate::kernel;
use crate::mesh::Mesh;
use crate::problem::{ProblemSpec, SchemeKind};
use crate::quadrature::QuadratureRule;
use crate::scalar::Real;

/// Solution of one solve, with optional nodal errors and per-row pivots.
#[derive(Debug, Clone)]
pub struct SolveResult<R: Real> {
    mesh: Mesh<R>,
    scheme: SchemeKind,
    values: Vec<R>,
    errors: Option<Vec<R>>,
    pivots: Vec<R>,
}

impl<R: Real> SolveResult<R> {
    pub fn mesh(&self) -> &Mesh<R> {
        &self.mesh
    }

    pub fn scheme(&self) -> SchemeKind {
        self.scheme
    }

    /// Nodal values phi_0..phi_n; `values()[0]` is the initial value delta.
    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// Nodal errors exact - numerical, present when the problem knows its
    /// exact solution. `errors()[0]` is always zero.
    pub fn errors(&self) -> Option<&[R]> {
        self.errors.as_deref()
    }

    /// Pivot magnitudes |xi(k, k)| for k = 1..n, as a conditioning diagnostic.
    pub fn pivots(&self) -> &[R] {
        &self.pivots
    }
}

/// Assemble row k of the triangular system: weights over phi_0..phi_k and the
/// right-hand side f(x_k).
///
/// The row is the Caputo row minus the kernel row; which pair depends on the
/// scheme (linear/linear, quadratic/quadratic, or quadratic/linear).
pub fn assemble_row<R: Real>(
    k: usize,
    problem: &ProblemSpec<R>,
    scheme: SchemeKind,
    mesh: &Mesh<R>,
    rule: &QuadratureRule<R>,
) -> Result<(Vec<R>, R)> {
    debug_assert!(k >= 1 && k <= mesh.n());
    let h = mesh.h();
    let alpha = problem.alpha();
    let caputo_row = match scheme {
        SchemeKind::Linear => caputo::linear_row(k, alpha, h)?,
        SchemeKind::Quadratic | SchemeKind::QuadraticLinear => caputo::quadratic_row(k, alpha, h)?,
    };
    let kernel_fn = |x: R, t: R| problem.kernel(x, t);
    let kernel_row = match scheme {
        SchemeKind::Linear | SchemeKind::QuadraticLinear => {
            kernel::linear_row(k, kernel_fn, rule, h)?
        }
        SchemeKind::Quadratic => kernel::quadratic_row(k, kernel_fn, rule, h)?,
    };
    let weights = caputo_row
        .weights()
        .iter()
        .zip(kernel_row.weights())
        .map(|(&c, &u)| c - u)
        .collect();
    Ok((weights, problem.forcing(mesh.node(k))))
}

/// Solve the problem on an n-subinterval mesh with the given scheme.
///
/// phi_0 is the initial value; each subsequent phi_k comes from forward
/// substitution. Fails with `NearSingularPivot` when a kernel weight
/// overwhelms the Caputo diagonal (h too large for a huge kernel) and with
/// `NonFiniteValue` when the recursion produces NaN or infinity.
pub fn solve<R: Real>(
    problem: &ProblemSpec<R>,
    scheme: SchemeKind,
    n: usize,
    rule: &QuadratureRule<R>,
) -> Result<SolveResult<R>> {
    let mesh = Mesh::<R>::new(n)?;
    let h = mesh.h();
    let pivot_floor = R::of(1e3) * R::epsilon() * h.powf(-problem.alpha());
    let mut values = Vec::with_capacity(n + 1);
    let mut pivots = Vec::with_capacity(n);
    values.push(problem.delta());
    for k in 1..=n {
        let (weights, rhs) = assemble_row(k, problem, scheme, &mesh, rule)?;
        let pivot = weights[k];
        if pivot.abs() < pivot_floor {
            return Err(Error::NearSingularPivot {
                k,
                pivot: pivot.as_f64(),
            });
        }
        let mut acc = rhs;
        for (w, &phi) in weights[..k].iter().zip(&values) {
            acc = acc - *w * phi;
        }
        let phi_k = acc / pivot;
        if !phi_k.is_finite() {
            return Err(Error::NonFiniteValue { k });
        }
        values.push(phi_k);
        pivots.push(pivot.abs());
    }
    let errors = problem.has_exact().then(|| {
        mesh.nodes()
            .iter()
            .zip(&values)
            .map(|(&x, &phi)| problem.exact(x).expect("exact checked above") - phi)
            .collect::<Vec<R>>()
    });
    let errors = match errors {
        Some(mut e) => {
            e[0] = R::zero(); // phi_0 is delta by construction
            Some(e)
        }
        None => None,
    };
    Ok(SolveResult {
        mesh,
        scheme,
        values,
        errors,
        pivots,
    })
}

/// A posteriori check: the largest residual |row_k . phi - f(x_k)| over all
/// rows, re-assembled from scratch. An exact triangular solve leaves only
/// rounding here.
pub fn residual<R: Real>(
    result: &SolveResult<R>,
    problem: &ProblemSpec<R>,
    rule: &QuadratureRule<R>,
) -> Result<R> {
    let mesh = result.mesh();
    let mut worst = R::zero();
    for k in 1..=mesh.n() {
        let (weights, rhs) = assemble_row(k, problem, result.scheme(), mesh, rule)?;
        let mut acc = -rhs;
        for (w, &phi) in weights.iter().zip(&result.values[..=k]) {
            acc = acc + *w * phi;
        }
        worst = worst.max(acc.abs());
    }
    Ok(worst)
}
