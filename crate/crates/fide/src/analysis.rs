//! Error metrics, convergence studies, and theoretical error-bound
//! evaluators for the three schemes.

use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::problem::{ProblemSpec, SchemeKind};
use crate::quadrature::QuadratureRule;
use crate::scalar::Real;
use crate::solver::{solve, SolveResult};

/// Below this maximum error the measurement is quadrature noise and the
/// convergence order is omitted rather than reported.
pub const NOISE_FLOOR: f64 = 1e-12;

/// One refinement step of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow<R: Real> {
    /// Step size 1/n.
    pub h: R,
    /// Maximum absolute nodal error at this step size.
    pub mae: R,
    /// log2(mae(h) / mae(h/2)) against the previous row; absent on the first
    /// row and below the noise floor.
    pub order: Option<R>,
}

/// MAE/order ladder for one scheme on one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport<R: Real> {
    pub scheme: SchemeKind,
    pub problem: String,
    pub rows: Vec<ConvergenceRow<R>>,
}

/// Maximum absolute nodal error of a solve against the exact solution.
pub fn mae<R: Real>(result: &SolveResult<R>) -> Result<R> {
    let errors = result.errors().ok_or(Error::MissingExactSolution)?;
    Ok(errors.iter().fold(R::zero(), |acc, e| acc.max(e.abs())))
}

/// Empirical order from one halving step: log2(coarse / fine).
pub fn convergence_order<R: Real>(mae_coarse: R, mae_fine: R) -> Result<R> {
    if !(mae_coarse > R::zero()) || !(mae_fine > R::zero()) {
        return Err(Error::NonPositiveError {
            coarse: mae_coarse.as_f64(),
            fine: mae_fine.as_f64(),
        });
    }
    Ok((mae_coarse / mae_fine).log2())
}

fn validate_ladder(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::EmptyLadder);
    }
    for pair in n_list.windows(2) {
        if pair[1] != 2 * pair[0] {
            return Err(Error::LadderNotDoubling {
                prev: pair[0],
                next: pair[1],
            });
        }
    }
    if n_list[0] == 0 {
        return Err(Error::EmptyMesh);
    }
    Ok(())
}

/// Run one solve per ladder entry and tabulate MAE and order.
///
/// The ladder must double n at every step so that successive h values halve
/// exactly.
pub fn convergence_study<R: Real>(
    problem: &ProblemSpec<R>,
    scheme: SchemeKind,
    n_list: &[usize],
    rule: &QuadratureRule<R>,
) -> Result<ConvergenceReport<R>> {
    validate_ladder(n_list)?;
    if !problem.has_exact() {
        return Err(Error::MissingExactSolution);
    }
    let floor = R::of(NOISE_FLOOR);
    let mut rows: Vec<ConvergenceRow<R>> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let result = solve(problem, scheme, n, rule)?;
        let err = mae(&result)?;
        let order = match rows.last() {
            Some(prev) if prev.mae >= floor && err >= floor => {
                Some(convergence_order(prev.mae, err)?)
            }
            _ => None,
        };
        rows.push(ConvergenceRow {
            h: R::one() / R::of_usize(n),
            mae: err,
            order,
        });
    }
    Ok(ConvergenceReport {
        scheme,
        problem: problem.name().to_string(),
        rows,
    })
}

/// Inputs to the error-bound evaluators at one node x_k.
///
/// The derivative maxima are supplied by the caller (the built-in problems
/// carry closed forms); nothing is differentiated numerically here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs<R: Real> {
    /// Fractional order, in (0, 1).
    pub alpha: R,
    /// Step size.
    pub h: R,
    /// Node the bound is evaluated at.
    pub x_k: R,
    /// First interior node, h.
    pub x_1: R,
    /// max |phi''| over the first subinterval [x_0, x_1].
    pub max2_first: R,
    /// max |phi''| over [x_0, x_k].
    pub max2: R,
    /// max |phi'''| over [x_0, x_k].
    pub max3: R,
    /// Uniform kernel bound M on the unit square.
    pub kernel_bound: R,
}

/// Error bound for the linear scheme:
/// (1/Gamma(1-a)) [1/8 + a/((1-a)(2-a))] max2 h^(2-a) + (M/8) max2 x_k h^2.
pub fn bound_s1<R: Real>(inputs: &BoundInputs<R>) -> Result<R> {
    let a = inputs.alpha;
    let one = R::one();
    let g1 = gamma(one - a)?;
    let singular = (R::of(0.125) + a / ((one - a) * (R::of(2.0) - a))) / g1
        * inputs.max2
        * inputs.h.powf(R::of(2.0) - a);
    let kernel_term =
        inputs.kernel_bound / R::of(8.0) * inputs.max2 * inputs.x_k * inputs.h * inputs.h;
    Ok(singular + kernel_term)
}

/// Shared k = 1 bound of the quadratic and hybrid schemes:
/// (a / (2 Gamma(3-a))) max2_first h^(2-a) + (M/2) max2_first x_1 h^2.
fn bound_first_node<R: Real>(inputs: &BoundInputs<R>) -> Result<R> {
    let a = inputs.alpha;
    let first = a / (R::of(2.0) * gamma(R::of(3.0) - a)?)
        * inputs.max2_first
        * inputs.h.powf(R::of(2.0) - a);
    let kernel_term =
        inputs.kernel_bound / R::of(2.0) * inputs.max2_first * inputs.x_1 * inputs.h * inputs.h;
    Ok(first + kernel_term)
}

/// The two singular-side terms shared by the k >= 2 bounds of the quadratic
/// and hybrid schemes: the first-interval h^3 term with its
/// (x_k - x_1)^(-a-1) factor, and the h^(3-a) third-derivative term.
fn bound_multi_node_derivative_terms<R: Real>(inputs: &BoundInputs<R>) -> Result<R> {
    if !(inputs.x_k > inputs.x_1) {
        return Err(Error::DegenerateBoundInterval {
            x_k: inputs.x_k.as_f64(),
            x_1: inputs.x_1.as_f64(),
        });
    }
    let a = inputs.alpha;
    let one = R::one();
    let g1 = gamma(one - a)?;
    let h3 = inputs.h * inputs.h * inputs.h;
    let first_interval =
        a / R::of(12.0) * inputs.max2_first * (inputs.x_k - inputs.x_1).powf(-a - one) * h3 / g1;
    let bracket = R::of(1.0 / 12.0)
        + a / (R::of(3.0) * (one - a) * (R::of(2.0) - a)) * (R::of(0.5) + one / (R::of(3.0) - a));
    let smooth = bracket * inputs.max3 * inputs.h.powf(R::of(3.0) - a) / g1;
    Ok(first_interval + smooth)
}

/// Error bound for the quadratic scheme at node k.
///
/// The kernel side uses the first-interval second-derivative maximum over the
/// whole span x_k (not just x_1): with the printed x_1 factor the k = n bound
/// is an O(h^3) quantity that the measured O(h^2) errors overtake immediately.
pub fn bound_s2<R: Real>(k: usize, inputs: &BoundInputs<R>) -> Result<R> {
    assert!(k >= 1);
    if k == 1 {
        return bound_first_node(inputs);
    }
    let derivative_terms = bound_multi_node_derivative_terms(inputs)?;
    let m = inputs.kernel_bound;
    let first_interval_kernel =
        m / R::of(2.0) * inputs.max2_first * inputs.x_k * inputs.h * inputs.h;
    let tail_kernel =
        m / R::of(12.0) * inputs.max3 * (inputs.x_k - inputs.x_1) * inputs.h * inputs.h * inputs.h;
    Ok(derivative_terms + first_interval_kernel + tail_kernel)
}

/// Error bound for the hybrid scheme at node k: same derivative terms as the
/// quadratic scheme, with the kernel side bounded by the linear-interpolation
/// term (M/2) max2 x_k h^2.
pub fn bound_s3<R: Real>(k: usize, inputs: &BoundInputs<R>) -> Result<R> {
    assert!(k >= 1);
    if k == 1 {
        return bound_first_node(inputs);
    }
    let derivative_terms = bound_multi_node_derivative_terms(inputs)?;
    let kernel_term =
        inputs.kernel_bound / R::of(2.0) * inputs.max2 * inputs.x_k * inputs.h * inputs.h;
    Ok(derivative_terms + kernel_term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;
    use std::sync::Arc;

    fn rule() -> QuadratureRule<f64> {
        gauss_legendre(10).unwrap()
    }

    fn zero_problem() -> ProblemSpec<f64> {
        ProblemSpec::new(
            "zero",
            0.5,
            0.0,
            Arc::new(|_| 0.0),
            Arc::new(|_, _| 0.0),
            Some(Arc::new(|_| 0.0)),
        )
        .unwrap()
    }

    fn inputs_51(n: usize) -> BoundInputs<f64> {
        let h = 1.0 / n as f64;
        BoundInputs {
            alpha: 0.5,
            h,
            x_k: 1.0,
            x_1: h,
            max2_first: 2.0,
            max2: 2.0,
            max3: 0.0,
            kernel_bound: 1.0,
        }
    }

    #[test]
    fn mae_of_zero_problem_is_zero() {
        let result = solve(&zero_problem(), SchemeKind::Linear, 5, &rule()).unwrap();
        assert_eq!(mae(&result).unwrap(), 0.0);
    }

    #[test]
    fn mae_requires_exact_solution() {
        let problem = ProblemSpec::<f64>::new(
            "no-exact",
            0.5,
            0.0,
            Arc::new(|_| 0.0),
            Arc::new(|_, _| 0.0),
            None,
        )
        .unwrap();
        let result = solve(&problem, SchemeKind::Linear, 5, &rule()).unwrap();
        assert_eq!(mae(&result).unwrap_err(), Error::MissingExactSolution);
    }

    #[test]
    fn order_from_paper_scale_errors() {
        let co = convergence_order(5.05046e-2_f64, 1.84683e-2).unwrap();
        assert!((co - 1.45136).abs() < 5e-6, "{co}");
        assert_eq!(convergence_order(3.0_f64, 3.0).unwrap(), 0.0);
        assert_eq!(convergence_order(4.0_f64, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn order_rejects_non_positive_errors() {
        assert!(matches!(
            convergence_order(0.0_f64, 1.0),
            Err(Error::NonPositiveError { .. })
        ));
        assert!(matches!(
            convergence_order(1.0_f64, -2.0),
            Err(Error::NonPositiveError { .. })
        ));
    }

    #[test]
    fn ladders_must_double() {
        let problem = zero_problem();
        assert_eq!(
            convergence_study(&problem, SchemeKind::Linear, &[5, 12], &rule()).unwrap_err(),
            Error::LadderNotDoubling { prev: 5, next: 12 }
        );
        assert_eq!(
            convergence_study(&problem, SchemeKind::Linear, &[], &rule()).unwrap_err(),
            Error::EmptyLadder
        );
    }

    #[test]
    fn noise_floor_suppresses_order() {
        // zero problem: MAE = 0 at every level, so no order is ever reported
        let report = convergence_study(
            &zero_problem(),
            SchemeKind::Quadratic,
            &[5, 10, 20],
            &rule(),
        )
        .unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.rows.iter().all(|r| r.order.is_none()));
        assert!(report.rows.iter().all(|r| r.mae == 0.0));
    }

    #[test]
    fn successive_h_halve_exactly() {
        let report = convergence_study(
            &zero_problem(),
            SchemeKind::Linear,
            &[5, 10, 20, 40, 80],
            &rule(),
        )
        .unwrap();
        for pair in report.rows.windows(2) {
            assert_eq!(pair[0].h / 2.0, pair[1].h);
        }
    }

    #[test]
    fn reports_are_bit_identical_across_runs() {
        let problem = crate::problems::example_5_1::<f64>().into_spec();
        let a = convergence_study(&problem, SchemeKind::Linear, &[5, 10, 20], &rule()).unwrap();
        let b = convergence_study(&problem, SchemeKind::Linear, &[5, 10, 20], &rule()).unwrap();
        assert_eq!(a, b);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert_eq!(ra.mae.to_bits(), rb.mae.to_bits());
            assert_eq!(ra.order.map(f64::to_bits), rb.order.map(f64::to_bits));
        }
    }

    #[test]
    fn linear_bound_vanishes_for_linear_solutions() {
        let mut inputs = inputs_51(5);
        inputs.max2 = 0.0;
        assert_eq!(bound_s1(&inputs).unwrap(), 0.0);
    }

    #[test]
    fn linear_bound_magnitude_for_the_quadratic_problem() {
        let b = bound_s1(&inputs_51(5)).unwrap();
        assert!((b - 8.99e-2).abs() < 1e-4, "{b}");
        assert!(b >= 5.05046e-2);
    }

    #[test]
    fn linear_bound_scaling_without_kernel() {
        let mut coarse = inputs_51(10);
        coarse.kernel_bound = 0.0;
        let mut fine = coarse;
        fine.h = coarse.h / 2.0;
        let ratio = bound_s1(&coarse).unwrap() / bound_s1(&fine).unwrap();
        assert!((ratio - 2.0_f64.powf(1.5)).abs() < 1e-14);
    }

    #[test]
    fn first_node_bounds_coincide_across_schemes() {
        let inputs = inputs_51(10);
        assert_eq!(bound_s2(1, &inputs).unwrap(), bound_s3(1, &inputs).unwrap());
    }

    #[test]
    fn kernel_free_multi_node_bounds_coincide() {
        let mut inputs = inputs_51(10);
        inputs.kernel_bound = 0.0;
        inputs.max3 = 1.7;
        assert_eq!(
            bound_s2(10, &inputs).unwrap(),
            bound_s3(10, &inputs).unwrap()
        );
    }

    #[test]
    fn smooth_bounds_vanish_for_linear_solutions() {
        let mut inputs = inputs_51(10);
        inputs.max2 = 0.0;
        inputs.max2_first = 0.0;
        inputs.max3 = 0.0;
        assert_eq!(bound_s2(10, &inputs).unwrap(), 0.0);
        assert_eq!(bound_s3(10, &inputs).unwrap(), 0.0);
        assert_eq!(bound_s2(1, &inputs).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_interval_rejected() {
        let mut inputs = inputs_51(5);
        inputs.x_k = inputs.x_1;
        assert!(matches!(
            bound_s2(2, &inputs),
            Err(Error::DegenerateBoundInterval { .. })
        ));
        assert!(matches!(
            bound_s3(2, &inputs),
            Err(Error::DegenerateBoundInterval { .. })
        ));
    }

    #[test]
    fn quadratic_bound_dominates_measured_error() {
        let problem = crate::problems::example_5_1::<f64>().into_spec();
        let result = solve(&problem, SchemeKind::Quadratic, 10, &rule()).unwrap();
        let measured = mae(&result).unwrap();
        let bound = bound_s2(10, &inputs_51(10)).unwrap();
        assert!(measured <= bound, "{measured} > {bound}");
        assert!(bound / measured >= 1.0 && bound.is_finite());
    }
}

#[cfg(test)]
mod refinement_tests {
    use super::*;
    use crate::problems::builtin;
    use crate::quadrature::gauss_legendre;
    use std::sync::Arc;

    fn manufactured() -> ProblemSpec<f64> {
        let alpha = 0.5_f64;
        let g = crate::gamma::gamma(2.0 - alpha).unwrap();
        ProblemSpec::new(
            "manufactured-linear",
            alpha,
            0.0,
            Arc::new(move |x: f64| x.powf(1.0 - alpha) / g - x.powi(4) / 3.0),
            Arc::new(|x: f64, t: f64| x * t),
            Some(Arc::new(|x: f64| x)),
        )
        .unwrap()
    }

    #[test]
    fn manufactured_solution_sits_at_noise_floor_with_order_suppressed() {
        // a linear exact solution is in every scheme's exactness class, so
        // the ladder bottoms out at rounding noise and no order is reported
        let rule = gauss_legendre(10).unwrap();
        for scheme in SchemeKind::ALL {
            let report = convergence_study(&manufactured(), scheme, &[5, 10, 20], &rule).unwrap();
            for row in &report.rows {
                assert!(row.mae < NOISE_FLOOR, "{scheme}: mae {:e}", row.mae);
                assert!(row.order.is_none(), "{scheme}");
            }
        }
    }

    #[test]
    fn refinement_shrinks_the_error_for_benchmark_problems() {
        let rule = gauss_legendre(10).unwrap();
        for name in ["ex5.1", "ex5.2"] {
            let problem = builtin::<f64>(name).unwrap().into_spec();
            for scheme in SchemeKind::ALL {
                let report =
                    convergence_study(&problem, scheme, &[5, 10, 20], &rule).unwrap();
                for pair in report.rows.windows(2) {
                    assert!(
                        pair[1].mae < pair[0].mae,
                        "{name} {scheme}: {:e} !< {:e}",
                        pair[1].mae,
                        pair[0].mae
                    );
                }
            }
        }
    }

    #[test]
    fn stored_orders_recompute_from_the_stored_errors() {
        let rule = gauss_legendre(10).unwrap();
        let problem = builtin::<f64>("ex5.1").unwrap().into_spec();
        let report =
            convergence_study(&problem, SchemeKind::Linear, &[5, 10, 20, 40], &rule).unwrap();
        assert!(report.rows[0].order.is_none());
        for pair in report.rows.windows(2) {
            let recomputed = (pair[0].mae / pair[1].mae).log2();
            let stored = pair[1].order.unwrap();
            assert!((stored - recomputed).abs() <= 1e-12);
        }
    }
}
