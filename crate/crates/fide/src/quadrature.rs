//! Fixed-order Gauss-Legendre quadrature on the unit interval.
//!
//! Every kernel moment in the weight generators is an integral of the form
//! `∫₀¹ w(p) K(·, ·) dp` with a polynomial weight `w`, so one shared rule
//! (default order 10) serves the whole crate. Nodes and weights are computed
//! by Newton iteration on the Legendre recurrence and mapped to (0, 1).

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default order used by the solver when the caller does not override it.
pub const DEFAULT_ORDER: usize = 10;

/// A Gauss-Legendre rule normalized for integration over [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<R: Real> {
    order: usize,
    abscissae: Vec<R>,
    weights: Vec<R>,
}

impl<R: Real> QuadratureRule<R> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Abscissae in (0, 1), ascending.
    pub fn abscissae(&self) -> &[R] {
        &self.abscissae
    }

    /// Positive weights summing to one.
    pub fn weights(&self) -> &[R] {
        &self.weights
    }
}

/// Build the Gauss-Legendre rule of the given order, mapped to (0, 1).
///
/// Supported orders are 2 through 64; the kernels in scope are smooth enough
/// that order 10 is effectively exact, but callers may raise the order.
pub fn gauss_legendre<R: Real>(order: usize) -> Result<QuadratureRule<R>> {
    if !(2..=64).contains(&order) {
        return Err(Error::QuadratureOrder { order });
    }
    let mut abscissae = vec![R::zero(); order];
    let mut weights = vec![R::zero(); order];
    let half = R::of(0.5);
    for i in 0..order.div_ceil(2) {
        // Chebyshev-based initial guess for the i-th root of P_n on (-1, 1).
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut x = R::of(guess);
        let mut derivative = R::zero();
        for _ in 0..100 {
            let (value, slope) = legendre_with_derivative(order, x);
            derivative = slope;
            let step = value / slope;
            x = x - step;
            if step.abs() <= R::epsilon() * x.abs().max(R::one()) {
                let (value, slope) = legendre_with_derivative(order, x);
                derivative = slope;
                x = x - value / slope;
                break;
            }
        }
        let w = R::of(2.0) / ((R::one() - x * x) * derivative * derivative);
        // Map node from (-1, 1) to (0, 1); halve the weight accordingly.
        abscissae[i] = half * (R::one() - x);
        abscissae[order - 1 - i] = half * (R::one() + x);
        weights[i] = half * w;
        weights[order - 1 - i] = half * w;
    }
    if order % 2 == 1 {
        // The middle node of an odd rule is exactly 1/2.
        abscissae[order / 2] = half;
        let (_, slope) = legendre_with_derivative(order, R::zero());
        weights[order / 2] = half * R::of(2.0) / (slope * slope);
    }
    Ok(QuadratureRule {
        order,
        abscissae,
        weights,
    })
}

/// P_n(x) and P_n'(x) on (-1, 1) via the three-term recurrence.
fn legendre_with_derivative<R: Real>(order: usize, x: R) -> (R, R) {
    let mut p_prev = R::one();
    let mut p = x;
    for m in 2..=order {
        let mf = R::of_usize(m);
        let next = ((R::of(2.0) * mf - R::one()) * x * p - (mf - R::one()) * p_prev) / mf;
        p_prev = p;
        p = next;
    }
    let n = R::of_usize(order);
    let derivative = n * (x * p - p_prev) / (x * x - R::one());
    (p, derivative)
}

/// Apply a rule to `g` on [0, 1]: the weighted sum of `g` at the abscissae.
///
/// Rejects NaN or infinite integrand values so that an unevaluable kernel
/// surfaces as an error instead of poisoning a whole weight row.
pub fn integrate_01<R: Real>(mut g: impl FnMut(R) -> R, rule: &QuadratureRule<R>) -> Result<R> {
    let mut total = R::zero();
    for (&p, &w) in rule.abscissae.iter().zip(&rule.weights) {
        let value = g(p);
        if !value.is_finite() {
            return Err(Error::NonFiniteIntegrand {
                abscissa: p.as_f64(),
            });
        }
        total = total + w * value;
    }
    Ok(total)
}
