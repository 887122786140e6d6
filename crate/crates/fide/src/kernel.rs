//! Quadrature weights for the Volterra term: integral over (0, x_k) of
//! K(x_k, t) phi(t) dt.
//!
//! As on the derivative side, the unknown is replaced by a local interpolant;
//! here the interpolant itself (not its derivative) is integrated against the
//! kernel. The kernel moments are p-integrals over each subinterval,
//! evaluated with the shared Gauss rule; the interpolant weight functions are
//! polynomials of degree at most two, so accuracy is set by the kernel alone.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_01, QuadratureRule};
use crate::scalar::Real;

/// One row of kernel weights for node index k; `weights()[j]` multiplies phi_j.
///
/// Row sums reproduce the plain kernel integral over (0, x_k), because the
/// interpolation weights reproduce constants.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelRow<R: Real> {
    k: usize,
    h: R,
    weights: Vec<R>,
}

impl<R: Real> KernelRow<R> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> R {
        self.h
    }

    pub fn weights(&self) -> &[R] {
        &self.weights
    }

    /// Apply the row to nodal values phi_0..phi_k.
    pub fn apply(&self, values: &[R]) -> Result<R> {
        if values.len() != self.weights.len() {
            return Err(Error::LengthMismatch {
                expected: self.weights.len(),
                got: values.len(),
            });
        }
        let mut acc = R::zero();
        for (&w, &v) in self.weights.iter().zip(values) {
            acc = acc + w * v;
        }
        Ok(acc)
    }
}

/// Linear-interpolant end-point moments over the subinterval [x_j, x_{j+1}]:
///
/// S = h ∫₀¹ (1-p) K(x_k, (j+p)h) dp (multiplies phi_j),
/// T = h ∫₀¹  p    K(x_k, (j+p)h) dp (multiplies phi_{j+1}).
pub fn end_moments<R: Real>(
    k: usize,
    j: usize,
    kernel: impl Fn(R, R) -> R,
    rule: &QuadratureRule<R>,
    h: R,
) -> Result<(R, R)> {
    debug_assert!(
        j < k,
        "S/T moments live on [x_j, x_{{j+1}}] inside [0, x_k]"
    );
    let x_k = R::of_usize(k) * h;
    let t_base = R::of_usize(j) * h;
    let s = h * integrate_01(|p| (R::one() - p) * kernel(x_k, t_base + p * h), rule)?;
    let t = h * integrate_01(|p| p * kernel(x_k, t_base + p * h), rule)?;
    Ok((s, t))
}

/// Row of linear-interpolation kernel weights at node k: accumulate S into
/// position j and T into position j+1 for every subinterval.
pub fn linear_row<R: Real>(
    k: usize,
    kernel: impl Fn(R, R) -> R,
    rule: &QuadratureRule<R>,
    h: R,
) -> Result<KernelRow<R>> {
    assert!(k >= 1, "kernel rows start at node 1");
    let mut weights = vec![R::zero(); k + 1];
    for j in 0..k {
        let (s, t) = end_moments(k, j, &kernel, rule, h)?;
        weights[j] = weights[j] + s;
        weights[j + 1] = weights[j + 1] + t;
    }
    Ok(KernelRow { k, h, weights })
}

/// First-interval moments of the quadratic scheme: the same linear end-point
/// weights, specialized to [x_0, x_1]. Returns (a, b) multiplying
/// (phi_0, phi_1).
pub fn first_interval_moments<R: Real>(
    k: usize,
    kernel: impl Fn(R, R) -> R,
    rule: &QuadratureRule<R>,
    h: R,
) -> Result<(R, R)> {
    end_moments(k, 0, kernel, rule, h)
}

/// Quadratic-interpolant moments over [x_{j-1}, x_j] for j >= 2, from the
/// three nodes j-2, j-1, j:
///
/// M = (h/2) ∫₀¹ K p(p-1) dp   (multiplies phi_{j-2}),
/// N =  h    ∫₀¹ K (1-p²) dp   (multiplies phi_{j-1}),
/// O = (h/2) ∫₀¹ K p(p+1) dp   (multiplies phi_j),
///
/// with K evaluated at (x_k, (j-1+p)h).
pub fn quadratic_moments<R: Real>(
    k: usize,
    j: usize,
    kernel: impl Fn(R, R) -> R,
    rule: &QuadratureRule<R>,
    h: R,
) -> Result<(R, R, R)> {
    debug_assert!((2..=k).contains(&j), "quadratic moments need 2 <= j <= k");
    let x_k = R::of_usize(k) * h;
    let t_base = R::of_usize(j - 1) * h;
    let half_h = h * R::of(0.5);
    let m = half_h * integrate_01(|p| kernel(x_k, t_base + p * h) * p * (p - R::one()), rule)?;
    let n = h * integrate_01(|p| kernel(x_k, t_base + p * h) * (R::one() - p * p), rule)?;
    let o = half_h * integrate_01(|p| kernel(x_k, t_base + p * h) * p * (p + R::one()), rule)?;
    Ok((m, n, o))
}

/// Row of quadratic-interpolation kernel weights at node k, assembled from the
/// per-position recurrence (dedicated forms for k = 1, 2, 3 and general k >= 4).
pub fn quadratic_row<R: Real>(
    k: usize,
    kernel: impl Fn(R, R) -> R,
    rule: &QuadratureRule<R>,
    h: R,
) -> Result<KernelRow<R>> {
    assert!(k >= 1, "kernel rows start at node 1");
    let (a, b) = first_interval_moments(k, &kernel, rule, h)?;
    let mut weights = vec![R::zero(); k + 1];
    match k {
        1 => {
            weights[0] = a;
            weights[1] = b;
        }
        2 => {
            let (m, n, o) = quadratic_moments(k, 2, &kernel, rule, h)?;
            weights[0] = m + a;
            weights[1] = n + b;
            weights[2] = o;
        }
        3 => {
            let (m2, n2, o2) = quadratic_moments(k, 2, &kernel, rule, h)?;
            let (m3, n3, o3) = quadratic_moments(k, 3, &kernel, rule, h)?;
            weights[0] = m2 + a;
            weights[1] = m3 + n2 + b;
            weights[2] = n3 + o2;
            weights[3] = o3;
        }
        _ => {
            let moments: Vec<(R, R, R)> = (2..=k)
                .map(|j| quadratic_moments(k, j, &kernel, rule, h))
                .collect::<Result<_>>()?;
            let at = |j: usize| moments[j - 2];
            weights[0] = at(2).0 + a;
            weights[1] = at(3).0 + at(2).1 + b;
            for (j, slot) in weights.iter_mut().enumerate().take(k - 1).skip(2) {
                *slot = at(j + 2).0 + at(j + 1).1 + at(j).2;
            }
            weights[k - 1] = at(k).1 + at(k - 1).2;
            weights[k] = at(k).2;
        }
    }
    Ok(KernelRow { k, h, weights })
}

/// Brute-force assembly of the quadratic row: loop the subintervals and
/// scatter (M, N, O) into positions (j-2, j-1, j). Retained as the oracle the
/// recurrence assembly is tested against.
pub fn quadratic_row_scatter<R: Real>(
    k: usize,
    kernel: impl Fn(R, R) -> R,
    rule: &QuadratureRule<R>,
    h: R,
) -> Result<KernelRow<R>> {
    assert!(k >= 1, "kernel rows start at node 1");
    let mut weights = vec![R::zero(); k + 1];
    let (a, b) = first_interval_moments(k, &kernel, rule, h)?;
    weights[0] = weights[0] + a;
    weights[1] = weights[1] + b;
    for j in 2..=k {
        let (m, n, o) = quadratic_moments(k, j, &kernel, rule, h)?;
        weights[j - 2] = weights[j - 2] + m;
        weights[j - 1] = weights[j - 1] + n;
        weights[j] = weights[j] + o;
    }
    Ok(KernelRow { k, h, weights })
}
