//! Discretization weights for the Caputo derivative term.
//!
//! Both schemes replace the unknown by a local interpolant and integrate the
//! interpolant derivative against the weakly singular factor
//! (x_k - t)^(-alpha) / Gamma(1 - alpha) in closed form. The linear scheme
//! interpolates piecewise-linearly on every subinterval; the quadratic scheme
//! keeps the linear interpolant on the first subinterval and uses the
//! three-point quadratic interpolant (nodes j-2, j-1, j) on the rest.
//!
//! Rows are stored oriented so that `weights[j]` multiplies the nodal value
//! phi_j, which lets both schemes share one application and assembly path.

use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::scalar::Real;

/// One row of Caputo weights for node index k.
///
/// The weights always sum to zero: the derivative annihilates constants.
#[derive(Debug, Clone, PartialEq)]
pub struct CaputoRow<R: Real> {
    k: usize,
    alpha: R,
    h: R,
    weights: Vec<R>,
}

impl<R: Real> CaputoRow<R> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> R {
        self.alpha
    }

    pub fn h(&self) -> R {
        self.h
    }

    /// Weights w_0..w_k; `weights()[j]` multiplies phi_j.
    pub fn weights(&self) -> &[R] {
        &self.weights
    }

    /// Apply the row to nodal values phi_0..phi_k (a dot product).
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

fn validate<R: Real>(alpha: R, h: R) -> Result<()> {
    if !(alpha > R::zero() && alpha < R::one()) {
        return Err(Error::AlphaOutOfRange {
            alpha: alpha.as_f64(),
        });
    }
    if !(h > R::zero()) {
        return Err(Error::NonPositiveStep { h: h.as_f64() });
    }
    Ok(())
}

/// (1 + 1/m)^exponent - 1 with full relative precision (m may be negative,
/// giving the backward ratio (1 - 1/|m|)^exponent - 1).
///
/// The difference coefficients below are small values obtained from large
/// powers; factoring out m^(1-alpha) and going through expm1/ln_1p keeps
/// them accurate at large lag, where the plain power differences lose most
/// of their digits to cancellation.
fn pow_growth<R: Real>(m: R, exponent: R) -> R {
    (exponent * m.recip().ln_1p()).exp_m1()
}

/// (m + 1)^(1-alpha) - m^(1-alpha): the first-difference coefficient shared by
/// both schemes. Positive and strictly decreasing in m.
pub fn coeff_a<R: Real>(m: usize, alpha: R) -> R {
    if m == 0 {
        return R::one();
    }
    let e = R::one() - alpha;
    let mf = R::of_usize(m);
    mf.powf(e) * pow_growth(mf, e)
}

/// The quadratic-interpolant coefficients (B, C, D) at lag m = k - j.
///
/// Closed forms (with 0^(1-alpha) = 0 at m = 0):
///
/// ```text
/// B(m) = [(m+1)^(1-a) (m + a/2)     - m^(1-a) (m - a/2 + 1)]    / (2-a)
/// C(m) = 2 [m^(1-a) (m - a + 2)     - (m+1)^(2-a)]              / (2-a)
/// D(m) = [(m+1)^(1-a) (m - a/2 + 2) - m^(1-a) (m - 3a/2 + 3)]   / (2-a)
/// ```
///
/// evaluated here with (m+1)^(1-a) = m^(1-a) (1 + g) and the growth g from
/// [`pow_growth`], so each coefficient keeps full relative precision and
/// B + C + D cancels to rounding level for every m.
pub fn coeffs_bcd<R: Real>(m: usize, alpha: R) -> (R, R, R) {
    let one = R::one();
    let two = R::of(2.0);
    let half_alpha = alpha / two;
    let denom = two - alpha;
    if m == 0 {
        return (half_alpha / denom, -two / denom, (two - half_alpha) / denom);
    }
    let e = one - alpha;
    let mf = R::of_usize(m);
    let m_pow = mf.powf(e);
    let growth = pow_growth(mf, e);
    let b = m_pow * (growth * (mf + half_alpha) + alpha - one) / denom;
    let c = two * m_pow * ((one - alpha) - growth * (mf + one)) / denom;
    let d = m_pow * (growth * (mf - half_alpha + two) + alpha - one) / denom;
    (b, c, d)
}

/// Row of linear-scheme weights at node k: the classic second-difference form,
/// scaled by h^(-alpha) / Gamma(2 - alpha).
pub fn linear_row<R: Real>(k: usize, alpha: R, h: R) -> Result<CaputoRow<R>> {
    validate(alpha, h)?;
    assert!(k >= 1, "caputo rows start at node 1");
    let e = R::one() - alpha;
    let gamma_recip = gamma(R::of(2.0) - alpha)?.recip();
    let scale = h.powf(-alpha);
    let mut weights = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let base = if j == 0 {
            -coeff_a(k - 1, alpha)
        } else if j < k {
            // second difference (m-1)^e - 2 m^e + (m+1)^e at m = k - j,
            // via the same growth factoring as the coefficients
            let mf = R::of_usize(k - j);
            mf.powf(e) * (pow_growth(mf, e) + pow_growth(-mf, e))
        } else {
            R::one()
        };
        // two-step scaling keeps the h-dependence an exact factor
        weights.push(base * gamma_recip * scale);
    }
    Ok(CaputoRow {
        k,
        alpha,
        h,
        weights,
    })
}

/// Row of quadratic-scheme weights at node k.
///
/// The recurrence has dedicated forms for k = 1, 2, 3 and the general k >= 4
/// case; the k = 1 row coincides with the linear one. Internally the
/// coefficients s_0..s_k weight phi_k..phi_0, so the row is reversed before
/// being stored in phi_j order.
pub fn quadratic_row<R: Real>(k: usize, alpha: R, h: R) -> Result<CaputoRow<R>> {
    validate(alpha, h)?;
    assert!(k >= 1, "caputo rows start at node 1");
    let mut s = vec![R::zero(); k + 1];
    match k {
        1 => {
            s[0] = R::one();
            s[1] = -R::one();
        }
        2 => {
            let (b0, c0, d0) = coeffs_bcd(0, alpha);
            let a1 = coeff_a(1, alpha);
            s[0] = d0;
            s[1] = c0 + a1;
            s[2] = b0 - a1;
        }
        3 => {
            let (b0, c0, d0) = coeffs_bcd(0, alpha);
            let (b1, c1, d1) = coeffs_bcd(1, alpha);
            let a2 = coeff_a(2, alpha);
            s[0] = d0;
            s[1] = c0 + d1;
            s[2] = b0 + c1 + a2;
            s[3] = b1 - a2;
        }
        _ => {
            let (_, c0, d0) = coeffs_bcd(0, alpha);
            let d1 = coeffs_bcd(1, alpha).2;
            s[0] = d0;
            s[1] = c0 + d1;
            for (j, slot) in s.iter_mut().enumerate().take(k - 1).skip(2) {
                let b = coeffs_bcd(j - 2, alpha).0;
                let c = coeffs_bcd(j - 1, alpha).1;
                let d = coeffs_bcd(j, alpha).2;
                *slot = b + c + d;
            }
            let a_last = coeff_a(k - 1, alpha);
            s[k - 1] = coeffs_bcd(k - 3, alpha).0 + coeffs_bcd(k - 2, alpha).1 + a_last;
            s[k] = coeffs_bcd(k - 2, alpha).0 - a_last;
        }
    }
    let gamma_recip = gamma(R::of(2.0) - alpha)?.recip();
    let scale = h.powf(-alpha);
    // s_j multiplies phi_{k-j}; reverse so weights[j] multiplies phi_j.
    let weights = s.iter().rev().map(|&v| v * gamma_recip * scale).collect();
    Ok(CaputoRow {
        k,
        alpha,
        h,
        weights,
    })
}
