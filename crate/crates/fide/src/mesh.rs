//! Uniform mesh on the unit interval.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Uniform grid x_0 = 0 < x_1 < ... < x_n = 1 with step h = 1/n.
///
/// Nodes are computed independently as k/n rather than by cumulative
/// addition, so there is no drift at fine resolutions and the endpoints are
/// exact for every n.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh<R: Real> {
    n: usize,
    h: R,
    nodes: Vec<R>,
}

impl<R: Real> Mesh<R> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMesh);
        }
        let nf = R::of_usize(n);
        let h = R::one() / nf;
        let nodes = (0..=n).map(|k| R::of_usize(k) / nf).collect();
        Ok(Mesh { n, h, nodes })
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Step size 1/n.
    pub fn h(&self) -> R {
        self.h
    }

    /// All n + 1 nodes, ascending.
    pub fn nodes(&self) -> &[R] {
        &self.nodes
    }

    /// The k-th node, k in 0..=n.
    pub fn node(&self, k: usize) -> R {
        self.nodes[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_exact_ratios() {
        for n in [5usize, 10, 20, 40, 80] {
            let mesh = Mesh::<f64>::new(n).unwrap();
            assert_eq!(mesh.node(0), 0.0);
            assert_eq!(mesh.node(n), 1.0);
            assert_eq!(mesh.h(), 1.0 / n as f64);
            for k in 0..=n {
                assert_eq!(mesh.node(k), k as f64 / n as f64, "n={n} k={k}");
                // multiplicative form agrees to one rounding of the product
                let product = k as f64 * mesh.h();
                assert!((mesh.node(k) - product).abs() <= f64::EPSILON * product.max(1.0));
            }
        }
    }

    #[test]
    fn endpoints_exact_even_for_awkward_n() {
        // 41 is a classic case where fl(41 * fl(1/41)) != 1.
        let mesh = Mesh::<f64>::new(41).unwrap();
        assert_eq!(mesh.node(41), 1.0);
        assert_eq!(mesh.node(0), 0.0);
    }

    #[test]
    fn zero_subintervals_rejected() {
        assert_eq!(Mesh::<f64>::new(0).unwrap_err(), Error::EmptyMesh);
    }
}
