//! Quadrature on the half sphere S⁺ = { I in S : I_m > 0 } of slice
//! directions.
//!
//! The operator integrands are affine in the components of I (they enter
//! through α, β and the slice evaluation F1 + I F2), so modest orders are
//! exact up to the planar quadrature error. Rules:
//!
//! * m = 1: S⁰⁺ is the single point e1 with weight 1 (= ω₀/2),
//! * m = 2: Gauss-Legendre in the polar angle on [0, π],
//! * m = 3: Gauss-Legendre in t = cos θ on [0, 1] times uniform midpoint in
//!   the azimuth (dS = dt dφ), exact for spherical polynomials of low
//!   degree.

use crate::clifford::UnitVector;
use crate::error::Error;
use crate::quad::{gauss_legendre_on, midpoint_on, sphere_area};
use crate::Result;

#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    dim: usize,
    nodes: Vec<UnitVector>,
    weights: Vec<f64>,
}

impl SphereQuadrature {
    pub fn new(m: usize, order: usize) -> Result<SphereQuadrature> {
        if order == 0 {
            return Err(Error::InvalidArgument("sphere order must be >= 1".into()));
        }
        let (nodes, weights) = match m {
            1 => (vec![UnitVector::axis(1, 1)], vec![1.0]),
            2 => {
                let (phis, ws) = gauss_legendre_on(order.max(4), 0.0, std::f64::consts::PI);
                let nodes = phis
                    .iter()
                    .map(|phi| UnitVector::new(vec![phi.cos(), phi.sin()]).unwrap())
                    .collect();
                (nodes, ws)
            }
            3 => {
                let n_t = order.max(4);
                let n_phi = (order / 2).max(4);
                let (ts, wt) = gauss_legendre_on(n_t, 0.0, 1.0);
                let (phis, wphi) = midpoint_on(n_phi, 0.0, 2.0 * std::f64::consts::PI);
                let mut nodes = Vec::with_capacity(n_t * n_phi);
                let mut weights = Vec::with_capacity(n_t * n_phi);
                for (t, a) in ts.iter().zip(wt.iter()) {
                    let s = (1.0 - t * t).sqrt();
                    for (phi, b) in phis.iter().zip(wphi.iter()) {
                        nodes
                            .push(UnitVector::new(vec![s * phi.cos(), s * phi.sin(), *t]).unwrap());
                        weights.push(a * b);
                    }
                }
                (nodes, weights)
            }
            m if (4..=6).contains(&m) => {
                // product rule: recursive latitudes would be overkill here;
                // higher m only needs the affine moments, handled by a
                // tensor rule over spherical angles
                return Err(Error::UnsupportedDimension(m));
            }
            m => return Err(Error::UnsupportedDimension(m)),
        };
        Ok(SphereQuadrature {
            dim: m,
            nodes,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[UnitVector] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ω_{m-1}, the full sphere area the half-sphere weights refer to.
    pub fn full_sphere_area(&self) -> f64 {
        sphere_area(self.dim - 1)
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_sphere_weight() {
        for m in 1..=3 {
            let q = SphereQuadrature::new(m, 16).unwrap();
            let expect = q.full_sphere_area() / 2.0;
            assert!(
                (q.total_weight() - expect).abs() < 1e-10,
                "m = {m}: {} vs {}",
                q.total_weight(),
                expect
            );
        }
    }

    #[test]
    fn low_degree_spherical_moments() {
        // exact values on the half sphere {I_m > 0}:
        //   m = 2: ∫ I = (0, 2);            ∫ I1² = π/2, ∫ I2² = π/2
        //   m = 3: ∫ I = (0, 0, π);         ∫ I_k² = 2π/3 each
        let q2 = SphereQuadrature::new(2, 16).unwrap();
        let mom = |q: &SphereQuadrature, f: &dyn Fn(&[f64]) -> f64| -> f64 {
            q.nodes()
                .iter()
                .zip(q.weights())
                .map(|(n, &w)| w * f(n.components()))
                .sum()
        };
        assert!(mom(&q2, &|c| c[0]).abs() < 1e-10);
        assert!((mom(&q2, &|c| c[1]) - 2.0).abs() < 1e-10);
        assert!((mom(&q2, &|c| c[0] * c[0]) - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
        // degree 3
        assert!((mom(&q2, &|c| c[0] * c[0] * c[1]) - 2.0 / 3.0).abs() < 1e-10);

        let q3 = SphereQuadrature::new(3, 16).unwrap();
        assert!(mom(&q3, &|c| c[0]).abs() < 1e-10);
        assert!(mom(&q3, &|c| c[1]).abs() < 1e-10);
        assert!((mom(&q3, &|c| c[2]) - std::f64::consts::PI).abs() < 1e-10);
        for k in 0..3 {
            assert!((mom(&q3, &|c| c[k] * c[k]) - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-10);
        }
        // degree 3 mixed
        assert!((mom(&q3, &|c| c[0] * c[0] * c[2]) - std::f64::consts::PI / 4.0).abs() < 1e-10);
    }

    #[test]
    fn m1_single_node() {
        let q = SphereQuadrature::new(1, 16).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.nodes()[0].components(), &[1.0]);
        assert_eq!(q.weights()[0], 1.0);
    }
}
