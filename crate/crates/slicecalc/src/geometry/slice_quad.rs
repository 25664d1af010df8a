//! 2D quadrature over a profile region, with optional singularity-adapted
//! refinement.
//!
//! The regular rule is tensor Gauss-Legendre mapped to the profile
//! (rectangle: direct; disk and annulus sector: polar), spectrally accurate
//! on smooth integrands so that operator error is dominated by singularity
//! handling.
//!
//! A rule `with_patch(center, radius)` integrates functions with an
//! integrable 1/|x - center| singularity: the whole region is swept in polar
//! coordinates around the center, splitting the angular range at boundary
//! corners so each panel sees an analytic exit radius. The inner disk of the
//! given radius (the patch proper) uses a radially graded rule r = radius·s²
//! whose weights carry the polar Jacobian, so r^{-1} integrands are captured
//! exactly in r; the remaining radial span uses plain Gauss-Legendre per
//! ray. No regular node lies inside the patch and the total weight still
//! sums to the profile area.

use crate::error::Error;
use crate::geometry::profile::ProfileRegion;
use crate::quad::{gauss_legendre, gauss_legendre_on, midpoint_on};
use crate::Result;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Radial nodes of the graded patch rule.
const PATCH_RADIAL: usize = 16;

/// Record of an active singular patch.
#[derive(Clone, Debug)]
pub struct PatchInfo {
    pub center: (f64, f64),
    pub radius: f64,
    /// number of leading nodes that belong to the patch rule
    pub patch_nodes: usize,
}

/// Nodes, positive weights and optional patch metadata for integration over
/// the profile (the upper-half representative only).
#[derive(Clone, Debug)]
pub struct SliceQuadrature {
    nodes: Vec<(f64, f64)>,
    weights: Vec<f64>,
    patch: Option<PatchInfo>,
}

impl SliceQuadrature {
    pub fn regular(profile: &ProfileRegion) -> SliceQuadrature {
        let n = profile.resolution();
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        match *profile {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => {
                let (us, wu) = gauss_legendre_on(n, u_min, u_max);
                let (vs, wv) = gauss_legendre_on(n, v_min, v_max);
                for (u, a) in us.iter().zip(wu.iter()) {
                    for (v, b) in vs.iter().zip(wv.iter()) {
                        nodes.push((*u, *v));
                        weights.push(a * b);
                    }
                }
            }
            ProfileRegion::Disk { center, radius, .. } => {
                let (rs, wr) = gauss_legendre_on(n, 0.0, radius);
                let (ths, wth) = midpoint_on(2 * n, 0.0, TAU);
                for (r, a) in rs.iter().zip(wr.iter()) {
                    for (th, b) in ths.iter().zip(wth.iter()) {
                        nodes.push((center.0 + r * th.cos(), center.1 + r * th.sin()));
                        weights.push(a * b * r);
                    }
                }
            }
            ProfileRegion::AnnulusSector {
                center,
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => {
                let (rs, wr) = gauss_legendre_on(n, r_inner, r_outer);
                let (ths, wth) = gauss_legendre_on(n, theta_min, theta_max);
                for (r, a) in rs.iter().zip(wr.iter()) {
                    for (th, b) in ths.iter().zip(wth.iter()) {
                        nodes.push((center.0 + r * th.cos(), center.1 + r * th.sin()));
                        weights.push(a * b * r);
                    }
                }
            }
        }
        SliceQuadrature {
            nodes,
            weights,
            patch: None,
        }
    }

    /// Polar rule around `center` resolving a 1/r singularity there.
    /// Requires the patch disk to sit inside the profile.
    pub fn with_patch(
        profile: &ProfileRegion,
        center: (f64, f64),
        radius: f64,
    ) -> Result<SliceQuadrature> {
        if !profile.contains(center.0, center.1) {
            return Err(Error::Geometry(format!(
                "patch center ({}, {}) lies outside the profile",
                center.0, center.1
            )));
        }
        let clearance = profile.distance_to_boundary(center.0, center.1);
        if radius <= 0.0 || radius >= clearance {
            return Err(Error::Geometry(format!(
                "patch radius {radius} does not fit inside the profile \
                 (boundary clearance {clearance})"
            )));
        }
        let n = profile.resolution();
        let n_theta = (2 * n).max(64);
        let n_r_outer = (n / 2).max(12);

        // angular panels split at corner directions
        let mut breaks = profile.corner_angles_from(center);
        if breaks.is_empty() {
            breaks = vec![0.0];
        }
        breaks.push(breaks[0] + TAU);

        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut outer = Vec::new(); // assembled after the patch nodes

        let (ss, ws) = gauss_legendre(PATCH_RADIAL);
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a < 1e-12 {
                continue;
            }
            let frac = (b - a) / TAU;
            let n_panel = ((n_theta as f64 * frac).ceil() as usize).max(8);
            let (ths, wth) = gauss_legendre_on(n_panel, a, b);
            for (th, wt) in ths.iter().zip(wth.iter()) {
                let exit = profile.ray_exit(center, *th);
                debug_assert!(exit >= radius * (1.0 - 1e-9));
                // graded patch zone: r = radius s², dA = r dr dθ = 2 radius² s³ ds dθ
                for (s01, w01) in ss.iter().zip(ws.iter()) {
                    let s = 0.5 * (s01 + 1.0);
                    let wsch = 0.5 * w01;
                    let r = radius * s * s;
                    nodes.push((center.0 + r * th.cos(), center.1 + r * th.sin()));
                    weights.push(wt * wsch * 2.0 * radius * radius * s * s * s);
                }
                // outer zone
                let (rs, wr) = gauss_legendre_on(n_r_outer, radius, exit);
                for (r, a_r) in rs.iter().zip(wr.iter()) {
                    outer.push((
                        (center.0 + r * th.cos(), center.1 + r * th.sin()),
                        wt * a_r * r,
                    ));
                }
            }
        }
        let patch_nodes = nodes.len();
        for (p, w) in outer {
            nodes.push(p);
            weights.push(w);
        }
        Ok(SliceQuadrature {
            nodes,
            weights,
            patch: Some(PatchInfo {
                center,
                radius,
                patch_nodes,
            }),
        })
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
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

    pub fn patch(&self) -> Option<&PatchInfo> {
        self.patch.as_ref()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Typical node spacing, used to size finite-difference steps and patch
    /// radii.
    pub fn node_spacing(&self) -> f64 {
        (self.total_weight() / self.len() as f64).sqrt()
    }

    pub fn integrate_scalar(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&(u, v), &w)| w * f(u, v))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk() -> ProfileRegion {
        ProfileRegion::Disk {
            center: (0.0, 2.0),
            radius: 0.5,
            resolution: 24,
        }
    }

    fn rect() -> ProfileRegion {
        ProfileRegion::Rectangle {
            u_min: -1.0,
            u_max: 1.0,
            v_min: 1.0,
            v_max: 2.0,
            resolution: 24,
        }
    }

    #[test]
    fn weights_sum_to_area() {
        for p in [
            disk(),
            rect(),
            ProfileRegion::AnnulusSector {
                center: (0.0, 2.0),
                r_inner: 0.2,
                r_outer: 0.5,
                theta_min: 0.4,
                theta_max: 2.2,
                resolution: 24,
            },
        ] {
            let q = SliceQuadrature::regular(&p);
            assert!(
                (q.total_weight() - p.area()).abs() <= 1e-10 * p.area(),
                "area mismatch for {p:?}"
            );
        }
    }

    #[test]
    fn polynomial_exactness_on_rectangle() {
        let q = SliceQuadrature::regular(&rect());
        // degree (7, 6): well within the rule order
        let got = q.integrate_scalar(|u, v| u.powi(6) * v.powi(7));
        let exact = (2.0 / 7.0) * (2.0f64.powi(8) - 1.0) / 8.0;
        assert!((got - exact).abs() < 1e-10 * exact.abs());
    }

    #[test]
    fn smooth_integral_on_disk() {
        let q = SliceQuadrature::regular(&disk());
        // centroid weight: ∫ v dA = v0 π R²
        let got = q.integrate_scalar(|_, v| v);
        let exact = 2.0 * std::f64::consts::PI * 0.25;
        assert!((got - exact).abs() < 1e-10);
    }

    #[test]
    fn patch_preserves_area_and_resolves_singularity() {
        let p = disk();
        let c = (0.1, 2.1);
        let q = SliceQuadrature::with_patch(&p, c, 0.08).unwrap();
        // area unchanged
        assert!((q.total_weight() - p.area()).abs() < 1e-10);
        // no regular node inside the patch
        let info = q.patch().unwrap();
        for (k, &(u, v)) in q.nodes().iter().enumerate() {
            let d = ((u - c.0).powi(2) + (v - c.1).powi(2)).sqrt();
            if k >= info.patch_nodes {
                assert!(d >= info.radius * (1.0 - 1e-9));
            }
        }
    }

    #[test]
    fn patch_integrates_inverse_distance_exactly() {
        // ∫∫_{disk(c,R)} dA / |x - c| = 2πR
        let p = ProfileRegion::Disk {
            center: (0.0, 2.0),
            radius: 0.5,
            resolution: 16,
        };
        let q = SliceQuadrature::with_patch(&p, (0.0, 2.0), 0.1).unwrap();
        let got = q.integrate_scalar(|u, v| 1.0 / ((u).powi(2) + (v - 2.0).powi(2)).sqrt());
        assert!((got - std::f64::consts::PI).abs() < 1e-10, "got {got}");

        // odd symmetry: ∫ (u - c_u)/|x - c|² dA = 0
        let got = q.integrate_scalar(|u, v| u / (u.powi(2) + (v - 2.0).powi(2)));
        assert!(got.abs() < 1e-10);
    }

    #[test]
    fn patch_on_rectangle_splits_at_corners() {
        let p = rect();
        let q = SliceQuadrature::with_patch(&p, (0.2, 1.4), 0.05).unwrap();
        assert!((q.total_weight() - p.area()).abs() < 1e-9);
        let got = q.integrate_scalar(|u, v| u * v);
        // ∫ u du ∫ v dv = 0 * 1.5
        assert!(got.abs() < 1e-9);
    }

    #[test]
    fn escaping_patch_is_rejected() {
        let p = disk();
        assert!(SliceQuadrature::with_patch(&p, (0.45, 2.0), 0.2).is_err());
        assert!(SliceQuadrature::with_patch(&p, (2.0, 2.0), 0.1).is_err());
    }
}
