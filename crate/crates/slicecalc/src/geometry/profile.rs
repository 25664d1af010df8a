//! Planar profile regions D⁺ in the open upper half-plane.
//!
//! A profile is the upper-half representative of a conjugation-invariant
//! planar set; the mirrored lower half is implicit and handled by the
//! operators through the even-odd stem symmetry. Every profile must stay
//! strictly off the real axis (v > 0), which encodes the restriction of the
//! ambient domain to R^{m+1} minus the real line.

use crate::error::Error;
use crate::Result;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Supported profile shapes and their resolution parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileRegion {
    /// u in [u_min, u_max], v in [v_min, v_max]
    Rectangle {
        u_min: f64,
        u_max: f64,
        v_min: f64,
        v_max: f64,
        resolution: usize,
    },
    /// |x - center| < radius
    Disk {
        center: (f64, f64),
        radius: f64,
        resolution: usize,
    },
    /// annular sector around `center`, radii in [r_inner, r_outer],
    /// polar angle in [theta_min, theta_max] (span strictly below 2π)
    AnnulusSector {
        center: (f64, f64),
        r_inner: f64,
        r_outer: f64,
        theta_min: f64,
        theta_max: f64,
        resolution: usize,
    },
}

/// One smooth piece of a profile boundary, traversed counterclockwise
/// around the region (outward normal on the right of the tangent).
#[derive(Clone, Debug)]
pub(crate) enum Piece {
    Segment {
        a: (f64, f64),
        b: (f64, f64),
    },
    /// Circular arc around `center`; traversed from `t0` to `t1` (t1 < t0
    /// runs clockwise). `outward_sign` is +1 when the outward normal points
    /// away from the arc center.
    Arc {
        center: (f64, f64),
        radius: f64,
        t0: f64,
        t1: f64,
        outward_sign: f64,
    },
}

impl Piece {
    pub(crate) fn length(&self) -> f64 {
        match self {
            Piece::Segment { a, b } => ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt(),
            Piece::Arc { radius, t0, t1, .. } => radius * (t1 - t0).abs(),
        }
    }

    /// Point, counterclockwise unit tangent and outward unit normal at the
    /// arclength fraction s in [0, 1].
    pub(crate) fn at(&self, s: f64) -> ((f64, f64), (f64, f64), (f64, f64)) {
        match self {
            Piece::Segment { a, b } => {
                let p = (a.0 + (b.0 - a.0) * s, a.1 + (b.1 - a.1) * s);
                let len = self.length();
                let t = ((b.0 - a.0) / len, (b.1 - a.1) / len);
                (p, t, (t.1, -t.0))
            }
            Piece::Arc {
                center,
                radius,
                t0,
                t1,
                outward_sign,
            } => {
                let th = t0 + (t1 - t0) * s;
                let dir = (th.cos(), th.sin());
                let p = (center.0 + radius * dir.0, center.1 + radius * dir.1);
                let orient = (t1 - t0).signum();
                let t = (-dir.1 * orient, dir.0 * orient);
                let n = (dir.0 * outward_sign, dir.1 * outward_sign);
                (p, t, n)
            }
        }
    }

    /// Smallest positive ray parameter where `p + t*dir` meets this piece.
    fn ray_hit(&self, p: (f64, f64), dir: (f64, f64)) -> Option<f64> {
        const EPS: f64 = 1e-12;
        match self {
            Piece::Segment { a, b } => {
                // solve p + t dir = a + s (b - a), 0 <= s <= 1, t > 0
                let e = (b.0 - a.0, b.1 - a.1);
                let det = dir.0 * (-e.1) - dir.1 * (-e.0);
                if det.abs() < EPS {
                    return None;
                }
                let rhs = (a.0 - p.0, a.1 - p.1);
                let t = (rhs.0 * (-e.1) - rhs.1 * (-e.0)) / det;
                let s = (dir.0 * rhs.1 - dir.1 * rhs.0) / det;
                if t > EPS && (-EPS..=1.0 + EPS).contains(&s) {
                    Some(t)
                } else {
                    None
                }
            }
            Piece::Arc {
                center,
                radius,
                t0,
                t1,
                ..
            } => {
                let rel = (p.0 - center.0, p.1 - center.1);
                let b = rel.0 * dir.0 + rel.1 * dir.1;
                let c = rel.0 * rel.0 + rel.1 * rel.1 - radius * radius;
                let disc = b * b - c;
                if disc < 0.0 {
                    return None;
                }
                let sq = disc.sqrt();
                let mut best: Option<f64> = None;
                for t in [-b - sq, -b + sq] {
                    if t <= EPS {
                        continue;
                    }
                    let hit = (p.0 + t * dir.0, p.1 + t * dir.1);
                    let ang = (hit.1 - center.1).atan2(hit.0 - center.0);
                    let (lo, hi) = (t0.min(*t1), t0.max(*t1));
                    // compare angles modulo 2π
                    let mut a = ang;
                    while a < lo - EPS {
                        a += TAU;
                    }
                    while a > hi + TAU {
                        a -= TAU;
                    }
                    if a <= hi + 1e-9 && a >= lo - 1e-9 {
                        best = Some(best.map_or(t, |x: f64| x.min(t)));
                    }
                }
                best
            }
        }
    }
}

impl ProfileRegion {
    pub fn resolution(&self) -> usize {
        match *self {
            ProfileRegion::Rectangle { resolution, .. }
            | ProfileRegion::Disk { resolution, .. }
            | ProfileRegion::AnnulusSector { resolution, .. } => resolution,
        }
    }

    pub fn with_resolution(&self, resolution: usize) -> ProfileRegion {
        let mut out = self.clone();
        match &mut out {
            ProfileRegion::Rectangle { resolution: r, .. }
            | ProfileRegion::Disk { resolution: r, .. }
            | ProfileRegion::AnnulusSector { resolution: r, .. } => *r = resolution,
        }
        out
    }

    /// Checks shape parameters and the off-axis requirement v > 0 for the
    /// entire closed region.
    pub fn validate(&self) -> Result<()> {
        if self.resolution() < 4 {
            return Err(Error::Domain("resolution must be at least 4".into()));
        }
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => {
                if !(u_min < u_max && v_min < v_max) {
                    return Err(Error::Domain("degenerate rectangle".into()));
                }
                if v_min <= 0.0 {
                    return Err(Error::Domain(format!(
                        "profile touches the real axis (v_min = {v_min}); domains must lie in \
                         R^{{m+1}} minus the real line"
                    )));
                }
            }
            ProfileRegion::Disk { center, radius, .. } => {
                if radius <= 0.0 {
                    return Err(Error::Domain("disk radius must be positive".into()));
                }
                if center.1 - radius <= 0.0 {
                    return Err(Error::Domain(format!(
                        "profile touches the real axis (v0 - R = {}); domains must lie in \
                         R^{{m+1}} minus the real line",
                        center.1 - radius
                    )));
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
                if !(0.0 <= r_inner && r_inner < r_outer) {
                    return Err(Error::Domain("need 0 <= r_inner < r_outer".into()));
                }
                let span = theta_max - theta_min;
                if !(span > 0.0 && span < TAU - 1e-9) {
                    return Err(Error::Domain(
                        "sector angle span must be positive and below 2π".into(),
                    ));
                }
                // min of v over the closed sector
                let mut min_v = f64::INFINITY;
                for k in 0..=64 {
                    let th = theta_min + span * k as f64 / 64.0;
                    for r in [r_inner, r_outer] {
                        min_v = min_v.min(center.1 + r * th.sin());
                    }
                }
                if min_v <= 0.0 {
                    return Err(Error::Domain(format!(
                        "profile touches the real axis (min v = {min_v}); domains must lie in \
                         R^{{m+1}} minus the real line"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => (u_max - u_min) * (v_max - v_min),
            ProfileRegion::Disk { radius, .. } => std::f64::consts::PI * radius * radius,
            ProfileRegion::AnnulusSector {
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => 0.5 * (theta_max - theta_min) * (r_outer * r_outer - r_inner * r_inner),
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.pieces().iter().map(|p| p.length()).sum()
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => u > u_min && u < u_max && v > v_min && v < v_max,
            ProfileRegion::Disk { center, radius, .. } => {
                (u - center.0).powi(2) + (v - center.1).powi(2) < radius * radius
            }
            ProfileRegion::AnnulusSector {
                center,
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => {
                let (du, dv) = (u - center.0, v - center.1);
                let r = (du * du + dv * dv).sqrt();
                if r <= r_inner || r >= r_outer {
                    return false;
                }
                let mut th = dv.atan2(du);
                while th < theta_min {
                    th += TAU;
                }
                th < theta_max
            }
        }
    }

    /// Distance from an interior point to the boundary (0 outside).
    pub fn distance_to_boundary(&self, u: f64, v: f64) -> f64 {
        if !self.contains(u, v) {
            return 0.0;
        }
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => (u - u_min).min(u_max - u).min(v - v_min).min(v_max - v),
            ProfileRegion::Disk { center, radius, .. } => {
                radius - ((u - center.0).powi(2) + (v - center.1).powi(2)).sqrt()
            }
            ProfileRegion::AnnulusSector {
                center,
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => {
                let (du, dv) = (u - center.0, v - center.1);
                let r = (du * du + dv * dv).sqrt();
                let mut th = dv.atan2(du);
                while th < theta_min {
                    th += TAU;
                }
                (r - r_inner)
                    .min(r_outer - r)
                    .min(r * (th - theta_min).sin().abs())
                    .min(r * (theta_max - th).sin().abs())
            }
        }
    }

    /// A point well inside the region.
    pub fn interior_point(&self) -> (f64, f64) {
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => (0.5 * (u_min + u_max), 0.5 * (v_min + v_max)),
            ProfileRegion::Disk { center, .. } => center,
            ProfileRegion::AnnulusSector {
                center,
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => {
                let r = 0.5 * (r_inner + r_outer);
                let th = 0.5 * (theta_min + theta_max);
                (center.0 + r * th.cos(), center.1 + r * th.sin())
            }
        }
    }

    /// Area centroid, used to orient normals in tests.
    pub fn centroid(&self) -> (f64, f64) {
        match *self {
            ProfileRegion::Rectangle { .. } | ProfileRegion::Disk { .. } => self.interior_point(),
            ProfileRegion::AnnulusSector {
                center,
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => {
                let span = theta_max - theta_min;
                let rbar = (2.0 / 3.0) * (r_outer.powi(3) - r_inner.powi(3))
                    / (r_outer.powi(2) - r_inner.powi(2));
                let mid = 0.5 * (theta_min + theta_max);
                let chord = (span / 2.0).sin() / (span / 2.0);
                (
                    center.0 + rbar * chord * mid.cos(),
                    center.1 + rbar * chord * mid.sin(),
                )
            }
        }
    }

    /// Largest inscribed-circle radius estimate.
    pub fn inradius(&self) -> f64 {
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => 0.5 * (u_max - u_min).min(v_max - v_min),
            ProfileRegion::Disk { radius, .. } => radius,
            ProfileRegion::AnnulusSector { .. } => {
                let p = self.interior_point();
                self.distance_to_boundary(p.0, p.1)
            }
        }
    }

    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => (u_min, u_max, v_min, v_max),
            ProfileRegion::Disk { center, radius, .. } => (
                center.0 - radius,
                center.0 + radius,
                center.1 - radius,
                center.1 + radius,
            ),
            ProfileRegion::AnnulusSector {
                center, r_outer, ..
            } => (
                center.0 - r_outer,
                center.0 + r_outer,
                (center.1 - r_outer).max(1e-12),
                center.1 + r_outer,
            ),
        }
    }

    pub(crate) fn pieces(&self) -> Vec<Piece> {
        match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => vec![
                Piece::Segment {
                    a: (u_min, v_min),
                    b: (u_max, v_min),
                },
                Piece::Segment {
                    a: (u_max, v_min),
                    b: (u_max, v_max),
                },
                Piece::Segment {
                    a: (u_max, v_max),
                    b: (u_min, v_max),
                },
                Piece::Segment {
                    a: (u_min, v_max),
                    b: (u_min, v_min),
                },
            ],
            ProfileRegion::Disk { center, radius, .. } => vec![Piece::Arc {
                center,
                radius,
                t0: 0.0,
                t1: TAU,
                outward_sign: 1.0,
            }],
            ProfileRegion::AnnulusSector {
                center,
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => {
                let e = |th: f64, r: f64| (center.0 + r * th.cos(), center.1 + r * th.sin());
                vec![
                    Piece::Segment {
                        a: e(theta_min, r_inner),
                        b: e(theta_min, r_outer),
                    },
                    Piece::Arc {
                        center,
                        radius: r_outer,
                        t0: theta_min,
                        t1: theta_max,
                        outward_sign: 1.0,
                    },
                    Piece::Segment {
                        a: e(theta_max, r_outer),
                        b: e(theta_max, r_inner),
                    },
                    Piece::Arc {
                        center,
                        radius: r_inner,
                        t0: theta_max,
                        t1: theta_min,
                        outward_sign: -1.0,
                    },
                ]
            }
        }
    }

    /// Distance from an interior point to the boundary along a direction.
    pub(crate) fn ray_exit(&self, p: (f64, f64), theta: f64) -> f64 {
        let dir = (theta.cos(), theta.sin());
        let mut best = f64::INFINITY;
        for piece in self.pieces() {
            if let Some(t) = piece.ray_hit(p, dir) {
                best = best.min(t);
            }
        }
        debug_assert!(best.is_finite(), "ray from interior point must exit");
        best
    }

    /// Angles (as seen from `p`) of the non-smooth boundary points; polar
    /// sub-rules split there so each angular panel sees an analytic radius.
    pub(crate) fn corner_angles_from(&self, p: (f64, f64)) -> Vec<f64> {
        let corners: Vec<(f64, f64)> = match *self {
            ProfileRegion::Rectangle {
                u_min,
                u_max,
                v_min,
                v_max,
                ..
            } => vec![
                (u_min, v_min),
                (u_max, v_min),
                (u_max, v_max),
                (u_min, v_max),
            ],
            ProfileRegion::Disk { .. } => vec![],
            ProfileRegion::AnnulusSector {
                center,
                r_inner,
                r_outer,
                theta_min,
                theta_max,
                ..
            } => {
                let e = |th: f64, r: f64| (center.0 + r * th.cos(), center.1 + r * th.sin());
                vec![
                    e(theta_min, r_inner),
                    e(theta_min, r_outer),
                    e(theta_max, r_inner),
                    e(theta_max, r_outer),
                ]
            }
        };
        let mut angles: Vec<f64> = corners
            .iter()
            .map(|c| {
                let a = (c.1 - p.1).atan2(c.0 - p.0);
                if a < 0.0 {
                    a + TAU
                } else {
                    a
                }
            })
            .collect();
        // the inner arc of a sector can occlude corners; extra split lines
        // are harmless, so keep them all
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        angles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk() -> ProfileRegion {
        ProfileRegion::Disk {
            center: (0.0, 2.0),
            radius: 0.5,
            resolution: 16,
        }
    }

    #[test]
    fn validation_rejects_real_axis() {
        let bad = ProfileRegion::Rectangle {
            u_min: -1.0,
            u_max: 1.0,
            v_min: 0.0,
            v_max: 1.0,
            resolution: 16,
        };
        assert!(bad.validate().is_err());
        let bad = ProfileRegion::Disk {
            center: (0.0, 0.5),
            radius: 0.5,
            resolution: 16,
        };
        assert!(bad.validate().is_err());
        assert!(disk().validate().is_ok());
    }

    #[test]
    fn ray_exit_on_disk() {
        let d = disk();
        // from the center every ray exits at the radius
        for k in 0..16 {
            let th = TAU * k as f64 / 16.0;
            assert!((d.ray_exit((0.0, 2.0), th) - 0.5).abs() < 1e-12);
        }
        // off-center horizontal ray
        let t = d.ray_exit((0.2, 2.0), 0.0);
        assert!((t - 0.3).abs() < 1e-12);
    }

    #[test]
    fn ray_exit_on_rectangle() {
        let r = ProfileRegion::Rectangle {
            u_min: -1.0,
            u_max: 1.0,
            v_min: 1.0,
            v_max: 2.0,
            resolution: 16,
        };
        assert!((r.ray_exit((0.0, 1.5), 0.0) - 1.0).abs() < 1e-12);
        assert!((r.ray_exit((0.0, 1.5), std::f64::consts::FRAC_PI_2) - 0.5).abs() < 1e-12);
        let diag = r.ray_exit((0.0, 1.5), std::f64::consts::FRAC_PI_4);
        assert!((diag - 0.5 * 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sector_contains_and_rays() {
        let s = ProfileRegion::AnnulusSector {
            center: (0.0, 2.0),
            r_inner: 0.3,
            r_outer: 0.6,
            theta_min: 0.3,
            theta_max: 2.0,
            resolution: 16,
        };
        s.validate().unwrap();
        let p = s.interior_point();
        assert!(s.contains(p.0, p.1));
        assert!(!s.contains(0.0, 2.0));
        for k in 0..32 {
            let th = TAU * k as f64 / 32.0;
            let t = s.ray_exit(p, th);
            assert!(t.is_finite() && t > 0.0);
            // the exit point sits on the boundary
            let q = (p.0 + t * th.cos(), p.1 + t * th.sin());
            assert!(s.distance_to_boundary(q.0, q.1) < 1e-9);
        }
    }
}
