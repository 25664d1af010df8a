//! Axially symmetric domains Ω_D and their quadrature decomposition.
//!
//! A domain is determined by its profile D⁺ in the open upper half-plane:
//! the solid Ω_D ⊂ R^{m+1} is swept by embedding the conjugation-invariant
//! planar region into every slice plane C_I. The volume element factors as
//! dV = |x̲|^{m-1} dV_I dS(I) with dS the area element on the half sphere
//! S⁺ of slice directions, so
//!
//!   vol(Ω_D) = ω_{m-1} ∫_{D⁺} v^{m-1} du dv.
//!
//! An [`AxialDomain`] carries the three rules every operator consumes: the
//! planar slice rule, the boundary rule with outward normals, and the
//! sphere rule.

mod boundary;
mod profile;
mod slice_quad;
mod sphere;

pub use boundary::BoundaryQuadrature;
pub use profile::ProfileRegion;
pub use slice_quad::{PatchInfo, SliceQuadrature};
pub use sphere::SphereQuadrature;

use crate::clifford::{Multivector, UnitVector};
use crate::quad::sphere_area;
use crate::Result;

/// Boundary nodes per unit of resolution; circles get a periodic midpoint
/// rule which is spectrally accurate, so generous counts are cheap and keep
/// near-boundary kernel evaluations well conditioned.
const BOUNDARY_FACTOR: usize = 8;

#[derive(Clone, Debug)]
pub struct AxialDomain {
    profile: ProfileRegion,
    slice_quad: SliceQuadrature,
    boundary_quad: BoundaryQuadrature,
    sphere_quad: SphereQuadrature,
    dim: usize,
}

/// Builds all quadratures for the given profile, algebra dimension and
/// sphere order. Fails when the profile touches the real axis.
pub fn build_domain(profile: &ProfileRegion, m: usize, sphere_order: usize) -> Result<AxialDomain> {
    profile.validate()?;
    let slice_quad = SliceQuadrature::regular(profile);
    let boundary_quad = BoundaryQuadrature::build(profile, BOUNDARY_FACTOR * profile.resolution());
    let sphere_quad = SphereQuadrature::new(m, sphere_order)?;
    Ok(AxialDomain {
        profile: profile.clone(),
        slice_quad,
        boundary_quad,
        sphere_quad,
        dim: m,
    })
}

impl AxialDomain {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn profile(&self) -> &ProfileRegion {
        &self.profile
    }

    pub fn slice_quad(&self) -> &SliceQuadrature {
        &self.slice_quad
    }

    pub fn boundary_quad(&self) -> &BoundaryQuadrature {
        &self.boundary_quad
    }

    pub fn sphere_quad(&self) -> &SphereQuadrature {
        &self.sphere_quad
    }

    /// ω_{m-1} for this algebra dimension.
    pub fn omega(&self) -> f64 {
        sphere_area(self.dim - 1)
    }

    /// Replaces the slice rule by one adapted to a 1/r singularity at
    /// `center`; errors when the patch disk escapes the profile.
    pub fn with_singular_patch(&self, center: (f64, f64), radius: f64) -> Result<AxialDomain> {
        let slice_quad = SliceQuadrature::with_patch(&self.profile, center, radius)?;
        Ok(AxialDomain {
            profile: self.profile.clone(),
            slice_quad,
            boundary_quad: self.boundary_quad.clone(),
            sphere_quad: self.sphere_quad.clone(),
            dim: self.dim,
        })
    }

    /// Volume of the solid Ω_D ⊂ R^{m+1}.
    pub fn volume(&self) -> f64 {
        let m = self.dim as i32;
        self.omega() * self.slice_quad.integrate_scalar(|_, v| v.powi(m - 1))
    }

    /// Default patch radius at a point: a few node spacings, capped by the
    /// boundary clearance.
    pub fn patch_radius_at(&self, center: (f64, f64)) -> f64 {
        let spacing = self.slice_quad.node_spacing();
        let clearance = self.profile.distance_to_boundary(center.0, center.1);
        (3.0 * spacing).min(0.5 * clearance)
    }
}

/// Smooth Cl_m-valued field on the slice chart, with analytic partials.
#[derive(Clone)]
pub struct PlaneField {
    pub value: std::sync::Arc<dyn Fn(f64, f64) -> Multivector + Send + Sync>,
    pub du: std::sync::Arc<dyn Fn(f64, f64) -> Multivector + Send + Sync>,
    pub dv: std::sync::Arc<dyn Fn(f64, f64) -> Multivector + Send + Sync>,
}

impl PlaneField {
    pub fn scalar(
        m: usize,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + Copy + 'static,
        fu: impl Fn(f64, f64) -> f64 + Send + Sync + Copy + 'static,
        fv: impl Fn(f64, f64) -> f64 + Send + Sync + Copy + 'static,
    ) -> PlaneField {
        PlaneField {
            value: std::sync::Arc::new(move |u, v| Multivector::scalar(m, f(u, v))),
            du: std::sync::Arc::new(move |u, v| Multivector::scalar(m, fu(u, v))),
            dv: std::sync::Arc::new(move |u, v| Multivector::scalar(m, fv(u, v))),
        }
    }
}

/// Residual of the planar Gauss theorem on the profile, a pure quadrature
/// self-test. With ∂ = ∂_u - I ∂_v acting from the matching side and the
/// conjugate line element dx̄ = (t_u - I t_v) dσ along the counterclockwise
/// boundary,
///
///   ∫_{D⁺} (f ∂) g + f (∂ g) dA  =  ∮_{∂D⁺} f · I dx̄ · g.
///
/// Returns |volume side - boundary side| where the slice plane is C_I for
/// the reference direction I = e_m.
pub fn gauss_residual(domain: &AxialDomain, f: &PlaneField, g: &PlaneField) -> f64 {
    let m = domain.dim;
    let i_mv = UnitVector::axis(m, m).to_multivector();

    let mut volume = Multivector::zero(m);
    for (&(u, v), &w) in domain
        .slice_quad
        .nodes()
        .iter()
        .zip(domain.slice_quad.weights())
    {
        let fval = (f.value)(u, v);
        let fu = (f.du)(u, v);
        let fv = (f.dv)(u, v);
        let gval = (g.value)(u, v);
        let gu = (g.du)(u, v);
        let gv = (g.dv)(u, v);
        // (f ∂) g: (∂_u f - (∂_v f) I) g, with I on the right of f's factor
        let f_d = &fu - &(&fv * &i_mv);
        // f (∂ g): f (∂_u g - I ∂_v g)
        let d_g = &gu - &(&i_mv * &gv);
        let term = &(&f_d * &gval) + &(&fval * &d_g);
        volume.axpy(w, &term);
    }

    let mut boundary = Multivector::zero(m);
    let bq = &domain.boundary_quad;
    for k in 0..bq.len() {
        let (u, v) = bq.nodes()[k];
        let (tu, tv) = bq.tangents()[k];
        let w = bq.weights()[k];
        // I · (t_u - I t_v) = t_v + t_u I
        let dir = &Multivector::scalar(m, tv) + &i_mv.scale(tu);
        let term = &(&(f.value)(u, v) * &dir) * &(g.value)(u, v);
        boundary.axpy(w, &term);
    }

    (&volume - &boundary).norm()
}
