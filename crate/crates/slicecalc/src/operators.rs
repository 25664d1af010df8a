//! The singular integral operators and the residual verifiers for the
//! identities they satisfy.
//!
//! With K(q,x) = 2 S⁻¹(q,x) / (ω_{m-1} |x̲|^{m-1}) and n the outward unit
//! normal, the operators are
//!
//!   T_{Ω_D} f(q) = -(1/2π) ∫_{Ω_D} K(q,x) f(x) dV(x)          (Teodorescu)
//!   F_{∂Ω_D} f(q) = (1/2π) ∫_{∂Ω_D} K(q,x) n(x) f(x) dσ(x)    (Cauchy)
//!   S_{∂Ω_D} f(q) = p.v. (1/2π) ∫_{∂Ω_D} K(q,x) n(x) f(x) dσ  (Plemelj)
//!
//! All three reduce to slice integrals through dV = |x̲|^{m-1} dV_I dS(I)
//! and dσ = |x̲|^{m-1} dσ_I dS(I):
//!
//!   T f(q) = (2/ω) ∫_{S⁺} T_{Ω_I} f(q) dS(I),
//!   T_{Ω_I} f(q) = -(1/2π) ∫_{Ω_I} S⁻¹(q,x) f(x) dV_I(x),
//!   F f(q) = (1/(πω)) ∫_{S⁺} ∫_{∂Ω_I} S⁻¹(q,x) n(x) f(x) dσ_I dS(I).
//!
//! Each slice region Ω_I consists of the profile and its mirror image; here
//! the mirrored half is folded back onto the profile chart by the even-odd
//! stem symmetry, so both in-plane kernel singularities q_{±I} land on the
//! single profile point (u_q, v_q). On a fixed slice the kernel splits as
//! α (x-q_I)^{-1} + β (x-q_{-I})^{-1}, whose complex components do not
//! depend on I at all; the node sums are therefore accumulated once per q
//! and recombined per sphere direction with the α/β pair, which keeps the
//! sphere average cheap.
//!
//! Interior evaluations of T replace the slice rule by a polar rule around
//! the singular profile point (see geometry); T needs no principal value
//! because the kernel is locally integrable. The boundary operator S does:
//! it is regularized by subtracting the plane Cauchy models with their
//! exact principal values (half-residue π per curve) and integrating the
//! bounded remainder.
//!
//! Evaluations are pure; per-probe work items are independent and safe to
//! run concurrently.

use num_complex::Complex64;

use crate::clifford::{Multivector, Paravector, UnitVector};
use crate::error::Error;
use crate::geometry::{AxialDomain, SliceQuadrature};
use crate::kernels::{alpha_beta, cauchy_kernel_derivative, AlphaBeta};
use crate::report::ResidualReport;
use crate::slicefn::{GConfig, SliceFunction};
use crate::Result;

/// Finite-difference step for the exterior monogenicity check; the
/// integrand is smooth there, so the step is decoupled from node spacing.
const EXTERIOR_FD_STEP: f64 = 5e-4;

/// Stem pairs (F1, F2) tabulated at the nodes of a domain's slice rule.
#[derive(Clone, Debug)]
pub struct TabulatedField {
    f1: Vec<Multivector>,
    f2: Vec<Multivector>,
}

impl TabulatedField {
    pub fn from_values(f1: Vec<Multivector>, f2: Vec<Multivector>) -> Result<TabulatedField> {
        if f1.len() != f2.len() || f1.is_empty() {
            return Err(Error::InvalidArgument(
                "tabulated field needs equal-length nonempty component lists".into(),
            ));
        }
        Ok(TabulatedField { f1, f2 })
    }

    /// Sample a slice function at the domain's slice nodes.
    pub fn sample(domain: &AxialDomain, f: &SliceFunction) -> Result<TabulatedField> {
        let mut f1 = Vec::with_capacity(domain.slice_quad().len());
        let mut f2 = Vec::with_capacity(domain.slice_quad().len());
        for &(u, v) in domain.slice_quad().nodes() {
            let (a, b) = f.stem_pair(u, v)?;
            f1.push(a);
            f2.push(b);
        }
        Ok(TabulatedField { f1, f2 })
    }

    pub fn len(&self) -> usize {
        self.f1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f1.is_empty()
    }

    /// Stem pair at a node index.
    pub fn pair(&self, k: usize) -> Option<(&Multivector, &Multivector)> {
        Some((self.f1.get(k)?, self.f2.get(k)?))
    }
}

/// Volume operator input: an analytic stem or values tabulated on the
/// domain nodes. Tabulated inputs are integrated with the domain's own rule
/// (no singular refit is possible for them), which is exact for the
/// structural identities and first-order accurate pointwise near the
/// kernel singularity.
#[derive(Clone, Copy)]
pub enum FieldSample<'a> {
    Slice(&'a SliceFunction),
    Tabulated(&'a TabulatedField),
}

/// Stem pairs tabulated at boundary nodes.
#[derive(Clone, Debug)]
pub struct BoundaryTrace {
    f1: Vec<Multivector>,
    f2: Vec<Multivector>,
}

impl BoundaryTrace {
    pub fn from_values(f1: Vec<Multivector>, f2: Vec<Multivector>) -> Result<BoundaryTrace> {
        if f1.len() != f2.len() || f1.is_empty() {
            return Err(Error::InvalidArgument(
                "boundary trace needs equal-length nonempty component lists".into(),
            ));
        }
        Ok(BoundaryTrace { f1, f2 })
    }

    pub fn sample(domain: &AxialDomain, f: &SliceFunction) -> Result<BoundaryTrace> {
        let bq = domain.boundary_quad();
        let mut f1 = Vec::with_capacity(bq.len());
        let mut f2 = Vec::with_capacity(bq.len());
        for &(u, v) in bq.nodes() {
            let (a, b) = f.stem_pair(u, v)?;
            f1.push(a);
            f2.push(b);
        }
        Ok(BoundaryTrace { f1, f2 })
    }

    pub fn len(&self) -> usize {
        self.f1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f1.is_empty()
    }

    fn pair(&self, k: usize) -> (&Multivector, &Multivector) {
        (&self.f1[k], &self.f2[k])
    }
}

/// Boundary operator input.
#[derive(Clone, Copy)]
pub enum BoundarySample<'a> {
    Slice(&'a SliceFunction),
    Trace(&'a BoundaryTrace),
}

impl<'a> BoundarySample<'a> {
    fn pair_at(&self, domain: &AxialDomain, k: usize) -> Result<(Multivector, Multivector)> {
        match self {
            BoundarySample::Slice(f) => {
                let (u, v) = domain.boundary_quad().nodes()[k];
                f.stem_pair(u, v)
            }
            BoundarySample::Trace(t) => {
                if t.len() != domain.boundary_quad().len() {
                    return Err(Error::InvalidArgument(format!(
                        "trace length {} does not match the boundary rule ({} nodes)",
                        t.len(),
                        domain.boundary_quad().len()
                    )));
                }
                let (a, b) = t.pair(k);
                Ok((a.clone(), b.clone()))
            }
        }
    }
}

/// Boundary-operator value with a near-singularity advisory.
#[derive(Clone, Debug)]
pub struct BoundaryValue {
    pub value: Multivector,
    /// set when q lies within two boundary-node spacings of the boundary
    pub near_singular: bool,
}

/// Accumulators of the I-independent node sums: the α-branch pair
/// (p1, p2) and the β-branch pair (m1, m2), with the final value
/// α (p1 + I p2) + β (m1 + I m2).
struct PlaneAccum {
    p1: Multivector,
    p2: Multivector,
    m1: Multivector,
    m2: Multivector,
}

impl PlaneAccum {
    fn new(m: usize) -> PlaneAccum {
        PlaneAccum {
            p1: Multivector::zero(m),
            p2: Multivector::zero(m),
            m1: Multivector::zero(m),
            m2: Multivector::zero(m),
        }
    }

    /// Add w * k_plus (f1 + I f2) to the α branch and w * k_minus (...) to
    /// the β branch, where the complex factors encode the in-plane kernel.
    fn add(
        &mut self,
        w: f64,
        k_plus: Complex64,
        k_minus: Complex64,
        f1: &Multivector,
        f2: &Multivector,
    ) {
        self.p1.axpy(w * k_plus.re, f1);
        self.p1.axpy(-w * k_plus.im, f2);
        self.p2.axpy(w * k_plus.re, f2);
        self.p2.axpy(w * k_plus.im, f1);
        self.m1.axpy(w * k_minus.re, f1);
        self.m1.axpy(-w * k_minus.im, f2);
        self.m2.axpy(w * k_minus.re, f2);
        self.m2.axpy(w * k_minus.im, f1);
    }

    /// Like `add` but with distinct stem pairs for the two branches (the
    /// Plemelj regularization subtracts branch-specific constants).
    #[allow(clippy::too_many_arguments)]
    fn add_split(
        &mut self,
        w: f64,
        k_plus: Complex64,
        k_minus: Complex64,
        f1_plus: &Multivector,
        f2_plus: &Multivector,
        f1_minus: &Multivector,
        f2_minus: &Multivector,
    ) {
        self.p1.axpy(w * k_plus.re, f1_plus);
        self.p1.axpy(-w * k_plus.im, f2_plus);
        self.p2.axpy(w * k_plus.re, f2_plus);
        self.p2.axpy(w * k_plus.im, f1_plus);
        self.m1.axpy(w * k_minus.re, f1_minus);
        self.m1.axpy(-w * k_minus.im, f2_minus);
        self.m2.axpy(w * k_minus.re, f2_minus);
        self.m2.axpy(w * k_minus.im, f1_minus);
    }

    fn combine(&self, ab: &AlphaBeta, i: &UnitVector) -> Multivector {
        let i_mv = i.to_multivector();
        let plus = &self.p1 + &(&i_mv * &self.p2);
        let minus = &self.m1 + &(&i_mv * &self.m2);
        &(&ab.alpha * &plus) + &(&ab.beta * &minus)
    }
}

fn require_off_axis(q: &Paravector) -> Result<(f64, f64, UnitVector)> {
    let (u, v, dir) = q.slice_coordinates();
    match dir {
        Some(i) => Ok((u, v, i)),
        None => Err(Error::RealAxis(format!("q = {q}"))),
    }
}

fn zinv(du: f64, dv: f64) -> Complex64 {
    let r2 = du * du + dv * dv;
    Complex64::new(du / r2, -dv / r2)
}

/// Slice rule for evaluating T at profile point (u_q, v_q): a singular
/// patch is fitted when the point projects inside the profile and the
/// input is analytic; tabulated inputs keep the domain rule.
fn volume_rule<'a>(
    domain: &'a AxialDomain,
    f: &FieldSample,
    u_q: f64,
    v_q: f64,
) -> Result<std::borrow::Cow<'a, SliceQuadrature>> {
    use std::borrow::Cow;
    if matches!(f, FieldSample::Tabulated(_)) {
        return Ok(Cow::Borrowed(domain.slice_quad()));
    }
    if !domain.profile().contains(u_q, v_q) {
        return Ok(Cow::Borrowed(domain.slice_quad()));
    }
    if let Some(p) = domain.slice_quad().patch() {
        if (p.center.0 - u_q).abs() < 1e-12 && (p.center.1 - v_q).abs() < 1e-12 {
            return Ok(Cow::Borrowed(domain.slice_quad()));
        }
    }
    let radius = domain.patch_radius_at((u_q, v_q));
    if radius <= 0.0 {
        return Ok(Cow::Borrowed(domain.slice_quad()));
    }
    Ok(Cow::Owned(SliceQuadrature::with_patch(
        domain.profile(),
        (u_q, v_q),
        radius,
    )?))
}

/// Node sums for the volume operators at profile point (u_q, v_q); the
/// mirrored half of the slice region is folded back through the even-odd
/// symmetry (F2 flips sign, v flips sign).
fn volume_accum(
    rule: &SliceQuadrature,
    m: usize,
    f: &FieldSample,
    u_q: f64,
    v_q: f64,
) -> Result<PlaneAccum> {
    let mut acc = PlaneAccum::new(m);
    let mut add_pair = |u: f64, v: f64, w: f64, f1: &Multivector, f2: &Multivector| {
        acc.add(w, zinv(u - u_q, v - v_q), zinv(u - u_q, v + v_q), f1, f2);
        let f2m = f2.scale(-1.0);
        acc.add(
            w,
            zinv(u - u_q, -v - v_q),
            zinv(u - u_q, -v + v_q),
            f1,
            &f2m,
        );
    };
    match f {
        FieldSample::Slice(sf) => {
            for (&(u, v), &w) in rule.nodes().iter().zip(rule.weights()) {
                let (f1, f2) = sf.stem_pair(u, v)?;
                add_pair(u, v, w, &f1, &f2);
            }
        }
        FieldSample::Tabulated(t) => {
            if t.len() != rule.len() {
                return Err(Error::InvalidArgument(format!(
                    "tabulated field length {} does not match the slice rule ({} nodes)",
                    t.len(),
                    rule.len()
                )));
            }
            for (k, (&(u, v), &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
                add_pair(u, v, w, &t.f1[k], &t.f2[k]);
            }
        }
    }
    Ok(acc)
}

/// Slice Teodorescu transform T_{Ω_I} f(q) on the plane C_I.
pub fn teodorescu_slice(
    f: &FieldSample,
    domain: &AxialDomain,
    i: &UnitVector,
    q: &Paravector,
) -> Result<Multivector> {
    let (u_q, v_q, i_q) = require_off_axis(q)?;
    let rule = volume_rule(domain, f, u_q, v_q)?;
    let acc = volume_accum(&rule, domain.dim(), f, u_q, v_q)?;
    let ab = alpha_beta(&i_q, i);
    Ok(acc
        .combine(&ab, i)
        .scale(-1.0 / (2.0 * std::f64::consts::PI)))
}

/// Full Teodorescu transform: the half-sphere average of the slice
/// transforms, T f(q) = (2/ω) ∫_{S⁺} T_{Ω_I} f(q) dS(I).
pub fn teodorescu(f: &FieldSample, domain: &AxialDomain, q: &Paravector) -> Result<Multivector> {
    let (u_q, v_q, i_q) = require_off_axis(q)?;
    let rule = volume_rule(domain, f, u_q, v_q)?;
    let acc = volume_accum(&rule, domain.dim(), f, u_q, v_q)?;
    let m = domain.dim();
    let mut out = Multivector::zero(m);
    let sq = domain.sphere_quad();
    for (i, &w) in sq.nodes().iter().zip(sq.weights()) {
        let ab = alpha_beta(&i_q, i);
        out.axpy(w, &acc.combine(&ab, i));
    }
    Ok(out.scale(-1.0 / (2.0 * std::f64::consts::PI) * 2.0 / domain.omega()))
}

/// Node sums for the boundary operators at (u_q, v_q). The complex factor
/// premultiplies the in-plane normal; the mirrored curve contributes with
/// flipped v, flipped normal v-component and flipped F2.
fn boundary_accum(
    domain: &AxialDomain,
    f: &BoundarySample,
    u_q: f64,
    v_q: f64,
) -> Result<PlaneAccum> {
    let m = domain.dim();
    let bq = domain.boundary_quad();
    let mut acc = PlaneAccum::new(m);
    for k in 0..bq.len() {
        let (u, v) = bq.nodes()[k];
        let (nu, nv) = bq.normals()[k];
        let w = bq.weights()[k];
        let (f1, f2) = f.pair_at(domain, k)?;
        let n = Complex64::new(nu, nv);
        acc.add(
            w,
            zinv(u - u_q, v - v_q) * n,
            zinv(u - u_q, v + v_q) * n,
            &f1,
            &f2,
        );
        let nm = Complex64::new(nu, -nv);
        let f2m = f2.scale(-1.0);
        acc.add(
            w,
            zinv(u - u_q, -v - v_q) * nm,
            zinv(u - u_q, -v + v_q) * nm,
            &f1,
            &f2m,
        );
    }
    Ok(acc)
}

/// Boundary Cauchy operator F_{∂Ω_D} f(q) for q strictly inside or outside
/// the closure. A near-singular advisory is attached when q comes within
/// two boundary-node spacings of the boundary.
pub fn cauchy_boundary(
    f: &BoundarySample,
    domain: &AxialDomain,
    q: &Paravector,
) -> Result<BoundaryValue> {
    let (u_q, v_q, i_q) = require_off_axis(q)?;
    let acc = boundary_accum(domain, f, u_q, v_q)?;
    let m = domain.dim();
    let mut out = Multivector::zero(m);
    let sq = domain.sphere_quad();
    for (i, &w) in sq.nodes().iter().zip(sq.weights()) {
        let ab = alpha_beta(&i_q, i);
        out.axpy(w, &acc.combine(&ab, i));
    }
    let value = out.scale(1.0 / (std::f64::consts::PI * domain.omega()));
    let spacing = domain.boundary_quad().node_spacing();
    let near_singular = domain.boundary_quad().distance_to(u_q, v_q) < 2.0 * spacing;
    Ok(BoundaryValue {
        value,
        near_singular,
    })
}

/// Plemelj principal-value operator S_{∂Ω_D} f(q) for q on the discretized
/// boundary.
///
/// The integrand is regularized by subtracting the plane Cauchy models
/// α (x - q_I)^{-1} n f(q_I) and β (x - q_{-I})^{-1} n f(q_{-I}), whose
/// principal values over the closed slice contours are exactly
/// π (α f(q_I) + β f(q_{-I})) — a half residue on the contour carrying each
/// singular point, zero on the other. The regularized remainder extends
/// continuously through the singular node, where it is evaluated by
/// averaging the two neighbor nodes.
pub fn plemelj_singular(
    f: &BoundarySample,
    domain: &AxialDomain,
    q_boundary: &Paravector,
) -> Result<Multivector> {
    let (u_q, v_q, i_q) = require_off_axis(q_boundary)?;
    let bq = domain.boundary_quad();
    let k_star = bq.nearest_node(u_q, v_q);
    let (su, sv) = bq.nodes()[k_star];
    let scale = 1.0 + q_boundary.norm();
    if ((su - u_q).powi(2) + (sv - v_q).powi(2)).sqrt() > 1e-10 * scale {
        return Err(Error::InvalidArgument(format!(
            "q = {q_boundary} is not on the discretized boundary \
             (nearest node at ({su}, {sv}))"
        )));
    }
    let m = domain.dim();
    let (f1s, f2s) = f.pair_at(domain, k_star)?;

    let n_nodes = bq.len();
    let neighbor = |k: usize, step: isize| -> usize {
        (k as isize + step).rem_euclid(n_nodes as isize) as usize
    };
    let mut acc = PlaneAccum::new(m);
    {
        let mut add_node = |k: usize, w_override: Option<f64>| -> Result<()> {
            let (u, v) = bq.nodes()[k];
            let (nu, nv) = bq.normals()[k];
            let w = w_override.unwrap_or(bq.weights()[k]);
            let (f1, f2) = f.pair_at(domain, k)?;
            let d1 = &f1 - &f1s;
            // α branch subtracts f(q_I) = F1* + I F2*, β branch f(q_{-I})
            let d2_plus = &f2 - &f2s;
            let d2_minus = &f2 + &f2s;
            let n = Complex64::new(nu, nv);
            acc.add_split(
                w,
                zinv(u - u_q, v - v_q) * n,
                zinv(u - u_q, v + v_q) * n,
                &d1,
                &d2_plus,
                &d1,
                &d2_minus,
            );
            // mirror curve: v, normal v-component and F2 flip
            let nm = Complex64::new(nu, -nv);
            let f2m = f2.scale(-1.0);
            let d2m_plus = &f2m - &f2s;
            let d2m_minus = &f2m + &f2s;
            acc.add_split(
                w,
                zinv(u - u_q, -v - v_q) * nm,
                zinv(u - u_q, -v + v_q) * nm,
                &d1,
                &d2m_plus,
                &d1,
                &d2m_minus,
            );
            Ok(())
        };
        for k in 0..n_nodes {
            if k == k_star {
                continue;
            }
            add_node(k, None)?;
        }
        let w_center = bq.weights()[k_star];
        add_node(neighbor(k_star, -1), Some(0.5 * w_center))?;
        add_node(neighbor(k_star, 1), Some(0.5 * w_center))?;
    }

    // sphere average plus the exact model principal values
    let sq = domain.sphere_quad();
    let mut out = Multivector::zero(m);
    for (i, &w) in sq.nodes().iter().zip(sq.weights()) {
        let ab = alpha_beta(&i_q, i);
        let i_mv = i.to_multivector();
        let f_i = &f1s + &(&i_mv * &f2s);
        let f_mi = &f1s - &(&i_mv * &f2s);
        let mut per_slice = acc.combine(&ab, i);
        per_slice.axpy(std::f64::consts::PI, &(&ab.alpha * &f_i));
        per_slice.axpy(std::f64::consts::PI, &(&ab.beta * &f_mi));
        out.axpy(w, &per_slice);
    }
    Ok(out.scale(1.0 / (std::f64::consts::PI * domain.omega())))
}

/// Derivative Cauchy operator: reconstructs ∇^l f(q) for slice monogenic f
/// from the boundary integral with the derivative kernel K_l (|l| <= 2).
pub fn derivative_cauchy(
    f: &BoundarySample,
    domain: &AxialDomain,
    q: &Paravector,
    l: &[usize],
) -> Result<Multivector> {
    let m = domain.dim();
    if l.len() != m + 1 {
        return Err(Error::InvalidArgument(format!(
            "multi-index length {} does not match m + 1 = {}",
            l.len(),
            m + 1
        )));
    }
    let order: usize = l.iter().sum();
    if order > 2 {
        return Err(Error::UnsupportedOrder(order));
    }
    require_off_axis(q)?;
    let dirs: Vec<usize> = l
        .iter()
        .enumerate()
        .flat_map(|(coord, &c)| std::iter::repeat_n(coord, c))
        .collect();

    let bq = domain.boundary_quad();
    let sq = domain.sphere_quad();
    let mut out = Multivector::zero(m);
    for (i, &w_i) in sq.nodes().iter().zip(sq.weights()) {
        let i_mv = i.to_multivector();
        let mut slice_sum = Multivector::zero(m);
        for k in 0..bq.len() {
            let (u, v) = bq.nodes()[k];
            let (nu, nv) = bq.normals()[k];
            let w = bq.weights()[k];
            let (f1, f2) = f.pair_at(domain, k)?;
            for (vv, nvv, upper) in [(v, nv, true), (-v, -nv, false)] {
                let x = Paravector::from_slice_coords(u, vv, i);
                let ds = match dirs.len() {
                    0 => crate::kernels::cauchy_kernel(q, &x)?,
                    1 => cauchy_kernel_derivative(q, &x, dirs[0])?,
                    _ => {
                        let h = 1e-5 * (1.0 + q.norm());
                        let shift = |s: f64| -> Result<Multivector> {
                            let mut qs = q.clone();
                            if dirs[1] == 0 {
                                qs.scalar += s;
                            } else {
                                qs.vector[dirs[1] - 1] += s;
                            }
                            cauchy_kernel_derivative(&qs, &x, dirs[0])
                        };
                        (&shift(h)? - &shift(-h)?).scale(0.5 / h)
                    }
                };
                let n_mv = {
                    let mut n = Multivector::scalar(m, nu);
                    n.axpy(nvv, &i_mv);
                    n
                };
                let fx = if upper {
                    &f1 + &(&i_mv * &f2)
                } else {
                    &f1 - &(&i_mv * &f2)
                };
                slice_sum.axpy(w, &(&(&ds * &n_mv) * &fx));
            }
        }
        out.axpy(w_i, &slice_sum);
    }
    Ok(out.scale(1.0 / (std::f64::consts::PI * domain.omega())))
}

/// Central-difference G of a numerically defined field, moving q along its
/// own slice: G g = (∂_u + I_q ∂_v) of the restriction to C_{I_q}. Exact in
/// structure for fields that are slice functions of q, which both T and F
/// are by construction.
pub fn g_of_field(
    eval: &mut dyn FnMut(&Paravector) -> Result<Multivector>,
    q: &Paravector,
    h: f64,
) -> Result<Multivector> {
    let (u, v, i_q) = require_off_axis(q)?;
    if v - h <= 0.0 {
        return Err(Error::RealAxis(format!(
            "finite-difference stencil at {q} would cross the real axis"
        )));
    }
    let mut at = |uu: f64, vv: f64| -> Result<Multivector> {
        eval(&Paravector::from_slice_coords(uu, vv, &i_q))
    };
    let du = (&at(u + h, v)? - &at(u - h, v)?).scale(0.5 / h);
    let dv = (&at(u, v + h)? - &at(u, v - h)?).scale(0.5 / h);
    Ok(&du + &(&i_q.to_multivector() * &dv))
}

fn probe_coords(q: &Paravector) -> Vec<f64> {
    let mut c = vec![q.scalar];
    c.extend_from_slice(&q.vector);
    c
}

/// Residual of the Borel-Pompeiu identity F f + T(Gf) = f at the probes.
pub fn borel_pompeiu_residual(
    f: &SliceFunction,
    domain: &AxialDomain,
    probes: &[Paravector],
    cfg: &GConfig,
) -> Result<ResidualReport> {
    let gf = f.g_stem(cfg);
    let gf_sample = FieldSample::Slice(&gf);
    let fb = BoundarySample::Slice(f);
    let mut residuals = Vec::new();
    let mut coords = Vec::new();
    for q in probes {
        let ff = cauchy_boundary(&fb, domain, q)?.value;
        let tgf = teodorescu(&gf_sample, domain, q)?;
        let fq = f.evaluate(q)?;
        residuals.push((&(&ff + &tgf) - &fq).norm());
        coords.push(probe_coords(q));
    }
    Ok(ResidualReport::new(
        "borel-pompeiu",
        coords,
        residuals,
        domain.profile().resolution(),
    ))
}

/// Residuals of the right-inverse identity G T f = f (volume form) and of
/// the per-slice form G T_{Ω_I} f = α f(q_I) + β f(q_{-I}) (worst sphere
/// node per probe). G is taken by central differences in slice coordinates
/// with step tied to the node spacing.
pub fn right_inverse_residual(
    f: &SliceFunction,
    domain: &AxialDomain,
    probes: &[Paravector],
) -> Result<(ResidualReport, ResidualReport)> {
    let spacing = domain.slice_quad().node_spacing();
    let h = spacing / 4.0;
    let sample = FieldSample::Slice(f);
    let mut vol_res = Vec::new();
    let mut slice_res = Vec::new();
    let mut coords = Vec::new();
    let mut flagged = Vec::new();
    for q in probes {
        let (u, v, i_q) = require_off_axis(q)?;
        if domain.profile().distance_to_boundary(u, v) < 3.0 * h {
            flagged.push(format!(
                "probe {q} skipped: too close to the boundary for the FD stencil"
            ));
            continue;
        }
        let gtf = g_of_field(&mut |p: &Paravector| teodorescu(&sample, domain, p), q, h)?;
        let fq = f.evaluate(q)?;
        vol_res.push((&gtf - &fq).norm());

        let mut worst = 0.0f64;
        let (f1, f2) = f.stem_pair(u, v)?;
        for i in domain.sphere_quad().nodes() {
            let gts = g_of_field(
                &mut |p: &Paravector| teodorescu_slice(&sample, domain, i, p),
                q,
                h,
            )?;
            let ab = alpha_beta(&i_q, i);
            let i_mv = i.to_multivector();
            let f_i = &f1 + &(&i_mv * &f2);
            let f_mi = &f1 - &(&i_mv * &f2);
            let target = &(&ab.alpha * &f_i) + &(&ab.beta * &f_mi);
            worst = worst.max((&gts - &target).norm());
        }
        slice_res.push(worst);
        coords.push(probe_coords(q));
    }
    if vol_res.is_empty() {
        return Err(Error::InvalidArgument(
            "all probes were skipped by the FD clearance check".into(),
        ));
    }
    let resolution = domain.profile().resolution();
    Ok((
        ResidualReport::new("right-inverse", coords.clone(), vol_res, resolution)
            .with_flagged(flagged.clone()),
        ResidualReport::new("right-inverse-slice", coords, slice_res, resolution)
            .with_flagged(flagged),
    ))
}

/// |G T f| at exterior probes; vanishes for any integrable f because the
/// kernel is slice monogenic in q away from the closure.
pub fn exterior_monogenicity_check(
    f: &FieldSample,
    domain: &AxialDomain,
    exterior_probes: &[Paravector],
) -> Result<ResidualReport> {
    let mut residuals = Vec::new();
    let mut coords = Vec::new();
    let mut flagged = Vec::new();
    for q in exterior_probes {
        let (u, v, dir) = q.slice_coordinates();
        if dir.is_none() {
            flagged.push(format!("probe {q} skipped: on the real axis"));
            continue;
        }
        if domain.profile().contains(u, v) {
            return Err(Error::InvalidArgument(format!(
                "probe {q} is not exterior to the domain"
            )));
        }
        let h = EXTERIOR_FD_STEP * (1.0 + q.norm());
        let gtf = g_of_field(&mut |p: &Paravector| teodorescu(f, domain, p), q, h)?;
        residuals.push(gtf.norm());
        coords.push(probe_coords(q));
    }
    if residuals.is_empty() {
        return Err(Error::InvalidArgument("no usable exterior probes".into()));
    }
    Ok(ResidualReport::new(
        "exterior-monogenicity",
        coords,
        residuals,
        domain.profile().resolution(),
    )
    .with_flagged(flagged))
}

/// Richardson extrapolation of the t -> 0 limit from values at t0 / 2^k,
/// assuming an error expansion in integer powers of t. Returns the best
/// diagonal entry, its last-correction size and a convergence verdict.
fn richardson_limit(values: &[Multivector]) -> (Multivector, f64, bool) {
    let n = values.len();
    debug_assert!(n >= 3);
    let mut table: Vec<Vec<Multivector>> = vec![values.to_vec()];
    for j in 1..n {
        let prev = &table[j - 1];
        let factor = 2.0f64.powi(j as i32) - 1.0;
        let mut row = Vec::new();
        for k in 0..prev.len() - 1 {
            let diff = (&prev[k + 1] - &prev[k]).scale(1.0 / factor);
            row.push(&prev[k + 1] + &diff);
        }
        table.push(row);
    }
    let mut best = table[1][0].clone();
    let mut best_err = (&table[1][0] - &table[0][0]).norm();
    for j in 2..n {
        let err = (&table[j][0] - &table[j - 1][0]).norm();
        if err <= best_err {
            best = table[j][0].clone();
            best_err = err;
        }
    }
    (best, best_err, best_err.is_finite())
}

/// Plemelj jump verification at boundary probes: the one-sided limits of
/// F f along the normal satisfy interior = f/2 + S f, exterior = -f/2 + S f,
/// and their difference is f. Each probe must sit on a boundary node.
pub fn plemelj_jump_check(
    f: &SliceFunction,
    domain: &AxialDomain,
    boundary_probes: &[Paravector],
) -> Result<ResidualReport> {
    let fb = BoundarySample::Slice(f);
    let t0 = 0.2 * domain.profile().inradius();
    let levels = 6;
    let mut residuals = Vec::new();
    let mut coords = Vec::new();
    let mut flagged = Vec::new();
    for q in boundary_probes {
        let (u, v, i_q) = require_off_axis(q)?;
        let k = domain.boundary_quad().nearest_node(u, v);
        let (nu, nv) = domain.boundary_quad().normals()[k];
        let s_val = plemelj_singular(&fb, domain, q)?;
        let f_val = f.evaluate(q)?;

        let side = |sign: f64| -> Result<(Multivector, bool)> {
            let mut vals = Vec::new();
            for kk in 0..levels {
                let t = sign * t0 / 2.0f64.powi(kk);
                let p = Paravector::from_slice_coords(u + t * nu, v + t * nv, &i_q);
                vals.push(cauchy_boundary(&fb, domain, &p)?.value);
            }
            let (limit, err, ok) = richardson_limit(&vals);
            Ok((limit, ok && err < 0.1 * (1.0 + f_val.norm())))
        };
        let (f_ext, ok_e) = side(1.0)?;
        let (f_int, ok_i) = side(-1.0)?;
        if !(ok_e && ok_i) {
            flagged.push(format!("probe {q}: extrapolation did not converge"));
            continue;
        }
        let r_int = (&f_int - &(&s_val + &f_val.scale(0.5))).norm();
        let r_ext = (&f_ext - &(&s_val - &f_val.scale(0.5))).norm();
        let r_jump = (&(&f_int - &f_ext) - &f_val).norm();
        residuals.push(r_int.max(r_ext).max(r_jump));
        coords.push(probe_coords(q));
    }
    if residuals.is_empty() {
        return Err(Error::InvalidArgument(
            "no boundary probe produced a converged extrapolation".into(),
        ));
    }
    Ok(ResidualReport::new(
        "plemelj-jump",
        coords,
        residuals,
        domain.profile().resolution(),
    )
    .with_flagged(flagged))
}

/// Verdict of the boundary extension criterion.
pub struct ExtensionCheck {
    pub interior_extendable: bool,
    pub exterior_extendable: bool,
    pub interior_residual: f64,
    pub exterior_residual: f64,
}

/// Extension criterion: S g = g/2 characterizes boundary values of an
/// interior slice monogenic function, S g = -g/2 an exterior one. Residuals
/// are maxima over an evenly spaced subsample of boundary nodes.
pub fn extension_criterion_check(
    g: &BoundarySample,
    domain: &AxialDomain,
    probe_count: usize,
    tol: f64,
) -> Result<ExtensionCheck> {
    let bq = domain.boundary_quad();
    let step = (bq.len() / probe_count.max(1)).max(1);
    let m = domain.dim();
    let i_ref = UnitVector::axis(m, m);
    let mut r_int = 0.0f64;
    let mut r_ext = 0.0f64;
    for k in (0..bq.len()).step_by(step) {
        let (u, v) = bq.nodes()[k];
        let q = Paravector::from_slice_coords(u, v, &i_ref);
        let s_val = plemelj_singular(g, domain, &q)?;
        let (f1, f2) = g.pair_at(domain, k)?;
        let g_val = &f1 + &(&i_ref.to_multivector() * &f2);
        r_int = r_int.max((&s_val - &g_val.scale(0.5)).norm());
        r_ext = r_ext.max((&s_val + &g_val.scale(0.5)).norm());
    }
    Ok(ExtensionCheck {
        interior_extendable: r_int <= tol,
        exterior_extendable: r_ext <= tol,
        interior_residual: r_int,
        exterior_residual: r_ext,
    })
}

/// L^p norm over the solid domain: volume quadrature of |f|^p with the
/// |x̲|^{m-1} weight, both half-planes, and the half-sphere rule.
pub fn lp_norm(f: &FieldSample, domain: &AxialDomain, p: f64) -> Result<f64> {
    if p < 1.0 {
        return Err(Error::InvalidArgument(format!("p = {p} must be >= 1")));
    }
    let m = domain.dim();
    let rule = domain.slice_quad();
    let sq = domain.sphere_quad();
    let mut total = 0.0;
    for (idx, (&(u, v), &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let (f1, f2) = match f {
            FieldSample::Slice(sf) => sf.stem_pair(u, v)?,
            FieldSample::Tabulated(t) => {
                if t.len() != rule.len() {
                    return Err(Error::InvalidArgument(
                        "tabulated field does not match the slice rule".into(),
                    ));
                }
                (t.f1[idx].clone(), t.f2[idx].clone())
            }
        };
        let weight = w * v.powi(m as i32 - 1);
        for (i, &wi) in sq.nodes().iter().zip(sq.weights()) {
            let i_mv = i.to_multivector();
            let upper = &f1 + &(&i_mv * &f2);
            let lower = &f1 - &(&i_mv * &f2);
            total += weight * wi * (upper.norm().powf(p) + lower.norm().powf(p));
        }
    }
    Ok(total.powf(1.0 / p))
}

/// Ratios ||T f||_p / ||f||_p per trial.
#[derive(Clone, Debug)]
pub struct BoundednessReport {
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
}

/// Empirical L^p boundedness probe: max of ||T f||_p / ||f||_p over seeded
/// random polynomial stems (degree <= 5), with f = 1 as trial zero. The
/// norm of T f is measured on a fixed coarse stem grid so that the ratios
/// are comparable across resolutions. Rejects p <= max(m, 2), outside the
/// boundedness hypothesis.
pub fn boundedness_probe(
    domain: &AxialDomain,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<BoundednessReport> {
    use rand::Rng;
    use rand::SeedableRng;
    let m = domain.dim();
    if p <= (m as f64).max(2.0) {
        return Err(Error::HypothesisViolation(format!(
            "boundedness requires p > max(m, 2) = {}, got p = {p}",
            (m as f64).max(2.0)
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
    let norm_grid = crate::geometry::SliceQuadrature::regular(&domain.profile().with_resolution(6));
    let i_ref = UnitVector::axis(m, m);
    let sq = domain.sphere_quad();

    let mut ratios = Vec::new();
    for trial in 0..trials {
        let f = if trial == 0 {
            crate::slicefn::make_polynomial(&[Multivector::one(m)])
        } else {
            let coeffs: Vec<Multivector> = (0..6)
                .map(|_| {
                    let c: Vec<f64> = (0..1usize << m).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    Multivector::from_coeffs(m, c).expect("coefficient count matches")
                })
                .collect();
            crate::slicefn::make_polynomial(&coeffs)
        };
        let sample = FieldSample::Slice(&f);
        let f_norm = lp_norm(&sample, domain, p)?;
        // stem of T f from two evaluations per grid point (reference slice
        // and its mirror), then the weighted p-norm over the fixed grid
        let mut total = 0.0;
        for (&(u, v), &w) in norm_grid.nodes().iter().zip(norm_grid.weights()) {
            let g_plus = teodorescu(
                &sample,
                domain,
                &Paravector::from_slice_coords(u, v, &i_ref),
            )?;
            let g_minus = teodorescu(
                &sample,
                domain,
                &Paravector::from_slice_coords(u, -v, &i_ref),
            )?;
            let h1 = (&g_plus + &g_minus).scale(0.5);
            let h2 = &i_ref.to_multivector().scale(-0.5) * &(&g_plus - &g_minus);
            let weight = w * v.powi(m as i32 - 1);
            for (i, &wi) in sq.nodes().iter().zip(sq.weights()) {
                let i_mv = i.to_multivector();
                let upper = &h1 + &(&i_mv * &h2);
                let lower = &h1 - &(&i_mv * &h2);
                total += weight * wi * (upper.norm().powf(p) + lower.norm().powf(p));
            }
        }
        let t_norm = total.powf(1.0 / p);
        ratios.push(t_norm / f_norm);
    }
    let max_ratio = ratios.iter().copied().fold(0.0f64, f64::max);
    Ok(BoundednessReport { ratios, max_ratio })
}
