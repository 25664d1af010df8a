//! Stem functions, induced slice functions and the slice Cauchy-Riemann
//! operator G.
//!
//! A stem function is a pair F = F_1 + i F_2 of Cl_m-valued maps on a
//! conjugation-invariant planar region with the even-odd symmetry
//! F_1(u,-v) = F_1(u,v), F_2(u,-v) = -F_2(u,v). It induces a slice function
//! on R^{m+1} through f(u + I v) = F_1(u,v) + I F_2(u,v), and the
//! representation formula
//!
//!   f(x) = (1 - I_x I)/2 · f(u + I v) + (1 + I_x I)/2 · f(u - I v)
//!
//! holds for every I by construction.
//!
//! G = ∂_{x0} + (x̲/|x̲|²) Σ x_j ∂_{x_j} is applied in stem coordinates:
//! because I_x is homogeneous of degree 0 in x̲, on slice functions
//!
//!   G f = (∂_u F_1 - ∂_v F_2) + I_x (∂_v F_1 + ∂_u F_2),
//!
//! which vanishes exactly when the stem satisfies the Cauchy-Riemann system.
//! This avoids differentiating the direction field I_x numerically and is
//! exact on the class of functions the operators act on. Off the real axis
//! only: v = 0 points are rejected.
//!
//! Stems are user-supplied callables and must be re-entrant; everything here
//! is immutable after construction and safe to evaluate concurrently.
//!
//! Stems of class C^1 with pointwise-C^1 slice behavior are the only
//! representable inputs; slice-C^1 functions that are not pointwise C^1
//! exist but cannot be constructed from closures evaluated this way.

use std::sync::Arc;

use num_complex::Complex64;

use crate::clifford::{Multivector, Paravector, UnitVector};
use crate::error::Error;
use crate::Result;

/// Cl_m-valued map on the (u, v) half-plane chart.
pub type StemMap = Arc<dyn Fn(f64, f64) -> Multivector + Send + Sync>;

/// Analytic partial derivatives of the two stem components.
#[derive(Clone)]
pub struct StemPartials {
    pub f1_u: StemMap,
    pub f1_v: StemMap,
    pub f2_u: StemMap,
    pub f2_v: StemMap,
}

/// Rectangle of validity in the (u, v) plane, symmetric in v. The default is
/// the whole plane.
#[derive(Clone, Copy, Debug)]
pub struct Support {
    pub u_min: f64,
    pub u_max: f64,
    /// valid for |v| <= v_abs
    pub v_abs: f64,
}

impl Support {
    pub fn whole_plane() -> Self {
        Support {
            u_min: f64::NEG_INFINITY,
            u_max: f64::INFINITY,
            v_abs: f64::INFINITY,
        }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u_min && u <= self.u_max && v.abs() <= self.v_abs
    }
}

/// How G evaluates stem partials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GMode {
    /// Use analytic partials when the stem carries them, else fall back to
    /// central finite differences.
    Analytic,
    /// Force central finite differences.
    FiniteDifference,
}

/// Configuration for [`SliceFunction::apply_g`].
#[derive(Clone, Copy, Debug)]
pub struct GConfig {
    pub mode: GMode,
    /// Base step; the actual step is fd_step * max(1, |u|, |v|).
    pub fd_step: f64,
}

impl Default for GConfig {
    fn default() -> Self {
        GConfig {
            mode: GMode::Analytic,
            fd_step: 1e-5,
        }
    }
}

impl GConfig {
    pub fn finite_difference(step: f64) -> Self {
        assert!(step > 0.0, "fd_step must be positive");
        GConfig {
            mode: GMode::FiniteDifference,
            fd_step: step,
        }
    }
}

/// Stem function F_1 + i F_2 with optional analytic partials.
#[derive(Clone)]
pub struct StemFunction {
    dim: usize,
    f1: StemMap,
    f2: StemMap,
    partials: Option<StemPartials>,
    support: Support,
}

impl StemFunction {
    pub fn new(dim: usize, f1: StemMap, f2: StemMap) -> Self {
        StemFunction {
            dim,
            f1,
            f2,
            partials: None,
            support: Support::whole_plane(),
        }
    }

    pub fn with_partials(mut self, partials: StemPartials) -> Self {
        self.partials = Some(partials);
        self
    }

    pub fn with_support(mut self, support: Support) -> Self {
        self.support = support;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// Whether G falls back to finite differences for this stem.
    pub fn uses_fd_partials(&self) -> bool {
        self.partials.is_none()
    }

    pub fn f1(&self, u: f64, v: f64) -> Multivector {
        (self.f1)(u, v)
    }

    pub fn f2(&self, u: f64, v: f64) -> Multivector {
        (self.f2)(u, v)
    }

    /// (∂_u F1, ∂_v F1, ∂_u F2, ∂_v F2) at (u, v).
    pub fn partials_at(&self, u: f64, v: f64, cfg: &GConfig) -> [Multivector; 4] {
        if cfg.mode == GMode::Analytic {
            if let Some(p) = &self.partials {
                return [
                    (p.f1_u)(u, v),
                    (p.f1_v)(u, v),
                    (p.f2_u)(u, v),
                    (p.f2_v)(u, v),
                ];
            }
        }
        let h = cfg.fd_step * 1.0f64.max(u.abs()).max(v.abs());
        let d = |g: &StemMap, du: f64, dv: f64| -> Multivector {
            let plus = g(u + du, v + dv);
            let minus = g(u - du, v - dv);
            (&plus - &minus).scale(0.5 / if du != 0.0 { du } else { dv })
        };
        [
            d(&self.f1, h, 0.0),
            d(&self.f1, 0.0, h),
            d(&self.f2, h, 0.0),
            d(&self.f2, 0.0, h),
        ]
    }

    /// Sampled even-odd validation on mirrored point pairs; stems are
    /// black boxes so the symmetry can only be spot-checked.
    pub fn validate_even_odd(&self, samples: usize, tol: f64) -> Result<()> {
        let (u0, u1) = (self.support.u_min.max(-2.0), self.support.u_max.min(2.0));
        let v1 = self.support.v_abs.min(2.0);
        let n = samples.max(4);
        for k in 0..n {
            let t = (k as f64 + 0.5) / n as f64;
            let u = u0 + (u1 - u0) * t;
            let v = v1 * (0.1 + 0.9 * ((k as f64 * 0.7368).fract()));
            let even = (&self.f1(u, -v) - &self.f1(u, v)).norm();
            let odd = (&self.f2(u, -v) + &self.f2(u, v)).norm();
            let scale = 1.0f64.max(self.f1(u, v).norm()).max(self.f2(u, v).norm());
            if even > tol * scale || odd > tol * scale {
                return Err(Error::InvalidArgument(format!(
                    "stem violates the even-odd conditions at (u, v) = ({u}, {v}): \
                     even residual {even:.3e}, odd residual {odd:.3e}"
                )));
            }
        }
        Ok(())
    }
}

/// Slice function induced by a stem.
#[derive(Clone)]
pub struct SliceFunction {
    stem: StemFunction,
}

impl SliceFunction {
    pub fn from_stem(stem: StemFunction) -> Self {
        SliceFunction { stem }
    }

    pub fn stem(&self) -> &StemFunction {
        &self.stem
    }

    pub fn dim(&self) -> usize {
        self.stem.dim
    }

    /// f(q) = F1(u,v) + I_q F2(u,v); real points return F1(u, 0).
    pub fn evaluate(&self, q: &Paravector) -> Result<Multivector> {
        let (u, v, dir) = q.slice_coordinates();
        if !self.stem.support.contains(u, v) {
            return Err(Error::OutsideSupport { u, v });
        }
        let f1 = self.stem.f1(u, v);
        match dir {
            None => Ok(f1),
            Some(i) => {
                let f2 = self.stem.f2(u, v);
                Ok(&f1 + &(&i.to_multivector() * &f2))
            }
        }
    }

    /// Evaluate on the slice plane C_I at chart point (u, v); v may be
    /// negative, which addresses the mirrored half.
    pub fn evaluate_on_slice(&self, i: &UnitVector, u: f64, v: f64) -> Result<Multivector> {
        if !self.stem.support.contains(u, v) {
            return Err(Error::OutsideSupport { u, v });
        }
        let f1 = self.stem.f1(u, v);
        let f2 = self.stem.f2(u, v);
        Ok(&f1 + &(&i.to_multivector() * &f2))
    }

    /// Stem pair (F1, F2) at (u, v) with v >= 0.
    pub fn stem_pair(&self, u: f64, v: f64) -> Result<(Multivector, Multivector)> {
        if !self.stem.support.contains(u, v) {
            return Err(Error::OutsideSupport { u, v });
        }
        Ok((self.stem.f1(u, v), self.stem.f2(u, v)))
    }

    /// G f at q, in stem coordinates. Errors on real-axis points, where G is
    /// not defined.
    pub fn apply_g(&self, q: &Paravector, cfg: &GConfig) -> Result<Multivector> {
        let (u, v, dir) = q.slice_coordinates();
        let i = dir.ok_or_else(|| Error::RealAxis(format!("q = {q}")))?;
        if !self.stem.support.contains(u, v) {
            return Err(Error::OutsideSupport { u, v });
        }
        let [f1u, f1v, f2u, f2v] = self.stem.partials_at(u, v, cfg);
        let radial = &f1u - &f2v;
        let angular = &f1v + &f2u;
        Ok(&radial + &(&i.to_multivector() * &angular))
    }

    /// The stem of G f, again a stem function: (∂_u F1 - ∂_v F2,
    /// ∂_v F1 + ∂_u F2). Carries no analytic partials of its own.
    pub fn g_stem(&self, cfg: &GConfig) -> SliceFunction {
        let stem = self.stem.clone();
        let cfg = *cfg;
        let stem2 = stem.clone();
        let g1: StemMap = Arc::new(move |u, v| {
            let [f1u, _, _, f2v] = stem.partials_at(u, v, &cfg);
            &f1u - &f2v
        });
        let g2: StemMap = Arc::new(move |u, v| {
            let [_, f1v, f2u, _] = stem2.partials_at(u, v, &cfg);
            &f1v + &f2u
        });
        SliceFunction::from_stem(
            StemFunction::new(self.stem.dim, g1, g2).with_support(self.stem.support),
        )
    }

    /// Max Cauchy-Riemann residual |∂_u F1 - ∂_v F2| + |∂_v F1 + ∂_u F2|
    /// over the probes; the function is slice monogenic on the sampled set
    /// when the residual stays within `tol`.
    pub fn is_slice_monogenic(&self, probes: &[(f64, f64)], tol: f64) -> Result<(bool, f64)> {
        if probes.is_empty() {
            return Err(Error::InvalidArgument("empty probe set".into()));
        }
        let cfg = GConfig::default();
        let mut max_res = 0.0f64;
        for &(u, v) in probes {
            if v <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "probe (u, v) = ({u}, {v}) must have v > 0"
                )));
            }
            if !self.stem.support.contains(u, v) {
                return Err(Error::OutsideSupport { u, v });
            }
            let [f1u, f1v, f2u, f2v] = self.stem.partials_at(u, v, &cfg);
            let res = (&f1u - &f2v).norm() + (&f1v + &f2u).norm();
            max_res = max_res.max(res);
        }
        Ok((max_res <= tol, max_res))
    }

    /// Right-scale by a constant factor: q -> f(q) a.
    pub fn scale_right(&self, a: &Multivector) -> SliceFunction {
        let a1 = a.clone();
        let a2 = a.clone();
        let f1 = self.stem.f1.clone();
        let f2 = self.stem.f2.clone();
        let g1: StemMap = Arc::new(move |u, v| &f1(u, v) * &a1);
        let g2: StemMap = Arc::new(move |u, v| &f2(u, v) * &a2);
        let mut stem = StemFunction::new(self.stem.dim, g1, g2).with_support(self.stem.support);
        if let Some(p) = &self.stem.partials {
            let (pa, pb, pc, pd) = (a.clone(), a.clone(), a.clone(), a.clone());
            let (f1u, f1v, f2u, f2v) = (
                p.f1_u.clone(),
                p.f1_v.clone(),
                p.f2_u.clone(),
                p.f2_v.clone(),
            );
            stem = stem.with_partials(StemPartials {
                f1_u: Arc::new(move |u, v| &f1u(u, v) * &pa),
                f1_v: Arc::new(move |u, v| &f1v(u, v) * &pb),
                f2_u: Arc::new(move |u, v| &f2u(u, v) * &pc),
                f2_v: Arc::new(move |u, v| &f2v(u, v) * &pd),
            });
        }
        SliceFunction { stem }
    }
}

/// (1 - I_q I)/2 · fI + (1 + I_q I)/2 · fmI, the representation-formula
/// combination of the two mirrored slice values.
pub fn representation_combine(
    f_i: &Multivector,
    f_mi: &Multivector,
    i: &UnitVector,
    iq: &UnitVector,
) -> Multivector {
    let m = f_i.dim();
    let one = Multivector::one(m);
    let iqi = &iq.to_multivector() * &i.to_multivector();
    let alpha = (&one - &iqi).scale(0.5);
    let beta = (&one + &iqi).scale(0.5);
    &(&alpha * f_i) + &(&beta * f_mi)
}

/// Built-in test corpus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedStem {
    /// f(q) = q
    Identity,
    /// f(q) = conj(q); G f = 2
    Conjugate,
    /// f(q) = q²
    Square,
    /// f(q) = exp(q), Euler form on each slice
    Exp,
    /// stem 1/(z - c) with real c; slice monogenic away from the point c
    InvShift(f64),
}

impl NamedStem {
    pub fn parse(name: &str) -> Result<Self> {
        if let Some(rest) = name.strip_prefix("inv_shift:") {
            let c: f64 = rest
                .parse()
                .map_err(|_| Error::Usage(format!("bad inv_shift parameter {rest:?}")))?;
            return Ok(NamedStem::InvShift(c));
        }
        match name {
            "identity" => Ok(NamedStem::Identity),
            "conjugate" => Ok(NamedStem::Conjugate),
            "square" => Ok(NamedStem::Square),
            "exp" => Ok(NamedStem::Exp),
            other => Err(Error::Usage(format!(
                "unknown function {other:?}; expected identity|conjugate|square|exp|inv_shift:<c>"
            ))),
        }
    }
}

fn scalar_stem(m: usize, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> StemMap {
    Arc::new(move |u, v| Multivector::scalar(m, f(u, v)))
}

/// Build one of the named test functions as a slice function with analytic
/// partials attached.
pub fn make_named(name: NamedStem, m: usize) -> SliceFunction {
    let stem =
        match name {
            NamedStem::Identity => {
                StemFunction::new(m, scalar_stem(m, |u, _| u), scalar_stem(m, |_, v| v))
                    .with_partials(StemPartials {
                        f1_u: scalar_stem(m, |_, _| 1.0),
                        f1_v: scalar_stem(m, |_, _| 0.0),
                        f2_u: scalar_stem(m, |_, _| 0.0),
                        f2_v: scalar_stem(m, |_, _| 1.0),
                    })
            }
            NamedStem::Conjugate => {
                StemFunction::new(m, scalar_stem(m, |u, _| u), scalar_stem(m, |_, v| -v))
                    .with_partials(StemPartials {
                        f1_u: scalar_stem(m, |_, _| 1.0),
                        f1_v: scalar_stem(m, |_, _| 0.0),
                        f2_u: scalar_stem(m, |_, _| 0.0),
                        f2_v: scalar_stem(m, |_, _| -1.0),
                    })
            }
            NamedStem::Square => StemFunction::new(
                m,
                scalar_stem(m, |u, v| u * u - v * v),
                scalar_stem(m, |u, v| 2.0 * u * v),
            )
            .with_partials(StemPartials {
                f1_u: scalar_stem(m, |u, _| 2.0 * u),
                f1_v: scalar_stem(m, |_, v| -2.0 * v),
                f2_u: scalar_stem(m, |_, v| 2.0 * v),
                f2_v: scalar_stem(m, |u, _| 2.0 * u),
            }),
            NamedStem::Exp => StemFunction::new(
                m,
                scalar_stem(m, |u, v| u.exp() * v.cos()),
                scalar_stem(m, |u, v| u.exp() * v.sin()),
            )
            .with_partials(StemPartials {
                f1_u: scalar_stem(m, |u, v| u.exp() * v.cos()),
                f1_v: scalar_stem(m, |u, v| -u.exp() * v.sin()),
                f2_u: scalar_stem(m, |u, v| u.exp() * v.sin()),
                f2_v: scalar_stem(m, |u, v| u.exp() * v.cos()),
            }),
            NamedStem::InvShift(c) => {
                // 1/(z - c) = ((u - c) - i v) / ((u - c)² + v²)
                let den = move |u: f64, v: f64| (u - c) * (u - c) + v * v;
                // d/dz (z - c)^{-1} = -(z - c)^{-2}
                let dz = move |u: f64, v: f64| -> Complex64 {
                    let z = Complex64::new(u - c, v);
                    -1.0 / (z * z)
                };
                StemFunction::new(
                    m,
                    scalar_stem(m, move |u, v| (u - c) / den(u, v)),
                    scalar_stem(m, move |u, v| -v / den(u, v)),
                )
                .with_partials(StemPartials {
                    f1_u: scalar_stem(m, move |u, v| dz(u, v).re),
                    f1_v: scalar_stem(m, move |u, v| -dz(u, v).im),
                    f2_u: scalar_stem(m, move |u, v| dz(u, v).im),
                    f2_v: scalar_stem(m, move |u, v| dz(u, v).re),
                })
            }
        };
    SliceFunction::from_stem(stem)
}

/// Stem F(z) = Σ z^n a_n with right Cl_m coefficients; slice monogenic since
/// every z^n is holomorphic. Analytic partials come from n z^{n-1}.
pub fn make_polynomial(coeffs: &[Multivector]) -> SliceFunction {
    assert!(!coeffs.is_empty(), "need at least one coefficient");
    let m = coeffs[0].dim();
    assert!(
        coeffs.iter().all(|c| c.dim() == m),
        "mixed algebra dimensions in coefficients"
    );
    let c1 = coeffs.to_vec();
    let c2 = coeffs.to_vec();
    let c3 = coeffs.to_vec();
    let c4 = coeffs.to_vec();

    // Σ Re(z^n) a_n and Σ Im(z^n) a_n
    let combine = move |coeffs: &[Multivector], u: f64, v: f64, deriv: bool, imag: bool| {
        let z = Complex64::new(u, v);
        let mut acc = Multivector::zero(m);
        for (n, a) in coeffs.iter().enumerate() {
            let w = if deriv {
                if n == 0 {
                    continue;
                }
                n as f64 * z.powu((n - 1) as u32)
            } else {
                z.powu(n as u32)
            };
            acc.axpy(if imag { w.im } else { w.re }, a);
        }
        acc
    };

    let cb1 = combine;
    let cb2 = combine;
    let cb3 = combine;
    let cb4 = combine;
    let cb5 = combine;
    let cb6 = combine;
    let stem = StemFunction::new(
        m,
        Arc::new(move |u, v| cb1(&c1, u, v, false, false)),
        Arc::new(move |u, v| cb2(&c2, u, v, false, true)),
    )
    .with_partials(StemPartials {
        // ∂_u z^n = n z^{n-1}, ∂_v z^n = i n z^{n-1}
        f1_u: {
            let c = c3.clone();
            Arc::new(move |u, v| cb3(&c, u, v, true, false))
        },
        f1_v: {
            let c = c3;
            Arc::new(move |u, v| cb4(&c, u, v, true, true).scale(-1.0))
        },
        f2_u: {
            let c = c4.clone();
            Arc::new(move |u, v| cb5(&c, u, v, true, true))
        },
        f2_v: {
            let c = c4;
            Arc::new(move |u, v| cb6(&c, u, v, true, false))
        },
    });
    SliceFunction::from_stem(stem)
}
