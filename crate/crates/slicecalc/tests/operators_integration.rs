//! Integration tests for the volume and boundary operators against
//! independent oracles: complex-plane closed forms at m = 1, dense
//! independently-coded quadrature at m = 2, and the structural identities.

use num_complex::Complex64;
use slicecalc::clifford::{Multivector, Paravector, UnitVector};
use slicecalc::geometry::{build_domain, AxialDomain, ProfileRegion};
use slicecalc::operators::{
    borel_pompeiu_residual, cauchy_boundary, exterior_monogenicity_check, lp_norm,
    plemelj_singular, right_inverse_residual, teodorescu, teodorescu_slice, BoundarySample,
    FieldSample, TabulatedField,
};
use slicecalc::slicefn::{make_named, make_polynomial, GConfig, NamedStem};

const CENTER: (f64, f64) = (0.0, 2.0);
const RADIUS: f64 = 0.5;

fn disk_domain(m: usize, n: usize) -> AxialDomain {
    let profile = ProfileRegion::Disk {
        center: CENTER,
        radius: RADIUS,
        resolution: n,
    };
    build_domain(&profile, m, 16).unwrap()
}

fn pv1(re: f64, im: f64) -> Paravector {
    Paravector::new(re, vec![im]).unwrap()
}

fn as_complex(x: &Multivector) -> Complex64 {
    assert_eq!(x.dim(), 1);
    Complex64::new(x.coeffs()[0], x.coeffs()[1])
}

/// Closed form of T(1) on the mirrored off-axis disk at m = 1, from the
/// classical plane Pompeiu operator: inside its disk the area integral of
/// the Cauchy kernel gives conj(z - c), outside R²/(z - c); our convention
/// carries an extra factor 1/2 and the domain is the union of the upper
/// disk and its mirror.
fn t_one_closed_form(q: Complex64) -> Complex64 {
    let c_up = Complex64::new(CENTER.0, CENTER.1);
    let c_low = c_up.conj();
    0.5 * ((q - c_up).conj() + RADIUS * RADIUS / (q - c_low))
}

#[test]
fn m1_teodorescu_matches_closed_form_inside() {
    let domain = disk_domain(1, 64);
    let one = make_polynomial(&[Multivector::one(1)]);
    let sample = FieldSample::Slice(&one);
    for (u, v) in [
        (0.0, 2.0),
        (0.2, 2.1),
        (-0.3, 1.8),
        (0.1, 2.35),
        (0.0, 1.62),
    ] {
        let q = pv1(u, v);
        let got = as_complex(&teodorescu(&sample, &domain, &q).unwrap());
        let expect = t_one_closed_form(Complex64::new(u, v));
        assert!(
            (got - expect).norm() < 1e-8,
            "T1({u}, {v}) = {got} vs closed form {expect}"
        );
    }
}

#[test]
fn m1_teodorescu_matches_closed_form_outside() {
    let domain = disk_domain(1, 64);
    let one = make_polynomial(&[Multivector::one(1)]);
    let sample = FieldSample::Slice(&one);
    // exterior: both disks seen from outside give R²/(q - c)
    let q = pv1(1.5, 0.7);
    let got = as_complex(&teodorescu(&sample, &domain, &q).unwrap());
    let z = Complex64::new(1.5, 0.7);
    let c_up = Complex64::new(CENTER.0, CENTER.1);
    let expect = 0.5 * (RADIUS * RADIUS / (z - c_up) + RADIUS * RADIUS / (z - c_up.conj()));
    assert!((got - expect).norm() < 1e-9, "{got} vs {expect}");
}

#[test]
fn m1_dense_polar_oracle() {
    // independently coded dense quadrature: polar rule centered at the
    // evaluation point, radius from the ray-to-circle chord, both halves
    let domain = disk_domain(1, 128);
    let f = make_named(NamedStem::Identity, 1);
    let sample = FieldSample::Slice(&f);
    let q = pv1(0.1, 2.05);
    let got = as_complex(&teodorescu(&sample, &domain, &q).unwrap());

    let zq = Complex64::new(0.1, 2.05);
    let c = Complex64::new(CENTER.0, CENTER.1);
    let mut oracle = Complex64::new(0.0, 0.0);
    let (n_r, n_th) = (600usize, 1200usize);
    // upper disk contains zq: polar sweep around zq, radius from the chord
    let rel = zq - c;
    for it in 0..n_th {
        let th = 2.0 * std::f64::consts::PI * (it as f64 + 0.5) / n_th as f64;
        let dir = Complex64::from_polar(1.0, th);
        // |rel + t dir| = R: t² + 2 t (rel·dir) + |rel|² - R² = 0
        let b = rel.re * dir.re + rel.im * dir.im;
        let disc = b * b - (rel.norm_sqr() - RADIUS * RADIUS);
        let t_max = -b + disc.sqrt();
        for ir in 0..n_r {
            let r = t_max * (ir as f64 + 0.5) / n_r as f64;
            let w = t_max / n_r as f64 * (2.0 * std::f64::consts::PI / n_th as f64) * r;
            let x = zq + r * dir;
            // f(x) = x (identity slice function)
            oracle += w / (x - zq) * x;
        }
    }
    // the mirrored disk sees zq from outside: plain polar rule around its
    // own center, the integrand is smooth there
    let c_low = c.conj();
    for it in 0..n_th {
        let th = 2.0 * std::f64::consts::PI * (it as f64 + 0.5) / n_th as f64;
        let dir = Complex64::from_polar(1.0, th);
        for ir in 0..n_r {
            let r = RADIUS * (ir as f64 + 0.5) / n_r as f64;
            let w = RADIUS / n_r as f64 * (2.0 * std::f64::consts::PI / n_th as f64) * r;
            let x = c_low + r * dir;
            oracle += w / (x - zq) * x;
        }
    }
    oracle *= -1.0 / (2.0 * std::f64::consts::PI);
    assert!(
        (got - oracle).norm() < 1e-6,
        "T id = {got} vs dense oracle {oracle}"
    );
}

#[test]
fn m2_teodorescu_slice_center_matches_dense_reference() {
    // f = 1, disk profile, I = I_q, q at the profile center: dense polar
    // reference on both mirrored halves of the slice plane
    let domain = disk_domain(2, 48);
    let one = make_polynomial(&[Multivector::one(2)]);
    let sample = FieldSample::Slice(&one);
    let i = UnitVector::axis(2, 2);
    let q = Paravector::from_slice_coords(CENTER.0, CENTER.1, &i);
    let got = teodorescu_slice(&sample, &domain, &i, &q).unwrap();

    // reference: -(1/2π) ∫ [α/(x - q_I) + β/(x - q_{-I})] dA over both
    // halves; I = I_q so α = 1, β = 0. The upper disk is centered at the
    // singular point, so a plain polar rule cancels the kernel exactly; the
    // mirrored disk sees it from a distance.
    let zq = Complex64::new(CENTER.0, CENTER.1);
    let (n_r, n_th) = (512usize, 1024usize);
    let mut acc = Complex64::new(0.0, 0.0);
    for center in [zq, zq.conj()] {
        for it in 0..n_th {
            let th = 2.0 * std::f64::consts::PI * (it as f64 + 0.5) / n_th as f64;
            let dir = Complex64::from_polar(1.0, th);
            for ir in 0..n_r {
                let r = RADIUS * (ir as f64 + 0.5) / n_r as f64;
                let w = RADIUS / n_r as f64 * (2.0 * std::f64::consts::PI / n_th as f64) * r;
                let x = center + r * dir;
                acc += w / (x - zq);
            }
        }
    }
    acc *= -1.0 / (2.0 * std::f64::consts::PI);
    let expect_re = acc.re;
    let expect_im = acc.im;
    let got_scalar = got.scalar_part();
    let got_i = got.blade_coeff(&[2]);
    assert!(
        (got_scalar - expect_re).abs() < 1e-6 && (got_i - expect_im).abs() < 1e-6,
        "slice T1 = {got} vs dense ({expect_re}, {expect_im})"
    );
}

#[test]
fn m1_full_equals_slice_transform() {
    let domain = disk_domain(1, 32);
    let f = make_named(NamedStem::Square, 1);
    let sample = FieldSample::Slice(&f);
    let q = pv1(0.1, 1.9);
    let full = teodorescu(&sample, &domain, &q).unwrap();
    let slice = teodorescu_slice(&sample, &domain, &UnitVector::axis(1, 1), &q).unwrap();
    assert!((&full - &slice).norm() < 1e-14);
}

#[test]
fn teodorescu_zero_and_right_linearity() {
    let domain = disk_domain(2, 24);
    let zero = make_polynomial(&[Multivector::zero(2)]);
    let q = Paravector::new(0.1, vec![0.3, 1.9]).unwrap();
    let t0 = teodorescu(&FieldSample::Slice(&zero), &domain, &q).unwrap();
    assert!(t0.norm() == 0.0);

    let f = make_named(NamedStem::Exp, 2);
    let c = Multivector::basis_blade(2, &[1, 2]);
    let fc = f.scale_right(&c);
    let t_fc = teodorescu(&FieldSample::Slice(&fc), &domain, &q).unwrap();
    let t_f_c = &teodorescu(&FieldSample::Slice(&f), &domain, &q).unwrap() * &c;
    assert!((&t_fc - &t_f_c).norm() < 1e-12);
}

#[test]
fn cauchy_reproduces_monogenic_functions() {
    let domain = disk_domain(2, 32);
    let probes = [
        Paravector::new(0.1, vec![0.2, 1.9]).unwrap(),
        Paravector::new(-0.15, vec![-0.5, 1.95]).unwrap(),
        Paravector::new(0.0, vec![0.0, 2.2]).unwrap(),
    ];
    for name in [NamedStem::Identity, NamedStem::Square, NamedStem::Exp] {
        let f = make_named(name, 2);
        let fb = BoundarySample::Slice(&f);
        for q in &probes {
            let got = cauchy_boundary(&fb, &domain, q).unwrap();
            assert!(!got.near_singular);
            let expect = f.evaluate(q).unwrap();
            assert!(
                (&got.value - &expect).norm() < 1e-9,
                "{name:?} at {q}: {} vs {}",
                got.value,
                expect
            );
        }
    }
}

#[test]
fn cauchy_vanishes_outside() {
    let domain = disk_domain(2, 32);
    let one = make_polynomial(&[Multivector::one(2)]);
    let fb = BoundarySample::Slice(&one);
    let q = Paravector::new(1.4, vec![0.0, 3.1]).unwrap();
    let got = cauchy_boundary(&fb, &domain, &q).unwrap();
    assert!(got.value.norm() < 1e-10, "exterior F1 = {}", got.value);
}

#[test]
fn borel_pompeiu_for_conjugate_stem() {
    // all supported algebra dimensions on the disk profile
    for m in [1usize, 2, 3] {
        let domain = disk_domain(m, 32);
        let f = make_named(NamedStem::Conjugate, m);
        let probes = [
            Paravector::new(0.1, {
                let mut v = vec![0.0; m];
                v[m - 1] = 1.9;
                if m > 1 {
                    v[0] = 0.2;
                }
                v
            })
            .unwrap(),
            Paravector::new(-0.1, {
                let mut v = vec![0.0; m];
                v[m - 1] = 2.2;
                v
            })
            .unwrap(),
        ];
        let report = borel_pompeiu_residual(&f, &domain, &probes, &GConfig::default()).unwrap();
        assert!(
            report.max_residual < 1e-8,
            "m = {m}: BP residual {}",
            report.max_residual
        );
    }
}

#[test]
fn right_inverse_on_identity_function() {
    let domain = disk_domain(2, 32);
    let f = make_named(NamedStem::Identity, 2);
    let probes = [
        Paravector::new(0.05, vec![0.1, 2.0]).unwrap(),
        Paravector::new(-0.1, vec![0.0, 1.85]).unwrap(),
    ];
    let (vol, slice) = right_inverse_residual(&f, &domain, &probes).unwrap();
    assert!(vol.max_residual < 1e-3, "volume form {}", vol.max_residual);
    assert!(
        slice.max_residual < 1e-3,
        "slice form {}",
        slice.max_residual
    );
}

#[test]
fn exterior_monogenicity_for_noise() {
    use rand::Rng;
    use rand::SeedableRng;
    let domain = disk_domain(2, 32);
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(41);
    let n = domain.slice_quad().len();
    let mk = |rng: &mut rand_chacha::ChaCha20Rng| -> Vec<Multivector> {
        (0..n)
            .map(|_| {
                let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
                Multivector::from_coeffs(2, c).unwrap()
            })
            .collect()
    };
    let f1 = mk(&mut rng);
    let f2 = mk(&mut rng);
    let tab = TabulatedField::from_values(f1, f2).unwrap();
    let probes = [
        Paravector::new(0.9, vec![0.0, 2.6]).unwrap(),
        Paravector::new(-1.0, vec![0.5, 1.2]).unwrap(),
        Paravector::real(2, 1.0), // real-axis probe must be skipped
    ];
    let report =
        exterior_monogenicity_check(&FieldSample::Tabulated(&tab), &domain, &probes).unwrap();
    assert_eq!(report.residuals.len(), 2);
    assert_eq!(report.flagged.len(), 1);
    assert!(
        report.max_residual < 1e-5,
        "exterior residual {}",
        report.max_residual
    );
}

#[test]
fn plemelj_of_constant_is_half() {
    let domain = disk_domain(2, 32);
    let one = make_polynomial(&[Multivector::one(2)]);
    let fb = BoundarySample::Slice(&one);
    // a boundary node on the reference slice
    let (u, v) = domain.boundary_quad().nodes()[7];
    let q = Paravector::from_slice_coords(u, v, &UnitVector::axis(2, 2));
    let s = plemelj_singular(&fb, &domain, &q).unwrap();
    let expect = Multivector::scalar(2, 0.5);
    assert!((&s - &expect).norm() < 1e-12, "S1 = {s}");
}

#[test]
fn plemelj_rejects_off_boundary_points() {
    let domain = disk_domain(2, 32);
    let one = make_polynomial(&[Multivector::one(2)]);
    let fb = BoundarySample::Slice(&one);
    let q = Paravector::new(0.0, vec![0.0, 2.0]).unwrap();
    assert!(plemelj_singular(&fb, &domain, &q).is_err());
}

#[test]
fn lp_norm_of_constant_is_volume_root() {
    let domain = disk_domain(2, 32);
    let one = make_polynomial(&[Multivector::one(2)]);
    let sample = FieldSample::Slice(&one);
    let p = 4.0;
    let got = lp_norm(&sample, &domain, p).unwrap();
    let expect = domain.volume().powf(1.0 / p);
    assert!((got - expect).abs() < 1e-10 * expect);

    let zero = make_polynomial(&[Multivector::zero(2)]);
    assert_eq!(
        lp_norm(&FieldSample::Slice(&zero), &domain, 2.0).unwrap(),
        0.0
    );
}

#[test]
fn lp_norm_weighted_field_closed_form() {
    // f(x) = |x̲| on the rectangle profile, m = 2, p = 2:
    // ||f||² = ω1 ∫ v² · v du dv = 2π (u-range) [v⁴/4]
    let profile = ProfileRegion::Rectangle {
        u_min: -1.0,
        u_max: 1.0,
        v_min: 1.0,
        v_max: 2.0,
        resolution: 32,
    };
    let domain = build_domain(&profile, 2, 16).unwrap();
    let f = slicecalc::slicefn::SliceFunction::from_stem(slicecalc::slicefn::StemFunction::new(
        2,
        std::sync::Arc::new(|_, _| Multivector::zero(2)),
        std::sync::Arc::new(|_, v: f64| Multivector::scalar(2, v.abs())),
    ));
    // |x̲| = v has stem (0, v): f(u + Iv) = I v, whose norm is |v|
    let got = lp_norm(&FieldSample::Slice(&f), &domain, 2.0).unwrap();
    let expect = (2.0 * std::f64::consts::PI * 2.0 * (2.0f64.powi(4) - 1.0) / 4.0).sqrt();
    assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
}

#[test]
fn m2_full_teodorescu_against_cylindrical_oracle() {
    // f = 1, m = 2: brute-force the 3D volume integral of
    // -(1/2π) K(q, x) over the solid of revolution in cylindrical
    // coordinates (independent of the library's quadrature machinery)
    let domain = disk_domain(2, 48);
    let one = make_polynomial(&[Multivector::one(2)]);
    let sample = FieldSample::Slice(&one);
    let i_q = UnitVector::axis(2, 1);
    let q = Paravector::from_slice_coords(0.1, 2.1, &i_q);
    let got = teodorescu(&sample, &domain, &q).unwrap();

    // oracle: per azimuth phi, integrate over the (u, v) profile chart in
    // polar coordinates around the in-plane singular point
    let (n_phi, n_r, n_th) = (96usize, 220usize, 440usize);
    let mut acc = Multivector::zero(2);
    let omega1 = 2.0 * std::f64::consts::PI;
    for ip in 0..n_phi {
        let phi = 2.0 * std::f64::consts::PI * (ip as f64 + 0.5) / n_phi as f64;
        let i = UnitVector::new(vec![phi.cos(), phi.sin()]).unwrap();
        let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
        // singular points of S⁻¹(q, ·) on this half-plane chart: (0.1, 2.1)
        let c = Complex64::new(CENTER.0, CENTER.1);
        let zq = Complex64::new(0.1, 2.1);
        let rel = zq - c;
        for it in 0..n_th {
            let th = 2.0 * std::f64::consts::PI * (it as f64 + 0.5) / n_th as f64;
            let dir = Complex64::from_polar(1.0, th);
            let b = rel.re * dir.re + rel.im * dir.im;
            let disc = b * b - (rel.norm_sqr() - RADIUS * RADIUS);
            let t_max = -b + disc.sqrt();
            for ir in 0..n_r {
                let r = t_max * (ir as f64 + 0.5) / n_r as f64;
                let w =
                    w_phi * (t_max / n_r as f64) * (2.0 * std::f64::consts::PI / n_th as f64) * r;
                let x_plane = zq + r * dir;
                let (u, v) = (x_plane.re, x_plane.im);
                // K(q, x) = 2 S⁻¹ / (ω1 v); volume weight v cancels it
                let x = Paravector::from_slice_coords(u, v, &i);
                let k = slicecalc::kernels::cauchy_kernel(&q, &x).unwrap();
                acc.axpy(w * 2.0 / omega1, &k);
            }
        }
    }
    let oracle = acc.scale(-1.0 / (2.0 * std::f64::consts::PI));
    assert!(
        (&got - &oracle).norm() < 1e-5,
        "T1 = {got} vs 3D oracle {oracle}"
    );
}

#[test]
fn derivative_cauchy_reconstructs_partials() {
    use slicecalc::operators::derivative_cauchy;
    let domain = disk_domain(2, 32);

    // ∂_{q0} q = 1
    let f = make_named(NamedStem::Identity, 2);
    let fb = BoundarySample::Slice(&f);
    let q = Paravector::new(0.05, vec![0.1, 2.0]).unwrap();
    let got = derivative_cauchy(&fb, &domain, &q, &[1, 0, 0]).unwrap();
    assert!(
        (&got - &Multivector::one(2)).norm() < 1e-8,
        "d(q)/dq0 = {got}"
    );

    // ∂_{q0} q² = 2 q0 + 2 q̲, at q = 1 + e1 this is 2 + 2 e1; the formula
    // needs q inside the domain, so use a disk whose profile contains the
    // chart point (1, 1)
    let near_axis = build_domain(
        &ProfileRegion::Disk {
            center: (1.0, 1.0),
            radius: 0.3,
            resolution: 32,
        },
        2,
        16,
    )
    .unwrap();
    let f = make_named(NamedStem::Square, 2);
    let fb = BoundarySample::Slice(&f);
    let q = Paravector::new(1.0, vec![1.0, 0.0]).unwrap();
    let got = derivative_cauchy(&fb, &near_axis, &q, &[1, 0, 0]).unwrap();
    let mut expect = Multivector::scalar(2, 2.0);
    expect.axpy(2.0, &Multivector::basis_vector(2, 1));
    assert!((&got - &expect).norm() < 1e-7, "d(q^2)/dq0 = {got}");

    // outside the closure the boundary integral of the derivative kernel
    // collapses to zero
    let outside = Paravector::new(1.0, vec![1.0, 0.0]).unwrap();
    let got = derivative_cauchy(&fb, &domain, &outside, &[1, 0, 0]).unwrap();
    assert!(got.norm() < 1e-10);

    // exp stem: the q_i-derivative matches a central difference of the
    // function itself
    let f = make_named(NamedStem::Exp, 2);
    let fb = BoundarySample::Slice(&f);
    let q = Paravector::new(0.1, vec![0.15, 1.95]).unwrap();
    let got = derivative_cauchy(&fb, &domain, &q, &[0, 1, 0]).unwrap();
    let h = 1e-5;
    let mut qp = q.clone();
    qp.vector[0] += h;
    let mut qm = q.clone();
    qm.vector[0] -= h;
    let fd = (&f.evaluate(&qp).unwrap() - &f.evaluate(&qm).unwrap()).scale(0.5 / h);
    assert!((&got - &fd).norm() < 1e-7, "{got} vs FD {fd}");

    // second derivative: ∂²_{q0} q² = 2
    let f = make_named(NamedStem::Square, 2);
    let fb = BoundarySample::Slice(&f);
    let q = Paravector::new(0.0, vec![0.0, 2.05]).unwrap();
    let got = derivative_cauchy(&fb, &domain, &q, &[2, 0, 0]).unwrap();
    assert!(
        (&got - &Multivector::scalar(2, 2.0)).norm() < 1e-5,
        "d2(q^2)/dq0^2 = {got}"
    );

    // order guard
    assert!(matches!(
        derivative_cauchy(&fb, &domain, &q, &[2, 1, 0]),
        Err(slicecalc::Error::UnsupportedOrder(3))
    ));
}
