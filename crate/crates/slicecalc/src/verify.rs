//! Verification drivers: probe placement, per-identity runners and the
//! orchestration behind the CLI commands.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::clifford::{Multivector, Paravector, UnitVector};
use crate::config::{Command, OutputFormat, RunConfig};
use crate::error::Error;
use crate::geometry::{build_domain, AxialDomain, PlaneField};
use crate::kernels;
use crate::operators::{self, BoundarySample, FieldSample, TabulatedField};
use crate::report::{convergence_orders, ReportEnvelope, ResidualReport};
use crate::slicefn::{make_named, representation_combine, GConfig, NamedStem, SliceFunction};
use crate::tolerances;
use crate::Result;

/// Probe sets for one domain, deterministic for a given seed.
pub struct ProbeSet {
    /// 8 interior probes at >= 20% inradius from the boundary
    pub interior: Vec<Paravector>,
    /// 8 exterior probes at >= 50% inradius outside the closure
    pub exterior: Vec<Paravector>,
    /// boundary-node probes with random slice directions
    pub boundary: Vec<Paravector>,
}

fn random_unit(rng: &mut ChaCha20Rng, m: usize) -> UnitVector {
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0f64)).collect();
        if let Ok(u) = UnitVector::from_direction(&v) {
            return u;
        }
    }
}

/// Deterministic probe placement on a domain.
pub fn make_probes(domain: &AxialDomain, seed: u64) -> ProbeSet {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let m = domain.dim();
    let profile = domain.profile();
    let inr = profile.inradius();
    let (u0, u1, v0, v1) = profile.bounding_box();

    let mut interior = Vec::new();
    while interior.len() < 8 {
        let u = rng.gen_range(u0..u1);
        let v = rng.gen_range(v0..v1);
        if profile.distance_to_boundary(u, v) >= 0.2 * inr {
            interior.push(Paravector::from_slice_coords(
                u,
                v,
                &random_unit(&mut rng, m),
            ));
        }
    }

    let mut exterior = Vec::new();
    let margin = 0.5 * inr;
    while exterior.len() < 8 {
        let u = rng.gen_range(u0 - 4.0 * margin..u1 + 4.0 * margin);
        let v = rng.gen_range((v0 - 4.0 * margin).max(0.05)..v1 + 4.0 * margin);
        if !profile.contains(u, v) {
            // distance from the closure: sample must clear the margin
            let clear = match profile {
                crate::geometry::ProfileRegion::Disk { center, radius, .. } => {
                    ((u - center.0).powi(2) + (v - center.1).powi(2)).sqrt() - radius
                }
                _ => {
                    // conservative: distance to the bounding box
                    let du = (u0 - u).max(u - u1).max(0.0);
                    let dv = (v0 - v).max(v - v1).max(0.0);
                    (du * du + dv * dv).sqrt()
                }
            };
            if clear >= margin {
                exterior.push(Paravector::from_slice_coords(
                    u,
                    v,
                    &random_unit(&mut rng, m),
                ));
            }
        }
    }

    let bq = domain.boundary_quad();
    let count = 4.min(bq.len());
    let boundary = (0..count)
        .map(|k| {
            let idx = k * bq.len() / count;
            let (u, v) = bq.nodes()[idx];
            Paravector::from_slice_coords(u, v, &random_unit(&mut rng, m))
        })
        .collect();

    ProbeSet {
        interior,
        exterior,
        boundary,
    }
}

/// |F f - f| at interior probes for slice monogenic f.
pub fn cauchy_reproduction_residual(
    f: &SliceFunction,
    domain: &AxialDomain,
    probes: &[Paravector],
) -> Result<ResidualReport> {
    let fb = BoundarySample::Slice(f);
    let mut residuals = Vec::new();
    let mut coords = Vec::new();
    for q in probes {
        let got = operators::cauchy_boundary(&fb, domain, q)?.value;
        let expect = f.evaluate(q)?;
        residuals.push((&got - &expect).norm());
        let mut c = vec![q.scalar];
        c.extend_from_slice(&q.vector);
        coords.push(c);
    }
    Ok(ResidualReport::new(
        "cauchy-reproduction",
        coords,
        residuals,
        domain.profile().resolution(),
    ))
}

/// Representation-formula cross-check of T f for a tabulated slice input at
/// random (q, I) pairs.
pub fn sliceness_of_t_residual(
    tab: &TabulatedField,
    domain: &AxialDomain,
    pairs: usize,
    seed: u64,
) -> Result<ResidualReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let m = domain.dim();
    let profile = domain.profile();
    let inr = profile.inradius();
    let (u0, u1, v0, v1) = profile.bounding_box();
    let sample = FieldSample::Tabulated(tab);
    let spacing = domain.slice_quad().node_spacing();

    let mut residuals = Vec::new();
    let mut coords = Vec::new();
    while residuals.len() < pairs {
        let u = rng.gen_range(u0..u1);
        let v = rng.gen_range(v0..v1);
        if profile.distance_to_boundary(u, v) < 0.15 * inr {
            continue;
        }
        // keep clear of quadrature nodes: the kernel magnitude at a node
        // hit would amplify roundoff
        let near_node = domain
            .slice_quad()
            .nodes()
            .iter()
            .any(|&(nu, nv)| ((nu - u).powi(2) + (nv - v).powi(2)).sqrt() < 0.05 * spacing);
        if near_node {
            continue;
        }
        let i_q = random_unit(&mut rng, m);
        let i = random_unit(&mut rng, m);
        let q = Paravector::from_slice_coords(u, v, &i_q);
        let t_q = operators::teodorescu(&sample, domain, &q)?;
        let t_up =
            operators::teodorescu(&sample, domain, &Paravector::from_slice_coords(u, v, &i))?;
        let t_dn =
            operators::teodorescu(&sample, domain, &Paravector::from_slice_coords(u, -v, &i))?;
        let combined = representation_combine(&t_up, &t_dn, &i, &i_q);
        residuals.push((&t_q - &combined).norm());
        let mut c = vec![q.scalar];
        c.extend_from_slice(&q.vector);
        coords.push(c);
    }
    Ok(ResidualReport::new(
        "sliceness-of-t",
        coords,
        residuals,
        domain.profile().resolution(),
    ))
}

/// Clifford-algebra axiom sweep: associativity, anticommutation, the
/// conjugation anti-homomorphism and paravector inverses, randomized.
pub fn algebra_residual(m: usize, cases: usize, seed: u64) -> Result<ResidualReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let random_mv = |rng: &mut ChaCha20Rng| -> Multivector {
        let c: Vec<f64> = (0..1usize << m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Multivector::from_coeffs(m, c).expect("coefficient count")
    };
    for _ in 0..cases {
        let a = random_mv(&mut rng);
        let b = random_mv(&mut rng);
        let c = random_mv(&mut rng);
        let scale = 1.0 + a.norm() * b.norm() * c.norm();
        let assoc = (&(&(&a * &b) * &c) - &(&a * &(&b * &c))).norm() / scale;
        let antihom = (&(&a * &b).conjugate() - &(&b.conjugate() * &a.conjugate())).norm()
            / (1.0 + a.norm() * b.norm());
        worst = worst.max(assoc).max(antihom);

        let p = Paravector::new(
            rng.gen_range(-2.0..2.0),
            (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        )
        .expect("dimension in range");
        if p.norm() > 1e-3 {
            let inv = p.inverse()?;
            let res = (&p.product(&inv) - &Multivector::one(m)).norm();
            worst = worst.max(res);
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            let ei = Multivector::basis_vector(m, i);
            let ej = Multivector::basis_vector(m, j);
            let anti = &(&ei * &ej) + &(&ej * &ei);
            let expect = Multivector::scalar(m, if i == j { -2.0 } else { 0.0 });
            worst = worst.max((&anti - &expect).norm());
        }
    }
    Ok(ResidualReport::new(
        "algebra",
        vec![vec![0.0; m + 1]],
        vec![worst],
        0,
    ))
}

/// Slice-decomposition identity sweep: α (x-q_I)^{-1} + β (x-q_{-I})^{-1}
/// against the paravector kernel for random triples.
pub fn kernel_decomposition_residual(m: usize, cases: usize, seed: u64) -> Result<ResidualReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < cases {
        let q = Paravector::new(
            rng.gen_range(-1.0..1.0),
            (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .expect("dimension");
        if q.vector_norm() < 1e-3 {
            continue;
        }
        let i = random_unit(&mut rng, m);
        let (u, v) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let x = Paravector::from_slice_coords(u, v, &i);
        let direct = match kernels::cauchy_kernel(&q, &x) {
            Ok(k) => k,
            Err(_) => continue,
        };
        let (_, combined) = kernels::kernel_slice_decomposition(&q, &i, (u, v))?;
        worst = worst.max((&direct - &combined).norm() / (1.0 + direct.norm()));
        done += 1;
    }
    Ok(ResidualReport::new(
        "kernel-decomposition",
        vec![vec![0.0; m + 1]],
        vec![worst],
        0,
    ))
}

/// Extension-criterion sweep for a named function; returns (interior
/// residual, exterior residual).
pub fn extension_residuals(f: &SliceFunction, domain: &AxialDomain) -> Result<(f64, f64)> {
    let fb = BoundarySample::Slice(f);
    let check =
        operators::extension_criterion_check(&fb, domain, 16, tolerances::EXTENSION_CRITERION)?;
    Ok((check.interior_residual, check.exterior_residual))
}

fn is_monogenic_named(stem: NamedStem) -> bool {
    !matches!(stem, NamedStem::Conjugate)
}

/// One full verification pass at a single resolution. Returns the reports
/// and the per-identity pass flags.
pub fn run_identities_at(
    cfg: &RunConfig,
    resolution: usize,
) -> Result<(
    Vec<ResidualReport>,
    std::collections::BTreeMap<String, bool>,
)> {
    let profile = cfg.profile.to_profile(resolution)?;
    let domain = build_domain(&profile, cfg.m, cfg.sphere_order)?;
    let probes = make_probes(&domain, cfg.seed);
    let gcfg = GConfig::default();
    let stems = cfg.named_stems()?;

    let mut reports: Vec<ResidualReport> = Vec::new();
    let mut passes = std::collections::BTreeMap::new();
    let mut record = |mut rep: ResidualReport, label: &str, tol: f64, t0: Instant| {
        rep.identity = label.to_string();
        if rep.runtime_ms == 0.0 {
            rep.runtime_ms = t0.elapsed().as_secs_f64() * 1e3;
        }
        passes.insert(label.to_string(), rep.max_residual <= tol);
        reports.push(rep);
    };

    // algebra and kernel identities are resolution-free; run once
    let t0 = Instant::now();
    let rep = algebra_residual(cfg.m, 10_000, cfg.seed)?;
    record(rep, "algebra", tolerances::ALGEBRA_EXACT, t0);
    let t0 = Instant::now();
    let rep = kernel_decomposition_residual(cfg.m, 1_000, cfg.seed)?;
    record(rep, "kernel-decomposition", tolerances::ALGEBRA_EXACT, t0);

    // per-function identities, fanned out across functions; each entry is
    // (label, tolerance, report with its own runtime)
    type FnReports = Vec<(String, f64, ResidualReport)>;
    let timed = |rep: Result<ResidualReport>, t0: Instant| -> Result<ResidualReport> {
        rep.map(|r| r.with_runtime(t0.elapsed().as_secs_f64() * 1e3))
    };
    let per_fn: Result<Vec<FnReports>> = stems
        .par_iter()
        .map(|(name, stem)| -> Result<FnReports> {
            let f = make_named(*stem, cfg.m);
            let mut out: FnReports = Vec::new();

            if is_monogenic_named(*stem) {
                let t0 = Instant::now();
                let rep = timed(
                    cauchy_reproduction_residual(&f, &domain, &probes.interior),
                    t0,
                )?;
                out.push((
                    format!("cauchy-reproduction[{name}]"),
                    tolerances::CAUCHY_REPRODUCTION,
                    rep,
                ));
            }
            let t0 = Instant::now();
            let rep = timed(
                operators::borel_pompeiu_residual(&f, &domain, &probes.interior, &gcfg),
                t0,
            )?;
            out.push((
                format!("borel-pompeiu[{name}]"),
                tolerances::BOREL_POMPEIU,
                rep,
            ));
            let t0 = Instant::now();
            let (vol, slice) = operators::right_inverse_residual(&f, &domain, &probes.interior)?;
            let ms = t0.elapsed().as_secs_f64() * 1e3;
            out.push((
                format!("right-inverse[{name}]"),
                tolerances::RIGHT_INVERSE,
                vol.with_runtime(ms),
            ));
            out.push((
                format!("right-inverse-slice[{name}]"),
                tolerances::RIGHT_INVERSE_SLICE,
                slice.with_runtime(ms),
            ));
            let sample = FieldSample::Slice(&f);
            let t0 = Instant::now();
            let rep = timed(
                operators::exterior_monogenicity_check(&sample, &domain, &probes.exterior),
                t0,
            )?;
            out.push((
                format!("exterior-monogenicity[{name}]"),
                tolerances::EXTERIOR_MONOGENICITY,
                rep,
            ));
            let t0 = Instant::now();
            let tab = TabulatedField::sample(&domain, &f)?;
            let rep = timed(
                sliceness_of_t_residual(&tab, &domain, 8, cfg.seed ^ 0x5eed),
                t0,
            )?;
            out.push((
                format!("sliceness-of-t[{name}]"),
                tolerances::SLICENESS_OF_T,
                rep,
            ));
            let t0 = Instant::now();
            let rep = timed(
                operators::plemelj_jump_check(&f, &domain, &probes.boundary),
                t0,
            )?;
            out.push((format!("plemelj-jump[{name}]"), tolerances::PLEMELJ, rep));

            // extension criterion: monogenic traces extend inside, the
            // conjugate trace extends neither way
            let t0 = Instant::now();
            let (r_int, r_ext) = extension_residuals(&f, &domain)?;
            let rep = ResidualReport::new(
                "extension",
                vec![vec![0.0; cfg.m + 1]],
                vec![if is_monogenic_named(*stem) {
                    r_int
                } else {
                    // control: both signs must be violated clearly
                    let margin = 10.0 * tolerances::EXTENSION_CRITERION;
                    if r_int >= margin && r_ext >= margin {
                        0.0
                    } else {
                        r_int.min(r_ext)
                    }
                }],
                resolution,
            )
            .with_runtime(t0.elapsed().as_secs_f64() * 1e3);
            out.push((
                format!("extension-criterion[{name}]"),
                tolerances::EXTENSION_CRITERION,
                rep,
            ));
            Ok(out)
        })
        .collect();
    for fn_reports in per_fn? {
        for (label, tol, rep) in fn_reports {
            record(rep, &label, tol, Instant::now());
        }
    }

    // Gauss-theorem quadrature self-test with a transcendental pair
    let t0 = Instant::now();
    let gf = PlaneField::scalar(
        cfg.m,
        |u, v| (u + 0.5 * v).exp(),
        |u, v| (u + 0.5 * v).exp(),
        |u, v| 0.5 * (u + 0.5 * v).exp(),
    );
    let gg = PlaneField::scalar(
        cfg.m,
        |u, v| (u * v).cos(),
        |u, v| -v * (u * v).sin(),
        |u, v| -u * (u * v).sin(),
    );
    let g_res = crate::geometry::gauss_residual(&domain, &gf, &gg);
    let rep = ResidualReport::new("gauss", vec![vec![0.0; cfg.m + 1]], vec![g_res], resolution);
    record(rep, "gauss", 1e-3, t0);

    Ok((reports, passes))
}

fn config_json(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serializes")
}

/// The `verify` command: every identity at the largest resolution.
pub fn run_verify(cfg: &RunConfig) -> Result<ReportEnvelope> {
    cfg.validate()?;
    let start = Instant::now();
    let mut envelope = ReportEnvelope::new(config_json(cfg));
    let resolution = *cfg.resolutions.last().expect("validated nonempty");
    let (reports, passes) = run_identities_at(cfg, resolution)?;
    envelope.reports = reports;
    envelope.passes = passes;
    envelope.total_runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(envelope)
}

/// The `converge` command: residuals per resolution, empirical orders and
/// boundedness ratios.
pub fn run_converge(cfg: &RunConfig) -> Result<ReportEnvelope> {
    cfg.validate()?;
    let start = Instant::now();
    let mut envelope = ReportEnvelope::new(config_json(cfg));

    let mut by_identity: std::collections::BTreeMap<String, Vec<(usize, f64)>> =
        std::collections::BTreeMap::new();
    for &n in &cfg.resolutions {
        let (reports, passes) = run_identities_at(cfg, n)?;
        for rep in &reports {
            by_identity
                .entry(rep.identity.clone())
                .or_default()
                .push((rep.resolution, rep.max_residual));
        }
        envelope.reports.extend(reports);
        // the pass verdict comes from the finest resolution
        if n == *cfg.resolutions.last().unwrap() {
            envelope.passes = passes;
        }
    }
    for (identity, pairs) in &by_identity {
        if pairs.len() < 2 || pairs.iter().any(|&(n, _)| n == 0) {
            continue;
        }
        let (ns, rs): (Vec<usize>, Vec<f64>) = pairs.iter().cloned().unzip();
        envelope.orders.insert(
            identity.clone(),
            convergence_orders(&ns, &rs, tolerances::ORDER_FLOOR),
        );
    }

    // empirical boundedness across resolutions
    let mut ratios = Vec::new();
    for &n in &cfg.resolutions {
        let profile = cfg.profile.to_profile(n)?;
        let domain = build_domain(&profile, cfg.m, cfg.sphere_order)?;
        let rep = operators::boundedness_probe(&domain, cfg.p, 20, cfg.seed)?;
        ratios.push((n, rep.max_ratio));
    }
    let max = ratios.iter().map(|&(_, r)| r).fold(f64::MIN, f64::max);
    let min = ratios.iter().map(|&(_, r)| r).fold(f64::MAX, f64::min);
    let spread = (max - min) / min;
    envelope.passes.insert(
        "boundedness".into(),
        spread <= tolerances::BOUNDEDNESS_SPREAD,
    );
    envelope.reports.push(ResidualReport::new(
        "boundedness",
        ratios.iter().map(|&(n, _)| vec![n as f64]).collect(),
        ratios.iter().map(|&(_, r)| r).collect(),
        *cfg.resolutions.last().unwrap(),
    ));

    envelope.total_runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(envelope)
}

/// The `hodge` command: projection diagnostics and boundary traces per
/// resolution.
pub fn run_hodge(cfg: &RunConfig) -> Result<ReportEnvelope> {
    cfg.validate()?;
    let start = Instant::now();
    let mut envelope = ReportEnvelope::new(config_json(cfg));
    let degree = 6;
    let f = make_named(NamedStem::Conjugate, cfg.m);

    let mut comp_worst = 0.0f64;
    let mut orth_worst = 0.0f64;
    for &n in &cfg.resolutions {
        let profile = cfg.profile.to_profile(n)?;
        let domain = build_domain(&profile, cfg.m, cfg.sphere_order)?;
        let basis = crate::hodge::build_basis(&domain, degree)?;
        let split = crate::hodge::project_p(&f, &basis, &domain)?;

        // complementarity at the probe set
        let probes = make_probes(&domain, cfg.seed);
        let mut comp = 0.0f64;
        for q in &probes.interior {
            let total = &split.p_part.evaluate(q)? + &split.q_part.evaluate(q)?;
            comp = comp.max((&total - &f.evaluate(q)?).norm());
        }
        comp_worst = comp_worst.max(comp);
        let orth = split.orthogonality.iter().cloned().fold(0.0f64, f64::max);
        orth_worst = orth_worst.max(orth);
        envelope.reports.push(ResidualReport::new(
            "hodge-orthogonality",
            vec![vec![0.0; cfg.m + 1]],
            vec![orth],
            n,
        ));
        let (q_trace, p_trace) = crate::hodge::q_image_trace_check(&split, &domain, 8)?;
        envelope.reports.push(q_trace);
        envelope.reports.push(p_trace);
    }
    envelope
        .passes
        .insert("hodge-complementarity".into(), comp_worst <= 1e-10);
    envelope.passes.insert(
        "hodge-orthogonality".into(),
        orth_worst <= tolerances::HODGE_ORTHOGONALITY,
    );
    envelope.total_runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(envelope)
}

/// One parsed row of a kernel-dump input file.
#[derive(Clone, Debug)]
pub struct KernelDumpRow {
    pub q: Paravector,
    pub x: Paravector,
}

/// Parse whitespace-separated rows of 2(m+1) reals; '#' starts a comment.
pub fn parse_kernel_points(m: usize, text: &str) -> Result<Vec<KernelDumpRow>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let values: std::result::Result<Vec<f64>, _> =
            body.split_whitespace().map(|t| t.parse::<f64>()).collect();
        let values = values.map_err(|e| Error::Parse {
            line: idx + 1,
            message: format!("{e}"),
        })?;
        if values.len() != 2 * (m + 1) {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!(
                    "expected {} reals (q then x), found {}",
                    2 * (m + 1),
                    values.len()
                ),
            });
        }
        let q = Paravector::new(values[0], values[1..=m].to_vec()).expect("dimension");
        let x = Paravector::new(values[m + 1], values[m + 2..].to_vec()).expect("dimension");
        rows.push(KernelDumpRow { q, x });
    }
    Ok(rows)
}

/// Kernel values for one dump row; `None` marks a singular pair.
pub struct KernelDumpValues {
    pub s_inv: Option<Multivector>,
    pub k: Option<Multivector>,
    pub k_e0: Option<Multivector>,
}

pub fn kernel_dump_values(row: &KernelDumpRow) -> KernelDumpValues {
    let mut l0 = vec![0usize; row.q.dim() + 1];
    l0[0] = 1;
    KernelDumpValues {
        s_inv: kernels::cauchy_kernel(&row.q, &row.x).ok(),
        k: kernels::global_kernel(&row.q, &row.x).ok(),
        k_e0: kernels::derivative_kernel(&row.q, &row.x, &l0).ok(),
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render kernel-dump rows in the chosen format (17 significant digits).
pub fn render_kernel_dump(m: usize, rows: &[KernelDumpRow], format: OutputFormat) -> String {
    let blades = 1usize << m;
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str("singular");
            for prefix in ["s_inv", "k", "k_e0"] {
                for b in 0..blades {
                    out.push_str(&format!(",{prefix}_{b}"));
                }
            }
            out.push('\n');
            for row in rows {
                let vals = kernel_dump_values(row);
                let singular = vals.s_inv.is_none();
                out.push_str(if singular { "true" } else { "false" });
                for field in [&vals.s_inv, &vals.k, &vals.k_e0] {
                    match field {
                        Some(v) => {
                            for c in v.coeffs() {
                                out.push(',');
                                out.push_str(&fmt17(*c));
                            }
                        }
                        None => {
                            for _ in 0..blades {
                                out.push(',');
                            }
                        }
                    }
                }
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let vals = kernel_dump_values(row);
                    let arr = |v: &Option<Multivector>| -> serde_json::Value {
                        match v {
                            Some(mv) => serde_json::Value::Array(
                                mv.coeffs()
                                    .iter()
                                    .map(|c| serde_json::Value::String(fmt17(*c)))
                                    .collect(),
                            ),
                            None => serde_json::Value::Null,
                        }
                    };
                    serde_json::json!({
                        "singular": vals.s_inv.is_none(),
                        "s_inv": arr(&vals.s_inv),
                        "k": arr(&vals.k),
                        "k_e0": arr(&vals.k_e0),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "schema": "slicecalc/1",
                "rows": rows_json,
            }))
            .expect("json renders")
        }
    }
}

/// Dispatch a full run; kernel-dump reads `points_text`.
pub fn run(cfg: &RunConfig, points_text: Option<&str>) -> Result<RunOutput> {
    cfg.validate()?;
    match cfg.command {
        Command::Verify => Ok(RunOutput::Envelope(Box::new(run_verify(cfg)?))),
        Command::Converge => Ok(RunOutput::Envelope(Box::new(run_converge(cfg)?))),
        Command::Hodge => Ok(RunOutput::Envelope(Box::new(run_hodge(cfg)?))),
        Command::KernelDump => {
            let text = points_text
                .ok_or_else(|| Error::Usage("kernel-dump needs a points file (--points)".into()))?;
            let rows = parse_kernel_points(cfg.m, text)?;
            Ok(RunOutput::KernelDump(render_kernel_dump(
                cfg.m, &rows, cfg.format,
            )))
        }
    }
}

pub enum RunOutput {
    Envelope(Box<ReportEnvelope>),
    KernelDump(String),
}

/// Render an envelope as CSV: one row per report.
pub fn envelope_to_csv(envelope: &ReportEnvelope) -> String {
    let mut out = String::from("identity,resolution,max_residual,pass,runtime_ms\n");
    for rep in &envelope.reports {
        let pass = envelope
            .passes
            .get(&rep.identity)
            .map(|p| p.to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{:.3}\n",
            rep.identity,
            rep.resolution,
            fmt17(rep.max_residual),
            pass,
            rep.runtime_ms
        ));
    }
    out
}
