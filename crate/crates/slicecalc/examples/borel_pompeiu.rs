//! The Borel-Pompeiu identity F f + T(Gf) = f, and its monogenic special
//! case, the Cauchy reproduction formula.
//!
//! Run with `cargo run --release --example borel_pompeiu`.

use slicecalc::geometry::{build_domain, ProfileRegion};
use slicecalc::operators::{borel_pompeiu_residual, cauchy_boundary, BoundarySample};
use slicecalc::slicefn::{make_named, GConfig, NamedStem};
use slicecalc::verify::make_probes;

fn main() -> Result<(), slicecalc::Error> {
    let m = 2;
    let profile = ProfileRegion::Disk {
        center: (0.0, 2.0),
        radius: 0.5,
        resolution: 48,
    };
    let domain = build_domain(&profile, m, 16)?;
    let probes = make_probes(&domain, 7);
    let cfg = GConfig::default();

    // the conjugate stem has G f = 2, so the volume term is active
    let conj = make_named(NamedStem::Conjugate, m);
    let rep = borel_pompeiu_residual(&conj, &domain, &probes.interior, &cfg)?;
    println!(
        "Borel-Pompeiu (conjugate): max residual {:.3e} over {} probes",
        rep.max_residual,
        rep.residuals.len()
    );

    // slice monogenic inputs reduce to the Cauchy formula: F f = f inside,
    // F f = 0 outside
    for name in [NamedStem::Identity, NamedStem::Square, NamedStem::Exp] {
        let f = make_named(name, m);
        let fb = BoundarySample::Slice(&f);
        let mut worst = 0.0f64;
        for q in &probes.interior {
            let got = cauchy_boundary(&fb, &domain, q)?.value;
            worst = worst.max((&got - &f.evaluate(q)?).norm());
        }
        let mut outside = 0.0f64;
        for q in &probes.exterior {
            outside = outside.max(cauchy_boundary(&fb, &domain, q)?.value.norm());
        }
        println!("{name:?}: |F f - f| inside = {worst:.3e}, |F f| outside = {outside:.3e}");
    }
    Ok(())
}
