//! The Teodorescu transform as a right inverse of G, and its exterior
//! monogenicity.
//!
//! Run with `cargo run --release --example teodorescu`.

use slicecalc::clifford::Paravector;
use slicecalc::geometry::{build_domain, ProfileRegion};
use slicecalc::operators::{
    exterior_monogenicity_check, right_inverse_residual, teodorescu, FieldSample,
};
use slicecalc::slicefn::{make_named, NamedStem};
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

    let f = make_named(NamedStem::Square, m);
    let sample = FieldSample::Slice(&f);

    // pointwise values inside and outside
    let q_in = Paravector::new(0.1, vec![0.0, 2.1])?;
    let q_out = Paravector::new(1.2, vec![0.0, 2.8])?;
    println!(
        "T f at an interior point: {}",
        teodorescu(&sample, &domain, &q_in)?
    );
    println!(
        "T f at an exterior point: {}",
        teodorescu(&sample, &domain, &q_out)?
    );

    // G T f = f on the domain (volume and per-slice forms)
    let (vol, slice) = right_inverse_residual(&f, &domain, &probes.interior)?;
    println!(
        "right inverse: |G T f - f| = {:.3e}, slice form = {:.3e}",
        vol.max_residual, slice.max_residual
    );

    // G T f = 0 outside the closure, regardless of the integrand
    let rep = exterior_monogenicity_check(&sample, &domain, &probes.exterior)?;
    println!(
        "exterior monogenicity: max |G T f| = {:.3e} over {} probes",
        rep.max_residual,
        rep.residuals.len()
    );
    Ok(())
}
