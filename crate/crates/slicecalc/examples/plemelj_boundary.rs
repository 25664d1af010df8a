//! Boundary behavior: the principal-value operator S, the Plemelj jump
//! relations for the one-sided limits of F, and the extension criterion
//! that recognizes boundary values of slice monogenic functions.
//!
//! Run with `cargo run --release --example plemelj_boundary`.

use slicecalc::clifford::{Paravector, UnitVector};
use slicecalc::geometry::{build_domain, ProfileRegion};
use slicecalc::operators::{
    extension_criterion_check, plemelj_jump_check, plemelj_singular, BoundarySample,
};
use slicecalc::slicefn::{make_named, make_polynomial, NamedStem};

fn main() -> Result<(), slicecalc::Error> {
    let m = 2;
    let profile = ProfileRegion::Disk {
        center: (0.0, 2.0),
        radius: 0.5,
        resolution: 64,
    };
    let domain = build_domain(&profile, m, 16)?;
    let i_ref = UnitVector::axis(m, m);

    // S applied to the constant 1 gives exactly 1/2: constants extend
    // slice monogenically into the domain
    let one = make_polynomial(&[slicecalc::clifford::Multivector::one(m)]);
    let (u, v) = domain.boundary_quad().nodes()[10];
    let q = Paravector::from_slice_coords(u, v, &i_ref);
    let s1 = plemelj_singular(&BoundarySample::Slice(&one), &domain, &q)?;
    println!("S 1 on the boundary = {s1}");

    // jump relations: interior limit = f/2 + S f, exterior = -f/2 + S f
    let bq = domain.boundary_quad();
    let probes: Vec<Paravector> = (0..4)
        .map(|k| {
            let (u, v) = bq.nodes()[k * bq.len() / 4];
            Paravector::from_slice_coords(u, v, &i_ref)
        })
        .collect();
    for name in [NamedStem::Identity, NamedStem::Exp] {
        let f = make_named(name, m);
        let rep = plemelj_jump_check(&f, &domain, &probes)?;
        println!(
            "{name:?}: max Plemelj residual (both limits and the jump) = {:.3e}",
            rep.max_residual
        );
    }

    // the extension criterion separates monogenic traces from the rest
    for name in [NamedStem::Square, NamedStem::Conjugate] {
        let f = make_named(name, m);
        let check = extension_criterion_check(&BoundarySample::Slice(&f), &domain, 16, 5e-3)?;
        println!(
            "{name:?}: interior residual {:.3e} ({}), exterior residual {:.3e} ({})",
            check.interior_residual,
            if check.interior_extendable {
                "extends inside"
            } else {
                "no interior extension"
            },
            check.exterior_residual,
            if check.exterior_extendable {
                "extends outside"
            } else {
                "no exterior extension"
            },
        );
    }
    Ok(())
}
