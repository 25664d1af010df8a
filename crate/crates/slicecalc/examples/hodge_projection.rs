//! Hodge decomposition of a non-monogenic field: project onto the slice
//! monogenic monomial span, measure the Clifford orthogonality of the
//! complement, and run the boundary-trace criterion that separates the two
//! components.
//!
//! Run with `cargo run --release --example hodge_projection`.

use slicecalc::geometry::{build_domain, ProfileRegion};
use slicecalc::hodge::{build_basis, project_p, q_image_trace_check};
use slicecalc::slicefn::{make_named, NamedStem};

fn main() -> Result<(), slicecalc::Error> {
    let m = 2;
    let f = make_named(NamedStem::Conjugate, m);

    for n in [24usize, 32, 48] {
        let profile = ProfileRegion::Disk {
            center: (0.0, 2.0),
            radius: 0.5,
            resolution: n,
        };
        let domain = build_domain(&profile, m, 16)?;
        let basis = build_basis(&domain, 6)?;
        let split = project_p(&f, &basis, &domain)?;

        let worst_orth = split.orthogonality.iter().cloned().fold(0.0f64, f64::max);
        let (q_trace, p_trace) = q_image_trace_check(&split, &domain, 8)?;
        println!(
            "n = {n:3}: orthogonality residual {worst_orth:.3e}, \
             trace of T(|x|^{{m-1}} Qf) = {:.3e}, P-part control = {:.3e}",
            q_trace.max_residual, p_trace.max_residual
        );
    }
    Ok(())
}
