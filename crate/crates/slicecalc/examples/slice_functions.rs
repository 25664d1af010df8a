//! Stem functions, induced slice functions, the representation formula and
//! the slice Cauchy-Riemann operator G.
//!
//! Run with `cargo run --release --example slice_functions`.

use slicecalc::clifford::{Multivector, Paravector, UnitVector};
use slicecalc::slicefn::{make_named, make_polynomial, representation_combine, GConfig, NamedStem};

fn main() -> Result<(), slicecalc::Error> {
    let m = 2;
    let q = Paravector::new(0.8, vec![0.6, 1.1])?;
    let cfg = GConfig::default();

    // the named corpus
    for name in [
        NamedStem::Identity,
        NamedStem::Conjugate,
        NamedStem::Square,
        NamedStem::Exp,
        NamedStem::InvShift(4.0),
    ] {
        let f = make_named(name, m);
        let value = f.evaluate(&q)?;
        let g = f.apply_g(&q, &cfg)?;
        println!("{name:?}: f(q) = {value}, G f(q) = {g}");
    }

    // a right-module polynomial: f(q) = q^2 e12 + q
    let f = make_polynomial(&[
        Multivector::zero(m),
        Multivector::one(m),
        Multivector::basis_blade(m, &[1, 2]),
    ]);
    println!("polynomial f(q) = {}", f.evaluate(&q)?);
    let probes: Vec<(f64, f64)> = (1..6)
        .map(|k| (0.1 * k as f64, 0.5 + 0.2 * k as f64))
        .collect();
    let (monogenic, residual) = f.is_slice_monogenic(&probes, 1e-10)?;
    println!("polynomial slice monogenic: {monogenic} (CR residual {residual:.2e})");

    // the representation formula reconstructs f(q) from two mirrored slice
    // values on any plane C_I
    let i = UnitVector::from_direction(&[1.0, 3.0])?;
    let (u, v, i_q) = q.slice_coordinates();
    let f_up = f.evaluate_on_slice(&i, u, v)?;
    let f_dn = f.evaluate_on_slice(&i, u, -v)?;
    let rebuilt = representation_combine(&f_up, &f_dn, &i, &i_q.unwrap());
    println!(
        "representation formula residual: {:.3e}",
        (&rebuilt - &f.evaluate(&q)?).norm()
    );
    Ok(())
}
