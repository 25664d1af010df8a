//! Basics of the Clifford algebra layer: blades, products, conjugation,
//! paravectors and slice coordinates.
//!
//! Run with `cargo run --release --example clifford_arithmetic`.

use slicecalc::clifford::{Multivector, Paravector};

fn main() -> Result<(), slicecalc::Error> {
    let m = 3;

    // generators anticommute and square to -1
    let e1 = Multivector::basis_vector(m, 1);
    let e2 = Multivector::basis_vector(m, 2);
    println!("e1 e2      = {}", &e1 * &e2);
    println!("e2 e1      = {}", &e2 * &e1);
    println!("e1 e1      = {}", &e1 * &e1);

    // a general element and its grade parts
    let x = Multivector::from_coeffs(m, vec![1.0, 2.0, 0.0, -1.0, 0.5, 0.0, 0.0, 3.0])?;
    println!("x          = {x}");
    for k in 0..=m {
        println!("  grade {k}  = {}", x.grade_part(k));
    }
    println!("conj(x)    = {}", x.conjugate());
    println!("|x|        = {:.6}", x.norm());

    // paravectors are the points of R^{m+1}; products of a paravector with
    // its conjugate are real
    let p = Paravector::new(1.0, vec![2.0, -1.0, 0.5])?;
    println!("p          = {p}");
    println!("p conj(p)  = {}", p.product(&p.conjugate()));
    println!("p^{{-1}} p   = {}", p.inverse()?.product(&p));

    // slice coordinates x = u + I_x v
    let (u, v, dir) = p.slice_coordinates();
    println!(
        "slice coords: u = {u}, v = {v:.6}, I = {}",
        dir.expect("p is off the real axis").to_multivector()
    );
    Ok(())
}
