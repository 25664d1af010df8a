//! The slice Cauchy kernel S⁻¹(q, x), its α/β decomposition on a slice
//! plane, the global kernel K and derivative kernels.
//!
//! Run with `cargo run --release --example cauchy_kernels`.

use slicecalc::clifford::{Paravector, UnitVector};
use slicecalc::kernels::{
    cauchy_kernel, cauchy_kernel_diagnostics, derivative_kernel, global_kernel,
    kernel_slice_decomposition,
};

fn main() -> Result<(), slicecalc::Error> {
    let q = Paravector::new(0.3, vec![0.2, 0.7])?;
    let x = Paravector::new(1.1, vec![0.4, -0.8])?;

    let s = cauchy_kernel(&q, &x)?;
    let k = global_kernel(&q, &x)?;
    println!("S^-1(q, x) = {s}");
    println!("K(q, x)    = {k}");

    // distances to the two in-plane singular points drive the quadrature
    // refinement choices
    let diag = cauchy_kernel_diagnostics(&q, &x)?;
    println!(
        "|x - q_I| = {:.4}, |x - q_-I| = {:.4}",
        diag.q_distance_i, diag.q_distance_mi
    );

    // on a slice plane the kernel splits into two plane Cauchy kernels
    let i = UnitVector::from_direction(&[1.0, -2.0])?;
    let (ab, combined) = kernel_slice_decomposition(&q, &i, (1.1, 0.9))?;
    let x_in_plane = Paravector::from_slice_coords(1.1, 0.9, &i);
    let direct = cauchy_kernel(&q, &x_in_plane)?;
    println!("alpha = {}", ab.alpha);
    println!("beta  = {}", ab.beta);
    println!(
        "decomposition residual = {:.3e}",
        (&combined - &direct).norm()
    );

    // derivative kernels K_l for |l| <= 2, checked here against a central
    // difference of K in q0
    let k_e0 = derivative_kernel(&q, &x, &[1, 0, 0])?;
    let h = 1e-6;
    let mut qp = q.clone();
    qp.scalar += h;
    let mut qm = q.clone();
    qm.scalar -= h;
    let fd = (&global_kernel(&qp, &x)? - &global_kernel(&qm, &x)?).scale(0.5 / h);
    println!(
        "K_(1,0,0)  = {k_e0}\n  vs FD residual = {:.3e}",
        (&k_e0 - &fd).norm()
    );

    // singular configurations are reported, not silently evaluated
    let on_sphere = Paravector::new(1.1, vec![0.0, (0.4f64.powi(2) + 0.8f64.powi(2)).sqrt()])?;
    println!("q on [x]: {:?}", cauchy_kernel(&on_sphere, &x).err());
    Ok(())
}
