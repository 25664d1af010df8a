//! Refinement sweep over a list of resolutions: residuals per identity,
//! empirical orders and the L^p boundedness ratios, through the same
//! driver the CLI uses.
//!
//! Run with `cargo run --release --example convergence_sweep`.

use slicecalc::config::{Command, OutputFormat, ProfileSpec, RunConfig};
use slicecalc::verify::run_converge;

fn main() -> Result<(), slicecalc::Error> {
    let cfg = RunConfig {
        command: Command::Converge,
        m: 2,
        profile: ProfileSpec::disk(0.0, 2.0, 0.5),
        resolutions: vec![16, 24, 32],
        sphere_order: 16,
        functions: vec!["conjugate".into()],
        p: 4.0,
        seed: 7,
        out: None,
        format: OutputFormat::Json,
    };
    let envelope = run_converge(&cfg)?;

    println!("residuals per identity and resolution:");
    for rep in &envelope.reports {
        println!(
            "  {:38} n = {:3}  max residual {:.3e}",
            rep.identity, rep.resolution, rep.max_residual
        );
    }
    println!("\nempirical orders (None = at the numerical floor):");
    for (identity, orders) in &envelope.orders {
        let rendered: Vec<String> = orders
            .iter()
            .map(|o| o.map_or("floor".into(), |v| format!("{v:.2}")))
            .collect();
        println!("  {identity:38} {}", rendered.join(", "));
    }
    println!("\npass flags: {:?}", envelope.passes);
    Ok(())
}
