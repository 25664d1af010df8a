//! Verification CLI: builds axially symmetric domains from a profile spec,
//! runs identity suites or convergence sweeps and emits machine-readable
//! reports.
//!
//! Exit codes: 0 = all identities pass, 1 = an identity failed its
//! tolerance, 2 = usage or configuration error.

use clap::Parser;

use slicecalc::config::{Command, OutputFormat, ProfileSpec, RunConfig};
use slicecalc::verify::{envelope_to_csv, run, RunOutput};

#[derive(Parser, Debug)]
#[command(
    name = "slicecalc",
    about = "Verification driver for slice Clifford analysis operators",
    after_help = "Examples:\n  \
    slicecalc --command verify --m 2 --profile kind=disk,u0=0,v0=2,R=0.5 \\\n      \
    --resolutions 32,48,64 --functions identity,conjugate,exp --out report.json\n  \
    slicecalc --command kernel-dump --m 2 --points points.txt --format csv"
)]
struct Cli {
    /// verify | converge | hodge | kernel-dump
    #[arg(long)]
    command: String,

    /// algebra dimension m (1..=6; operators support 1..=3)
    #[arg(long, default_value_t = 2)]
    m: usize,

    /// profile spec, e.g. kind=disk,u0=0,v0=2,R=0.5
    #[arg(long, default_value = "kind=disk,u0=0,v0=2,R=0.5")]
    profile: String,

    /// comma-separated strictly increasing resolutions
    #[arg(long, default_value = "32,48,64", value_delimiter = ',')]
    resolutions: Vec<usize>,

    /// sphere quadrature order
    #[arg(long, default_value_t = 16)]
    sphere_order: usize,

    /// comma-separated test functions
    /// (identity|conjugate|square|exp|inv_shift:<c>)
    #[arg(long, default_value = "identity,conjugate,exp", value_delimiter = ',')]
    functions: Vec<String>,

    /// Lebesgue exponent for the boundedness probe (needs p > max(m, 2))
    #[arg(long, default_value_t = 4.0)]
    p: f64,

    /// RNG seed for probes and random trials
    #[arg(long, default_value_t = 7)]
    seed: u64,

    /// output path (stdout when absent)
    #[arg(long)]
    out: Option<String>,

    /// json | csv
    #[arg(long, default_value = "json")]
    format: String,

    /// points file for kernel-dump: rows of 2(m+1) reals (q then x),
    /// '#' comments
    #[arg(long)]
    points: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run_cli(&cli) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    });
}

fn run_cli(cli: &Cli) -> slicecalc::Result<bool> {
    let cfg = RunConfig {
        command: Command::parse(&cli.command)?,
        m: cli.m,
        profile: ProfileSpec::parse(&cli.profile)?,
        resolutions: cli.resolutions.clone(),
        sphere_order: cli.sphere_order,
        functions: cli.functions.clone(),
        p: cli.p,
        seed: cli.seed,
        out: cli.out.clone(),
        format: OutputFormat::parse(&cli.format)?,
    };
    let points_text = match &cli.points {
        Some(path) => Some(std::fs::read_to_string(path)?),
        None => None,
    };
    let output = run(&cfg, points_text.as_deref())?;
    let (body, all_pass) = match output {
        RunOutput::Envelope(envelope) => {
            let body = match cfg.format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&*envelope).expect("report serializes")
                }
                OutputFormat::Csv => envelope_to_csv(&envelope),
            };
            for (identity, pass) in &envelope.passes {
                eprintln!("[{}] {identity}", if *pass { "PASS" } else { "FAIL" });
            }
            (body, envelope.all_pass())
        }
        RunOutput::KernelDump(body) => (body, true),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, body)?,
        None => println!("{body}"),
    }
    Ok(all_pass)
}
