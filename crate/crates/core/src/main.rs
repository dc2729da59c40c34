use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use spin_qfi::optimize::SweepFixed;
use spin_qfi::report::{
    resolve_output, run_optimize_state, run_qfi_curve, run_sweep, write_validation,
    OptimizeStateConfig, QfiCurveConfig, StateSweepAxis, SweepConfig,
};
use spin_qfi::validate::{run_suite, Suite, ValidateOptions};
use spin_qfi::{Error, SpinQuantumNumber, SweepParam};

/// QFI of spin-S magnetometers under Ornstein-Uhlenbeck dephasing.
///
/// Units: gyromagnetic ratio = 1, so b and omega share a unit and times are
/// in its inverse. Outputs default to $SPIN_QFI_OUT_DIR (or the current
/// directory) when --out is omitted.
#[derive(Parser)]
#[command(name = "spin-qfi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the GHZ-protocol QFI F(tau) for one or more spins.
    QfiCurve(QfiCurveArgs),
    /// Sweep S, b or tau_c and record the optimal QFI yield rate.
    Sweep(SweepArgs),
    /// Optimize the spin-1 initial state over a range of tau_c (or b).
    OptimizeState(OptimizeStateArgs),
    /// Run a self-check suite and report pass/fail.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct QfiCurveArgs {
    /// Spin quantum number, e.g. 4 or 3/2. Repeat for several curves.
    #[arg(long = "s", required = true)]
    spins: Vec<SpinQuantumNumber>,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long = "tau-c", default_value_t = 0.1)]
    tau_c: f64,
    #[arg(long = "tau-min", default_value_t = 0.0)]
    tau_min: f64,
    #[arg(long = "tau-max", default_value_t = 0.5)]
    tau_max: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Swept parameter: S, b or tau_c.
    #[arg(long)]
    param: SweepParam,
    #[arg(long)]
    min: f64,
    #[arg(long)]
    max: f64,
    #[arg(long, default_value_t = 40)]
    points: usize,
    /// Spin held fixed when not swept.
    #[arg(long = "s", default_value = "1")]
    s: SpinQuantumNumber,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long = "tau-c", default_value_t = 1.0)]
    tau_c: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeStateArgs {
    /// Noise magnitude held fixed while tau_c is swept.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long = "tau-c-min", default_value_t = 1e-4)]
    tau_c_min: f64,
    #[arg(long = "tau-c-max", default_value_t = 1e2)]
    tau_c_max: f64,
    #[arg(long, default_value_t = 13)]
    points: usize,
    /// Sweep b over [b-min, b-max] at fixed --tau-c instead.
    #[arg(long = "b-min", requires_all = ["b_max", "tau_c"])]
    b_min: Option<f64>,
    #[arg(long = "b-max", requires = "b_min")]
    b_max: Option<f64>,
    #[arg(long = "tau-c", requires = "b_min")]
    tau_c: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// mc, oracle, estimator or dd.
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Monte Carlo paths per grid point (mc suite).
    #[arg(long, default_value_t = 20_000)]
    paths: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::QfiCurve(a) => {
            let out = resolve_output(a.out.as_deref(), "qfi_curve.csv");
            let config = QfiCurveConfig {
                spins: a.spins,
                b: a.b,
                tau_c: a.tau_c,
                tau_min: a.tau_min,
                tau_max: a.tau_max,
                points: a.points,
            };
            run_qfi_curve(&config, &out)?;
            println!("wrote {}", out.display());
        }
        Command::Sweep(a) => {
            let out = resolve_output(a.out.as_deref(), &format!("sweep_{}.csv", a.param));
            let config = SweepConfig {
                param: a.param,
                min: a.min,
                max: a.max,
                points: a.points,
                fixed: SweepFixed {
                    s: a.s,
                    b: a.b,
                    tau_c: a.tau_c,
                },
            };
            let (table, _) = run_sweep(&config, &out)?;
            for (label, fit) in [
                ("markovian", &table.markovian_fit),
                ("quasi-static", &table.quasi_static_fit),
            ] {
                match fit {
                    Some(f) => println!("{label} exponent: {:.4}", f.slope),
                    None => println!("{label} exponent: no fit window"),
                }
            }
            println!("wrote {}", out.display());
        }
        Command::OptimizeState(a) => {
            let out = resolve_output(a.out.as_deref(), "optimize_state.csv");
            let config = match (a.b_min, a.b_max, a.tau_c) {
                (Some(min), Some(max), Some(tau_c)) => OptimizeStateConfig {
                    axis: StateSweepAxis::B,
                    fixed: tau_c,
                    min,
                    max,
                    points: a.points,
                },
                _ => OptimizeStateConfig {
                    axis: StateSweepAxis::TauC,
                    fixed: a.b,
                    min: a.tau_c_min,
                    max: a.tau_c_max,
                    points: a.points,
                },
            };
            run_optimize_state(&config, &out)?;
            println!("wrote {}", out.display());
        }
        Command::Validate(a) => {
            let out = resolve_output(a.out.as_deref(), &format!("validate_{}.json", a.suite));
            let options = ValidateOptions {
                seed: a.seed,
                paths: a.paths,
                ..Default::default()
            };
            let started = Instant::now();
            let report = run_suite(a.suite, options)?;
            write_validation(&report, &options, started.elapsed().as_secs_f64(), &out)?;
            for c in &report.checks {
                println!(
                    "{} {}: measured {:.6e}, expected {:.6e}, tolerance {:.3e}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.measured,
                    c.expected,
                    c.tolerance
                );
            }
            println!(
                "suite {}: {}",
                a.suite,
                if report.passed { "PASS" } else { "FAIL" }
            );
            return Ok(report.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParameter { .. } | Error::InvalidSpin(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
