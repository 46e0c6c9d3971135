use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qdot_erasure::ErasureTarget;
use qdot_erasure_cli::analyze::analyze;
use qdot_erasure_cli::lemmas::run_lemmas;
use qdot_erasure_cli::protocol::run_protocol;
use qdot_erasure_cli::sweep::{occupation_curve, sweep, write_occupation_csv, write_sweep_csv};
use qdot_erasure_cli::{numerics_config, CliError, DeviceSpec};

/// Work cost of erasing a quantum-dot charge bit.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Zero,
    One,
}

#[derive(Subcommand)]
enum Command {
    /// Erasure costs, energy scales and bound check for one device.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Also report approximate erasure to occupation eta (repeatable).
        #[arg(long = "eta")]
        eta: Vec<f64>,
    },
    /// Average cost over a bias × broadening-width grid, as CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Largest bias, μeV.
        #[arg(long)]
        bias_max: f64,
        /// Largest ħΓ_tot, μeV.
        #[arg(long)]
        width_max: f64,
        /// Grid points per axis.
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Steady-state occupation with and without broadening, as CSV.
    Occupation {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu_max: f64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate a finite-speed erasure; trajectory CSV plus a summary line.
    Protocol {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        /// Ramp duration in units of 1/Γ_tot.
        #[arg(long)]
        duration: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Randomized check of the MAD sandwich inequalities.
    Lemmas {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Add a trial against a one-cell spike, where the lower bound is tight.
        #[arg(long)]
        near_delta: bool,
    },
}

fn write_file(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<(), CliError> {
    let context = || format!("cannot write {}", path.display());
    let file = File::create(path).map_err(|e| CliError::io(context(), e))?;
    let mut out = BufWriter::new(file);
    write(&mut out)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io(context(), e))
}

/// Returns `Ok(false)` when a checked property is violated.
fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = numerics_config()?;
    match cli.command {
        Command::Analyze { config, eta } => {
            let spec = DeviceSpec::load(&config)?;
            let report = analyze(&spec, &eta, &cfg)?;
            print!("{}\n{}", report.render_table(), report.render_machine());
            Ok(report.bound_holds())
        }
        Command::Sweep {
            config,
            bias_max,
            width_max,
            points,
            out,
        } => {
            let spec = DeviceSpec::load(&config)?;
            let rows = sweep(&spec, bias_max, width_max, points, &cfg)?;
            write_file(&out, |w| write_sweep_csv(&rows, w))?;
            let violated =
                rows.iter().any(
                    |r| match (r.w_bar.finite(), r.bound_lower.finite(), r.bound_upper.finite()) {
                        (Some(w), Some(lo), Some(hi)) => {
                            let slack = qdot_erasure::erasure::BOUND_SLACK * hi;
                            w < lo - slack || w > hi + slack
                        }
                        _ => false,
                    },
                );
            Ok(!violated)
        }
        Command::Occupation {
            config,
            mu_min,
            mu_max,
            points,
            out,
        } => {
            let spec = DeviceSpec::load(&config)?;
            let rows = occupation_curve(&spec, mu_min, mu_max, points, &cfg)?;
            write_file(&out, |w| write_occupation_csv(&rows, w))?;
            Ok(true)
        }
        Command::Protocol {
            config,
            target,
            duration,
            out,
        } => {
            let spec = DeviceSpec::load(&config)?;
            let target = match target {
                Target::Zero => ErasureTarget::Zero,
                Target::One => ErasureTarget::One,
            };
            let result = run_protocol(&spec, target, duration, &cfg)?;
            write_file(&out, |w| result.trajectory.write_csv(w))?;
            println!("{}", result.summary());
            Ok(true)
        }
        Command::Lemmas {
            trials,
            seed,
            near_delta,
        } => {
            let result = run_lemmas(trials, seed, near_delta)?;
            print!("{}", result.report());
            Ok(result.violations() == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
