use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use specball::{ClassifyOptions, C64};
use specball_cli::commands::{self, CurveChoice, CurveOptions, Outcome};
use specball_cli::{json, read_matrix, CliError};

#[derive(Parser)]
#[command(name = "specball", version, about = "Numerics on the spectral ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Matrix document (`-` for standard input)
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the six non-derogatory criteria
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Symmetrization map, and its differential along --target
    Sigma {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Optimal eigenvalue pairing and an explicit disc from --input to --target
    Bounds {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        target: PathBuf,
        /// Disc parameter at which the target is reached (default: pairing value + 0.01)
        #[arg(long)]
        s1: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Boundary Pick problem and Blaschke product for the spectrum of --input
    Lemma8 {
        #[command(flatten)]
        input: Input,
    },
    /// Constant-spectrum curve from --input along or towards --target
    Curve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = CurveChoice::Iso)]
        kind: CurveChoice,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        /// Allowed eigenvalue deviation along the curve
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Convex hull membership and a two-term decomposition
    Hull {
        #[command(flatten)]
        input: Input,
    },
    /// Compare values at tI with limits along non-derogatory base points
    Discontinuity {
        #[command(flatten)]
        input: Input,
        /// Base point as `re` or `re,im`
        #[arg(long, default_value = "0", value_parser = parse_complex)]
        t: C64,
    },
    /// Random matrices in the spectral ball
    Sample {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err("expected `re` or `re,im`".into()),
    }
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    Ok(match cmd {
        Command::Classify { input, tol, seed } => {
            commands::classify_cmd(&read_matrix(&input.input)?, ClassifyOptions { tol, seed })?
        }
        Command::Sigma { input, target } => {
            let a = read_matrix(&input.input)?;
            let b = target.map(|p| read_matrix(&p)).transpose()?;
            commands::sigma_cmd(&a, b.as_ref())?
        }
        Command::Bounds {
            input,
            target,
            s1,
            tol,
        } => commands::bounds_cmd(&read_matrix(&input.input)?, &read_matrix(&target)?, s1, tol)?,
        Command::Lemma8 { input } => commands::lemma8_cmd(&read_matrix(&input.input)?)?,
        Command::Curve {
            input,
            target,
            kind,
            samples,
            radius,
            tol,
        } => commands::curve_cmd(
            &read_matrix(&input.input)?,
            &read_matrix(&target)?,
            kind,
            CurveOptions {
                samples,
                radius,
                tol,
            },
        )?,
        Command::Hull { input } => commands::hull_cmd(&read_matrix(&input.input)?)?,
        Command::Discontinuity { input, t } => {
            let b = read_matrix(&input.input)?;
            commands::discontinuity_cmd(&input.input.display().to_string(), &b, t)?
        }
        Command::Sample {
            n,
            samples,
            seed,
            tol,
        } => commands::sample_cmd(n, samples, seed, tol)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(
                std::io::stdout().lock(),
                "{}",
                json::to_string(&outcome.report)
            );
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("specball: verification failed");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("specball: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
