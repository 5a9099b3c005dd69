use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wlest::cli::{cmd_estimate, cmd_plot, cmd_simulate};
use wlest::estimators::EstimatorKind;

#[derive(Parser)]
#[command(
    name = "wlest",
    version,
    about = "Linear estimation of real-valued parameters from complex measurements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an estimator to measurements read from files
    Estimate {
        /// Model JSON file (H, noise statistics, optional prior)
        #[arg(long)]
        model: PathBuf,
        /// Measurement CSV file with 're,im' rows
        #[arg(long)]
        measurements: PathBuf,
        /// One of: blue, re_blue, bwlue, wlmmse, rbwlue
        #[arg(long, value_parser = parse_estimator)]
        estimator: EstimatorKind,
        /// Output CSV path for the estimate
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo BMSE sweep over a noise power grid
    Simulate {
        /// Sweep config JSON file
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path for the BMSE table
        #[arg(long)]
        out: PathBuf,
        /// Override the trial count from the config
        #[arg(long)]
        trials: Option<u64>,
        /// Override the RNG seed from the config
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Render a results CSV as a log-log SVG plot
    Plot {
        /// Input results CSV (as written by simulate)
        #[arg(long = "in")]
        input: PathBuf,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_estimator(s: &str) -> Result<EstimatorKind, String> {
    s.parse().map_err(|e: wlest::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    let result = match cli.command {
        Command::Estimate {
            model,
            measurements,
            estimator,
            out,
        } => cmd_estimate(&model, &measurements, estimator, &out),
        Command::Simulate {
            config,
            out,
            trials,
            seed,
        } => cmd_simulate(&config, &out, trials, seed),
        Command::Plot { input, out } => cmd_plot(&input, &out),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let mut cause = std::error::Error::source(&err);
            while let Some(c) = cause {
                eprintln!("  caused by: {c}");
                cause = c.source();
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
