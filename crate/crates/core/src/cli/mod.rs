//! File formats and command implementations behind the `wlest` binary.

pub mod model_file;
pub mod plot;
pub mod results;

use std::fs;
use std::path::Path;

pub use model_file::{parse_model_file, render_model_file, CovarianceJson, MatrixJson, ModelFile};
pub use plot::render_loglog_svg;
pub use results::{
    format_float, parse_measurements_csv, parse_results_csv, render_estimate_csv,
    render_measurements_csv, render_results_csv, ResultsData,
};

use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorKind};
use crate::simulation::{run_sweep, SweepConfig};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Applies one estimator to measurements from a CSV file, writing the
/// estimate (and per-component error variance when available) as CSV.
pub fn cmd_estimate(
    model_path: &Path,
    measurements_path: &Path,
    kind: EstimatorKind,
    out_path: &Path,
) -> Result<()> {
    let model = parse_model_file(model_path)?;
    let text = read(measurements_path)?;
    let y = parse_measurements_csv(&text, &measurements_path.display().to_string())?;
    let result = estimate(&model, kind, &y)?;
    write(out_path, &render_estimate_csv(&result))
}

/// Runs the Monte Carlo sweep described by a JSON config, with optional
/// trial-count and seed overrides, and writes the BMSE table as CSV.
pub fn cmd_simulate(
    config_path: &Path,
    out_path: &Path,
    trials: Option<u64>,
    seed: Option<u64>,
) -> Result<()> {
    if trials == Some(0) {
        return Err(Error::Usage("--trials must be at least 1".into()));
    }
    let text = read(config_path)?;
    let mut config: SweepConfig = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: config_path.display().to_string(),
        detail: e.to_string(),
    })?;
    if let Some(t) = trials {
        config.trials = t;
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    let table = run_sweep(&config)?;
    write(out_path, &render_results_csv(&table))
}

/// Renders a results CSV as a log-log SVG plot.
pub fn cmd_plot(results_path: &Path, out_path: &Path) -> Result<()> {
    let text = read(results_path)?;
    let data = parse_results_csv(&text, &results_path.display().to_string())?;
    let svg = render_loglog_svg(&data)?;
    write(out_path, &svg)
}
