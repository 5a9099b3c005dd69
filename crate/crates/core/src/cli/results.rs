//! CSV rendering and parsing for sweep results, measurements, and estimates.
//!
//! Floats are written with 17 significant digits so that re-reading a file
//! reproduces the exact f64 values; lines end with `\n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimators::EstimateResult;
use crate::matrix::ComplexVector;
use crate::simulation::BmseTable;

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders a sweep result: header `sigma2,<estimator names>` and one row per
/// grid point.
pub fn render_results_csv(table: &BmseTable) -> String {
    let mut out = String::from("sigma2");
    for kind in &table.estimators {
        out.push(',');
        out.push_str(kind.name());
    }
    out.push('\n');
    for row in &table.rows {
        out.push_str(&format_float(row.sigma2));
        for v in &row.bmse {
            out.push(',');
            out.push_str(&format_float(*v));
        }
        out.push('\n');
    }
    out
}

/// Parsed sweep results: `series[j][i]` is estimator j at grid point i.
#[derive(Debug, Clone)]
pub struct ResultsData {
    pub names: Vec<String>,
    pub sigma2: Vec<f64>,
    pub series: Vec<Vec<f64>>,
}

fn parse_err(path: &str, detail: String) -> Error {
    Error::Parse {
        path: path.to_string(),
        detail,
    }
}

pub fn parse_results_csv(text: &str, path: &str) -> Result<ResultsData> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| parse_err(path, "file is empty".into()))?;
    let mut fields = header.split(',');
    if fields.next() != Some("sigma2") {
        return Err(parse_err(path, "header must start with 'sigma2'".into()));
    }
    let names: Vec<String> = fields.map(str::to_string).collect();
    if names.is_empty() || names.iter().any(String::is_empty) {
        return Err(parse_err(path, "header needs at least one named estimator column".into()));
    }

    let mut sigma2 = Vec::new();
    let mut series = vec![Vec::new(); names.len()];
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let values: Vec<&str> = line.split(',').collect();
        if values.len() != names.len() + 1 {
            return Err(parse_err(
                path,
                format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 2,
                    names.len() + 1,
                    values.len()
                ),
            ));
        }
        let mut parsed = values.iter().map(|v| {
            v.parse::<f64>()
                .map_err(|_| parse_err(path, format!("line {}: '{v}' is not a number", lineno + 2)))
        });
        sigma2.push(parsed.next().unwrap()?);
        for s in series.iter_mut() {
            s.push(parsed.next().unwrap()?);
        }
    }
    if sigma2.is_empty() {
        return Err(parse_err(path, "no data rows".into()));
    }
    for w in sigma2.windows(2) {
        if !(w[1] > w[0]) {
            return Err(parse_err(path, "sigma2 column must be strictly increasing".into()));
        }
    }
    Ok(ResultsData {
        names,
        sigma2,
        series,
    })
}

/// Renders an estimate as `re,im` rows, with a third `var` column holding
/// the error variance per component when the estimator provides one.
pub fn render_estimate_csv(result: &EstimateResult) -> String {
    let mut out = String::new();
    match &result.covariance {
        Some(cov) => {
            out.push_str("re,im,var\n");
            for (i, z) in result.x_hat.iter().enumerate() {
                out.push_str(&format_float(z.re));
                out.push(',');
                out.push_str(&format_float(z.im));
                out.push(',');
                out.push_str(&format_float(cov.get(i, i).re));
                out.push('\n');
            }
        }
        None => {
            out.push_str("re,im\n");
            for z in &result.x_hat {
                out.push_str(&format_float(z.re));
                out.push(',');
                out.push_str(&format_float(z.im));
                out.push('\n');
            }
        }
    }
    out
}

/// Parses a measurement vector from `re,im` rows.
pub fn parse_measurements_csv(text: &str, path: &str) -> Result<ComplexVector> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| parse_err(path, "file is empty".into()))?;
    if header.trim() != "re,im" {
        return Err(parse_err(path, format!("expected header 're,im', found '{header}'")));
    }
    let mut y = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let (re, im) = match (parts.next(), parts.next(), parts.next()) {
            (Some(re), Some(im), None) => (re, im),
            _ => {
                return Err(parse_err(
                    path,
                    format!("line {}: expected two fields 're,im'", lineno + 2),
                ))
            }
        };
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| parse_err(path, format!("line {}: '{v}' is not a number", lineno + 2)))
        };
        y.push(Complex64::new(parse(re)?, parse(im)?));
    }
    if y.is_empty() {
        return Err(parse_err(path, "no data rows".into()));
    }
    Ok(y)
}

pub fn render_measurements_csv(y: &[Complex64]) -> String {
    let mut out = String::from("re,im\n");
    for z in y {
        out.push_str(&format_float(z.re));
        out.push(',');
        out.push_str(&format_float(z.im));
        out.push('\n');
    }
    out
}
