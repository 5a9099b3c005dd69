//! JSON model files: the measurement matrix, noise statistics, and an
//! optional prior, with complex matrices split into `re` and `im` arrays.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::augmented::AugmentedCovariance;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::model::LinearModel;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl MatrixJson {
    pub fn to_matrix(&self, what: &str) -> Result<ComplexMatrix> {
        let expected = self.rows * self.cols;
        if self.re.len() != expected || self.im.len() != expected {
            return Err(Error::Dimension(format!(
                "{what}: re has {} and im has {} entries, expected rows*cols = {expected}",
                self.re.len(),
                self.im.len()
            )));
        }
        let data = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data)
    }

    pub fn from_matrix(m: &ComplexMatrix) -> MatrixJson {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            re: m.data().iter().map(|z| z.re).collect(),
            im: m.data().iter().map(|z| z.im).collect(),
        }
    }
}

/// Covariance pair; a missing `C_tilde` means the vector is proper.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceJson {
    #[serde(rename = "C")]
    pub c: MatrixJson,
    #[serde(rename = "C_tilde", default, skip_serializing_if = "Option::is_none")]
    pub c_tilde: Option<MatrixJson>,
}

impl CovarianceJson {
    fn to_covariance(&self, what: &str) -> Result<AugmentedCovariance> {
        let c = self.c.to_matrix(&format!("{what}.C"))?;
        let ct = match &self.c_tilde {
            Some(j) => j.to_matrix(&format!("{what}.C_tilde"))?,
            None => ComplexMatrix::zeros(c.rows(), c.cols()),
        };
        AugmentedCovariance::new(c, ct)
    }

    fn from_covariance(cov: &AugmentedCovariance) -> CovarianceJson {
        CovarianceJson {
            c: MatrixJson::from_matrix(cov.c()),
            c_tilde: Some(MatrixJson::from_matrix(cov.ct())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(rename = "H")]
    pub h: MatrixJson,
    pub noise: CovarianceJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<CovarianceJson>,
}

impl ModelFile {
    pub fn to_model(&self) -> Result<LinearModel> {
        let h = self.h.to_matrix("H")?;
        let noise = self.noise.to_covariance("noise")?;
        let prior = match &self.prior {
            Some(p) => Some(p.to_covariance("prior")?),
            None => None,
        };
        LinearModel::new(h, noise, prior)
    }

    pub fn from_model(model: &LinearModel) -> ModelFile {
        ModelFile {
            h: MatrixJson::from_matrix(model.h()),
            noise: CovarianceJson::from_covariance(model.noise()),
            prior: model.prior().map(CovarianceJson::from_covariance),
        }
    }
}

/// Reads and validates a model file, including the covariance structure
/// checks that construction performs.
pub fn parse_model_file(path: &Path) -> Result<LinearModel> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: ModelFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    file.to_model()
}

/// Serializes a model back to the file format.
pub fn render_model_file(model: &LinearModel) -> String {
    let mut s = serde_json::to_string_pretty(&ModelFile::from_model(model))
        .expect("model serialization cannot fail");
    s.push('\n');
    s
}
