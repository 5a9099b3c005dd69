//! The linear measurement model y = H x + n.

use crate::augmented::AugmentedCovariance;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// A linear model with known noise statistics and an optional prior on the
/// parameter vector. Dimensions are validated once here so the estimators
/// can assume a consistent model.
#[derive(Debug, Clone)]
pub struct LinearModel {
    h: ComplexMatrix,
    noise: AugmentedCovariance,
    prior: Option<AugmentedCovariance>,
}

impl LinearModel {
    pub fn new(
        h: ComplexMatrix,
        noise: AugmentedCovariance,
        prior: Option<AugmentedCovariance>,
    ) -> Result<Self> {
        if h.rows() < h.cols() {
            return Err(Error::Dimension(format!(
                "model is underdetermined: {} measurements for {} parameters",
                h.rows(),
                h.cols()
            )));
        }
        if noise.dim() != h.rows() {
            return Err(Error::Dimension(format!(
                "noise covariance is {0}x{0} but H has {1} rows",
                noise.dim(),
                h.rows()
            )));
        }
        if let Some(p) = &prior {
            if p.dim() != h.cols() {
                return Err(Error::Dimension(format!(
                    "prior covariance is {0}x{0} but H has {1} columns",
                    p.dim(),
                    h.cols()
                )));
            }
        }
        Ok(LinearModel { h, noise, prior })
    }

    /// Model with proper noise of covariance `c_nn` and no prior.
    pub fn with_proper_noise(h: ComplexMatrix, c_nn: ComplexMatrix) -> Result<Self> {
        let noise = AugmentedCovariance::proper(c_nn)?;
        Self::new(h, noise, None)
    }

    pub fn h(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn noise(&self) -> &AugmentedCovariance {
        &self.noise
    }

    pub fn prior(&self) -> Option<&AugmentedCovariance> {
        self.prior.as_ref()
    }

    /// Number of measurements.
    pub fn ny(&self) -> usize {
        self.h.rows()
    }

    /// Number of parameters.
    pub fn nx(&self) -> usize {
        self.h.cols()
    }
}
