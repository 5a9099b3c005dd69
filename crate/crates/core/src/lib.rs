//! Estimation of real-valued parameter vectors from complex-valued linear
//! measurements.
//!
//! A complex random vector is only fully described by its covariance
//! together with its complementary covariance, and estimators that act on
//! both the measurement and its conjugate (widely linear estimators) can
//! beat strictly linear ones whenever the parameter vector is improper.
//! Real parameter vectors are the extreme case: their complementary
//! covariance equals their covariance. This crate implements the strictly
//! linear BLUE, its real part, the widely linear BLUE on the augmented
//! model, the widely linear MMSE estimator, and the compact real-arithmetic
//! form of the widely linear BLUE for real parameters, plus a Monte Carlo
//! harness that compares their Bayesian MSE on a frequency-domain
//! measurement model.

pub mod augmented;
pub mod cli;
pub mod error;
pub mod estimators;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod simulation;

pub use augmented::{
    assemble_augmented_covariance, augment_model_matrix, augment_vector, is_proper,
    AugmentedCovariance,
};
pub use error::{Error, Result};
pub use estimators::{
    blue, bwlue, check_unbiasedness, estimate, rbwlue, rbwlue_covariance, rbwlue_gain,
    re_blue, real_model_blue, wlmmse, wlmmse_gains, EstimateResult, EstimatorKind,
    UnbiasednessReport, WidelyLinearGains,
};
pub use linalg::hermitian_pd_solve;
pub use matrix::{ComplexMatrix, ComplexVector};
pub use model::LinearModel;
pub use num_complex::Complex64;
pub use simulation::{
    analytic_bmse, dft_measurement_matrix, run_sweep, sample_proper_noise, sample_real_prior,
    trial_rng, BmseRow, BmseTable, DftConfig, GridScale, Sigma2Grid, SweepConfig,
};
