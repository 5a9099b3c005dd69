//! Monte Carlo comparison of the estimators on a frequency-domain model.
//!
//! The scenario: a real-valued impulse response of `cols` taps is observed
//! through the first `rows` bins of a `size`-point DFT, corrupted by proper
//! complex Gaussian noise of power sigma2. Sweeping sigma2 over a log grid
//! and averaging squared errors over random draws of the parameter vector
//! yields a Bayesian MSE curve per estimator.
//!
//! Trials are independent ChaCha streams keyed by (grid index, trial index),
//! and the reduction runs in a fixed order, so results are bitwise identical
//! no matter how many worker threads run the sweep.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::augmented::AugmentedCovariance;
use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorKind};
use crate::linalg::{psd_lower_real, HermitianCholesky, RealSpdCholesky};
use crate::matrix::{vec_add, ComplexMatrix, ComplexVector, ABS_FLOOR, SYMMETRY_TOL};
use crate::model::LinearModel;

/// Measurement matrix geometry: a `rows` x `cols` block of the `size`-point
/// DFT matrix, scaled by the sampling interval.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DftConfig {
    #[serde(default = "default_dft_size")]
    pub size: usize,
    #[serde(default = "default_dft_rows")]
    pub rows: usize,
    #[serde(default = "default_dft_cols")]
    pub cols: usize,
    #[serde(rename = "Ts", default = "default_ts")]
    pub ts: f64,
}

impl Default for DftConfig {
    fn default() -> Self {
        DftConfig {
            size: default_dft_size(),
            rows: default_dft_rows(),
            cols: default_dft_cols(),
            ts: default_ts(),
        }
    }
}

fn default_dft_size() -> usize {
    40
}
fn default_dft_rows() -> usize {
    20
}
fn default_dft_cols() -> usize {
    5
}
fn default_ts() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GridScale {
    #[default]
    Log,
}

/// Inclusive noise power grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sigma2Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: GridScale,
}

impl Default for Sigma2Grid {
    fn default() -> Self {
        Sigma2Grid {
            min: 1e-3,
            max: 1e2,
            points: 11,
            scale: GridScale::Log,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub dft: DftConfig,
    #[serde(default)]
    pub sigma2: Sigma2Grid,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_estimators")]
    pub estimators: Vec<EstimatorKind>,
}

fn default_trials() -> u64 {
    2000
}
fn default_seed() -> u64 {
    12345
}
fn default_estimators() -> Vec<EstimatorKind> {
    EstimatorKind::ALL.to_vec()
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            dft: DftConfig::default(),
            sigma2: Sigma2Grid::default(),
            trials: default_trials(),
            seed: default_seed(),
            estimators: default_estimators(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let d = &self.dft;
        if d.size == 0 || d.rows == 0 || d.cols == 0 {
            return Err(Error::Validation("dft size, rows, and cols must all be positive".into()));
        }
        if d.rows > d.size || d.cols > d.size {
            return Err(Error::Validation(format!(
                "dft block {}x{} does not fit in a {}-point DFT",
                d.rows, d.cols, d.size
            )));
        }
        if d.rows < d.cols {
            return Err(Error::Validation(format!(
                "dft block must have at least as many rows as cols, got {}x{}",
                d.rows, d.cols
            )));
        }
        if !d.ts.is_finite() || d.ts <= 0.0 {
            return Err(Error::Validation(format!("Ts must be a positive real, got {}", d.ts)));
        }
        let g = &self.sigma2;
        if !g.min.is_finite() || !g.max.is_finite() || g.min <= 0.0 || g.max <= 0.0 {
            return Err(Error::Validation(format!(
                "sigma2 bounds must be positive reals, got min = {}, max = {}",
                g.min, g.max
            )));
        }
        if g.min > g.max {
            return Err(Error::Validation(format!(
                "sigma2 min {} exceeds max {}",
                g.min, g.max
            )));
        }
        if g.points == 0 {
            return Err(Error::Validation("sigma2 grid needs at least one point".into()));
        }
        if g.points == 1 && g.min != g.max {
            return Err(Error::Validation(
                "a single-point sigma2 grid requires min == max".into(),
            ));
        }
        if g.points > u32::MAX as usize {
            return Err(Error::Validation(format!("{} grid points overflow the stream id", g.points)));
        }
        if self.trials == 0 {
            return Err(Error::Validation("trials must be at least 1".into()));
        }
        if self.trials > u32::MAX as u64 {
            return Err(Error::Validation(format!(
                "trial count {} overflows the stream id",
                self.trials
            )));
        }
        if self.estimators.is_empty() {
            return Err(Error::Validation("at least one estimator must be requested".into()));
        }
        Ok(())
    }

    /// The log-spaced grid, endpoints pinned exactly to min and max.
    pub fn sigma2_grid(&self) -> Vec<f64> {
        let g = &self.sigma2;
        if g.points == 1 {
            return vec![g.min];
        }
        let lo = g.min.log10();
        let hi = g.max.log10();
        let step = (hi - lo) / (g.points - 1) as f64;
        (0..g.points)
            .map(|i| {
                if i == 0 {
                    g.min
                } else if i == g.points - 1 {
                    g.max
                } else {
                    10f64.powf(lo + step * i as f64)
                }
            })
            .collect()
    }
}

/// One grid point of a sweep: the noise power and the average BMSE per
/// requested estimator, in request order.
#[derive(Debug, Clone, PartialEq)]
pub struct BmseRow {
    pub sigma2: f64,
    pub bmse: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BmseTable {
    pub estimators: Vec<EstimatorKind>,
    pub rows: Vec<BmseRow>,
}

impl BmseTable {
    /// The BMSE column of one estimator, in grid order.
    pub fn column(&self, kind: EstimatorKind) -> Option<Vec<f64>> {
        let j = self.estimators.iter().position(|&k| k == kind)?;
        Some(self.rows.iter().map(|r| r.bmse[j]).collect())
    }
}

/// `rows` x `cols` block of the `size`-point DFT matrix scaled by `ts`:
/// entry (n, k) = ts * exp(-i 2 pi n k / size).
pub fn dft_measurement_matrix(size: usize, rows: usize, cols: usize, ts: f64) -> Result<ComplexMatrix> {
    if size == 0 || rows == 0 || cols == 0 {
        return Err(Error::Validation("dft size, rows, and cols must all be positive".into()));
    }
    if rows > size || cols > size {
        return Err(Error::Validation(format!(
            "dft block {rows}x{cols} does not fit in a {size}-point DFT"
        )));
    }
    if !ts.is_finite() || ts <= 0.0 {
        return Err(Error::Validation(format!("Ts must be a positive real, got {ts}")));
    }
    let step = -2.0 * std::f64::consts::PI / size as f64;
    Ok(ComplexMatrix::from_fn(rows, cols, |n, k| {
        // reduce the index product first so the phase stays in (-2 pi, 0]
        let idx = ((n as u64) * (k as u64)) % size as u64;
        Complex64::from_polar(ts, step * idx as f64)
    }))
}

/// Independent RNG for one Monte Carlo trial: all trials share one seed and
/// differ only in the ChaCha stream id `(grid_index << 32) | trial`.
pub fn trial_rng(seed: u64, grid_index: u32, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((grid_index as u64) << 32) | trial as u64);
    rng
}

/// Draws a zero-mean proper complex Gaussian vector with covariance `c_nn`.
pub fn sample_proper_noise(c_nn: &ComplexMatrix, rng: &mut impl Rng) -> Result<ComplexVector> {
    let chol = HermitianCholesky::new(c_nn, "noise covariance C_nn")?;
    let n = chol.dim();
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g: ComplexVector = (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    Ok(chol.lower_matvec(&g))
}

/// Draws a zero-mean real Gaussian vector with covariance `c_xx`, returned
/// with exactly zero imaginary parts. The covariance may be singular.
pub fn sample_real_prior(c_xx: &ComplexMatrix, rng: &mut impl Rng) -> Result<ComplexVector> {
    if !c_xx.is_square() {
        return Err(Error::Dimension(format!(
            "prior covariance must be square, got {}x{}",
            c_xx.rows(),
            c_xx.cols()
        )));
    }
    let tol = SYMMETRY_TOL * c_xx.max_abs().max(ABS_FLOOR);
    let max_im = c_xx.max_imag_abs();
    if max_im > tol {
        return Err(Error::Validation(format!(
            "prior covariance of a real vector must be real, max |imag| = {max_im:.3e}"
        )));
    }
    let dev = c_xx.symmetric_deviation();
    if dev > tol {
        return Err(Error::Symmetry {
            block: "prior covariance C_xx".into(),
            expected: "symmetric",
            deviation: dev,
            tolerance: tol,
        });
    }

    let n = c_xx.rows();
    let re = c_xx.real_parts();
    let l = psd_lower_real(n, &re, "prior covariance C_xx")?;
    let z: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let mut x = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for k in 0..=i {
            acc += l[i * n + k] * z[k];
        }
        x[i] = acc;
    }
    Ok(x.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}

fn run_trial(
    model: &LinearModel,
    c_xx: &ComplexMatrix,
    estimators: &[EstimatorKind],
    seed: u64,
    grid_index: u32,
    trial: u32,
) -> Result<Vec<f64>> {
    let mut rng = trial_rng(seed, grid_index, trial);
    let x = sample_real_prior(c_xx, &mut rng)?;
    let noise = sample_proper_noise(model.noise().c(), &mut rng)?;
    let y = vec_add(&model.h().matvec(&x), &noise);
    let nx = x.len();
    estimators
        .iter()
        .map(|&kind| {
            let r = estimate(model, kind, &y)?;
            let mse = x
                .iter()
                .zip(&r.x_hat)
                .map(|(t, e)| (e - t).norm_sqr())
                .sum::<f64>()
                / nx as f64;
            Ok(mse)
        })
        .collect()
}

/// Runs the full Monte Carlo sweep described by `config`.
///
/// The parameter vector is drawn as a standard real Gaussian (C_xx = I), so
/// the wlmmse entry uses that prior. Trials fan out over a thread pool, but
/// the output is bitwise independent of the worker count.
pub fn run_sweep(config: &SweepConfig) -> Result<BmseTable> {
    config.validate()?;
    let d = &config.dft;
    let h = dft_measurement_matrix(d.size, d.rows, d.cols, d.ts)?;
    let nx = h.cols();
    let ny = h.rows();

    let c_xx = ComplexMatrix::identity(nx);
    let prior = AugmentedCovariance::real(c_xx.clone())?;
    let grid = config.sigma2_grid();
    let trials = config.trials as u32;

    let mut rows = Vec::with_capacity(grid.len());
    for (g, &sigma2) in grid.iter().enumerate() {
        let noise = AugmentedCovariance::proper(ComplexMatrix::scaled_identity(ny, sigma2))?;
        let model = LinearModel::new(h.clone(), noise, Some(prior.clone()))?;

        let per_trial: Vec<Result<Vec<f64>>> = (0..trials)
            .into_par_iter()
            .map(|t| run_trial(&model, &c_xx, &config.estimators, config.seed, g as u32, t))
            .collect();

        let mut sums = vec![0.0; config.estimators.len()];
        for (t, r) in per_trial.into_iter().enumerate() {
            let mses = r.map_err(|e| Error::SweepAborted {
                sigma2,
                trial: t as u64,
                source: Box::new(e),
            })?;
            for (s, m) in sums.iter_mut().zip(&mses) {
                *s += m;
            }
        }
        let bmse = sums.iter().map(|s| s / config.trials as f64).collect();
        rows.push(BmseRow { sigma2, bmse });
    }

    Ok(BmseTable {
        estimators: config.estimators.clone(),
        rows,
    })
}

/// Closed-form average Bayesian MSE per component, where one exists.
///
/// For `blue` this is mean diag (H^H C^-1 H)^-1; for `rbwlue` it is
/// mean diag (2 Re{H^H C^-1 H})^-1; for `wlmmse` it is the mean diagonal of
/// the Bayesian error covariance, which needs the prior.
pub fn analytic_bmse(
    h: &ComplexMatrix,
    c_nn: &ComplexMatrix,
    kind: EstimatorKind,
    prior: Option<&AugmentedCovariance>,
) -> Result<f64> {
    let nx = h.cols();
    match kind {
        EstimatorKind::Blue => {
            let chol_c = HermitianCholesky::new(c_nn, "noise covariance C_nn")?;
            let s = chol_c.solve_mat(h);
            let a = h.adjoint().mul(&s);
            let inv = HermitianCholesky::new(&a, "H^H C_nn^-1 H")?.inverse();
            Ok((0..nx).map(|i| inv.get(i, i).re).sum::<f64>() / nx as f64)
        }
        EstimatorKind::Rbwlue => {
            let chol_c = HermitianCholesky::new(c_nn, "noise covariance C_nn")?;
            let s = chol_c.solve_mat(h);
            let a = h.adjoint().mul(&s);
            let re_a = a.real_parts();
            let inv = RealSpdCholesky::new(nx, &re_a, "Re{H^H C_nn^-1 H}")?.inverse();
            Ok((0..nx).map(|i| 0.5 * inv[i * nx + i]).sum::<f64>() / nx as f64)
        }
        EstimatorKind::Wlmmse => {
            let prior = prior.ok_or_else(|| {
                Error::Config("closed-form wlmmse error needs the prior covariance".into())
            })?;
            let noise = AugmentedCovariance::proper(c_nn.clone())?;
            let model = LinearModel::new(h.clone(), noise, Some(prior.clone()))?;
            let cov = wlmmse_error_covariance(&model)?;
            Ok((0..nx).map(|i| cov.get(i, i).re).sum::<f64>() / nx as f64)
        }
        EstimatorKind::ReBlue | EstimatorKind::Bwlue => Err(Error::Config(format!(
            "no closed-form average error is implemented for {kind}"
        ))),
    }
}

fn wlmmse_error_covariance(model: &LinearModel) -> Result<ComplexMatrix> {
    let zeros = vec![Complex64::ZERO; model.ny()];
    let r = crate::estimators::wlmmse(model, &zeros)?;
    Ok(r.covariance.expect("wlmmse always attaches a covariance"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dft_entries_match_the_defining_formula() {
        let m = dft_measurement_matrix(4, 4, 4, 2.0).unwrap();
        for k in 0..4 {
            assert!((m.get(0, k) - c(2.0, 0.0)).norm() < 1e-15);
        }
        // entry (1, 1) of a 4-point DFT is exp(-i pi / 2) = -i
        assert!((m.get(1, 1) - c(0.0, -2.0)).norm() < 1e-15);
        assert!((m.get(1, 2) - c(-2.0, 0.0)).norm() < 1e-15);
        // indices wrap: (2, 3) -> 6 mod 4 = 2 -> exp(-i pi)
        assert!((m.get(2, 3) - c(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn full_dft_columns_are_orthogonal() {
        let size = 8;
        let f = dft_measurement_matrix(size, size, size, 1.0).unwrap();
        let gram = f.adjoint().mul(&f);
        let expected = ComplexMatrix::scaled_identity(size, size as f64);
        assert!(gram.sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn dft_rejects_invalid_geometry() {
        assert!(matches!(dft_measurement_matrix(0, 1, 1, 1.0), Err(Error::Validation(_))));
        assert!(matches!(dft_measurement_matrix(8, 9, 2, 1.0), Err(Error::Validation(_))));
        assert!(matches!(dft_measurement_matrix(8, 4, 2, 0.0), Err(Error::Validation(_))));
    }

    #[test]
    fn trial_rng_streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = {
            let mut r = trial_rng(7, 1, 2);
            (0..4).map(|_| r.random()).collect()
        };
        let b: Vec<u64> = {
            let mut r = trial_rng(7, 1, 2);
            (0..4).map(|_| r.random()).collect()
        };
        assert_eq!(a, b);
        let c: Vec<u64> = {
            let mut r = trial_rng(7, 1, 3);
            (0..4).map(|_| r.random()).collect()
        };
        assert_ne!(a, c);
        let d: Vec<u64> = {
            let mut r = trial_rng(7, 2, 2);
            (0..4).map(|_| r.random()).collect()
        };
        assert_ne!(a, d);
    }

    #[test]
    fn proper_noise_sample_moments_match_the_covariance() {
        let c_nn = ComplexMatrix::from_vec(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        )
        .unwrap();
        let mut rng = trial_rng(13, 0, 0);
        let trials = 20000;
        let mut cov = ComplexMatrix::zeros(2, 2);
        let mut pseudo = ComplexMatrix::zeros(2, 2);
        for _ in 0..trials {
            let n = sample_proper_noise(&c_nn, &mut rng).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    cov.set(i, j, cov.get(i, j) + n[i] * n[j].conj() / trials as f64);
                    pseudo.set(i, j, pseudo.get(i, j) + n[i] * n[j] / trials as f64);
                }
            }
        }
        assert!(cov.sub(&c_nn).max_abs() < 0.1, "cov deviation too large");
        assert!(pseudo.max_abs() < 0.1, "samples are not proper");
    }

    #[test]
    fn real_prior_samples_are_bitwise_real_with_matching_covariance() {
        let c_xx = ComplexMatrix::from_vec(
            2,
            2,
            vec![c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)],
        )
        .unwrap();
        let mut rng = trial_rng(17, 0, 0);
        let trials = 20000;
        let mut cov = [0.0f64; 4];
        for _ in 0..trials {
            let x = sample_real_prior(&c_xx, &mut rng).unwrap();
            for z in &x {
                assert_eq!(z.im.to_bits(), 0u64);
            }
            for i in 0..2 {
                for j in 0..2 {
                    cov[i * 2 + j] += x[i].re * x[j].re / trials as f64;
                }
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!((cov[i * 2 + j] - c_xx.get(i, j).re).abs() < 0.1);
            }
        }
    }

    #[test]
    fn real_prior_rejects_complex_or_indefinite_covariances() {
        let complex_cov =
            ComplexMatrix::from_vec(1, 1, vec![c(1.0, 0.5)]).unwrap();
        let mut rng = trial_rng(1, 0, 0);
        assert!(matches!(
            sample_real_prior(&complex_cov, &mut rng),
            Err(Error::Validation(_))
        ));

        let indefinite = ComplexMatrix::from_vec(
            2,
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            sample_real_prior(&indefinite, &mut rng),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn singular_prior_covariances_are_sampled_exactly() {
        // rank-1 covariance: both components always equal
        let ones = ComplexMatrix::from_fn(2, 2, |_, _| c(1.0, 0.0));
        let mut rng = trial_rng(19, 0, 0);
        for _ in 0..50 {
            let x = sample_real_prior(&ones, &mut rng).unwrap();
            assert_eq!(x[0], x[1]);
        }
    }

    #[test]
    fn sigma2_grid_is_log_spaced_with_exact_endpoints() {
        let config = SweepConfig::default();
        let grid = config.sigma2_grid();
        assert_eq!(grid.len(), 11);
        assert_eq!(grid[0], 1e-3);
        assert_eq!(grid[10], 1e2);
        for w in grid.windows(2) {
            assert!(w[1] > w[0]);
            // constant ratio on a log grid
            let ratio = w[1] / w[0];
            assert!((ratio - 10f64.powf(0.5)).abs() < 1e-9, "ratio={ratio}");
        }
    }

    #[test]
    fn config_validation_catches_contradictions() {
        let mut config = SweepConfig::default();
        config.trials = 0;
        assert!(matches!(config.validate(), Err(Error::Validation(_))));

        let mut config = SweepConfig::default();
        config.sigma2.min = -1.0;
        assert!(matches!(config.validate(), Err(Error::Validation(_))));

        let mut config = SweepConfig::default();
        config.sigma2.points = 1;
        assert!(matches!(config.validate(), Err(Error::Validation(_))));
        config.sigma2.max = config.sigma2.min;
        assert!(config.validate().is_ok());

        let mut config = SweepConfig::default();
        config.estimators.clear();
        assert!(matches!(config.validate(), Err(Error::Validation(_))));

        let mut config = SweepConfig::default();
        config.dft.rows = 3;
        config.dft.cols = 5;
        assert!(matches!(config.validate(), Err(Error::Validation(_))));
    }

    #[test]
    fn sweep_results_do_not_depend_on_how_often_they_run() {
        let config = SweepConfig {
            dft: DftConfig {
                size: 8,
                rows: 4,
                cols: 2,
                ts: 1.0,
            },
            sigma2: Sigma2Grid {
                min: 0.1,
                max: 10.0,
                points: 3,
                scale: GridScale::Log,
            },
            trials: 40,
            seed: 99,
            estimators: EstimatorKind::ALL.to_vec(),
        };
        let a = run_sweep(&config).unwrap();
        let b = run_sweep(&config).unwrap();
        assert_eq!(a, b);
        for row in &a.rows {
            for &v in &row.bmse {
                assert!(v.is_finite() && v > 0.0);
            }
        }
    }

    #[test]
    fn analytic_bmse_matches_hand_computed_scalars() {
        let h = ComplexMatrix::identity(1);
        let c_nn = ComplexMatrix::scaled_identity(1, 0.5);
        let blue = analytic_bmse(&h, &c_nn, EstimatorKind::Blue, None).unwrap();
        assert!((blue - 0.5).abs() < 1e-15);
        let rb = analytic_bmse(&h, &c_nn, EstimatorKind::Rbwlue, None).unwrap();
        assert!((rb - 0.25).abs() < 1e-15);

        let prior = AugmentedCovariance::real(ComplexMatrix::identity(1)).unwrap();
        let wl = analytic_bmse(&h, &c_nn, EstimatorKind::Wlmmse, Some(&prior)).unwrap();
        assert!((wl - 0.5 / 2.5).abs() < 1e-12, "wl={wl}");

        assert!(matches!(
            analytic_bmse(&h, &c_nn, EstimatorKind::ReBlue, None),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            analytic_bmse(&h, &c_nn, EstimatorKind::Wlmmse, None),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn monte_carlo_agrees_with_closed_forms_on_a_small_model() {
        let config = SweepConfig {
            dft: DftConfig {
                size: 12,
                rows: 6,
                cols: 3,
                ts: 1.0,
            },
            sigma2: Sigma2Grid {
                min: 1.0,
                max: 1.0,
                points: 1,
                scale: GridScale::Log,
            },
            trials: 4000,
            seed: 7,
            estimators: vec![EstimatorKind::Blue, EstimatorKind::Rbwlue, EstimatorKind::Wlmmse],
        };
        let table = run_sweep(&config).unwrap();
        let h = dft_measurement_matrix(12, 6, 3, 1.0).unwrap();
        let c_nn = ComplexMatrix::identity(6);
        let prior = AugmentedCovariance::real(ComplexMatrix::identity(3)).unwrap();

        let cases = [
            (EstimatorKind::Blue, analytic_bmse(&h, &c_nn, EstimatorKind::Blue, None).unwrap()),
            (EstimatorKind::Rbwlue, analytic_bmse(&h, &c_nn, EstimatorKind::Rbwlue, None).unwrap()),
            (
                EstimatorKind::Wlmmse,
                analytic_bmse(&h, &c_nn, EstimatorKind::Wlmmse, Some(&prior)).unwrap(),
            ),
        ];
        for (kind, expected) in cases {
            let got = table.column(kind).unwrap()[0];
            let rel = (got - expected).abs() / expected;
            assert!(rel < 0.15, "{kind}: got {got}, expected {expected} (rel {rel:.3})");
        }
    }
}
