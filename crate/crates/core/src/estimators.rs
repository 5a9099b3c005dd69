//! Linear and widely linear estimators for the model y = H x + n.
//!
//! Complex measurements carry information about a real parameter vector in
//! both their real and imaginary parts. The strictly linear BLUE ignores the
//! realness of x; the widely linear estimators exploit it by also acting on
//! conj(y). For real x the widely linear classical estimator collapses to a
//! compact form in real arithmetic: x = Re{H^H C^-1 H}^-1 Re{H^H C^-1 y},
//! which is what `rbwlue` computes.

use num_complex::Complex64;

use crate::augmented::{augment_model_matrix, augment_vector};
use crate::error::{Error, Result};
use crate::linalg::{HermitianCholesky, RealSpdCholesky};
use crate::matrix::{vec_add, vec_max_abs, ComplexMatrix, ComplexVector};
use crate::model::LinearModel;
use crate::simulation::{sample_proper_noise, trial_rng};

/// Max |C_tilde| accepted as "proper" by estimators that require proper noise.
pub const PROPERNESS_TOL: f64 = 1e-12;

/// Relative tolerance on the conjugate symmetry of an augmented solution.
const CONJUGATE_CONSISTENCY_TOL: f64 = 1e-8;

/// The estimators this crate implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    Blue,
    ReBlue,
    Bwlue,
    Wlmmse,
    Rbwlue,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 5] = [
        EstimatorKind::Blue,
        EstimatorKind::ReBlue,
        EstimatorKind::Bwlue,
        EstimatorKind::Wlmmse,
        EstimatorKind::Rbwlue,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Blue => "blue",
            EstimatorKind::ReBlue => "re_blue",
            EstimatorKind::Bwlue => "bwlue",
            EstimatorKind::Wlmmse => "wlmmse",
            EstimatorKind::Rbwlue => "rbwlue",
        }
    }
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blue" => Ok(EstimatorKind::Blue),
            "re_blue" | "re-blue" => Ok(EstimatorKind::ReBlue),
            "bwlue" => Ok(EstimatorKind::Bwlue),
            "wlmmse" => Ok(EstimatorKind::Wlmmse),
            "rbwlue" => Ok(EstimatorKind::Rbwlue),
            other => Err(Error::Config(format!(
                "unknown estimator '{other}' (expected blue, re_blue, bwlue, wlmmse, or rbwlue)"
            ))),
        }
    }
}

/// Gain pair of a widely linear estimator `x = E y + F conj(y)`.
#[derive(Debug, Clone)]
pub struct WidelyLinearGains {
    pub e: ComplexMatrix,
    pub f: ComplexMatrix,
}

impl WidelyLinearGains {
    pub fn apply(&self, y: &[Complex64]) -> ComplexVector {
        let linear = self.e.matvec(y);
        let conj_part = self.f.matvec(&crate::matrix::conj_vec(y));
        vec_add(&linear, &conj_part)
    }
}

/// An estimate together with its error covariance when the estimator has one
/// in closed form.
#[derive(Debug, Clone)]
pub struct EstimateResult {
    pub x_hat: ComplexVector,
    pub covariance: Option<ComplexMatrix>,
}

/// Bias summary from a Monte Carlo unbiasedness check.
#[derive(Debug, Clone)]
pub struct UnbiasednessReport {
    /// Componentwise sample mean of the estimate minus the true parameter.
    pub bias: ComplexVector,
    /// Componentwise standard error of that sample mean.
    pub standard_error: Vec<f64>,
    pub trials: u64,
}

impl UnbiasednessReport {
    /// True when every component bias lies within `k` standard errors.
    pub fn within_sigma(&self, k: f64) -> bool {
        self.bias
            .iter()
            .zip(&self.standard_error)
            .all(|(b, se)| b.norm() <= k * se)
    }

    pub fn max_bias(&self) -> f64 {
        vec_max_abs(&self.bias)
    }
}

fn check_measurement_len(expected: usize, y: &[Complex64]) -> Result<()> {
    if y.len() != expected {
        return Err(Error::Dimension(format!(
            "measurement vector has {} entries, model expects {expected}",
            y.len()
        )));
    }
    crate::matrix::ensure_finite_vec(y, "measurement vector")
}

fn rank_deficient(context: &str) -> impl FnOnce(Error) -> Error + '_ {
    move |e| match e {
        Error::Singular(_) => Error::RankDeficient(format!(
            "{context} is not positive definite; the model matrix lacks full column rank"
        )),
        other => other,
    }
}

/// Best linear unbiased estimator `x = (H^H C^-1 H)^-1 H^H C^-1 y`.
///
/// Treats x as an unconstrained complex vector and uses only the noise
/// covariance C, never the complementary covariance.
pub fn blue(model: &LinearModel, y: &[Complex64]) -> Result<EstimateResult> {
    check_measurement_len(model.ny(), y)?;
    let chol_c = HermitianCholesky::new(model.noise().c(), "noise covariance C_nn")?;
    let s = chol_c.solve_mat(model.h());
    let a = model.h().adjoint().mul(&s);
    let chol_a = HermitianCholesky::new(&a, "H^H C_nn^-1 H")
        .map_err(rank_deficient("H^H C_nn^-1 H"))?;
    let b = s.adjoint().matvec(y);
    let x_hat = chol_a.solve_vec(&b);
    Ok(EstimateResult {
        x_hat,
        covariance: Some(chol_a.inverse()),
    })
}

/// Real part of the BLUE, for models whose parameter vector is known to be
/// real. Discarding the imaginary part never increases the squared error, so
/// this dominates `blue` pathwise; no closed-form covariance is attached.
pub fn re_blue(model: &LinearModel, y: &[Complex64]) -> Result<EstimateResult> {
    let r = blue(model, y)?;
    Ok(EstimateResult {
        x_hat: r
            .x_hat
            .iter()
            .map(|z| Complex64::new(z.re, 0.0))
            .collect(),
        covariance: None,
    })
}

/// Best widely linear unbiased estimator, computed on the augmented model.
///
/// With improper noise this strictly improves on `blue`; with proper noise
/// the augmented normal equations decouple and it coincides with `blue`.
pub fn bwlue(model: &LinearModel, y: &[Complex64]) -> Result<EstimateResult> {
    check_measurement_len(model.ny(), y)?;
    let nx = model.nx();
    let h_aug = augment_model_matrix(model.h());
    let c_aug = model.noise().assembled();
    let y_aug = augment_vector(y)?;

    let chol_c = HermitianCholesky::new(&c_aug, "augmented noise covariance")?;
    let s = chol_c.solve_mat(&h_aug);
    let a = h_aug.adjoint().mul(&s);
    let chol_a = HermitianCholesky::new(&a, "augmented normal matrix")
        .map_err(rank_deficient("augmented normal matrix"))?;
    let b = s.adjoint().matvec(&y_aug);
    let x_aug = chol_a.solve_vec(&b);

    // the bottom half estimates conj(x), so it must mirror the top half
    let scale = vec_max_abs(&x_aug).max(1.0);
    for i in 0..nx {
        let dev = (x_aug[nx + i] - x_aug[i].conj()).norm();
        if dev > CONJUGATE_CONSISTENCY_TOL * scale {
            return Err(Error::Inconsistent(format!(
                "augmented estimate violates conjugate symmetry at component {i} (deviation {dev:.3e})"
            )));
        }
    }

    let x_hat = x_aug[..nx].to_vec();
    let covariance = chol_a.inverse().block(0, 0, nx, nx);
    Ok(EstimateResult {
        x_hat,
        covariance: Some(covariance),
    })
}

struct WlmmseCore {
    nx: usize,
    ny: usize,
    /// H_aug C_xx_aug
    p: ComplexMatrix,
    /// factor of H_aug C_xx_aug H_aug^H + C_nn_aug
    chol_m: HermitianCholesky,
    c_xx_aug: ComplexMatrix,
}

fn wlmmse_core(model: &LinearModel) -> Result<WlmmseCore> {
    let prior = model.prior().ok_or_else(|| {
        Error::Config("wlmmse requires a prior covariance for the parameter vector".into())
    })?;
    let h_aug = augment_model_matrix(model.h());
    let c_xx_aug = prior.assembled();
    let c_nn_aug = model.noise().assembled();
    let p = h_aug.mul(&c_xx_aug);
    let m = p.mul(&h_aug.adjoint()).add(&c_nn_aug);
    let chol_m = HermitianCholesky::new(&m, "widely linear innovation covariance")?;
    Ok(WlmmseCore {
        nx: model.nx(),
        ny: model.ny(),
        p,
        chol_m,
        c_xx_aug,
    })
}

/// Widely linear minimum mean square error estimator.
///
/// Computed in gain form `x_aug = C_xx_aug H_aug^H (H_aug C_xx_aug H_aug^H +
/// C_nn_aug)^-1 y_aug`, which stays well defined when the augmented prior
/// covariance is singular, as it always is for a real parameter vector.
/// The attached covariance is the Bayesian error covariance of the top
/// (unconjugated) half.
pub fn wlmmse(model: &LinearModel, y: &[Complex64]) -> Result<EstimateResult> {
    check_measurement_len(model.ny(), y)?;
    let core = wlmmse_core(model)?;
    let y_aug = augment_vector(y)?;
    let z = core.chol_m.solve_vec(&y_aug);
    let x_aug = core.p.adjoint().matvec(&z);

    let w = core.chol_m.solve_mat(&core.p);
    let c_err_aug = core.c_xx_aug.sub(&core.p.adjoint().mul(&w));
    let block = c_err_aug.block(0, 0, core.nx, core.nx);
    let covariance = block.add(&block.adjoint()).scale(0.5);

    Ok(EstimateResult {
        x_hat: x_aug[..core.nx].to_vec(),
        covariance: Some(covariance),
    })
}

/// The WLMMSE gain pair (E, F) with `x = E y + F conj(y)`.
pub fn wlmmse_gains(model: &LinearModel) -> Result<WidelyLinearGains> {
    let core = wlmmse_core(model)?;
    let g = core.chol_m.solve_mat(&core.p).adjoint();
    Ok(WidelyLinearGains {
        e: g.block(0, 0, core.nx, core.ny),
        f: g.block(0, core.ny, core.nx, core.ny),
    })
}

struct RealInformation {
    nx: usize,
    /// factor of Re{H^H C^-1 H}
    chol: RealSpdCholesky,
    /// H^H C^-1
    s_adj: ComplexMatrix,
}

fn real_information(h: &ComplexMatrix, c_nn: &ComplexMatrix) -> Result<RealInformation> {
    if !c_nn.is_square() || c_nn.rows() != h.rows() {
        return Err(Error::Dimension(format!(
            "noise covariance is {}x{} but H has {} rows",
            c_nn.rows(),
            c_nn.cols(),
            h.rows()
        )));
    }
    let chol_c = HermitianCholesky::new(c_nn, "noise covariance C_nn")?;
    let s = chol_c.solve_mat(h);
    let a = h.adjoint().mul(&s);
    let re_a = a.real_parts();
    let chol = RealSpdCholesky::new(h.cols(), &re_a, "Re{H^H C_nn^-1 H}")
        .map_err(rank_deficient("Re{H^H C_nn^-1 H}"))?;
    Ok(RealInformation {
        nx: h.cols(),
        chol,
        s_adj: s.adjoint(),
    })
}

/// Best widely linear unbiased estimator specialized to a real parameter
/// vector: `x = Re{H^H C^-1 H}^-1 Re{H^H C^-1 y}`.
///
/// Runs entirely in real arithmetic after forming the normal equations, so
/// the returned components have imaginary parts that are exactly zero.
/// Requires proper noise; callers with a possibly improper model should go
/// through [`estimate`], which checks.
pub fn rbwlue(h: &ComplexMatrix, c_nn: &ComplexMatrix, y: &[Complex64]) -> Result<EstimateResult> {
    check_measurement_len(h.rows(), y)?;
    let info = real_information(h, c_nn)?;
    let b = info.s_adj.matvec(y);
    let b_re: Vec<f64> = b.iter().map(|z| z.re).collect();
    let x = info.chol.solve(&b_re);
    let x_hat = x.iter().map(|&r| Complex64::new(r, 0.0)).collect();

    let half_inv: Vec<f64> = info.chol.inverse().iter().map(|v| 0.5 * v).collect();
    let covariance = ComplexMatrix::from_real(info.nx, info.nx, &half_inv);
    Ok(EstimateResult {
        x_hat,
        covariance: Some(covariance),
    })
}

/// Error covariance of [`rbwlue`]: `(2 Re{H^H C^-1 H})^-1`.
pub fn rbwlue_covariance(h: &ComplexMatrix, c_nn: &ComplexMatrix) -> Result<ComplexMatrix> {
    let info = real_information(h, c_nn)?;
    let half_inv: Vec<f64> = info.chol.inverse().iter().map(|v| 0.5 * v).collect();
    Ok(ComplexMatrix::from_real(info.nx, info.nx, &half_inv))
}

/// The gain E of [`rbwlue`] seen as a widely linear estimator with F =
/// conj(E), so that `x = E y + conj(E) conj(y) = 2 Re{E y}`:
/// `E = (2 Re{H^H C^-1 H})^-1 H^H C^-1`.
pub fn rbwlue_gain(h: &ComplexMatrix, c_nn: &ComplexMatrix) -> Result<ComplexMatrix> {
    let info = real_information(h, c_nn)?;
    let nx = info.nx;
    let ny = h.rows();
    let mut e = ComplexMatrix::zeros(nx, ny);
    let mut col_re = vec![0.0; nx];
    let mut col_im = vec![0.0; nx];
    for j in 0..ny {
        for i in 0..nx {
            let z = info.s_adj.get(i, j);
            col_re[i] = z.re;
            col_im[i] = z.im;
        }
        let xr = info.chol.solve(&col_re);
        let xi = info.chol.solve(&col_im);
        for i in 0..nx {
            e.set(i, j, Complex64::new(0.5 * xr[i], 0.5 * xi[i]));
        }
    }
    Ok(e)
}

/// Independent reference for [`rbwlue`]: stacks real and imaginary parts of
/// the measurement into one real-valued model and applies the ordinary BLUE
/// there. Assumes proper noise, whose stacked covariance is
/// `0.5 * [[Re C, -Im C], [Im C, Re C]]`.
pub fn real_model_blue(
    h: &ComplexMatrix,
    c_nn: &ComplexMatrix,
    y: &[Complex64],
) -> Result<EstimateResult> {
    check_measurement_len(h.rows(), y)?;
    if !c_nn.is_square() || c_nn.rows() != h.rows() {
        return Err(Error::Dimension(format!(
            "noise covariance is {}x{} but H has {} rows",
            c_nn.rows(),
            c_nn.cols(),
            h.rows()
        )));
    }
    let ny = h.rows();
    let nx = h.cols();

    let h_stacked = ComplexMatrix::from_fn(2 * ny, nx, |i, j| {
        if i < ny {
            Complex64::new(h.get(i, j).re, 0.0)
        } else {
            Complex64::new(h.get(i - ny, j).im, 0.0)
        }
    });
    let y_stacked: ComplexVector = y
        .iter()
        .map(|z| Complex64::new(z.re, 0.0))
        .chain(y.iter().map(|z| Complex64::new(z.im, 0.0)))
        .collect();
    let c_stacked = ComplexMatrix::from_fn(2 * ny, 2 * ny, |i, j| {
        let v = if i < ny && j < ny {
            c_nn.get(i, j).re
        } else if i < ny {
            -c_nn.get(i, j - ny).im
        } else if j < ny {
            c_nn.get(i - ny, j).im
        } else {
            c_nn.get(i - ny, j - ny).re
        };
        Complex64::new(0.5 * v, 0.0)
    });

    let chol_c = HermitianCholesky::new(&c_stacked, "stacked real noise covariance")?;
    let s = chol_c.solve_mat(&h_stacked);
    let a = h_stacked.adjoint().mul(&s);
    let chol_a = HermitianCholesky::new(&a, "stacked real normal matrix")
        .map_err(rank_deficient("stacked real normal matrix"))?;
    let b = s.adjoint().matvec(&y_stacked);
    let x = chol_a.solve_vec(&b);

    let inv = chol_a.inverse();
    let covariance = ComplexMatrix::from_fn(nx, nx, |i, j| Complex64::new(inv.get(i, j).re, 0.0));
    Ok(EstimateResult {
        x_hat: x.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        covariance: Some(covariance),
    })
}

/// Applies the requested estimator to a model, enforcing per-estimator
/// contracts: `rbwlue` insists on proper noise, `wlmmse` on a prior.
pub fn estimate(model: &LinearModel, kind: EstimatorKind, y: &[Complex64]) -> Result<EstimateResult> {
    match kind {
        EstimatorKind::Blue => blue(model, y),
        EstimatorKind::ReBlue => re_blue(model, y),
        EstimatorKind::Bwlue => bwlue(model, y),
        EstimatorKind::Wlmmse => wlmmse(model, y),
        EstimatorKind::Rbwlue => {
            let max_abs = model.noise().ct().max_abs();
            if max_abs > PROPERNESS_TOL {
                return Err(Error::ImproperNoise { max_abs });
            }
            rbwlue(model.h(), model.noise().c(), y)
        }
    }
}

/// Monte Carlo check that a classical estimator is unbiased at a fixed true
/// parameter vector, under proper noise with covariance `c_nn`.
pub fn check_unbiasedness(
    kind: EstimatorKind,
    h: &ComplexMatrix,
    c_nn: &ComplexMatrix,
    x: &[f64],
    trials: u64,
    seed: u64,
) -> Result<UnbiasednessReport> {
    if kind == EstimatorKind::Wlmmse {
        return Err(Error::Config(
            "wlmmse is biased toward the prior mean; unbiasedness applies to the classical estimators"
                .into(),
        ));
    }
    if x.len() != h.cols() {
        return Err(Error::Dimension(format!(
            "true parameter vector has {} entries, H has {} columns",
            x.len(),
            h.cols()
        )));
    }
    if trials < 100 {
        return Err(Error::Validation(format!(
            "unbiasedness check needs at least 100 trials, got {trials}"
        )));
    }
    if trials > u32::MAX as u64 {
        return Err(Error::Validation(format!("trial count {trials} overflows the stream id")));
    }

    let model = LinearModel::with_proper_noise(h.clone(), c_nn.clone())?;
    let x_true: ComplexVector = x.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let hx = h.matvec(&x_true);
    let nx = x.len();

    let mut mean = vec![Complex64::ZERO; nx];
    let mut m2 = vec![0.0; nx];
    for t in 0..trials {
        let mut rng = trial_rng(seed, 0, t as u32);
        let noise = sample_proper_noise(c_nn, &mut rng)?;
        let y = vec_add(&hx, &noise);
        let r = estimate(&model, kind, &y)?;
        let k = (t + 1) as f64;
        for i in 0..nx {
            let delta = r.x_hat[i] - mean[i];
            mean[i] += delta / k;
            m2[i] += (delta.conj() * (r.x_hat[i] - mean[i])).re;
        }
    }

    let bias: ComplexVector = (0..nx).map(|i| mean[i] - x_true[i]).collect();
    let standard_error: Vec<f64> = m2
        .iter()
        .map(|&v| (v / (trials - 1) as f64 / trials as f64).sqrt())
        .collect();
    Ok(UnbiasednessReport {
        bias,
        standard_error,
        trials,
    })
}
