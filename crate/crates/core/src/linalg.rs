//! Cholesky factorizations and positive-definite solves.
//!
//! Positive definiteness is decided by factorization success, not by
//! eigenvalue thresholds: a nonpositive pivot means the solve cannot proceed
//! and is reported as a singularity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ComplexVector, ABS_FLOOR, SYMMETRY_TOL};

/// Relative pivot tolerance for semi-definite factorizations.
const PSD_PIVOT_REL: f64 = 1e-12;

/// Lower Cholesky factor of a Hermitian positive definite matrix.
pub struct HermitianCholesky {
    n: usize,
    l: Vec<Complex64>,
}

impl HermitianCholesky {
    /// Checks Hermitian structure, then factors A = L L^H.
    ///
    /// `context` names the matrix in error messages.
    pub fn new(a: &ComplexMatrix, context: &str) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "{context} must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let dev = a.hermitian_deviation();
        let tol = SYMMETRY_TOL * a.max_abs().max(ABS_FLOOR);
        if dev > tol {
            return Err(Error::Symmetry {
                block: context.to_string(),
                expected: "Hermitian",
                deviation: dev,
                tolerance: tol,
            });
        }

        let n = a.rows();
        let mut l = vec![Complex64::ZERO; n * n];
        for j in 0..n {
            let mut d = a.get(j, j).re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::Singular(format!(
                    "{context} is not positive definite (pivot {d:.3e} at index {j})"
                )));
            }
            let djj = d.sqrt();
            l[j * n + j] = Complex64::new(djj, 0.0);
            for i in (j + 1)..n {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / djj;
            }
        }
        Ok(HermitianCholesky { n, l })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves A x = b.
    pub fn solve_vec(&self, b: &[Complex64]) -> ComplexVector {
        assert_eq!(b.len(), self.n, "solve length mismatch");
        let n = self.n;
        let mut x = b.to_vec();
        // forward substitution with L
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self.l[i * n + k] * x[k];
            }
            x[i] = s / self.l[i * n + i];
        }
        // back substitution with L^H
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s -= self.l[k * n + i].conj() * x[k];
            }
            x[i] = s / self.l[i * n + i];
        }
        x
    }

    /// Solves A X = B column by column.
    pub fn solve_mat(&self, b: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(b.rows(), self.n, "solve shape mismatch");
        let mut out = ComplexMatrix::zeros(self.n, b.cols());
        let mut col = vec![Complex64::ZERO; self.n];
        for j in 0..b.cols() {
            for i in 0..self.n {
                col[i] = b.get(i, j);
            }
            let x = self.solve_vec(&col);
            for i in 0..self.n {
                out.set(i, j, x[i]);
            }
        }
        out
    }

    /// A^{-1}, symmetrized so the result is Hermitian to rounding error.
    pub fn inverse(&self) -> ComplexMatrix {
        let inv = self.solve_mat(&ComplexMatrix::identity(self.n));
        inv.add(&inv.adjoint()).scale(0.5)
    }

    /// L v, without materializing the factor.
    pub fn lower_matvec(&self, v: &[Complex64]) -> ComplexVector {
        assert_eq!(v.len(), self.n, "matvec length mismatch");
        let n = self.n;
        let mut out = vec![Complex64::ZERO; n];
        for i in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..=i {
                acc += self.l[i * n + k] * v[k];
            }
            out[i] = acc;
        }
        out
    }

    /// The lower factor L as a full matrix.
    pub fn lower(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| {
            if j <= i {
                self.l[i * self.n + j]
            } else {
                Complex64::ZERO
            }
        })
    }
}

/// Solves A X = B for Hermitian positive definite A.
pub fn hermitian_pd_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "solve shape mismatch: A is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let chol = HermitianCholesky::new(a, "coefficient matrix")?;
    Ok(chol.solve_mat(b))
}

/// Lower Cholesky factor of a real symmetric positive definite matrix.
///
/// Carries real parameter estimation entirely in real arithmetic, so results
/// lifted back to complex have imaginary parts that are exactly zero.
pub struct RealSpdCholesky {
    n: usize,
    l: Vec<f64>,
}

impl RealSpdCholesky {
    pub fn new(n: usize, a: &[f64], context: &str) -> Result<Self> {
        assert_eq!(a.len(), n * n, "real factor data length mismatch");
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::Singular(format!(
                    "{context} is not positive definite (pivot {d:.3e} at index {j})"
                )));
            }
            let djj = d.sqrt();
            l[j * n + j] = djj;
            for i in (j + 1)..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / djj;
            }
        }
        Ok(RealSpdCholesky { n, l })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n, "solve length mismatch");
        let n = self.n;
        let mut x = b.to_vec();
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self.l[i * n + k] * x[k];
            }
            x[i] = s / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s -= self.l[k * n + i] * x[k];
            }
            x[i] = s / self.l[i * n + i];
        }
        x
    }

    /// A^{-1} in row-major order, symmetrized.
    pub fn inverse(&self) -> Vec<f64> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e);
            e[j] = 0.0;
            for i in 0..n {
                inv[i * n + j] = col[i];
            }
        }
        for i in 0..n {
            for j in 0..i {
                let s = 0.5 * (inv[i * n + j] + inv[j * n + i]);
                inv[i * n + j] = s;
                inv[j * n + i] = s;
            }
        }
        inv
    }
}

/// Semi-definite Cholesky with pivot zeroing, used for validation and
/// sampling where exact singularity is legitimate (for example the augmented
/// covariance of a real random vector).
///
/// Returns the lower factor with L[j][j] = 0 on null pivots. A pivot below
/// `-tol` reports a semi-definiteness violation for `context`.
pub fn psd_lower(a: &ComplexMatrix, context: &str) -> Result<ComplexMatrix> {
    assert!(a.is_square(), "psd factor needs a square matrix");
    let n = a.rows();
    let max_diag = (0..n).map(|i| a.get(i, i).re.abs()).fold(0.0, f64::max);
    let tol = PSD_PIVOT_REL * max_diag.max(ABS_FLOOR);

    let mut l = vec![Complex64::ZERO; n * n];
    for j in 0..n {
        let mut d = a.get(j, j).re;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if d < -tol || !d.is_finite() {
            return Err(Error::NotPsd {
                block: context.to_string(),
                pivot: d,
                index: j,
            });
        }
        if d <= tol {
            // null direction: leave the column zero
            continue;
        }
        let djj = d.sqrt();
        l[j * n + j] = Complex64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / djj;
        }
    }
    Ok(ComplexMatrix::from_vec(n, n, l).expect("factor entries are finite"))
}

/// Real-arithmetic counterpart of [`psd_lower`] for sampling real priors.
pub fn psd_lower_real(n: usize, a: &[f64], context: &str) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "psd factor data length mismatch");
    let max_diag = (0..n).map(|i| a[i * n + i].abs()).fold(0.0, f64::max);
    let tol = PSD_PIVOT_REL * max_diag.max(ABS_FLOOR);

    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d < -tol || !d.is_finite() {
            return Err(Error::NotPsd {
                block: context.to_string(),
                pivot: d,
                index: j,
            });
        }
        if d <= tol {
            continue;
        }
        let djj = d.sqrt();
        l[j * n + j] = djj;
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / djj;
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hpd(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        });
        g.mul(&g.adjoint())
            .add(&ComplexMatrix::scaled_identity(n, 0.5))
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let a = ComplexMatrix::identity(3);
        let b = ComplexMatrix::from_fn(3, 2, |i, j| c((i + j) as f64, (i * j) as f64));
        let x = hermitian_pd_solve(&a, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn scalar_solve() {
        let a = ComplexMatrix::from_vec(1, 1, vec![c(2.0, 0.0)]).unwrap();
        let b = ComplexMatrix::from_vec(1, 1, vec![c(4.0, 0.0)]).unwrap();
        let x = hermitian_pd_solve(&a, &b).unwrap();
        assert!((x.get(0, 0) - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_matrix_is_singular() {
        let a = ComplexMatrix::from_vec(1, 1, vec![Complex64::ZERO]).unwrap();
        let b = ComplexMatrix::identity(1);
        assert!(matches!(hermitian_pd_solve(&a, &b), Err(Error::Singular(_))));
    }

    #[test]
    fn non_hermitian_input_is_rejected_with_deviation() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        match hermitian_pd_solve(&a, &ComplexMatrix::identity(2)) {
            Err(Error::Symmetry { deviation, .. }) => assert!((deviation - 1.0).abs() < 1e-15),
            other => panic!("expected symmetry error, got {other:?}"),
        }
    }

    #[test]
    fn random_hpd_solves_recover_known_solutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..100 {
            let n = 1 + (trial % 6);
            let a = random_hpd(n, &mut rng);
            let x_true = ComplexMatrix::from_fn(n, 2, |_, _| {
                c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
            });
            let b = a.mul(&x_true);
            let x = hermitian_pd_solve(&a, &b).unwrap();
            let err = x.sub(&x_true).max_abs();
            let scale = x_true.max_abs().max(1.0);
            assert!(err <= 1e-8 * scale, "n={n} err={err:.3e}");
        }
    }

    #[test]
    fn inverse_is_hermitian_and_correct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hpd(5, &mut rng);
        let chol = HermitianCholesky::new(&a, "test matrix").unwrap();
        let inv = chol.inverse();
        assert!(inv.hermitian_deviation() <= 1e-14 * inv.max_abs());
        let prod = a.mul(&inv);
        let err = prod.sub(&ComplexMatrix::identity(5)).max_abs();
        assert!(err < 1e-10, "err={err:.3e}");
    }

    #[test]
    fn lower_factor_reconstructs_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_hpd(4, &mut rng);
        let l = HermitianCholesky::new(&a, "test matrix").unwrap().lower();
        let err = l.mul(&l.adjoint()).sub(&a).max_abs();
        assert!(err <= 1e-12 * a.max_abs(), "err={err:.3e}");
    }

    #[test]
    fn real_spd_matches_complex_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 4;
        let mut g = vec![0.0; n * n];
        for v in g.iter_mut() {
            *v = rng.random::<f64>() * 2.0 - 1.0;
        }
        // a = g g^T + I/2
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = if i == j { 0.5 } else { 0.0 };
                for k in 0..n {
                    s += g[i * n + k] * g[j * n + k];
                }
                a[i * n + j] = s;
            }
        }
        let b: Vec<f64> = (0..n).map(|i| i as f64 - 1.5).collect();
        let real = RealSpdCholesky::new(n, &a, "test").unwrap().solve(&b);

        let ac = ComplexMatrix::from_real(n, n, &a);
        let bc = ComplexMatrix::from_real(n, 1, &b);
        let xc = hermitian_pd_solve(&ac, &bc).unwrap();
        for i in 0..n {
            assert!((real[i] - xc.get(i, 0).re).abs() < 1e-12);
            assert_eq!(xc.get(i, 0).im, 0.0);
        }
    }

    #[test]
    fn psd_factor_accepts_singular_and_rejects_indefinite() {
        // rank-1 PSD matrix of ones
        let ones = ComplexMatrix::from_fn(3, 3, |_, _| Complex64::ONE);
        let l = psd_lower(&ones, "ones").unwrap();
        let err = l.mul(&l.adjoint()).sub(&ones).max_abs();
        assert!(err < 1e-12, "err={err:.3e}");

        let indef =
            ComplexMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        assert!(matches!(psd_lower(&indef, "indefinite"), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn psd_factor_real_handles_zero_matrix() {
        let l = psd_lower_real(2, &[0.0; 4], "zero").unwrap();
        assert_eq!(l, vec![0.0; 4]);
    }
}
