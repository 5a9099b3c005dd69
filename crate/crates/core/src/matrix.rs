//! Dense row-major complex matrices and small vector helpers.
//!
//! All linear algebra in this crate runs on these types. Shapes are validated
//! at construction; arithmetic on mismatched shapes is a programming error
//! and panics.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexVector = Vec<Complex64>;

/// Relative tolerance for Hermitian / symmetric structure checks.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Absolute floor that keeps relative tolerances meaningful near zero.
pub const ABS_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must be nonempty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "matrix data has {} entries, expected {rows}x{cols} = {}",
                data.len(),
                rows * cols
            )));
        }
        let m = ComplexMatrix { rows, cols, data };
        m.ensure_finite("matrix")?;
        Ok(m)
    }

    /// Builds a matrix by evaluating `f(row, col)` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        })
    }

    /// n-by-n matrix `v * I` with a real scale.
    pub fn scaled_identity(n: usize, v: f64) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(v, 0.0)
            } else {
                Complex64::ZERO
            }
        })
    }

    /// Lifts a row-major real matrix into a complex one with zero imaginary parts.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "real data length mismatch");
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        ComplexMatrix {
            rows,
            cols,
            data: data.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> ComplexVector {
        assert_eq!(
            self.cols,
            v.len(),
            "matvec shape mismatch: {}x{} * {}",
            self.rows,
            self.cols,
            v.len()
        );
        let mut out = vec![Complex64::ZERO; self.rows];
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc = Complex64::ZERO;
            for (&a, &x) in row.iter().zip(v) {
                acc += a * x;
            }
            out[i] = acc;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Copy of the rectangular block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ComplexMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        ComplexMatrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Writes `src` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &ComplexMatrix) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols, "block out of range");
        for i in 0..src.rows {
            for j in 0..src.cols {
                self.set(r0 + i, c0 + j, src.get(i, j));
            }
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute imaginary part.
    pub fn max_imag_abs(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// max |A[i][j] - conj(A[j][i])| over the whole matrix.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermitian deviation needs a square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..=i {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// max |A[i][j] - A[j][i]| over the whole matrix.
    pub fn symmetric_deviation(&self) -> f64 {
        assert!(self.is_square(), "symmetric deviation needs a square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..i {
                dev = dev.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        dev
    }

    /// Real parts in row-major order.
    pub fn real_parts(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.re).collect()
    }

    pub fn ensure_finite(&self, what: &str) -> Result<()> {
        for (idx, z) in self.data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!(
                    "{what} has non-finite entry {z} at ({}, {})",
                    idx / self.cols,
                    idx % self.cols
                )));
            }
        }
        Ok(())
    }
}

pub fn conj_vec(v: &[Complex64]) -> ComplexVector {
    v.iter().map(|z| z.conj()).collect()
}

pub fn vec_add(a: &[Complex64], b: &[Complex64]) -> ComplexVector {
    assert_eq!(a.len(), b.len(), "vector sum length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Complex64], b: &[Complex64]) -> ComplexVector {
    assert_eq!(a.len(), b.len(), "vector difference length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn ensure_finite_vec(v: &[Complex64], what: &str) -> Result<()> {
    for (i, z) in v.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite(format!("{what} has non-finite entry {z} at index {i}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_vec_rejects_bad_shapes_and_nan() {
        assert!(matches!(
            ComplexMatrix::from_vec(2, 2, vec![Complex64::ZERO; 3]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ComplexMatrix::from_vec(0, 2, vec![]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ComplexMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn product_against_hand_computed_values() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(1.0, 1.0), c(0.0, 2.0), c(3.0, 0.0), c(1.0, -1.0)])
            .unwrap();
        let b = ComplexMatrix::from_vec(2, 1, vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let p = a.mul(&b);
        assert_eq!(p.get(0, 0), c(-1.0, 1.0));
        assert_eq!(p.get(1, 0), c(4.0, 1.0));
        let v = a.matvec(&[c(1.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(v, vec![c(-1.0, 1.0), c(4.0, 1.0)]);
    }

    #[test]
    fn adjoint_transpose_conj_agree() {
        let a = ComplexMatrix::from_vec(2, 3, (0..6).map(|k| c(k as f64, -(k as f64))).collect())
            .unwrap();
        assert_eq!(a.adjoint(), a.transpose().conj());
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn deviation_measures_detect_structure() {
        let herm = ComplexMatrix::from_vec(2, 2, vec![c(2.0, 0.0), c(1.0, 3.0), c(1.0, -3.0), c(5.0, 0.0)])
            .unwrap();
        assert_eq!(herm.hermitian_deviation(), 0.0);
        assert!(herm.symmetric_deviation() > 5.0);

        let sym = ComplexMatrix::from_vec(2, 2, vec![c(2.0, 1.0), c(1.0, 3.0), c(1.0, 3.0), c(5.0, -2.0)])
            .unwrap();
        assert_eq!(sym.symmetric_deviation(), 0.0);
        assert!(sym.hermitian_deviation() > 0.0);
    }

    #[test]
    fn blocks_round_trip() {
        let mut big = ComplexMatrix::zeros(4, 4);
        let small = ComplexMatrix::from_fn(2, 2, |i, j| c((i + 1) as f64, (j + 1) as f64));
        big.set_block(2, 1, &small);
        assert_eq!(big.block(2, 1, 2, 2), small);
        assert_eq!(big.get(0, 0), Complex64::ZERO);
    }
}
