//! Augmented representation of complex random vectors.
//!
//! The second-order statistics of a complex random vector a are only fully
//! captured by the pair (C, C_tilde) with C = E[a a^H] and C_tilde =
//! E[a a^T]. Stacking a on top of its conjugate turns widely linear
//! operations into ordinary linear algebra on vectors of twice the length.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::psd_lower;
use crate::matrix::{ensure_finite_vec, ComplexMatrix, ComplexVector, ABS_FLOOR, SYMMETRY_TOL};

/// Stacks `[a; conj(a)]`.
pub fn augment_vector(a: &[Complex64]) -> Result<ComplexVector> {
    if a.is_empty() {
        return Err(Error::Dimension("cannot augment an empty vector".into()));
    }
    ensure_finite_vec(a, "vector to augment")?;
    let mut out = Vec::with_capacity(2 * a.len());
    out.extend_from_slice(a);
    out.extend(a.iter().map(|z| z.conj()));
    Ok(out)
}

/// Block-diagonal `blkdiag(H, conj(H))`, the model matrix that maps an
/// augmented parameter vector to an augmented measurement vector.
pub fn augment_model_matrix(h: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (h.rows(), h.cols());
    let mut out = ComplexMatrix::zeros(2 * m, 2 * n);
    out.set_block(0, 0, h);
    out.set_block(m, n, &h.conj());
    out
}

/// Assembles the augmented covariance `[[C, Ct], [conj(Ct), conj(C)]]` after
/// validating the structure of both blocks.
pub fn assemble_augmented_covariance(
    c: &ComplexMatrix,
    ct: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    validate_covariance_pair(c, ct)?;
    let n = c.rows();
    let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
    out.set_block(0, 0, c);
    out.set_block(0, n, ct);
    out.set_block(n, 0, &ct.conj());
    out.set_block(n, n, &c.conj());
    Ok(out)
}

/// True when `max |Ct|` does not exceed `tol`; proper vectors have
/// vanishing complementary covariance.
pub fn is_proper(ct: &ComplexMatrix, tol: f64) -> bool {
    assert!(ct.is_square(), "complementary covariance must be square");
    ct.max_abs() <= tol
}

fn validate_covariance_pair(c: &ComplexMatrix, ct: &ComplexMatrix) -> Result<()> {
    if !c.is_square() {
        return Err(Error::Dimension(format!(
            "covariance C must be square, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    if ct.rows() != c.rows() || ct.cols() != c.cols() {
        return Err(Error::Dimension(format!(
            "complementary covariance is {}x{}, expected {}x{}",
            ct.rows(),
            ct.cols(),
            c.rows(),
            c.cols()
        )));
    }
    let dev_c = c.hermitian_deviation();
    let tol_c = SYMMETRY_TOL * c.max_abs().max(ABS_FLOOR);
    if dev_c > tol_c {
        return Err(Error::Symmetry {
            block: "covariance C".into(),
            expected: "Hermitian",
            deviation: dev_c,
            tolerance: tol_c,
        });
    }
    let dev_ct = ct.symmetric_deviation();
    let tol_ct = SYMMETRY_TOL * ct.max_abs().max(ABS_FLOOR);
    if dev_ct > tol_ct {
        return Err(Error::Symmetry {
            block: "complementary covariance C_tilde".into(),
            expected: "complex-symmetric",
            deviation: dev_ct,
            tolerance: tol_ct,
        });
    }
    Ok(())
}

/// Validated second-order description (C, C_tilde) of a complex random
/// vector. Construction guarantees the assembled augmented covariance is
/// positive semi-definite.
#[derive(Debug, Clone)]
pub struct AugmentedCovariance {
    c: ComplexMatrix,
    ct: ComplexMatrix,
}

impl AugmentedCovariance {
    pub fn new(c: ComplexMatrix, ct: ComplexMatrix) -> Result<Self> {
        let assembled = assemble_augmented_covariance(&c, &ct)?;
        psd_lower(&assembled, "assembled augmented covariance")?;
        Ok(AugmentedCovariance { c, ct })
    }

    /// Covariance of a proper vector: C_tilde = 0.
    pub fn proper(c: ComplexMatrix) -> Result<Self> {
        let n = c.rows();
        Self::new(c, ComplexMatrix::zeros(n, n))
    }

    /// Covariance of a real random vector, where C and C_tilde coincide.
    pub fn real(c: ComplexMatrix) -> Result<Self> {
        let ct = c.clone();
        Self::new(c, ct)
    }

    pub fn dim(&self) -> usize {
        self.c.rows()
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn ct(&self) -> &ComplexMatrix {
        &self.ct
    }

    /// The full 2n-by-2n augmented covariance matrix.
    pub fn assembled(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
        out.set_block(0, 0, &self.c);
        out.set_block(0, n, &self.ct);
        out.set_block(n, 0, &self.ct.conj());
        out.set_block(n, n, &self.c.conj());
        out
    }

    pub fn is_proper(&self, tol: f64) -> bool {
        is_proper(&self.ct, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vec_max_abs;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn augment_vector_stacks_conjugate() {
        let a = vec![c64(1.0, 2.0), c64(-3.0, 0.5)];
        let aug = augment_vector(&a).unwrap();
        assert_eq!(aug, vec![c64(1.0, 2.0), c64(-3.0, 0.5), c64(1.0, -2.0), c64(-3.0, -0.5)]);
        assert!(matches!(augment_vector(&[]), Err(Error::Dimension(_))));
    }

    #[test]
    fn augmented_product_commutes_with_augmentation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = ComplexMatrix::from_fn(4, 3, |_, _| {
            c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let x: Vec<Complex64> = (0..3)
            .map(|_| c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let lhs = augment_model_matrix(&h).matvec(&augment_vector(&x).unwrap());
        let rhs = augment_vector(&h.matvec(&x)).unwrap();
        let diff = vec_max_abs(&crate::matrix::vec_sub(&lhs, &rhs));
        assert!(diff == 0.0, "diff={diff:.3e}");
    }

    #[test]
    fn empirical_augmented_moments_match_assembled_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 3;
        let trials = 500;
        let samples: Vec<Vec<Complex64>> = (0..trials)
            .map(|_| {
                (0..n)
                    .map(|_| c64(rng.random::<f64>() - 0.5, 2.0 * rng.random::<f64>() - 1.0))
                    .collect()
            })
            .collect();

        // empirical C and C_tilde from the raw samples
        let mut c = ComplexMatrix::zeros(n, n);
        let mut ct = ComplexMatrix::zeros(n, n);
        for a in &samples {
            for i in 0..n {
                for j in 0..n {
                    c.set(i, j, c.get(i, j) + a[i] * a[j].conj() / trials as f64);
                    ct.set(i, j, ct.get(i, j) + a[i] * a[j] / trials as f64);
                }
            }
        }

        // empirical second moment of the augmented samples
        let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
        for a in &samples {
            let aug = augment_vector(a).unwrap();
            for i in 0..2 * n {
                for j in 0..2 * n {
                    m.set(i, j, m.get(i, j) + aug[i] * aug[j].conj() / trials as f64);
                }
            }
        }

        let assembled = assemble_augmented_covariance(&c, &ct).unwrap();
        let diff = m.sub(&assembled).max_abs();
        assert!(diff <= 1e-12 * m.max_abs(), "diff={diff:.3e}");

        // block structure of the empirical augmented moment
        let tl = m.block(0, 0, n, n);
        let br = m.block(n, n, n, n);
        assert!(tl.sub(&br.conj()).max_abs() <= 1e-12 * m.max_abs());
        let tr = m.block(0, n, n, n);
        let bl = m.block(n, 0, n, n);
        assert!(tr.sub(&bl.conj()).max_abs() <= 1e-12 * m.max_abs());
    }

    #[test]
    fn asymmetric_blocks_are_rejected_with_block_name() {
        let c = ComplexMatrix::from_vec(
            2,
            2,
            vec![c64(1.0, 0.0), c64(0.5, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)],
        )
        .unwrap();
        let ct = ComplexMatrix::zeros(2, 2);
        match assemble_augmented_covariance(&c, &ct) {
            Err(Error::Symmetry { block, .. }) => assert!(block.contains('C'), "{block}"),
            other => panic!("expected symmetry error, got {other:?}"),
        }

        let good_c = ComplexMatrix::identity(2);
        let bad_ct = ComplexMatrix::from_vec(
            2,
            2,
            vec![c64(0.0, 0.0), c64(0.3, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
        )
        .unwrap();
        match assemble_augmented_covariance(&good_c, &bad_ct) {
            Err(Error::Symmetry { block, .. }) => assert!(block.contains("C_tilde"), "{block}"),
            other => panic!("expected symmetry error, got {other:?}"),
        }
    }

    #[test]
    fn real_vector_covariance_is_accepted_despite_singular_augmentation() {
        // C = C_tilde = I gives an augmented covariance of rank n, not 2n
        let cov = AugmentedCovariance::real(ComplexMatrix::identity(3)).unwrap();
        assert_eq!(cov.dim(), 3);
        assert!(!cov.is_proper(0.5));
    }

    #[test]
    fn indefinite_augmentation_is_rejected() {
        // C = I with C_tilde = 2I makes [[I, 2I], [2I, I]] indefinite
        let c = ComplexMatrix::identity(2);
        let ct = ComplexMatrix::scaled_identity(2, 2.0);
        assert!(matches!(
            AugmentedCovariance::new(c, ct),
            Err(Error::NotPsd { .. })
        ));
    }

    proptest! {
        #[test]
        fn properness_is_monotone_in_tolerance(
            entries in proptest::collection::vec(-1.0f64..1.0, 8),
            tol1 in 0.0f64..2.0,
            tol2 in 0.0f64..2.0,
        ) {
            let ct = ComplexMatrix::from_fn(2, 2, |i, j| {
                c64(entries[2 * (2 * i + j)], entries[2 * (2 * i + j) + 1])
            });
            let (lo, hi) = if tol1 <= tol2 { (tol1, tol2) } else { (tol2, tol1) };
            if is_proper(&ct, lo) {
                prop_assert!(is_proper(&ct, hi));
            }
        }
    }
}
