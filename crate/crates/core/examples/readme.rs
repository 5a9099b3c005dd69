//! The library snippet from the README, kept compiling.

use wlest::{estimate, Complex64, ComplexMatrix, EstimatorKind, LinearModel};

fn main() -> wlest::Result<()> {
    let model = LinearModel::with_proper_noise(ComplexMatrix::identity(2), ComplexMatrix::identity(2))?;
    let y = vec![Complex64::new(2.0, 3.0), Complex64::new(-1.0, 0.5)];
    let result = estimate(&model, EstimatorKind::Rbwlue, &y)?;
    assert_eq!(result.x_hat[0], Complex64::new(2.0, 0.0));
    Ok(())
}
