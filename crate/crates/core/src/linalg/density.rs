//! Density-matrix functionals.

use super::{hermitian_eig, ComplexMatrix};
use crate::error::{Error, Result};

/// `S = -Σ λ ln λ` over eigenvalues above 1e-14.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(rho)?;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -1e-10 {
            return Err(Error::NegativeEigenvalue(lowest));
        }
    }
    Ok(eig
        .values
        .iter()
        .filter(|&&l| l > 1e-14)
        .map(|&l| -l * l.ln())
        .sum())
}

/// `½ ||a - b||_1` for Hermitian `a`, `b`.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let diff = (a - b).hermitian_part();
    Ok(0.5 * hermitian_eig(&diff)?.values.iter().map(|l| l.abs()).sum::<f64>())
}
