//! Hermitian eigendecomposition and exact propagation.

use faer::Side;

use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Eigenpairs of a Hermitian matrix, values ascending, eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, j: usize) -> Vec<C64> {
        self.vectors.column(j)
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.dim();
        let scaled = ComplexMatrix::from_fn(d, d, |i, j| self.vectors[(i, j)] * self.values[j]);
        &scaled * &self.vectors.adjoint()
    }

    /// Matrix elements `<φ_a|op|φ_b>`.
    pub fn to_eigenbasis(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.vectors.adjoint().matmul(&op.matmul(&self.vectors)?)
    }

    /// Coordinates `V† ψ` of a state in the eigenbasis.
    pub fn coefficients(&self, psi: &[C64]) -> Result<Vec<C64>> {
        self.vectors.adjoint().matvec(psi)
    }

    /// `max_j ||A v_j - λ_j v_j||`.
    pub fn residual(&self, a: &ComplexMatrix) -> Result<f64> {
        let av = a.matmul(&self.vectors)?;
        let d = self.dim();
        let mut worst = 0.0_f64;
        for j in 0..d {
            let r: f64 = (0..d)
                .map(|i| (av[(i, j)] - self.vectors[(i, j)] * self.values[j]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        Ok(worst)
    }

    /// `max |V†V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let g = &self.vectors.adjoint() * &self.vectors;
        (&g - &ComplexMatrix::identity(self.dim())).max_abs()
    }
}

/// Rotate the phase of `v` so its first entry of largest modulus is real positive.
pub(crate) fn fix_phase(v: &mut [C64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    // Ties within rounding noise resolve to the lowest index.
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-10))
        .expect("nonempty");
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[pivot] = C64::new(v[pivot].re, 0.0);
}

/// Eigendecomposition of a Hermitian matrix with phase-fixed eigenvectors.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenSystem> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let herr = a.hermiticity_error();
    if herr > 1e-12 * a.max_abs().max(1.0) {
        return Err(Error::NotHermitian(herr));
    }
    let n = a.rows();
    let evd = a
        .to_faer()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::EigenFailure)?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].re.total_cmp(&s[j].re));
    let values: Vec<f64> = order.iter().map(|&i| s[i].re).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenFailure);
    }
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut col = vec![ZERO; n];
    for (j, &src) in order.iter().enumerate() {
        for (i, c) in col.iter_mut().enumerate() {
            *c = u[(i, src)];
        }
        fix_phase(&mut col);
        vectors.set_column(j, &col);
    }
    Ok(EigenSystem { values, vectors })
}

/// Precomputed exact evolution `ψ(t) = V e^{-iΛt} V† ψ0`.
#[derive(Clone, Debug)]
pub struct Evolution<'a> {
    eig: &'a EigenSystem,
    coeffs: Vec<C64>,
}

impl<'a> Evolution<'a> {
    pub fn new(eig: &'a EigenSystem, psi0: &[C64]) -> Result<Self> {
        if psi0.len() != eig.dim() {
            return Err(Error::DimensionMismatch {
                expected: eig.dim(),
                found: psi0.len(),
            });
        }
        Ok(Self {
            eig,
            coeffs: eig.coefficients(psi0)?,
        })
    }

    /// Eigenbasis coordinates of `ψ(t)`.
    pub fn coefficients_at(&self, t: f64) -> Vec<C64> {
        self.coeffs
            .iter()
            .zip(&self.eig.values)
            .map(|(&c, &l)| c * C64::from_polar(1.0, -l * t))
            .collect()
    }

    pub fn state_at(&self, t: f64) -> Vec<C64> {
        self.eig
            .vectors
            .matvec(&self.coefficients_at(t))
            .expect("dimensions fixed at construction")
    }
}

pub fn evolve_state(eig: &EigenSystem, psi0: &[C64], t: f64) -> Result<Vec<C64>> {
    Ok(Evolution::new(eig, psi0)?.state_at(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{norm, pauli, Axis};

    #[test]
    fn pauli_spectra() {
        let z = hermitian_eig(&pauli(Axis::Z)).unwrap();
        assert_eq!(z.values, vec![-1.0, 1.0]);
        let x = hermitian_eig(&pauli(Axis::X)).unwrap();
        assert!((x.values[0] + 1.0).abs() < 1e-14 && (x.values[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = x.vector(1);
        assert!((plus[0] - C64::new(s, 0.0)).norm() < 1e-14);
        assert!((plus[1] - C64::new(s, 0.0)).norm() < 1e-14);
        let minus = x.vector(0);
        assert!((minus[0].norm() - s).abs() < 1e-14);
        assert!((minus[0] + minus[1]).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn phase_fixing_is_applied() {
        let a = ComplexMatrix::from_fn(6, 6, |i, j| {
            C64::new((i + j) as f64 * 0.1, (i as f64 - j as f64) * 0.3)
        });
        let e = hermitian_eig(&a).unwrap();
        for j in 0..6 {
            let v = e.vector(j);
            let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let p = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-10)).unwrap();
            assert!(v[p].im == 0.0 && v[p].re > 0.0);
        }
    }

    #[test]
    fn two_level_evolution() {
        let w = 0.7;
        let h = pauli(Axis::Z).scale_real(w / 2.0);
        let e = hermitian_eig(&h).unwrap();
        let psi = vec![C64::new(1.0, 0.0), ZERO];
        assert_eq!(evolve_state(&e, &psi, 0.0).unwrap(), psi);
        let out = evolve_state(&e, &psi, 3.3).unwrap();
        assert!((out[0].norm() - 1.0).abs() < 1e-14);

        let hx = pauli(Axis::X).scale_real(0.4);
        let ex = hermitian_eig(&hx).unwrap();
        let period = 2.0 * std::f64::consts::PI / (ex.values[1] - ex.values[0]);
        let back = evolve_state(&ex, &psi, period).unwrap();
        assert!((back[0].norm_sqr() - 1.0).abs() < 1e-12);
        assert!((norm(&back) - 1.0).abs() < 1e-14);
        assert!(evolve_state(&ex, &[C64::new(1.0, 0.0)], 1.0).is_err());
    }
}
