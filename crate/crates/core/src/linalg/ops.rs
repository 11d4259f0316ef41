//! Standard bosonic and spin-1/2 operators.
//!
//! Qubit basis order is `(|e>, |g>)`, so `σz|e> = +|e>` and `σ+|g> = |e>`.

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Truncated bosonic annihilation operator on `n_fock` Fock states.
pub fn annihilation(n_fock: usize) -> Result<ComplexMatrix> {
    if n_fock < 2 {
        return Err(Error::InvalidDimension(format!(
            "Fock truncation must be at least 2, got {n_fock}"
        )));
    }
    let mut b = ComplexMatrix::zeros(n_fock, n_fock);
    for i in 0..n_fock - 1 {
        b[(i, i + 1)] = C64::new(((i + 1) as f64).sqrt(), 0.0);
    }
    Ok(b)
}

/// `b†b` as a diagonal matrix.
pub fn number_operator(n_fock: usize) -> ComplexMatrix {
    let diag: Vec<f64> = (0..n_fock).map(|n| n as f64).collect();
    ComplexMatrix::from_diagonal(&diag)
}

pub fn pauli(axis: Axis) -> ComplexMatrix {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let data = match axis {
        Axis::X => vec![z, one, one, z],
        Axis::Y => vec![z, -i, i, z],
        Axis::Z => vec![one, z, z, -one],
    };
    ComplexMatrix::from_vec(2, 2, data).expect("2x2 literal")
}

/// `σ± = (σx ± iσy)/2`.
pub fn sigma_pm(sign: Sign) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    match sign {
        Sign::Plus => m[(0, 1)] = C64::new(1.0, 0.0),
        Sign::Minus => m[(1, 0)] = C64::new(1.0, 0.0),
    }
    m
}
