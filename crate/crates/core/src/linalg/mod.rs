//! Dense complex linear algebra: matrices, tensor layouts, operators,
//! eigendecomposition, propagators and density-matrix functionals.

mod density;
mod eigen;
mod expm;
mod layout;
mod matrix;
mod ops;

pub use density::{trace_distance, von_neumann_entropy};
pub use eigen::{evolve_state, hermitian_eig, EigenSystem, Evolution};
pub(crate) use eigen::fix_phase;
pub use expm::expm;
pub(crate) use expm::expm_faer;
pub use layout::{partial_trace, qubit_label, reduced_from_pure, Factor, HilbertLayout, CAVITY, QRS};
pub use matrix::{commutator, kron_all, ComplexMatrix};
pub use ops::{annihilation, number_operator, pauli, sigma_pm, Axis, Sign};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// `<a|b>`, conjugating the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [C64]) {
    let n = norm(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}

/// Kronecker product of two state vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Computational basis vector `e_i` of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}
