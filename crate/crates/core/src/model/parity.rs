//! The Z2 parity symmetry and parity labelling of eigenstates.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, pauli, Axis, ComplexMatrix, EigenSystem, HilbertLayout, C64, CAVITY, QRS};

/// Eigenvalue of the parity operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn value(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn from_sign(x: f64) -> Self {
        if x >= 0.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `−e^{iπ b†b} σz_p ∏_n σz_n` on any layout that starts with the bus; every
/// factor other than the cavity is treated as a spin-1/2.
pub fn parity_operator(layout: &HilbertLayout) -> Result<ComplexMatrix> {
    let n_fock = layout.factor_dim(CAVITY)?;
    layout.position(QRS)?;
    let photon: Vec<f64> = (0..n_fock)
        .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    let photon = ComplexMatrix::from_diagonal(&photon);
    let sz = pauli(Axis::Z);
    let mut ops: Vec<(&str, &ComplexMatrix)> = Vec::new();
    for f in layout.factors() {
        if f.label == CAVITY {
            ops.push((CAVITY, &photon));
        } else if f.dim == 2 {
            ops.push((f.label.as_str(), &sz));
        } else {
            return Err(Error::InvalidDimension(format!(
                "parity needs spin-1/2 factors, `{}` has dimension {}",
                f.label, f.dim
            )));
        }
    }
    Ok(-&layout.embed_product(&ops)?)
}

/// `Π_p = −e^{iπ b†b} σz_p` on `[qrs, cavity]`.
pub fn rabi_parity(n_fock: usize) -> Result<ComplexMatrix> {
    parity_operator(&HilbertLayout::canonical(n_fock, 0))
}

/// Eigenbasis of `H` with a definite parity for every vector.
#[derive(Clone, Debug)]
pub struct ParityBasis {
    pub eig: EigenSystem,
    pub labels: Vec<Parity>,
    /// `<φ_j|P|φ_j>` after cluster re-diagonalisation.
    pub expectations: Vec<f64>,
}

const CLUSTER_TOL: f64 = 1e-9;
const LABEL_THRESHOLD: f64 = 0.99;

/// Label eigenstates by parity. Inside clusters of degenerate eigenvalues the
/// parity operator is diagonalised first, so the returned vectors may be a
/// rotation of the input ones.
pub fn classify_parity(eig: &EigenSystem, parity: &ComplexMatrix) -> Result<ParityBasis> {
    let d = eig.dim();
    let pv = parity.matmul(&eig.vectors)?;
    let mut out = eig.clone();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eig.values[end] - eig.values[end - 1] < CLUSTER_TOL {
            end += 1;
        }
        if end - start > 1 {
            let m = end - start;
            let local = ComplexMatrix::from_fn(m, m, |a, b| {
                (0..d)
                    .map(|i| eig.vectors[(i, start + a)].conj() * pv[(i, start + b)])
                    .sum::<C64>()
            });
            let rot = hermitian_eig(&local.hermitian_part())?;
            for b in 0..m {
                let mut col: Vec<C64> = (0..d)
                    .map(|i| {
                        (0..m)
                            .map(|a| eig.vectors[(i, start + a)] * rot.vectors[(a, b)])
                            .sum::<C64>()
                    })
                    .collect();
                crate::linalg::fix_phase(&mut col);
                out.vectors.set_column(start + b, &col);
            }
        }
        start = end;
    }
    let pv = parity.matmul(&out.vectors)?;
    let mut labels = Vec::with_capacity(d);
    let mut expectations = Vec::with_capacity(d);
    for j in 0..d {
        let ex: f64 = (0..d)
            .map(|i| (out.vectors[(i, j)].conj() * pv[(i, j)]).re)
            .sum();
        if ex.abs() < LABEL_THRESHOLD {
            return Err(Error::ParityClassification { level: j, value: ex.abs() });
        }
        labels.push(Parity::from_sign(ex));
        expectations.push(ex);
    }
    Ok(ParityBasis {
        eig: out,
        labels,
        expectations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutator;
    use crate::model::{build_rabi, build_total, RabiParams, SystemParams};

    #[test]
    fn parity_is_an_involution() {
        let p = parity_operator(&HilbertLayout::canonical(6, 2)).unwrap();
        assert_eq!(&p * &p, ComplexMatrix::identity(48));
        assert_eq!(p.hermiticity_error(), 0.0);
    }

    #[test]
    fn rabi_parity_commutes() {
        let r = RabiParams::new(0.8, 0.7, 12);
        let h = build_rabi(&r).unwrap();
        let p = rabi_parity(12).unwrap();
        assert!(commutator(&h, &p).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn ground_state_is_even() {
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.3, 20), 0.4, 0.4, 0.02, 0.02);
        let eig = hermitian_eig(&build_total(&s).unwrap()).unwrap();
        let basis = classify_parity(&eig, &parity_operator(&s.layout()).unwrap()).unwrap();
        assert_eq!(basis.labels[0], Parity::Even);
    }

    #[test]
    fn degenerate_product_states_get_product_parity() {
        // Fully decoupled with identical qubits: many exact degeneracies.
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.0, 4), 0.2, 0.2, 0.0, 0.0);
        let layout = s.layout();
        let h = build_total(&s).unwrap();
        let eig = hermitian_eig(&h).unwrap();
        let p = parity_operator(&layout).unwrap();
        let basis = classify_parity(&eig, &p).unwrap();
        for j in 0..eig.dim() {
            let v = basis.eig.vector(j);
            let pv = p.matvec(&v).unwrap();
            let sign = basis.labels[j].value() as f64;
            let resid: f64 = v.iter().zip(&pv).map(|(a, b)| (b - a * sign).norm()).fold(0.0, f64::max);
            assert!(resid < 1e-10);
            assert!(basis.eig.residual(&h).unwrap() < 1e-10);
        }
    }
}
