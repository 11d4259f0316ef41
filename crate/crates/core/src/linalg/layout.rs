//! Ordered tensor-product layouts, operator embedding and partial traces.

use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

/// Ordered list of tensor factors. The first factor is the most significant
/// digit of the composite index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertLayout {
    factors: Vec<Factor>,
}

pub const QRS: &str = "qrs";
pub const CAVITY: &str = "cavity";

/// Label of the `n`-th coupled qubit, counting from 1.
pub fn qubit_label(n: usize) -> String {
    format!("q{n}")
}

impl HilbertLayout {
    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<Factor> = Vec::new();
        for (label, dim) in factors {
            let label = label.into();
            if dim == 0 {
                return Err(Error::InvalidDimension(format!("factor `{label}` has dimension 0")));
            }
            if out.iter().any(|f| f.label == label) {
                return Err(Error::DuplicateFactor(label));
            }
            out.push(Factor { label, dim });
        }
        if out.is_empty() {
            return Err(Error::InvalidDimension("layout has no factors".into()));
        }
        Ok(Self { factors: out })
    }

    /// `[qrs(2), cavity(n_fock), q1(2), ..., qN(2)]`.
    pub fn canonical(n_fock: usize, n_qubits: usize) -> Self {
        let mut f = vec![(QRS.to_string(), 2), (CAVITY.to_string(), n_fock)];
        f.extend((1..=n_qubits).map(|n| (qubit_label(n), 2)));
        Self::new(f).expect("canonical layout is valid")
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.label == label)
            .ok_or_else(|| Error::UnknownFactor(label.to_string()))
    }

    pub fn factor_dim(&self, label: &str) -> Result<usize> {
        Ok(self.factors[self.position(label)?].dim)
    }

    /// `I ⊗ ... ⊗ op ⊗ ... ⊗ I` with `op` on `label`.
    pub fn embed(&self, op: &ComplexMatrix, label: &str) -> Result<ComplexMatrix> {
        let pos = self.position(label)?;
        let d = self.factors[pos].dim;
        if op.rows() != d || op.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: op.rows().max(op.cols()),
            });
        }
        let left: usize = self.factors[..pos].iter().map(|f| f.dim).product();
        let right: usize = self.factors[pos + 1..].iter().map(|f| f.dim).product();
        Ok(ComplexMatrix::identity(left)
            .kron(op)
            .kron(&ComplexMatrix::identity(right)))
    }

    /// Product of operators on distinct factors, e.g. `σz_p σz_1 σz_2`.
    pub fn embed_product(&self, ops: &[(&str, &ComplexMatrix)]) -> Result<ComplexMatrix> {
        let mut per_factor: Vec<Option<&ComplexMatrix>> = vec![None; self.factors.len()];
        for &(label, op) in ops {
            let pos = self.position(label)?;
            if per_factor[pos].is_some() {
                return Err(Error::DuplicateFactor(label.to_string()));
            }
            let d = self.factors[pos].dim;
            if op.rows() != d || op.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: op.rows(),
                });
            }
            per_factor[pos] = Some(op);
        }
        let mut acc = ComplexMatrix::identity(1);
        for (f, op) in self.factors.iter().zip(per_factor) {
            acc = match op {
                Some(op) => acc.kron(op),
                None => acc.kron(&ComplexMatrix::identity(f.dim)),
            };
        }
        Ok(acc)
    }

    /// For each composite index, its (kept, traced) sub-indices.
    fn split_indices(&self, keep: &[&str]) -> Result<(usize, usize, Vec<(usize, usize)>)> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let mut kept = vec![false; self.factors.len()];
        for label in keep {
            let pos = self.position(label)?;
            if kept[pos] {
                return Err(Error::DuplicateFactor(label.to_string()));
            }
            kept[pos] = true;
        }
        let dk: usize = self
            .factors
            .iter()
            .zip(&kept)
            .filter(|(_, &k)| k)
            .map(|(f, _)| f.dim)
            .product();
        let dt = self.dim() / dk;
        let mut map = Vec::with_capacity(self.dim());
        let mut digits = vec![0usize; self.factors.len()];
        for _ in 0..self.dim() {
            let (mut ki, mut ti) = (0, 0);
            for ((f, &k), &d) in self.factors.iter().zip(&kept).zip(&digits) {
                if k {
                    ki = ki * f.dim + d;
                } else {
                    ti = ti * f.dim + d;
                }
            }
            map.push((ki, ti));
            for p in (0..digits.len()).rev() {
                digits[p] += 1;
                if digits[p] < self.factors[p].dim {
                    break;
                }
                digits[p] = 0;
            }
        }
        Ok((dk, dt, map))
    }
}

/// Reduced density matrix over the `keep` factors, in layout order.
pub fn partial_trace(rho: &ComplexMatrix, layout: &HilbertLayout, keep: &[&str]) -> Result<ComplexMatrix> {
    let d = layout.dim();
    if rho.rows() != d || rho.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.rows(),
        });
    }
    let (dk, dt, map) = layout.split_indices(keep)?;
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(dk); dt];
    for (full, &(ki, ti)) in map.iter().enumerate() {
        groups[ti].push((full, ki));
    }
    let mut out = ComplexMatrix::zeros(dk, dk);
    for group in &groups {
        for &(i, a) in group {
            for &(j, b) in group {
                out[(a, b)] += rho[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Reduced density matrix of the pure state `psi` without forming `|psi><psi|`.
pub fn reduced_from_pure(psi: &[C64], layout: &HilbertLayout, keep: &[&str]) -> Result<ComplexMatrix> {
    if psi.len() != layout.dim() {
        return Err(Error::DimensionMismatch {
            expected: layout.dim(),
            found: psi.len(),
        });
    }
    let (dk, dt, map) = layout.split_indices(keep)?;
    // Reshape psi into a dk x dt matrix M; the reduced state is M M†.
    let mut m = vec![ZERO; dk * dt];
    for (full, &(ki, ti)) in map.iter().enumerate() {
        m[ki * dt + ti] = psi[full];
    }
    let mut out = ComplexMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in a..dk {
            let v: C64 = (0..dt).map(|t| m[a * dt + t] * m[b * dt + t].conj()).sum();
            out[(a, b)] = v;
            out[(b, a)] = v.conj();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, pauli, Axis};

    #[test]
    fn canonical_labels_and_dim() {
        let l = HilbertLayout::canonical(5, 2);
        let labels: Vec<_> = l.factors().iter().map(|f| f.label.as_str()).collect();
        assert_eq!(labels, ["qrs", "cavity", "q1", "q2"]);
        assert_eq!(l.dim(), 40);
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        assert!(matches!(
            HilbertLayout::new([("a", 2), ("a", 3)]),
            Err(Error::DuplicateFactor(_))
        ));
        let l = HilbertLayout::new([("a", 2), ("b", 2)]).unwrap();
        assert!(matches!(l.embed(&pauli(Axis::Z), "c"), Err(Error::UnknownFactor(_))));
        assert!(l.embed(&ComplexMatrix::identity(3), "a").is_err());
    }

    #[test]
    fn embed_first_factor() {
        let l = HilbertLayout::new([("q1", 2), ("q2", 2)]).unwrap();
        let e = l.embed(&pauli(Axis::Z), "q1").unwrap();
        assert_eq!(e, pauli(Axis::Z).kron(&ComplexMatrix::identity(2)));
    }

    #[test]
    fn embeds_on_distinct_factors_commute() {
        let l = HilbertLayout::new([("a", 2), ("b", 3), ("c", 2)]).unwrap();
        let a = l.embed(&pauli(Axis::X), "a").unwrap();
        let b = l
            .embed(&ComplexMatrix::from_fn(3, 3, |i, j| C64::new(i as f64, j as f64)), "b")
            .unwrap();
        assert_eq!(commutator(&a, &b).unwrap().max_abs(), 0.0);
        let m = ComplexMatrix::from_fn(3, 3, |i, j| C64::new((i * j) as f64 + 1.0, 0.0));
        let e = l.embed(&m, "b").unwrap();
        assert!((e.trace() - m.trace() * 4.0).norm() < 1e-12);
    }

    #[test]
    fn bell_state_reduces_to_mixed() {
        let l = HilbertLayout::new([("a", 2), ("b", 2)]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = vec![C64::new(s, 0.0), ZERO, ZERO, C64::new(s, 0.0)];
        let rho = ComplexMatrix::outer(&psi, &psi);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for keep in ["a", "b"] {
            let r = partial_trace(&rho, &l, &[keep]).unwrap();
            assert!((&r - &half).max_abs() < 1e-15);
            let rp = reduced_from_pure(&psi, &l, &[keep]).unwrap();
            assert!((&rp - &half).max_abs() < 1e-15);
        }
        assert!(matches!(partial_trace(&rho, &l, &[]), Err(Error::EmptyKeep)));
    }

    #[test]
    fn product_state_recovers_factor() {
        let l = HilbertLayout::new([("a", 2), ("b", 3), ("c", 2)]).unwrap();
        let ra = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                C64::new(if i == 0 { 0.7 } else { 0.3 }, 0.0)
            } else {
                C64::new(0.1, if i < j { 0.2 } else { -0.2 })
            }
        });
        let rb = ComplexMatrix::from_diagonal(&[0.5, 0.25, 0.25]);
        let rc = ComplexMatrix::from_diagonal(&[0.9, 0.1]);
        let rho = ra.kron(&rb).kron(&rc);
        assert!((&partial_trace(&rho, &l, &["a"]).unwrap() - &ra).max_abs() < 1e-15);
        assert!((&partial_trace(&rho, &l, &["a", "c"]).unwrap() - &ra.kron(&rc)).max_abs() < 1e-15);
        // keep order follows layout order, not argument order
        assert_eq!(
            partial_trace(&rho, &l, &["c", "a"]).unwrap(),
            partial_trace(&rho, &l, &["a", "c"]).unwrap()
        );
    }
}
