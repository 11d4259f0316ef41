//! Quantum Rabi bus with N coupled qubits: Hamiltonians, parity, reference
//! states and spectrum sweeps.

mod parity;
mod states;
mod sweep;

pub use parity::{classify_parity, parity_operator, rabi_parity, Parity, ParityBasis};
pub use states::{named_state, parse_labelled_state, TwoQubitState};
pub(crate) use sweep::scan_with;
pub use sweep::{
    rabi_spectrum_scan, spectrum_scan, AvoidedCrossing, SpectrumPoint, SpectrumScan, Sweep,
    SweepParameter,
};

use crate::error::{Error, Result};
use crate::linalg::{
    annihilation, hermitian_eig, number_operator, pauli, qubit_label, Axis, ComplexMatrix,
    EigenSystem, HilbertLayout, CAVITY, QRS,
};

/// Qubit–cavity (quantum Rabi) system acting as the bus.
#[derive(Clone, Debug, PartialEq)]
pub struct RabiParams {
    pub omega_p: f64,
    pub omega_cav: f64,
    pub g_p: f64,
    pub n_fock: usize,
}

impl RabiParams {
    /// Parameters with `ω_cav = 1`.
    pub fn new(omega_p: f64, g_p: f64, n_fock: usize) -> Self {
        Self {
            omega_p,
            omega_cav: 1.0,
            g_p,
            n_fock,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("omega_p", self.omega_p)?;
        positive("omega_cav", self.omega_cav)?;
        non_negative("g_p", self.g_p)?;
        if self.n_fock < 4 {
            return Err(Error::InvalidParameter {
                field: "n_fock",
                reason: format!("must be at least 4, got {}", self.n_fock),
            });
        }
        Ok(())
    }

    pub fn layout(&self) -> HilbertLayout {
        HilbertLayout::canonical(self.n_fock, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams {
    pub omega_q: f64,
    pub g: f64,
}

/// Bus plus the qubits coupled to its cavity.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams {
    pub rabi: RabiParams,
    pub qubits: Vec<QubitParams>,
}

impl SystemParams {
    pub fn new(rabi: RabiParams, qubits: Vec<QubitParams>) -> Self {
        Self { rabi, qubits }
    }

    /// Two qubits with frequencies `omega_q1`, `omega_q2` and couplings `g1`, `g2`.
    pub fn two_qubit(rabi: RabiParams, omega_q1: f64, omega_q2: f64, g1: f64, g2: f64) -> Self {
        Self::new(
            rabi,
            vec![
                QubitParams { omega_q: omega_q1, g: g1 },
                QubitParams { omega_q: omega_q2, g: g2 },
            ],
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.rabi.validate()?;
        if self.qubits.is_empty() {
            return Err(Error::InvalidParameter {
                field: "qubits",
                reason: "at least one qubit is required".into(),
            });
        }
        for q in &self.qubits {
            positive("omega_q", q.omega_q)?;
            non_negative("g", q.g)?;
        }
        Ok(())
    }

    /// Non-fatal notes about the dispersive assumption `g_n ≪ g_p`.
    pub fn warnings(&self) -> Vec<String> {
        self.qubits
            .iter()
            .enumerate()
            .filter(|(_, q)| q.g > 0.0 && q.g > 0.2 * self.rabi.g_p)
            .map(|(i, q)| {
                format!(
                    "qubit {} coupling g = {} is not small compared to g_p = {}",
                    i + 1,
                    q.g,
                    self.rabi.g_p
                )
            })
            .collect()
    }

    pub fn layout(&self) -> HilbertLayout {
        HilbertLayout::canonical(self.rabi.n_fock, self.qubits.len())
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::InvalidParameter {
            field,
            reason: format!("must be positive, got {v}"),
        });
    }
    Ok(())
}

fn non_negative(field: &'static str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::InvalidParameter {
            field,
            reason: format!("must be non-negative, got {v}"),
        });
    }
    Ok(())
}

/// `b + b†` on the cavity factor of `layout`.
pub(crate) fn quadrature(layout: &HilbertLayout) -> Result<ComplexMatrix> {
    let b = annihilation(layout.factor_dim(CAVITY)?)?;
    layout.embed(&(&b + &b.adjoint()), CAVITY)
}

/// `ω_p/2 σz_p + ω_cav b†b + g_p σx_p (b + b†)` on `[qrs, cavity, ...]`.
fn rabi_terms(p: &RabiParams, layout: &HilbertLayout) -> Result<ComplexMatrix> {
    let n = p.n_fock;
    let b = annihilation(n)?;
    let x = &b + &b.adjoint();
    let mut h = layout.embed(&pauli(Axis::Z), QRS)?.scale_real(p.omega_p / 2.0);
    h += &layout.embed(&number_operator(n), CAVITY)?.scale_real(p.omega_cav);
    h += &layout
        .embed_product(&[(QRS, &pauli(Axis::X)), (CAVITY, &x)])?
        .scale_real(p.g_p);
    Ok(h)
}

/// Rabi Hamiltonian on `[qrs(2), cavity(n_fock)]`.
pub fn build_rabi(p: &RabiParams) -> Result<ComplexMatrix> {
    p.validate()?;
    rabi_terms(p, &p.layout())
}

/// Full Hamiltonian of the bus and its qubits in the canonical layout.
pub fn build_total(s: &SystemParams) -> Result<ComplexMatrix> {
    s.validate()?;
    let layout = s.layout();
    let mut h = rabi_terms(&s.rabi, &layout)?;
    let b = annihilation(s.rabi.n_fock)?;
    let x = &b + &b.adjoint();
    for (i, q) in s.qubits.iter().enumerate() {
        let label = qubit_label(i + 1);
        h += &layout.embed(&pauli(Axis::Z), &label)?.scale_real(q.omega_q / 2.0);
        if q.g != 0.0 {
            h += &layout
                .embed_product(&[(CAVITY, &x), (&label, &pauli(Axis::X))])?
                .scale_real(q.g);
        }
    }
    Ok(h)
}

/// Phase-fixed eigensystem of the Rabi Hamiltonian.
pub fn rabi_eigensystem(p: &RabiParams) -> Result<EigenSystem> {
    hermitian_eig(&build_rabi(p)?)
}

/// Rabi gap `ω₁₀ = E₁ − E₀`.
pub fn rabi_gap(p: &RabiParams) -> Result<f64> {
    let e = rabi_eigensystem(p)?;
    Ok(e.values[1] - e.values[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutator;

    fn fig3(delta: f64) -> SystemParams {
        SystemParams::two_qubit(RabiParams::new(0.8, 0.3, 20), delta, delta, 0.02, 0.02)
    }

    #[test]
    fn decoupled_rabi_spectrum() {
        let p = RabiParams::new(0.8, 0.0, 6);
        let e = rabi_eigensystem(&p).unwrap();
        let mut expected: Vec<f64> = (0..6)
            .flat_map(|n| [n as f64 + 0.4, n as f64 - 0.4])
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in e.values.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rabi_gap_converges_in_fock_cutoff() {
        let a = rabi_gap(&RabiParams::new(0.8, 0.3, 20)).unwrap();
        let b = rabi_gap(&RabiParams::new(0.8, 0.3, 40)).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn decoupled_total_is_sum_of_bare_levels() {
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.0, 4), 0.2, 0.35, 0.0, 0.0);
        let h = build_total(&s).unwrap();
        let eig = hermitian_eig(&h).unwrap();
        let mut bare = Vec::new();
        for sp in [0.4, -0.4] {
            for n in 0..4 {
                for s1 in [0.1, -0.1] {
                    for s2 in [0.175, -0.175] {
                        bare.push(sp + n as f64 + s1 + s2);
                    }
                }
            }
        }
        bare.sort_by(f64::total_cmp);
        for (a, b) in eig.values.iter().zip(&bare) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn lowest_levels_at_zero_detuning_follow_rabi_levels() {
        // With Δ → 0 the qubit terms vanish except the coupling; at g_n = 0 the
        // total spectrum is the Rabi spectrum shifted by the qubit ground energy.
        let mut s = fig3(1e-9);
        for q in &mut s.qubits {
            q.g = 0.0;
        }
        let total = hermitian_eig(&build_total(&s).unwrap()).unwrap();
        let rabi = rabi_eigensystem(&s.rabi).unwrap();
        for k in 0..5 {
            // each Rabi level appears four times (qubits nearly degenerate)
            assert!((total.values[4 * k] - (rabi.values[k] - 1e-9)).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(build_rabi(&RabiParams::new(0.8, 0.3, 3)).is_err());
        assert!(build_rabi(&RabiParams::new(-0.8, 0.3, 10)).is_err());
        assert!(build_rabi(&RabiParams::new(0.8, -0.1, 10)).is_err());
        let s = SystemParams::new(RabiParams::new(0.8, 0.3, 10), vec![]);
        assert!(build_total(&s).is_err());
        let mut s = fig3(0.2);
        s.qubits[1].omega_q = 0.0;
        assert!(matches!(
            build_total(&s),
            Err(Error::InvalidParameter { field: "omega_q", .. })
        ));
    }

    #[test]
    fn warns_on_strong_qubit_coupling() {
        assert!(fig3(0.2).warnings().is_empty());
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.05, 10), 0.2, 0.2, 0.02, 0.0);
        assert_eq!(s.warnings().len(), 1);
    }

    #[test]
    fn total_commutes_with_parity() {
        let s = fig3(0.45);
        let h = build_total(&s).unwrap();
        let p = parity_operator(&s.layout()).unwrap();
        assert!(commutator(&h, &p).unwrap().max_abs() < 1e-12);
    }
}
