//! Rotating-wave two-qubit Hamiltonian and its closed-form eigensystem.

use super::EffectiveModel;
use crate::error::{Error, Result};
use crate::linalg::{pauli, sigma_pm, Axis, ComplexMatrix, Sign, C64};

/// `Σ ω̃_n/2 σz_n + J(σ+₁σ−₂ + σ−₁σ+₂)` with its analytic eigenpairs.
///
/// States are in the `(ee, eg, ge, gg)` basis and ordered `G, E₁, E₂, E₃`.
#[derive(Clone, Debug)]
pub struct RwaSystem {
    pub hamiltonian: ComplexMatrix,
    pub omega_tilde: [f64; 2],
    pub j_eff: f64,
    /// Mixing angle with `tan θ = 2J / (ω̃₁ − ω̃₂)`, in `(0, π)`.
    pub theta: f64,
    pub energies: [f64; 4],
    pub states: [[C64; 4]; 4],
    /// `|J| / min ω̃`.
    pub rwa_ratio: f64,
}

pub fn rwa_two_qubit(model: &EffectiveModel) -> Result<RwaSystem> {
    if model.params.n_qubits() != 2 {
        return Err(Error::InvalidParameter {
            field: "qubits",
            reason: "the two-qubit RWA needs exactly 2 qubits".into(),
        });
    }
    let w = [model.omega_tilde(0), model.omega_tilde(1)];
    let j = model.j_eff();
    let i2 = ComplexMatrix::identity(2);
    let sz = pauli(Axis::Z);
    let sp = sigma_pm(Sign::Plus);
    let sm = sigma_pm(Sign::Minus);
    let mut h = sz.kron(&i2).scale_real(w[0] / 2.0);
    h += &i2.kron(&sz).scale_real(w[1] / 2.0);
    h += &(&sp.kron(&sm) + &sm.kron(&sp)).scale_real(j);

    let theta = (2.0 * j).atan2(w[0] - w[1]);
    let split = 0.5 * (4.0 * j * j + (w[0] - w[1]).powi(2)).sqrt();
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let r = |x: f64| C64::new(x, 0.0);
    let z = r(0.0);
    let states = [
        [z, z, z, r(1.0)],
        [z, r(-s), r(c), z],
        [z, r(c), r(s), z],
        [r(1.0), z, z, z],
    ];
    let energies = [-(w[0] + w[1]) / 2.0, -split, split, (w[0] + w[1]) / 2.0];
    Ok(RwaSystem {
        hamiltonian: h,
        omega_tilde: w,
        j_eff: j,
        theta,
        energies,
        states,
        rwa_ratio: j.abs() / w[0].min(w[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eig;
    use crate::model::{RabiParams, SystemParams};

    fn system(w1: f64, w2: f64) -> RwaSystem {
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.3, 30), w1, w2, 0.02, 0.02);
        rwa_two_qubit(&EffectiveModel::new(&s, 6).unwrap()).unwrap()
    }

    #[test]
    fn identical_qubits_give_symmetric_states() {
        let r = system(0.2, 0.2);
        assert!((r.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.states[1][1].re + s).abs() < 1e-12 && (r.states[1][2].re - s).abs() < 1e-12);
        assert!((r.states[2][1].re - s).abs() < 1e-12 && (r.states[2][2].re - s).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_numerics() {
        for (w1, w2) in [(0.2, 0.2), (0.2, 0.19), (0.25, 0.15)] {
            let r = system(w1, w2);
            let e = hermitian_eig(&r.hamiltonian).unwrap();
            for k in 0..4 {
                assert!((e.values[k] - r.energies[k]).abs() < 1e-12);
                let hv = r.hamiltonian.matvec(&r.states[k]).unwrap();
                for i in 0..4 {
                    assert!((hv[i] - r.states[k][i] * r.energies[k]).norm() < 1e-12);
                }
            }
            let expected = (4.0 * r.j_eff * r.j_eff + (r.omega_tilde[0] - r.omega_tilde[1]).powi(2)).sqrt();
            assert!((r.energies[2] - r.energies[1] - expected).abs() < 1e-15);
            assert!(r.rwa_ratio < 0.05);
        }
    }
}
