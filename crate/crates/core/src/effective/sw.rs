//! Schrieffer–Wolff cross-check of the effective Hamiltonians.

use super::EffectiveModel;
use crate::error::Result;
use crate::linalg::{commutator, hermitian_eig, qubit_label, sigma_pm, ComplexMatrix, Sign, QRS};

/// Anti-Hermitian generator `S` with `[S, H₀] = −V` in the truncated space.
pub fn sw_generator(model: &EffectiveModel) -> Result<ComplexMatrix> {
    let layout = model.layout();
    let d = layout.dim();
    let mut s = ComplexMatrix::zeros(d, d);
    let sp = sigma_pm(Sign::Plus);
    let sm = sigma_pm(Sign::Minus);
    let k_levels = model.levels;
    let unit = |a: usize, b: usize| {
        let mut m = ComplexMatrix::zeros(k_levels, k_levels);
        m[(a, b)] = crate::linalg::C64::new(1.0, 0.0);
        m
    };
    for (n, q) in model.params.qubits.iter().enumerate() {
        if q.g == 0.0 {
            continue;
        }
        let label = qubit_label(n + 1);
        for j in 0..k_levels {
            for k in j + 1..k_levels {
                let cjk = model.chi[(j, k)];
                let ckj = cjk.conj();
                if cjk.norm() == 0.0 {
                    continue;
                }
                let big = model.big_detuning(n, k, j);
                let sum = model.sum_detuning(n, k, j);
                let terms = [
                    (cjk / big, unit(j, k), &sp),
                    (-ckj / big, unit(k, j), &sm),
                    (ckj / sum, unit(k, j), &sp),
                    (-cjk / sum, unit(j, k), &sm),
                ];
                for (c, levels, spin) in terms {
                    s += &layout
                        .embed_product(&[(QRS, &levels), (&label, spin)])?
                        .scale(c * q.g);
                }
            }
        }
    }
    Ok(s)
}

/// Keep only the `|k><k| ⊗ (qubits)` diagonal blocks.
pub fn project_blocks(h: &ComplexMatrix, levels: usize) -> ComplexMatrix {
    let block = h.rows() / levels;
    ComplexMatrix::from_fn(h.rows(), h.cols(), |i, j| {
        if i / block == j / block {
            h[(i, j)]
        } else {
            crate::linalg::C64::new(0.0, 0.0)
        }
    })
}

/// `H + [S,H] + ½[S,[S,H]]` kept to second order in the qubit couplings and
/// projected onto the level-diagonal blocks.
pub fn sw_hamiltonian(model: &EffectiveModel) -> Result<ComplexMatrix> {
    let h0 = model.h0()?;
    let v = model.coupling()?;
    let s = sw_generator(model)?;
    let s_h0 = commutator(&s, &h0)?;
    let mut h = &h0 + &v;
    h += &s_h0;
    h += &commutator(&s, &v)?;
    h += &commutator(&s, &s_h0)?.scale_real(0.5);
    Ok(project_blocks(&h, model.levels))
}

/// `min_c ||A − c I||₂` for Hermitian `A`: half the spread of its spectrum.
pub fn norm_modulo_identity(a: &ComplexMatrix) -> Result<f64> {
    let e = hermitian_eig(&a.hermitian_part())?;
    Ok(0.5 * (e.values[e.dim() - 1] - e.values[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::{build_heff_n, build_heff_two_level};
    use crate::model::{RabiParams, SystemParams};

    fn fig2(g_p: f64) -> SystemParams {
        SystemParams::two_qubit(RabiParams::new(0.8, g_p, 30), 0.2, 0.2, 0.02, 0.02)
    }

    #[test]
    fn generator_is_anti_hermitian_and_removes_coupling() {
        let m = EffectiveModel::new(&fig2(0.3), 4).unwrap();
        let s = sw_generator(&m).unwrap();
        assert!((&s + &s.adjoint()).max_abs() == 0.0);
        let resid = &commutator(&s, &m.h0().unwrap()).unwrap() + &m.coupling().unwrap();
        assert!(resid.max_abs() < 1e-15);
    }

    #[test]
    fn generator_vanishes_without_coupling() {
        let mut s = fig2(0.3);
        s.qubits.iter_mut().for_each(|q| q.g = 0.0);
        let m = EffectiveModel::new(&s, 3).unwrap();
        assert_eq!(sw_generator(&m).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn transformation_reproduces_effective_hamiltonians() {
        for g_p in [0.1, 0.2, 0.3] {
            let s = fig2(g_p);
            let m2 = EffectiveModel::new(&s, 2).unwrap();
            let d = &sw_hamiltonian(&m2).unwrap() - &build_heff_two_level(&s).unwrap();
            assert!(norm_modulo_identity(&d).unwrap() < 1e-12);
            let m5 = EffectiveModel::new(&s, 5).unwrap();
            let d = &sw_hamiltonian(&m5).unwrap() - &build_heff_n(&m5).unwrap();
            assert!(norm_modulo_identity(&d).unwrap() < 1e-12);
        }
    }

    #[test]
    fn identity_shift_is_ignored() {
        let a = ComplexMatrix::identity(3).scale_real(2.5);
        assert!(norm_modulo_identity(&a).unwrap() < 1e-15);
        let b = ComplexMatrix::from_diagonal(&[1.0, 2.0, 4.0]);
        assert!((norm_modulo_identity(&b).unwrap() - 1.5).abs() < 1e-14);
    }
}
