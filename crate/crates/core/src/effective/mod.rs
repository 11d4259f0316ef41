//! Dispersive effective Hamiltonians for qubits coupled through the Rabi bus.
//!
//! Effective operators act on `[qrs(K), q1(2), ..., qN(2)]`, where the first
//! factor holds the lowest `K` eigenstates `|k>` of the Rabi Hamiltonian.

mod rwa;
mod sw;

pub use rwa::{rwa_two_qubit, RwaSystem};
pub use sw::{norm_modulo_identity, project_blocks, sw_generator, sw_hamiltonian};

use crate::error::{Error, Result};
use crate::linalg::{
    annihilation, pauli, qubit_label, sigma_pm, Axis, ComplexMatrix, EigenSystem, HilbertLayout,
    Sign, CAVITY, QRS,
};
use crate::model::{rabi_eigensystem, SystemParams};

/// Number of Rabi levels retained by default.
///
/// Level sums converge by `K ≈ 4` for the couplings of interest; two levels
/// alone underestimate the induced coupling by up to a factor of four at
/// small `g_p`.
pub const DEFAULT_LEVELS: usize = 6;

/// Detunings below this are treated as resonant.
pub const RESONANCE_GUARD: f64 = 1e-6;

/// Rabi-bus data for the dispersive expansion.
#[derive(Clone, Debug)]
pub struct EffectiveModel {
    pub params: SystemParams,
    /// Number of retained Rabi levels `K`.
    pub levels: usize,
    /// Rabi eigenvalues `ω_k`, `k < K`.
    pub qrs_energies: Vec<f64>,
    /// `χ_kj = <k|(b+b†)|j>` over the retained levels.
    pub chi: ComplexMatrix,
}

impl EffectiveModel {
    pub fn new(s: &SystemParams, levels: usize) -> Result<Self> {
        s.validate()?;
        let eig = rabi_eigensystem(&s.rabi)?;
        Self::from_rabi_eig(s, &eig, levels)
    }

    pub fn from_rabi_eig(s: &SystemParams, rabi_eig: &EigenSystem, levels: usize) -> Result<Self> {
        if levels < 2 || levels > rabi_eig.dim() {
            return Err(Error::InvalidParameter {
                field: "levels",
                reason: format!("need 2 <= K <= {}, got {levels}", rabi_eig.dim()),
            });
        }
        let model = Self {
            params: s.clone(),
            levels,
            qrs_energies: rabi_eig.values[..levels].to_vec(),
            chi: chi_elements(rabi_eig, levels)?,
        };
        model.check_resonances()?;
        Ok(model)
    }

    fn check_resonances(&self) -> Result<()> {
        for n in 0..self.params.n_qubits() {
            for j in 0..self.levels {
                for k in j + 1..self.levels {
                    let d = self.big_detuning(n, k, j);
                    if d.abs() < RESONANCE_GUARD {
                        return Err(Error::NearResonance {
                            qubit: n + 1,
                            lower: j,
                            upper: k,
                            detuning: d,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `ω_kj = ω_k − ω_j`.
    pub fn omega(&self, k: usize, j: usize) -> f64 {
        self.qrs_energies[k] - self.qrs_energies[j]
    }

    /// `Δ^n_kj = ω_qn − ω_kj` (qubit index from 0).
    pub fn big_detuning(&self, n: usize, k: usize, j: usize) -> f64 {
        self.params.qubits[n].omega_q - self.omega(k, j)
    }

    /// `δ^n_kj = ω_qn + ω_kj` (qubit index from 0).
    pub fn sum_detuning(&self, n: usize, k: usize, j: usize) -> f64 {
        self.params.qubits[n].omega_q + self.omega(k, j)
    }

    pub fn chi_sq(&self, j: usize, k: usize) -> f64 {
        self.chi[(j, k)].norm_sqr()
    }

    pub fn omega10(&self) -> f64 {
        self.omega(1, 0)
    }

    /// Ground-block exchange coupling between qubits `a` and `b` (from 0).
    pub fn pair_coupling(&self, a: usize, b: usize) -> f64 {
        let (ga, gb) = (self.params.qubits[a].g, self.params.qubits[b].g);
        (1..self.levels)
            .map(|k| {
                0.5 * ga
                    * gb
                    * self.chi_sq(0, k)
                    * (1.0 / self.sum_detuning(a, k, 0) + 1.0 / self.sum_detuning(b, k, 0)
                        - 1.0 / self.big_detuning(a, k, 0)
                        - 1.0 / self.big_detuning(b, k, 0))
            })
            .sum()
    }

    /// `J_eff` between the first two qubits, summed over the retained levels.
    pub fn j_eff(&self) -> f64 {
        assert!(self.params.n_qubits() >= 2, "J_eff needs two qubits");
        self.pair_coupling(0, 1)
    }

    /// Dressed frequency `ω̃_qn = ω_qn + g_n² Σ_k |χ_0k|² (1/Δ^n_k0 + 1/δ^n_k0)`.
    pub fn omega_tilde(&self, n: usize) -> f64 {
        let g = self.params.qubits[n].g;
        self.params.qubits[n].omega_q
            + (1..self.levels)
                .map(|k| {
                    g * g
                        * self.chi_sq(0, k)
                        * (1.0 / self.big_detuning(n, k, 0) + 1.0 / self.sum_detuning(n, k, 0))
                })
                .sum::<f64>()
    }

    /// `max_{n,n'} g_n g_n' |χ₀₁|² / |Δ^n_10|`, in units of `ω₁₀`.
    pub fn validity_ratio(&self) -> f64 {
        let q = &self.params.qubits;
        let c = self.chi_sq(0, 1);
        let mut worst = 0.0_f64;
        for n in 0..q.len() {
            for m in 0..q.len() {
                worst = worst.max(q[n].g * q[m].g * c / self.big_detuning(n, 1, 0).abs());
            }
        }
        worst / self.omega10()
    }

    pub fn layout(&self) -> HilbertLayout {
        effective_layout(self.levels, self.params.n_qubits())
    }

    /// `Σ_k ω_k |k><k| + Σ_n ω_qn/2 σz_n`.
    pub fn h0(&self) -> Result<ComplexMatrix> {
        let layout = self.layout();
        let mut h = layout.embed(&ComplexMatrix::from_diagonal(&self.qrs_energies), QRS)?;
        for (n, q) in self.params.qubits.iter().enumerate() {
            h += &layout
                .embed(&pauli(Axis::Z), &qubit_label(n + 1))?
                .scale_real(q.omega_q / 2.0);
        }
        Ok(h)
    }

    /// Qubit–bus coupling `Σ_n g_n χ ⊗ σx_n` in the truncated space.
    pub fn coupling(&self) -> Result<ComplexMatrix> {
        let layout = self.layout();
        let mut v = ComplexMatrix::zeros(layout.dim(), layout.dim());
        for (n, q) in self.params.qubits.iter().enumerate() {
            v += &layout
                .embed_product(&[(QRS, &self.chi), (&qubit_label(n + 1), &pauli(Axis::X))])?
                .scale_real(q.g);
        }
        Ok(v)
    }
}

pub fn effective_layout(levels: usize, n_qubits: usize) -> HilbertLayout {
    let mut f = vec![(QRS.to_string(), levels)];
    f.extend((1..=n_qubits).map(|n| (qubit_label(n), 2)));
    HilbertLayout::new(f).expect("effective layout is valid")
}

/// `χ_kj = <k|(b+b†)|j>` over the lowest `levels` Rabi eigenstates.
pub fn chi_elements(rabi_eig: &EigenSystem, levels: usize) -> Result<ComplexMatrix> {
    let d = rabi_eig.dim();
    if levels > d {
        return Err(Error::InvalidDimension(format!("K = {levels} exceeds dimension {d}")));
    }
    let layout = HilbertLayout::canonical(d / 2, 0);
    let b = annihilation(d / 2)?;
    let x = layout.embed(&(&b + &b.adjoint()), CAVITY)?;
    let vk = ComplexMatrix::from_fn(d, levels, |i, j| rabi_eig.vectors[(i, j)]);
    vk.adjoint().matmul(&x.matmul(&vk)?)
}

/// `J_eff` with the default level count.
pub fn j_eff(s: &SystemParams) -> Result<f64> {
    Ok(EffectiveModel::new(s, DEFAULT_LEVELS)?.j_eff())
}

fn projector(levels: usize, k: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(levels, levels);
    p[(k, k)] = crate::linalg::C64::new(1.0, 0.0);
    p
}

/// Effective Hamiltonian with all pair and single-qubit terms from the
/// retained levels: for each `j < k` the `|j><j|` and `|k><k|` blocks pick up
/// the second-order virtual-transition terms.
pub fn build_heff_n(model: &EffectiveModel) -> Result<ComplexMatrix> {
    let layout = model.layout();
    let mut h = model.h0()?;
    let nq = model.params.n_qubits();
    let sp = sigma_pm(Sign::Plus);
    let sm = sigma_pm(Sign::Minus);
    let labels: Vec<String> = (1..=nq).map(qubit_label).collect();
    let op = |level: usize, a: &ComplexMatrix, la: &str, b: &ComplexMatrix, lb: &str| -> Result<ComplexMatrix> {
        let p = projector(model.levels, level);
        if la == lb {
            layout.embed_product(&[(QRS, &p), (la, &(a * b))])
        } else {
            layout.embed_product(&[(QRS, &p), (la, a), (lb, b)])
        }
    };
    for n in 0..nq {
        for m in 0..nq {
            let gg = model.params.qubits[n].g * model.params.qubits[m].g;
            if gg == 0.0 {
                continue;
            }
            let (ln, lm) = (labels[n].as_str(), labels[m].as_str());
            for j in 0..model.levels {
                for k in j + 1..model.levels {
                    let pre = 0.5 * gg * model.chi_sq(j, k);
                    if pre == 0.0 {
                        continue;
                    }
                    let (dn, sn) = (model.big_detuning(n, k, j), model.sum_detuning(n, k, j));
                    let (dm, smm) = (model.big_detuning(m, k, j), model.sum_detuning(m, k, j));
                    let lower = [
                        (1.0 / dn - 1.0 / smm, &sp, &sp),
                        (1.0 / dn + 1.0 / dm, &sp, &sm),
                        (-(1.0 / sn + 1.0 / smm), &sm, &sp),
                        (1.0 / dm - 1.0 / sn, &sm, &sm),
                    ];
                    let upper = [
                        (1.0 / sn - 1.0 / dm, &sp, &sp),
                        (1.0 / smm + 1.0 / sn, &sp, &sm),
                        (-(1.0 / dn + 1.0 / dm), &sm, &sp),
                        (1.0 / smm - 1.0 / dn, &sm, &sm),
                    ];
                    for (level, terms) in [(j, lower), (k, upper)] {
                        for (c, a, b) in terms {
                            if c != 0.0 {
                                h += &op(level, a, ln, b, lm)?.scale_real(pre * c);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Two-level-bus effective Hamiltonian for two qubits,
/// `H₀ + Σ_n (ω̃_n − ω_n)/2 σz_n + ½|χ₀₁|² Ŝ₁₂ ⊗ Ẑ_p` with `Ẑ_p = |1><1| − |0><0|`.
pub fn build_heff_two_level(s: &SystemParams) -> Result<ComplexMatrix> {
    if s.n_qubits() != 2 {
        return Err(Error::InvalidParameter {
            field: "qubits",
            reason: format!("two-level effective Hamiltonian needs 2 qubits, got {}", s.n_qubits()),
        });
    }
    let model = EffectiveModel::new(s, 2)?;
    let c2 = model.chi_sq(0, 1);
    let q = &s.qubits;
    let big = [model.big_detuning(0, 1, 0), model.big_detuning(1, 1, 0)];
    let sum = [model.sum_detuning(0, 1, 0), model.sum_detuning(1, 1, 0)];

    let sx = pauli(Axis::X);
    let sz = pauli(Axis::Z);
    let i2 = ComplexMatrix::identity(2);
    let exchange = q[0].g * q[1].g * (1.0 / sum[0] + 1.0 / sum[1] - 1.0 / big[0] - 1.0 / big[1]);
    let constant: f64 = (0..2).map(|n| q[n].g * q[n].g * (1.0 / sum[n] - 1.0 / big[n])).sum();
    let s12 = &sx.kron(&sx).scale_real(exchange) + &ComplexMatrix::identity(4).scale_real(constant);
    let zp = ComplexMatrix::from_diagonal(&[-1.0, 1.0]);

    let mut h = model.h0()?;
    h += &zp.kron(&s12).scale_real(0.5 * c2);
    for (n, shift_op) in [sz.kron(&i2), i2.kron(&sz)].iter().enumerate() {
        let shift = model.omega_tilde(n) - q[n].omega_q;
        h += &ComplexMatrix::identity(2).kron(shift_op).scale_real(shift / 2.0);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eig;
    use crate::model::RabiParams;

    fn fig2(g_p: f64) -> SystemParams {
        SystemParams::two_qubit(RabiParams::new(0.8, g_p, 30), 0.2, 0.2, 0.02, 0.02)
    }

    #[test]
    fn chi_vanishes_without_coupling() {
        // ω_q = 0.2 would sit exactly on the bare |e,0> -> |g,1> transition
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.0, 30), 0.25, 0.25, 0.02, 0.02);
        let m = EffectiveModel::new(&s, 4).unwrap();
        // ground |g,0>, first excited |e,0> at ω_p = 0.8 < ω_cav
        assert!(m.chi[(0, 1)].norm() < 1e-14);
        // |g,0> -> |g,1> is the harmonic element √1
        assert!((m.chi[(0, 2)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_is_real_symmetric() {
        let m = EffectiveModel::new(&fig2(0.3), 6).unwrap();
        for j in 0..6 {
            for k in 0..6 {
                assert!(m.chi[(j, k)].im.abs() < 1e-12);
                assert!((m.chi[(j, k)] - m.chi[(k, j)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn chi01_grows_with_coupling() {
        let mut prev = 0.0;
        for i in 1..=12 {
            let c = EffectiveModel::new(&fig2(0.05 * i as f64), 2).unwrap().chi_sq(0, 1);
            assert!(c > prev);
            prev = c;
        }
    }

    #[test]
    fn two_level_limit_matches_closed_form() {
        let s = fig2(0.3);
        let m = EffectiveModel::new(&s, 2).unwrap();
        let w = m.omega10();
        let c = m.chi_sq(0, 1);
        let closed = 0.5 * c * 0.02 * 0.02 * (2.0 / (0.2 + w) - 2.0 / (0.2 - w));
        assert!((m.j_eff() - closed).abs() < 1e-15);
    }

    #[test]
    fn uncoupled_qubits_give_h0() {
        let mut s = fig2(0.3);
        s.qubits.iter_mut().for_each(|q| q.g = 0.0);
        let m = EffectiveModel::new(&s, 4).unwrap();
        assert_eq!(build_heff_n(&m).unwrap(), m.h0().unwrap());
    }

    #[test]
    fn two_level_builder_matches_general_builder() {
        for g_p in [0.1, 0.3, 0.5] {
            let s = SystemParams::two_qubit(RabiParams::new(0.8, g_p, 30), 0.2, 0.23, 0.02, 0.015);
            let general = build_heff_n(&EffectiveModel::new(&s, 2).unwrap()).unwrap();
            let two = build_heff_two_level(&s).unwrap();
            assert!((&general - &two).max_abs() < 1e-15);
        }
    }

    #[test]
    fn exchange_coefficient_and_gap() {
        let s = fig2(0.3);
        let h = build_heff_two_level(&s).unwrap();
        let j = EffectiveModel::new(&s, 2).unwrap().j_eff();
        // |0>|eg> = index 1, |0>|ge> = index 2, |0>|ee> = 0, |0>|gg> = 3.
        assert!((h[(1, 2)].re + j).abs() < 1e-15);
        assert!((h[(0, 3)].re + j).abs() < 1e-15);
        let block = ComplexMatrix::from_fn(2, 2, |a, b| h[(1 + a, 1 + b)]);
        let e = hermitian_eig(&block).unwrap();
        assert!((e.values[1] - e.values[0] - 2.0 * j).abs() < 1e-10);
    }

    #[test]
    fn no_exchange_without_first_qubit() {
        let mut s = fig2(0.3);
        s.qubits[0].g = 0.0;
        let h = build_heff_two_level(&s).unwrap();
        assert_eq!(h[(1, 2)].norm(), 0.0);
        assert_eq!(h[(0, 3)].norm(), 0.0);
    }

    #[test]
    fn near_resonance_is_rejected() {
        let w = EffectiveModel::new(&fig2(0.3), 2).unwrap().omega10();
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.3, 30), w, 0.2, 0.02, 0.02);
        assert!(matches!(
            EffectiveModel::new(&s, 2),
            Err(Error::NearResonance { qubit: 1, lower: 0, upper: 1, .. })
        ));
    }

    #[test]
    fn effective_hamiltonians_are_hermitian() {
        let m = EffectiveModel::new(&fig2(0.4), 6).unwrap();
        assert!(build_heff_n(&m).unwrap().hermiticity_error() < 1e-12);
        assert!(build_heff_two_level(&fig2(0.4)).unwrap().hermiticity_error() < 1e-12);
    }

    #[test]
    fn validity_ratio_is_small_and_increasing() {
        let r1 = EffectiveModel::new(&fig2(0.1), 2).unwrap().validity_ratio();
        assert!(r1 < 0.05);
        let mut prev = r1;
        for g_p in [0.2, 0.3, 0.4, 0.5] {
            let r = EffectiveModel::new(&fig2(g_p), 2).unwrap().validity_ratio();
            assert!(r > prev);
            prev = r;
        }
    }

    #[test]
    fn more_levels_matter_less_at_weak_bus_coupling() {
        let diff = |g_p: f64| {
            let s = fig2(g_p);
            let pad = |m: &ComplexMatrix| {
                // embed the K = 2 operator into the K = 4 space
                ComplexMatrix::from_fn(16, 16, |i, j| if i < 8 && j < 8 { m[(i, j)] } else { crate::linalg::C64::new(0.0, 0.0) })
            };
            let h2 = pad(&build_heff_n(&EffectiveModel::new(&s, 2).unwrap()).unwrap());
            let h4 = build_heff_n(&EffectiveModel::new(&s, 4).unwrap()).unwrap();
            let d = &h4 - &h2;
            ComplexMatrix::from_fn(8, 8, |i, j| d[(i, j)]).max_abs()
        };
        assert!(diff(0.1) < diff(0.3));
        assert!(diff(0.3) < diff(0.5));
    }
}
