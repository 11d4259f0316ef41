//! Two-qubit pump/emission setups and steady-state comparisons.

use super::{
    dressed_channels, liouvillian, rate_equation_steady_state, steady_state, BareChannel, Direction,
    DissipationRates, LindbladChannel, RateSteadyState, Superoperator,
};
use crate::dynamics::excitation_operator;
use crate::effective::{rwa_two_qubit, EffectiveModel};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, pauli, qubit_label, sigma_pm, Axis, ComplexMatrix, EigenSystem, HilbertLayout, Sign, QRS,
};
use crate::model::{build_total, quadrature, RabiParams, SystemParams};
use crate::util::try_par_map;

/// Identical-qubit steady-state parameters at bus coupling `g_p`.
pub fn fig6_system(g_p: f64, n_fock: usize) -> SystemParams {
    SystemParams::two_qubit(RabiParams::new(0.8, g_p, n_fock), 0.2, 0.2, 1e-2, 1e-2)
}

/// Nonidentical-qubit steady-state parameters at bus coupling `g_p`.
pub fn fig8_system(g_p: f64, n_fock: usize) -> SystemParams {
    SystemParams::two_qubit(RabiParams::new(0.8, g_p, n_fock), 0.2, 0.19, 1e-2, 1e-2)
}

fn require_two_qubits(s: &SystemParams) -> Result<()> {
    if s.n_qubits() != 2 {
        return Err(Error::InvalidParameter {
            field: "qubits",
            reason: format!("pump/emission setup needs 2 qubits, got {}", s.n_qubits()),
        });
    }
    Ok(())
}

/// Pump on qubit 1, emission of qubit 2, and `σx_p`, `σz_p`, `b + b†` bus damping.
pub fn standard_channels(s: &SystemParams, rates: &DissipationRates) -> Result<Vec<BareChannel>> {
    require_two_qubits(s)?;
    rates.validate()?;
    let layout = s.layout();
    let x = pauli(Axis::X);
    let p = &s.rabi;
    Ok(vec![
        BareChannel::new(
            "x1",
            layout.embed(&x, &qubit_label(1))?,
            rates.gamma_pump,
            s.qubits[0].omega_q,
            Direction::Raising,
        ),
        BareChannel::new(
            "x2",
            layout.embed(&x, &qubit_label(2))?,
            rates.gamma_out,
            s.qubits[1].omega_q,
            Direction::Lowering,
        ),
        BareChannel::new("xp", layout.embed(&x, QRS)?, rates.gamma_x, p.omega_p, Direction::Lowering),
        BareChannel::new(
            "zp",
            layout.embed(&pauli(Axis::Z), QRS)?,
            rates.gamma_z,
            p.omega_p,
            Direction::Lowering,
        ),
        BareChannel::new("b", quadrature(&layout)?, rates.gamma_cav, p.omega_cav, Direction::Lowering),
    ])
}

/// Eigenbasis of `h` with exact degeneracies resolved by qubit excitations.
///
/// Within each cluster of levels closer than `1e-9`, the basis diagonalizes
/// `Σ_n n·σ+σ−_n`, so that for decoupled qubits the dressed states are
/// product states rather than an arbitrary rotation of them.
pub fn dressed_basis(h: &ComplexMatrix, layout: &HilbertLayout, n_qubits: usize) -> Result<EigenSystem> {
    let mut eig = hermitian_eig(h)?;
    let d = eig.dim();
    let mut tie = ComplexMatrix::zeros(d, d);
    for n in 1..=n_qubits {
        tie += &excitation_operator(layout, n)?.scale_real(n as f64);
    }
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eig.values[end] - eig.values[end - 1] < 1e-9 * eig.values[end].abs().max(1.0) {
            end += 1;
        }
        if end - start > 1 {
            let m = end - start;
            let vc = ComplexMatrix::from_fn(d, m, |i, j| eig.vectors[(i, start + j)]);
            let tc = vc.adjoint().matmul(&tie.matmul(&vc)?)?.hermitian_part();
            let rot = hermitian_eig(&tc)?;
            let new = vc.matmul(&rot.vectors)?;
            for j in 0..m {
                let mut col = new.column(j);
                crate::linalg::fix_phase(&mut col);
                eig.vectors.set_column(start + j, &col);
            }
        }
        start = end;
    }
    Ok(eig)
}

/// Everything needed for the dressed-basis master equation at one point.
#[derive(Clone, Debug)]
pub struct DressedProblem {
    pub system: SystemParams,
    pub rates: DissipationRates,
    pub layout: HilbertLayout,
    pub hamiltonian: ComplexMatrix,
    pub basis: EigenSystem,
    pub channels: Vec<LindbladChannel>,
}

impl DressedProblem {
    pub fn new(s: &SystemParams, rates: &DissipationRates) -> Result<Self> {
        let bare = standard_channels(s, rates)?;
        let layout = s.layout();
        let hamiltonian = build_total(s)?;
        let basis = dressed_basis(&hamiltonian, &layout, s.n_qubits())?;
        let channels = dressed_channels(&basis, &bare)?;
        Ok(Self {
            system: s.clone(),
            rates: *rates,
            layout,
            hamiltonian,
            basis,
            channels,
        })
    }

    pub fn channel(&self, label: &str) -> Option<&LindbladChannel> {
        self.channels.iter().find(|c| c.label == label)
    }

    /// Full `d²×d²` Liouvillian.
    pub fn liouvillian(&self) -> Result<Superoperator> {
        liouvillian(&self.hamiltonian, &self.basis, &self.channels)
    }

    pub fn rate_steady_state(&self) -> Result<RateSteadyState> {
        rate_equation_steady_state(&self.basis, &self.channels)
    }

    /// `⟨σ+σ−⟩` of qubit `n` (from 1) in `rho`.
    pub fn excitation(&self, rho: &ComplexMatrix, n: usize) -> Result<f64> {
        let op = excitation_operator(&self.layout, n)?;
        Ok(op.matmul(rho)?.trace().re)
    }
}

/// Steady `⟨σ₂+σ₂−⟩` from the dressed rate equation.
pub fn steady_excitation(s: &SystemParams, rates: &DissipationRates) -> Result<f64> {
    let p = DressedProblem::new(s, rates)?;
    let ss = p.rate_steady_state()?;
    p.excitation(&ss.rho, 2)
}

/// One row of a steady-state scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyPoint {
    pub g_p: f64,
    pub excitation: f64,
}

/// Steady `⟨σ₂+σ₂−⟩` over a grid of bus couplings.
pub fn steady_scan(base: &SystemParams, rates: &DissipationRates, g_grid: &[f64]) -> Result<Vec<SteadyPoint>> {
    if g_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    rates.validate()?;
    if rates.gamma_out == 0.0 {
        return Err(Error::InvalidRate {
            channel: "x2".into(),
            reason: "γ_out = 0 leaves the pumped population without a unique steady state".into(),
        });
    }
    try_par_map(g_grid, |&g_p| {
        let mut s = base.clone();
        s.rabi.g_p = g_p;
        Ok(SteadyPoint {
            g_p,
            excitation: steady_excitation(&s, rates)?,
        })
    })
}

pub fn steady_scan_identical(g_grid: &[f64], n_fock: usize) -> Result<Vec<SteadyPoint>> {
    steady_scan(&fig6_system(0.0, n_fock), &DissipationRates::fig6(), g_grid)
}

pub fn steady_scan_nonidentical(g_grid: &[f64], n_fock: usize) -> Result<Vec<SteadyPoint>> {
    steady_scan(&fig8_system(0.0, n_fock), &DissipationRates::fig8(), g_grid)
}

/// Effective versus ab initio steady states at one parameter point.
#[derive(Clone, Debug)]
pub struct EffectiveComparison {
    /// `16×16` Liouvillian of the effective two-qubit master equation.
    pub liouvillian: Superoperator,
    /// Effective steady state in the `(ee, eg, ge, gg)` basis.
    pub rho_effective: ComplexMatrix,
    pub excitation_effective: f64,
    pub excitation_ab_initio: f64,
    /// `1 − n_eff / n_ab`; zero when both excitations vanish.
    pub delta_r: f64,
}

/// Excitations below this are treated as exactly zero in `Δ_r`.
const EXCITATION_FLOOR: f64 = 1e-14;

/// Compares the effective two-qubit master equation against the dressed one.
///
/// The effective side uses the RWA eigenbasis `{G, E₁, E₂, E₃}` with `σx₁`
/// pumping and `σx₂` emission and is solved through the full `16×16`
/// Liouvillian; the ab initio side uses the dressed rate equation.
pub fn effective_master(s: &SystemParams, rates: &DissipationRates, levels: usize) -> Result<EffectiveComparison> {
    require_two_qubits(s)?;
    rates.validate()?;
    let rwa = rwa_two_qubit(&EffectiveModel::new(s, levels)?)?;
    let mut vectors = ComplexMatrix::zeros(4, 4);
    for (k, state) in rwa.states.iter().enumerate() {
        vectors.set_column(k, state);
    }
    let basis = EigenSystem {
        values: rwa.energies.to_vec(),
        vectors,
    };
    let i2 = ComplexMatrix::identity(2);
    let x = pauli(Axis::X);
    let bare = [
        BareChannel::new("x1", x.kron(&i2), rates.gamma_pump, s.qubits[0].omega_q, Direction::Raising),
        BareChannel::new("x2", i2.kron(&x), rates.gamma_out, s.qubits[1].omega_q, Direction::Lowering),
    ];
    let channels = dressed_channels(&basis, &bare)?;
    let l = liouvillian(&rwa.hamiltonian, &basis, &channels)?;
    let rho = steady_state(&l)?;
    let n2 = i2.kron(&(&sigma_pm(Sign::Plus) * &sigma_pm(Sign::Minus)));
    let n_eff = n2.matmul(&rho)?.trace().re;
    let n_ab = steady_excitation(s, rates)?;
    let delta_r = if n_ab.abs() < EXCITATION_FLOOR && n_eff.abs() < EXCITATION_FLOOR {
        0.0
    } else {
        1.0 - n_eff / n_ab
    };
    Ok(EffectiveComparison {
        liouvillian: l,
        rho_effective: rho,
        excitation_effective: n_eff,
        excitation_ab_initio: n_ab,
        delta_r,
    })
}
