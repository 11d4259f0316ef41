//! Closed-system evolution and observables.

use crate::effective::{build_heff_n, EffectiveModel};
use crate::error::{Error, Result};
use crate::linalg::{
    basis_vector, hermitian_eig, inner, qubit_label, reduced_from_pure, sigma_pm, von_neumann_entropy,
    ComplexMatrix, EigenSystem, Evolution, HilbertLayout, Sign, C64,
};
use crate::model::{build_total, named_state, rabi_eigensystem, RabiParams, SystemParams, TwoQubitState};
use crate::util::{linspace, par_map, parabola_vertex, try_par_map};

/// Real-valued channels sampled on a common time grid (units of `1/ω_cav`).
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub channels: Vec<(String, Vec<f64>)>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter {
                field: "times",
                reason: "must be strictly increasing".into(),
            });
        }
        Ok(Self {
            times,
            channels: Vec::new(),
        })
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) {
        assert_eq!(values.len(), self.times.len(), "channel length must match the time grid");
        self.channels.push((name.into(), values));
    }

    pub fn channel(&self, name: &str) -> Option<&[f64]> {
        self.channels
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Quantity recorded along a trajectory.
#[derive(Clone, Debug)]
pub enum Observable {
    /// Hermitian operator; records `<ψ|O|ψ>`.
    Operator { name: String, op: ComplexMatrix },
    /// Population `|<φ|ψ>|²` of a reference state.
    Projector { name: String, state: Vec<C64> },
}

impl Observable {
    pub fn operator(name: impl Into<String>, op: ComplexMatrix) -> Result<Self> {
        let err = op.hermiticity_error();
        if err > 1e-12 * op.max_abs().max(1.0) {
            return Err(Error::NotHermitian(err));
        }
        Ok(Observable::Operator { name: name.into(), op })
    }

    pub fn projector(name: impl Into<String>, state: Vec<C64>) -> Self {
        Observable::Projector { name: name.into(), state }
    }

    pub fn name(&self) -> &str {
        match self {
            Observable::Operator { name, .. } | Observable::Projector { name, .. } => name,
        }
    }

    fn dim(&self) -> usize {
        match self {
            Observable::Operator { op, .. } => op.rows(),
            Observable::Projector { state, .. } => state.len(),
        }
    }
}

/// Observable rewritten in the Hamiltonian eigenbasis.
enum Prepared {
    Operator(ComplexMatrix),
    Projector(Vec<C64>),
}

impl Prepared {
    fn new(obs: &Observable, eig: &EigenSystem) -> Result<Self> {
        Ok(match obs {
            Observable::Operator { op, .. } => Prepared::Operator(eig.to_eigenbasis(op)?),
            Observable::Projector { state, .. } => Prepared::Projector(eig.coefficients(state)?),
        })
    }

    fn eval(&self, coeffs: &[C64]) -> f64 {
        match self {
            Prepared::Operator(op) => {
                let v = op.matvec(coeffs).expect("dimensions checked");
                inner(coeffs, &v).re
            }
            Prepared::Projector(phi) => inner(phi, coeffs).norm_sqr(),
        }
    }
}

/// Exact evolution under a time-independent `h`, recording each observable.
pub fn run_closed(h: &ComplexMatrix, psi0: &[C64], times: &[f64], observables: &[Observable]) -> Result<TimeSeries> {
    let eig = hermitian_eig(h)?;
    run_closed_eig(&eig, psi0, times, observables)
}

pub fn run_closed_eig(eig: &EigenSystem, psi0: &[C64], times: &[f64], observables: &[Observable]) -> Result<TimeSeries> {
    let mut series = TimeSeries::new(times.to_vec())?;
    for obs in observables {
        if obs.dim() != eig.dim() {
            return Err(Error::DimensionMismatch {
                expected: eig.dim(),
                found: obs.dim(),
            });
        }
    }
    let evo = Evolution::new(eig, psi0)?;
    let prepared: Vec<Prepared> = observables
        .iter()
        .map(|o| Prepared::new(o, eig))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<f64>> = par_map(times, |&t| {
        let c = evo.coefficients_at(t);
        prepared.iter().map(|p| p.eval(&c)).collect()
    });
    for (k, obs) in observables.iter().enumerate() {
        series.push(obs.name(), rows.iter().map(|r| r[k]).collect());
    }
    Ok(series)
}

/// `σ+σ−` of qubit `n` (from 1) embedded in `layout`.
pub fn excitation_operator(layout: &HilbertLayout, n: usize) -> Result<ComplexMatrix> {
    let op = &sigma_pm(Sign::Plus) * &sigma_pm(Sign::Minus);
    layout.embed(&op, &qubit_label(n))
}

/// Time of the first maximum of `values`.
///
/// The maximum is searched within the first contiguous stretch where the
/// signal exceeds half its global maximum, then refined by a parabola through
/// the neighbouring samples. Returns `(time, value)`.
pub fn first_maximum(times: &[f64], values: &[f64]) -> Option<(f64, f64)> {
    let peak = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !peak.is_finite() || peak <= 0.0 {
        return None;
    }
    let start = values.iter().position(|&v| v >= 0.5 * peak)?;
    let end = values[start..]
        .iter()
        .position(|&v| v < 0.5 * peak)
        .map_or(values.len(), |p| start + p);
    let (mut best, mut best_v) = (start, values[start]);
    for (i, &v) in values.iter().enumerate().take(end).skip(start) {
        if v > best_v {
            best = i;
            best_v = v;
        }
    }
    if best == 0 || best + 1 >= values.len() {
        return Some((times[best], best_v));
    }
    let xs = [times[best - 1], times[best], times[best + 1]];
    let ys = [-values[best - 1], -values[best], -values[best + 1]];
    match parabola_vertex(xs, ys) {
        Some((t, y)) if t >= xs[0] && t <= xs[2] => Some((t, -y)),
        _ => Some((times[best], best_v)),
    }
}

/// Time for a full excitation swap, `π / (2 J)`.
pub fn transfer_time(j_eff: f64) -> f64 {
    std::f64::consts::PI / (2.0 * j_eff.abs())
}

/// Default closed-dynamics grid: 2000 points over 1.5 transfer times.
pub fn default_times(j_eff: f64) -> Vec<f64> {
    linspace(0.0, 1.5 * transfer_time(j_eff), 2000)
}

/// `|j>|state>` in the canonical layout of `s`.
pub fn initial_state(s: &SystemParams, qrs_level: usize, state: TwoQubitState) -> Result<Vec<C64>> {
    named_state(&rabi_eigensystem(&s.rabi)?, qrs_level, state)
}

/// Populations of `|0>|D_{2,1}>` and `|1>|D_{2,0}>` and their sum.
pub fn population_inversion(s: &SystemParams, psi0: &[C64], times: &[f64]) -> Result<TimeSeries> {
    let rabi = rabi_eigensystem(&s.rabi)?;
    let a = named_state(&rabi, 0, TwoQubitState::D21)?;
    let b = named_state(&rabi, 1, TwoQubitState::D20)?;
    let mut series = run_closed(
        &build_total(s)?,
        psi0,
        times,
        &[Observable::projector("p_0_d21", a), Observable::projector("p_1_d20", b)],
    )?;
    let sum: Vec<f64> = {
        let pa = series.channel("p_0_d21").expect("recorded");
        let pb = series.channel("p_1_d20").expect("recorded");
        pa.iter().zip(pb).map(|(x, y)| x + y).collect()
    };
    series.push("sum", sum);
    Ok(series)
}

/// Populations of `|0>|eg>`, `|0>|ge>` and the bus–qubits entanglement entropy.
///
/// For a pure state both sides of the bipartition have the same entropy; the
/// qubit side (dimension 4) is the cheaper one to diagonalise.
pub fn entanglement_monitor(s: &SystemParams, psi0: &[C64], times: &[f64]) -> Result<TimeSeries> {
    let h = build_total(s)?;
    let eig = hermitian_eig(&h)?;
    let rabi = rabi_eigensystem(&s.rabi)?;
    let mut series = run_closed_eig(
        &eig,
        psi0,
        times,
        &[
            Observable::projector("p_0_eg", named_state(&rabi, 0, TwoQubitState::Eg)?),
            Observable::projector("p_0_ge", named_state(&rabi, 0, TwoQubitState::Ge)?),
        ],
    )?;
    let layout = s.layout();
    let qubits: Vec<String> = (1..=s.n_qubits()).map(qubit_label).collect();
    let keep: Vec<&str> = qubits.iter().map(String::as_str).collect();
    let evo = Evolution::new(&eig, psi0)?;
    let entropy = try_par_map(times, |&t| {
        let rho = reduced_from_pure(&evo.state_at(t), &layout, &keep)?;
        von_neumann_entropy(&rho)
    })?;
    series.push("entropy", entropy);
    Ok(series)
}

/// `<σ+₂σ−₂>` under the full and the effective Hamiltonian from `|0>|eg>`.
pub fn compare_transfer(s: &SystemParams, levels: usize, times: &[f64]) -> Result<TimeSeries> {
    let psi0 = initial_state(s, 0, TwoQubitState::Eg)?;
    let full = run_closed(
        &build_total(s)?,
        &psi0,
        times,
        &[Observable::operator("n2_full", excitation_operator(&s.layout(), 2)?)?],
    )?;
    let model = EffectiveModel::new(s, levels)?;
    let layout = model.layout();
    // |0>|eg>: level 0, qubit index 2·e + g = 1
    let psi_eff = basis_vector(layout.dim(), 1);
    let eff = run_closed(
        &build_heff_n(&model)?,
        &psi_eff,
        times,
        &[Observable::operator("n2_eff", excitation_operator(&layout, 2)?)?],
    )?;
    let mut out = full;
    out.channels.extend(eff.channels);
    Ok(out)
}

/// One point of a transfer-speed scan.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferPoint {
    pub g_p: f64,
    pub two_j_eff: f64,
    /// First maximum of `<σ+₂σ−₂>` under the full Hamiltonian.
    pub first_max_time: f64,
    pub first_max_value: f64,
    pub validity_ratio: f64,
}

/// Excitation-transfer speed versus bus coupling, starting from `|0>|eg>`.
pub fn transfer_speed_scan(base: &SystemParams, g_grid: &[f64], levels: usize, n_times: usize) -> Result<Vec<TransferPoint>> {
    if g_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    try_par_map(g_grid, |&g_p| {
        let s = SystemParams {
            rabi: RabiParams { g_p, ..base.rabi.clone() },
            qubits: base.qubits.clone(),
        };
        let model = EffectiveModel::new(&s, levels)?;
        let j = model.j_eff();
        let times = linspace(0.0, 1.5 * transfer_time(j), n_times);
        let psi0 = initial_state(&s, 0, TwoQubitState::Eg)?;
        let series = run_closed(
            &build_total(&s)?,
            &psi0,
            &times,
            &[Observable::operator("n2", excitation_operator(&s.layout(), 2)?)?],
        )?;
        let (t, v) = first_maximum(&times, series.channel("n2").expect("recorded"))
            .ok_or_else(|| Error::InvalidParameter {
                field: "g_p",
                reason: format!("no excitation transfer found at g_p = {g_p}"),
            })?;
        Ok(TransferPoint {
            g_p,
            two_j_eff: 2.0 * j,
            first_max_time: t,
            first_max_value: v,
            validity_ratio: model.validity_ratio(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{norm, pauli, Axis};
    use crate::model::parity_operator;

    fn fig2(g_p: f64, n_fock: usize) -> SystemParams {
        SystemParams::two_qubit(RabiParams::new(0.8, g_p, n_fock), 0.2, 0.2, 0.02, 0.02)
    }

    #[test]
    fn time_grid_must_increase() {
        assert!(TimeSeries::new(vec![0.0, 0.0]).is_err());
        assert!(TimeSeries::new(vec![]).is_err());
        assert!(Observable::operator("x", sigma_pm(Sign::Plus)).is_err());
    }

    #[test]
    fn first_maximum_of_sine_squared() {
        let j = 0.3;
        let times = linspace(0.0, 8.0, 400);
        let v: Vec<f64> = times.iter().map(|t| (j * t).sin().powi(2)).collect();
        let (t, m) = first_maximum(&times, &v).unwrap();
        assert!((t - transfer_time(j)).abs() < 1e-4);
        assert!((m - 1.0).abs() < 1e-6);
    }

    #[test]
    fn diagonal_hamiltonian_keeps_populations() {
        let mut s = fig2(0.0, 4);
        s.qubits.iter_mut().for_each(|q| q.g = 0.0);
        let psi0 = initial_state(&s, 0, TwoQubitState::Eg).unwrap();
        let rabi = rabi_eigensystem(&s.rabi).unwrap();
        let obs = [Observable::projector("p", named_state(&rabi, 0, TwoQubitState::Eg).unwrap())];
        let series = run_closed(&build_total(&s).unwrap(), &psi0, &linspace(0.0, 50.0, 11), &obs).unwrap();
        assert!(series.channel("p").unwrap().iter().all(|p| (p - 1.0).abs() < 1e-12));
    }

    #[test]
    fn conserved_quantities() {
        let s = fig2(0.3, 12);
        let h = build_total(&s).unwrap();
        let psi0 = initial_state(&s, 0, TwoQubitState::Eg).unwrap();
        let times = linspace(0.0, 1e4, 21);
        let p = parity_operator(&s.layout()).unwrap();
        let obs = [
            Observable::operator("energy", h.clone()).unwrap(),
            Observable::operator("parity", p).unwrap(),
        ];
        let series = run_closed(&h, &psi0, &times, &obs).unwrap();
        let e = series.channel("energy").unwrap();
        let scale = h.max_abs();
        assert!(e.iter().all(|x| (x - e[0]).abs() < 1e-9 * scale));
        let par = series.channel("parity").unwrap();
        assert!(par.iter().all(|x| (x - par[0]).abs() < 1e-9));
        assert!((par[0].abs() - 1.0).abs() < 1e-12);
        let eig = hermitian_eig(&h).unwrap();
        for &t in &times {
            let psi = crate::linalg::evolve_state(&eig, &psi0, t).unwrap();
            assert!((norm(&psi) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn entropy_starts_at_zero() {
        let s = fig2(0.3, 10);
        let psi0 = initial_state(&s, 0, TwoQubitState::Eg).unwrap();
        let series = entanglement_monitor(&s, &psi0, &[0.0, 10.0]).unwrap();
        assert!(series.channel("entropy").unwrap()[0].abs() < 1e-12);
    }

    #[test]
    fn maximally_entangled_bipartition() {
        let l = HilbertLayout::new([("a", 2), ("b", 2)]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [C64::new(0.0, 0.0), C64::new(s, 0.0), C64::new(-s, 0.0), C64::new(0.0, 0.0)];
        let rho = reduced_from_pure(&psi, &l, &["a"]).unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn two_level_rabi_oscillation() {
        let h = pauli(Axis::X).scale_real(0.25);
        let psi0 = basis_vector(2, 0);
        let times = linspace(0.0, 20.0, 201);
        let obs = [Observable::projector("g", basis_vector(2, 1))];
        let s = run_closed(&h, &psi0, &times, &obs).unwrap();
        for (t, p) in times.iter().zip(s.channel("g").unwrap()) {
            assert!((p - (0.25 * t).sin().powi(2)).abs() < 1e-12);
        }
    }
}
