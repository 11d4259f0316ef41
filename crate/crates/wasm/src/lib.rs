//! Browser bindings: Rabi spectrum, two-qubit spectrum and excitation transfer.

use wasm_bindgen::prelude::*;

use paritybus::dynamics::{compare_transfer, transfer_time};
use paritybus::effective::{EffectiveModel, DEFAULT_LEVELS};
use paritybus::model::{rabi_spectrum_scan, spectrum_scan, RabiParams, SpectrumScan, Sweep, SweepParameter, SystemParams};
use paritybus::util::linspace;

/// Largest cavity truncation accepted from the page.
const MAX_FOCK: usize = 40;
const MAX_POINTS: usize = 4000;

fn js(e: paritybus::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn check_sizes(n_fock: usize, points: usize) -> Result<(), paritybus::Error> {
    if n_fock > MAX_FOCK {
        return Err(paritybus::Error::InvalidParameter {
            field: "n_fock",
            reason: format!("at most {MAX_FOCK} in the browser, got {n_fock}"),
        });
    }
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(paritybus::Error::InvalidParameter {
            field: "points",
            reason: format!("must lie in 2..={MAX_POINTS}, got {points}"),
        });
    }
    Ok(())
}

/// Lowest levels along a sweep, flattened row by row.
#[wasm_bindgen]
pub struct Spectrum {
    grid: Vec<f64>,
    levels: usize,
    energies: Vec<f64>,
    parities: Vec<i8>,
    crossings: Vec<f64>,
}

#[wasm_bindgen]
impl Spectrum {
    #[wasm_bindgen(getter)]
    pub fn grid(&self) -> Vec<f64> {
        self.grid.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `energies[i * levels + k]` is level `k` at grid point `i`.
    #[wasm_bindgen(getter)]
    pub fn energies(&self) -> Vec<f64> {
        self.energies.clone()
    }

    /// Parity `±1` in the same layout as `energies`.
    #[wasm_bindgen(getter)]
    pub fn parities(&self) -> Vec<i8> {
        self.parities.clone()
    }

    /// Avoided crossings as `(location, gap, energy)` triples.
    #[wasm_bindgen(getter)]
    pub fn crossings(&self) -> Vec<f64> {
        self.crossings.clone()
    }
}

impl Spectrum {
    fn from_scan(scan: &SpectrumScan, levels: usize) -> Self {
        let mut energies = Vec::with_capacity(scan.points.len() * levels);
        let mut parities = Vec::with_capacity(energies.capacity());
        for p in &scan.points {
            energies.extend_from_slice(&p.energies[..levels]);
            parities.extend(p.parities[..levels].iter().map(|q| q.value()));
        }
        Self {
            grid: scan.points.iter().map(|p| p.value).collect(),
            levels,
            energies,
            parities,
            crossings: scan.crossings.iter().flat_map(|c| [c.location, c.gap, c.energy]).collect(),
        }
    }
}

fn rabi_spectrum_impl(omega_p: f64, g_max: f64, points: usize, levels: usize, n_fock: usize) -> Result<Spectrum, paritybus::Error> {
    check_sizes(n_fock, points)?;
    let p = RabiParams::new(omega_p, 0.0, n_fock);
    let scan = rabi_spectrum_scan(&p, &linspace(0.0, g_max, points), levels)?;
    Ok(Spectrum::from_scan(&scan, levels))
}

/// Bare Rabi spectrum for `g_p ∈ [0, g_max]`.
#[wasm_bindgen]
pub fn rabi_spectrum(omega_p: f64, g_max: f64, points: usize, levels: usize, n_fock: usize) -> Result<Spectrum, JsError> {
    rabi_spectrum_impl(omega_p, g_max, points, levels, n_fock).map_err(js)
}

#[allow(clippy::too_many_arguments)]
fn two_qubit_spectrum_impl(
    omega_p: f64,
    g_p: f64,
    g: f64,
    omega_q1: f64,
    identical: bool,
    start: f64,
    stop: f64,
    points: usize,
    levels: usize,
    n_fock: usize,
) -> Result<Spectrum, paritybus::Error> {
    check_sizes(n_fock, points)?;
    let s = SystemParams::two_qubit(RabiParams::new(omega_p, g_p, n_fock), omega_q1, omega_q1, g, g);
    let parameter = if identical {
        SweepParameter::OmegaQubits
    } else {
        SweepParameter::OmegaQubit(2)
    };
    let scan = spectrum_scan(&s, &Sweep::new(parameter, linspace(start, stop, points)), levels)?;
    Ok(Spectrum::from_scan(&scan, levels))
}

/// Spectrum of bus plus two qubits versus the gap of qubit 2, or of both
/// qubits together when `identical` is set.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn two_qubit_spectrum(
    omega_p: f64,
    g_p: f64,
    g: f64,
    omega_q1: f64,
    identical: bool,
    start: f64,
    stop: f64,
    points: usize,
    levels: usize,
    n_fock: usize,
) -> Result<Spectrum, JsError> {
    two_qubit_spectrum_impl(omega_p, g_p, g, omega_q1, identical, start, stop, points, levels, n_fock).map_err(js)
}

/// `<σ+₂σ−₂>(t)` from `|0⟩|eg⟩` under the full and effective Hamiltonians.
#[wasm_bindgen]
pub struct Transfer {
    times: Vec<f64>,
    full: Vec<f64>,
    effective: Vec<f64>,
    two_j_eff: f64,
}

#[wasm_bindgen]
impl Transfer {
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn full(&self) -> Vec<f64> {
        self.full.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn effective(&self) -> Vec<f64> {
        self.effective.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn two_j_eff(&self) -> f64 {
        self.two_j_eff
    }
}

fn transfer_impl(omega_p: f64, g_p: f64, omega_q: f64, g: f64, periods: f64, points: usize, n_fock: usize) -> Result<Transfer, paritybus::Error> {
    check_sizes(n_fock, points)?;
    let s = SystemParams::two_qubit(RabiParams::new(omega_p, g_p, n_fock), omega_q, omega_q, g, g);
    let j = EffectiveModel::new(&s, DEFAULT_LEVELS)?.j_eff();
    let times = linspace(0.0, periods * transfer_time(j), points);
    let ts = compare_transfer(&s, DEFAULT_LEVELS, &times)?;
    let get = |name: &str| ts.channel(name).expect("recorded").to_vec();
    Ok(Transfer {
        full: get("n2_full"),
        effective: get("n2_eff"),
        times,
        two_j_eff: 2.0 * j,
    })
}

/// Excitation transfer over `periods` transfer times `π/(2J)` for identical qubits.
#[wasm_bindgen]
pub fn transfer_dynamics(omega_p: f64, g_p: f64, omega_q: f64, g: f64, periods: f64, points: usize, n_fock: usize) -> Result<Transfer, JsError> {
    transfer_impl(omega_p, g_p, omega_q, g, periods, points, n_fock).map_err(js)
}
