//! Dispatch from a resolved configuration to the numerical kernels.

use rayon::prelude::*;

use paritybus::dynamics::{
    compare_transfer, entanglement_monitor, excitation_operator, initial_state, population_inversion, run_closed,
    transfer_speed_scan, transfer_time, Observable, TimeSeries,
};
use paritybus::effective::EffectiveModel;
use paritybus::lindblad::{effective_master, steady_scan};
use paritybus::model::{build_total, rabi_gap, rabi_spectrum_scan, spectrum_scan, SpectrumScan, Sweep, SystemParams, TwoQubitState};
use paritybus::transmon::{anharmonicity, transmon_chain_scan, transmon_levels, ChainParams};
use paritybus::units::{entangling_time, Units};
use paritybus::util::linspace;

use crate::config::{DynamicsMode, Kind, Resolved, Window};
use crate::error::CliError;
use crate::output::{RunOutput, Table};

/// Runs the experiment and returns its tables; nothing is written.
pub fn execute(r: &Resolved) -> Result<RunOutput, CliError> {
    let mut out = RunOutput::default();
    match r.kind {
        Kind::Spectrum => spectrum(r, &mut out)?,
        Kind::Dynamics => dynamics(r, &mut out)?,
        Kind::Steady => steady(r, &mut out)?,
        Kind::EffectiveCompare => effective_compare(r, &mut out)?,
        Kind::Transmon => transmon(r, &mut out)?,
        Kind::TransmonChain => transmon_chain(r, &mut out)?,
    }
    Ok(out)
}

fn system_warnings(s: &SystemParams, out: &mut RunOutput) {
    for w in s.warnings() {
        out.warn(w);
    }
}

fn validity(model: &EffectiveModel, limit: f64, at: &str, out: &mut RunOutput) {
    let v = model.validity_ratio();
    if v > limit {
        out.warn(format!("dispersive validity ratio {v:.3e} exceeds {limit} at {at}"));
    }
}

fn spectrum_tables(scan: &SpectrumScan, levels: usize, out: &mut RunOutput) {
    let mut t = Table::new(None).float(scan.parameter.clone(), scan.points.iter().map(|p| p.value).collect());
    for k in 0..levels {
        t = t.float(format!("E{k}"), scan.points.iter().map(|p| p.energies[k]).collect());
    }
    for k in 0..levels {
        t = t.int(format!("p{k}"), scan.points.iter().map(|p| p.parities[k].value() as i64).collect());
    }
    out.tables.push(t);
    let c = &scan.crossings;
    out.tables.push(
        Table::new(Some("crossings"))
            .float("location", c.iter().map(|x| x.location).collect())
            .float("gap", c.iter().map(|x| x.gap).collect())
            .float("energy", c.iter().map(|x| x.energy).collect())
            .int("parity", c.iter().map(|x| x.parity.value() as i64).collect())
            .int("level_lower", c.iter().map(|x| x.levels.0 as i64).collect())
            .int("level_upper", c.iter().map(|x| x.levels.1 as i64).collect()),
    );
    if let Some(x) = scan.lowest_crossing() {
        out.derived.insert("lowest_crossing_location".into(), x.location);
        out.derived.insert("lowest_crossing_gap".into(), x.gap);
        out.derived.insert("lowest_crossing_energy".into(), x.energy);
    }
}

fn spectrum(r: &Resolved, out: &mut RunOutput) -> Result<(), CliError> {
    let sweep = r.sweep.as_ref().expect("resolved");
    let s = r.system_params()?;
    let scan = if s.qubits.is_empty() {
        if sweep.parameter != "g_p" {
            return Err(CliError::Config(
                "`sweep.parameter` must be `g_p` for a spectrum without qubits".into(),
            ));
        }
        rabi_spectrum_scan(&s.rabi, &sweep.grid, sweep.levels)?
    } else {
        system_warnings(&s, out);
        let parameter = sweep.parameter.parse().map_err(|e: paritybus::Error| CliError::Config(e.to_string()))?;
        spectrum_scan(&s, &Sweep::new(parameter, sweep.grid.clone()), sweep.levels)?
    };
    out.derived.insert("rabi_gap".into(), rabi_gap(&s.rabi)?);
    spectrum_tables(&scan, sweep.levels, out);
    Ok(())
}

fn time_grid(r: &Resolved, j: impl FnOnce() -> Result<f64, CliError>) -> Result<Vec<f64>, CliError> {
    let d = r.dynamics.as_ref().expect("resolved");
    let (a, b) = match d.window {
        Window::Absolute { start, stop } => (start, stop),
        Window::TransferTimes { start, stop } => {
            let tt = transfer_time(j()?);
            (start * tt, stop * tt)
        }
    };
    Ok(linspace(a, b, d.points))
}

fn series_table(ts: &TimeSeries, units: Option<Units>) -> Table {
    let mut t = Table::new(None).float("t", ts.times.clone());
    if let Some(u) = units {
        t = t.float("t_ns", ts.times.iter().map(|&x| u.time_ns(x)).collect());
    }
    for (name, v) in &ts.channels {
        t = t.float(name.clone(), v.clone());
    }
    t
}

fn dynamics(r: &Resolved, out: &mut RunOutput) -> Result<(), CliError> {
    let d = r.dynamics.as_ref().expect("resolved");
    let s = r.system_params()?;
    s.validate()?;
    system_warnings(&s, out);
    let units = r.units.as_ref().map(|u| Units::new(u.cavity_ghz));
    let model = || -> Result<EffectiveModel, CliError> { Ok(EffectiveModel::new(&s, r.effective_levels)?) };
    let (level, state) = r.initial_state()?;

    let table = match d.mode {
        DynamicsMode::Compare => {
            if (level, state) != (0, TwoQubitState::Eg) {
                return Err(CliError::Config("`dynamics.initial` must be `0:eg` for the compare mode".into()));
            }
            let m = model()?;
            validity(&m, r.validity_ratio, &format!("g_p = {}", s.rabi.g_p), out);
            out.derived.insert("two_j_eff".into(), 2.0 * m.j_eff());
            let times = time_grid(r, || Ok(m.j_eff()))?;
            series_table(&compare_transfer(&s, r.effective_levels, &times)?, units)
        }
        DynamicsMode::Inversion | DynamicsMode::Entanglement => {
            let times = time_grid(r, || Ok(model()?.j_eff()))?;
            let psi0 = initial_state(&s, level, state)?;
            let ts = if d.mode == DynamicsMode::Inversion {
                population_inversion(&s, &psi0, &times)?
            } else {
                entanglement_monitor(&s, &psi0, &times)?
            };
            series_table(&ts, units)
        }
        DynamicsMode::Series => {
            let times = time_grid(r, || Ok(model()?.j_eff()))?;
            let runs: Vec<Vec<f64>> = d
                .g_values
                .par_iter()
                .map(|&g_p| -> Result<Vec<f64>, CliError> {
                    let mut sg = s.clone();
                    sg.rabi.g_p = g_p;
                    let psi0 = initial_state(&sg, level, state)?;
                    let n2 = Observable::operator("n2", excitation_operator(&sg.layout(), 2)?)?;
                    let ts = run_closed(&build_total(&sg)?, &psi0, &times, &[n2])?;
                    Ok(ts.channel("n2").expect("recorded").to_vec())
                })
                .collect::<Result<_, _>>()?;
            let mut ts = TimeSeries::new(times)?;
            for (g_p, v) in d.g_values.iter().zip(runs) {
                ts.push(format!("n2_gp{g_p}"), v);
            }
            series_table(&ts, units)
        }
        DynamicsMode::Speed => {
            if (level, state) != (0, TwoQubitState::Eg) {
                return Err(CliError::Config("`dynamics.initial` must be `0:eg` for the speed mode".into()));
            }
            let pts = transfer_speed_scan(&s, &d.g_values, r.effective_levels, d.points)?;
            let chi: Vec<f64> = d
                .g_values
                .par_iter()
                .map(|&g_p| -> Result<f64, CliError> {
                    let mut sg = s.clone();
                    sg.rabi.g_p = g_p;
                    Ok(EffectiveModel::new(&sg, r.effective_levels)?.chi_sq(0, 1))
                })
                .collect::<Result<_, _>>()?;
            for p in &pts {
                if p.validity_ratio > r.validity_ratio {
                    out.warn(format!(
                        "dispersive validity ratio {:.3e} exceeds {} at g_p = {}",
                        p.validity_ratio, r.validity_ratio, p.g_p
                    ));
                }
            }
            let mut t = Table::new(None)
                .float("g_p", pts.iter().map(|p| p.g_p).collect())
                .float("two_j_eff", pts.iter().map(|p| p.two_j_eff).collect())
                .float("chi01_sq", chi)
                .float("first_max_time", pts.iter().map(|p| p.first_max_time).collect())
                .float("first_max_value", pts.iter().map(|p| p.first_max_value).collect())
                .float("validity_ratio", pts.iter().map(|p| p.validity_ratio).collect());
            if let Some(u) = units {
                t = t.float(
                    "entangling_time_ns",
                    pts.iter().map(|p| u.time_ns(entangling_time(p.two_j_eff / 2.0))).collect(),
                );
            }
            t
        }
    };
    out.tables.push(table);
    Ok(())
}

fn steady(r: &Resolved, out: &mut RunOutput) -> Result<(), CliError> {
    let s = r.system_params()?;
    let grid = &r.sweep.as_ref().expect("resolved").grid;
    let pts = steady_scan(&s, &r.rates()?, grid)?;
    let n: Vec<f64> = pts.iter().map(|p| p.excitation).collect();
    let (lo, hi) = n.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    out.derived.insert("n2_ss_min".into(), lo);
    out.derived.insert("n2_ss_max".into(), hi);
    out.tables.push(
        Table::new(None)
            .float("g_p", pts.iter().map(|p| p.g_p).collect())
            .float("n2_ss", n),
    );
    Ok(())
}

fn effective_compare(r: &Resolved, out: &mut RunOutput) -> Result<(), CliError> {
    let s = r.system_params()?;
    let rates = r.rates()?;
    let grid = &r.sweep.as_ref().expect("resolved").grid;
    let levels = r.effective_levels;
    let rows: Vec<(f64, f64, f64, f64)> = grid
        .par_iter()
        .map(|&g_p| -> Result<_, CliError> {
            let mut sg = s.clone();
            sg.rabi.g_p = g_p;
            let c = effective_master(&sg, &rates, levels)?;
            let v = EffectiveModel::new(&sg, levels)?.validity_ratio();
            Ok((c.excitation_effective, c.excitation_ab_initio, c.delta_r, v))
        })
        .collect::<Result<_, _>>()?;
    for (g_p, row) in grid.iter().zip(&rows) {
        if row.3 > r.validity_ratio {
            out.warn(format!("dispersive validity ratio {:.3e} exceeds {} at g_p = {g_p}", row.3, r.validity_ratio));
        }
    }
    out.tables.push(
        Table::new(None)
            .float("g_p", grid.clone())
            .float("n2_effective", rows.iter().map(|x| x.0).collect())
            .float("n2_ab_initio", rows.iter().map(|x| x.1).collect())
            .float("delta_r", rows.iter().map(|x| x.2).collect())
            .float("abs_delta_r_percent", rows.iter().map(|x| 100.0 * x.2.abs()).collect()),
    );
    Ok(())
}

fn transmon(r: &Resolved, out: &mut RunOutput) -> Result<(), CliError> {
    let sweep = r.sweep.as_ref().expect("resolved");
    let k = r.transmon.as_ref().expect("resolved").levels;
    let units = r.units.as_ref().map(|u| Units::new(u.cavity_ghz));
    let pts = sweep
        .grid
        .par_iter()
        .map(|&x| -> Result<_, CliError> {
            let p = r.transmon_params(x)?;
            let l = transmon_levels(&p, k.max(3))?;
            Ok((l, anharmonicity(&p)?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(None).float("ej_over_ec", sweep.grid.clone());
    for i in 0..k {
        t = t.float(format!("E{i}"), pts.iter().map(|(l, _)| l.energies[i]).collect());
    }
    t = t.float("alpha", pts.iter().map(|(_, a)| *a).collect());
    if let Some(u) = units {
        t = t.float("alpha_ghz", pts.iter().map(|(_, a)| u.frequency_ghz(*a)).collect());
    }
    for (l, _) in &pts {
        for w in &l.warnings {
            out.warn(w.clone());
        }
    }
    out.tables.push(t);
    Ok(())
}

fn transmon_chain(r: &Resolved, out: &mut RunOutput) -> Result<(), CliError> {
    let sweep = r.sweep.as_ref().expect("resolved");
    let ch = r.chain.as_ref().expect("resolved");
    let rabi = r.rabi_params()?;
    let t1 = r.transmon_params(ch.ej_over_ec_1)?;
    let t2 = r.transmon_params(sweep.grid[0])?;
    let c = ChainParams {
        levels: ch.transmon_levels,
        ..ChainParams::new(t1, t2, rabi, ch.g1, ch.g2)
    };
    let scan = transmon_chain_scan(&c, &sweep.grid, sweep.levels)?;
    spectrum_tables(&scan, sweep.levels, out);
    Ok(())
}

/// Largest change of one output column under doubled truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnDelta {
    pub file: String,
    pub column: String,
    /// `None` when the row counts differ.
    pub max_abs: Option<f64>,
}

/// Runs the experiment at its own and at doubled truncation and compares
/// every numeric column.
pub fn check(r: &Resolved) -> Result<Vec<ColumnDelta>, CliError> {
    let base = execute(r)?;
    let fine = execute(&r.doubled())?;
    let mut deltas = Vec::new();
    for (a, b) in base.tables.iter().zip(&fine.tables) {
        let file = a.file_name(&r.name);
        for ((name, ca), (_, cb)) in a.columns.iter().zip(&b.columns) {
            let max_abs = (ca.len() == cb.len()).then(|| {
                ca.as_f64()
                    .iter()
                    .zip(cb.as_f64())
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max)
            });
            deltas.push(ColumnDelta {
                file: file.clone(),
                column: name.clone(),
                max_abs,
            });
        }
    }
    Ok(deltas)
}
