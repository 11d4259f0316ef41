//! Experiment configuration files.
//!
//! Every optional field has a default; [`ExperimentConfig::resolve`] fills
//! them in so the run manifest can record exactly what was used.

use serde::{Deserialize, Serialize};

use paritybus::effective::DEFAULT_LEVELS;
use paritybus::lindblad::DissipationRates;
use paritybus::model::{QubitParams, RabiParams, SweepParameter, SystemParams, TwoQubitState};
use paritybus::transmon::{TransmonParams, CHAIN_LEVELS, DEFAULT_N_MAX};
use paritybus::util::linspace;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Spectrum,
    Dynamics,
    Steady,
    EffectiveCompare,
    Transmon,
    TransmonChain,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum DynamicsMode {
    /// `n2` under the full and effective Hamiltonians.
    Compare,
    /// `|0⟩|D21⟩ ↔ |1⟩|D20⟩` populations.
    Inversion,
    /// `|0⟩|eg⟩`, `|0⟩|ge⟩` populations and bus–qubit entropy.
    Entanglement,
    /// `n2(t)` for several bus couplings on a common grid.
    Series,
    /// Transfer time and coupling versus bus coupling.
    Speed,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QubitConfig {
    pub omega_q: f64,
    pub g: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub omega_p: f64,
    pub g_p: f64,
    pub n_fock: usize,
    pub omega_cav: Option<f64>,
    #[serde(default)]
    pub qubits: Vec<QubitConfig>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: String,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub points: Option<usize>,
    pub values: Option<Vec<f64>>,
    /// Levels reported per grid point.
    pub levels: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DynamicsConfig {
    pub mode: DynamicsMode,
    /// `level:state`, e.g. `0:eg` or `1:D20`.
    pub initial: Option<String>,
    pub t_start: Option<f64>,
    pub t_stop: Option<f64>,
    /// Window end in multiples of the transfer time `π/(2J)`.
    pub transfer_times: Option<f64>,
    /// Window start in multiples of the transfer time.
    pub transfer_start: Option<f64>,
    pub points: Option<usize>,
    /// Bus couplings for the `series` and `speed` modes.
    pub g_values: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RatesConfig {
    pub gamma_pump: f64,
    pub gamma_out: f64,
    pub gamma_x: f64,
    pub gamma_z: f64,
    pub gamma_cav: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TransmonConfig {
    pub e_c: f64,
    pub n_g: Option<f64>,
    pub n_max: Option<usize>,
    pub levels: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    /// `E_J/E_C` of transmon 1, held fixed.
    pub ej_over_ec_1: f64,
    pub g1: f64,
    pub g2: f64,
    /// Levels kept per transmon.
    pub transmon_levels: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnitsConfig {
    /// `ω_cav / 2π` in GHz.
    pub cavity_ghz: f64,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TolerancesConfig {
    /// Dispersive validity ratio above which a warning is recorded.
    pub validity_ratio: Option<f64>,
}

/// A parsed configuration file.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub kind: Kind,
    pub description: Option<String>,
    /// Output directory.
    pub output: Option<String>,
    /// QRS levels kept in effective models.
    pub effective_levels: Option<usize>,
    pub system: Option<SystemConfig>,
    pub sweep: Option<SweepConfig>,
    pub dynamics: Option<DynamicsConfig>,
    pub rates: Option<RatesConfig>,
    pub transmon: Option<TransmonConfig>,
    pub chain: Option<ChainConfig>,
    pub units: Option<UnitsConfig>,
    #[serde(default)]
    pub tolerances: TolerancesConfig,
}

pub const DEFAULT_SPECTRUM_LEVELS: usize = 8;
pub const DEFAULT_POINTS: usize = 2000;
pub const DEFAULT_VALIDITY_RATIO: f64 = 0.1;
pub const DEFAULT_TRANSFER_TIMES: f64 = 1.5;

/// Time window of a dynamics run, either absolute or in transfer times.
#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "unit", rename_all = "kebab-case")]
pub enum Window {
    Absolute { start: f64, stop: f64 },
    TransferTimes { start: f64, stop: f64 },
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ResolvedDynamics {
    pub mode: DynamicsMode,
    pub initial: String,
    pub window: Window,
    pub points: usize,
    pub g_values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ResolvedSweep {
    pub parameter: String,
    pub grid: Vec<f64>,
    pub levels: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ResolvedTransmon {
    pub e_c: f64,
    pub n_g: f64,
    pub n_max: usize,
    pub levels: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ResolvedChain {
    pub ej_over_ec_1: f64,
    pub g1: f64,
    pub g2: f64,
    pub transmon_levels: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ResolvedSystem {
    pub omega_p: f64,
    pub omega_cav: f64,
    pub g_p: f64,
    pub n_fock: usize,
    pub qubits: Vec<QubitConfig>,
}

/// Configuration with every default made explicit.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Resolved {
    pub name: String,
    pub kind: Kind,
    pub description: String,
    pub system: Option<ResolvedSystem>,
    pub sweep: Option<ResolvedSweep>,
    pub dynamics: Option<ResolvedDynamics>,
    pub rates: Option<RatesConfig>,
    pub transmon: Option<ResolvedTransmon>,
    pub chain: Option<ResolvedChain>,
    pub units: Option<UnitsConfig>,
    /// QRS levels kept in effective models.
    pub effective_levels: usize,
    pub validity_ratio: f64,
}

fn missing(section: &str) -> CliError {
    CliError::Config(format!("missing [{section}] section required for this kind"))
}

fn positive(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("`{field}` must be positive, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let needs = |k: &[Kind]| k.contains(&self.kind);
        use Kind::*;

        let system = match &self.system {
            Some(s) => {
                positive("system.omega_p", s.omega_p)?;
                let omega_cav = s.omega_cav.unwrap_or(1.0);
                positive("system.omega_cav", omega_cav)?;
                for (i, q) in s.qubits.iter().enumerate() {
                    positive(&format!("system.qubits[{i}].omega_q"), q.omega_q)?;
                }
                Some(ResolvedSystem {
                    omega_p: s.omega_p,
                    omega_cav,
                    g_p: s.g_p,
                    n_fock: s.n_fock,
                    qubits: s.qubits.clone(),
                })
            }
            None if needs(&[Spectrum, Dynamics, Steady, EffectiveCompare, TransmonChain]) => {
                return Err(missing("system"))
            }
            None => None,
        };
        if needs(&[Dynamics, Steady, EffectiveCompare]) && system.as_ref().is_some_and(|s| s.qubits.len() != 2) {
            return Err(CliError::Config("`system.qubits` must list exactly 2 qubits for this kind".into()));
        }

        let sweep = match &self.sweep {
            Some(s) => Some(resolve_sweep(s)?),
            None if needs(&[Spectrum, Steady, EffectiveCompare, Transmon, TransmonChain]) => return Err(missing("sweep")),
            None => None,
        };
        if let Some(s) = &sweep {
            let allowed: &[&str] = match self.kind {
                Steady | EffectiveCompare => &["g_p"],
                Transmon | TransmonChain => &["ej_over_ec"],
                _ => &[],
            };
            if !allowed.is_empty() && !allowed.contains(&s.parameter.as_str()) {
                return Err(CliError::Config(format!(
                    "`sweep.parameter` must be one of {allowed:?} for this kind, got `{}`",
                    s.parameter
                )));
            }
            if self.kind == Spectrum {
                s.parameter
                    .parse::<SweepParameter>()
                    .map_err(|e| CliError::Config(e.to_string()))?;
            }
        }

        let dynamics = match &self.dynamics {
            Some(d) => Some(resolve_dynamics(d)?),
            None if needs(&[Dynamics]) => return Err(missing("dynamics")),
            None => None,
        };

        let rates = match &self.rates {
            Some(r) => Some(r.clone()),
            None if needs(&[Steady, EffectiveCompare]) => return Err(missing("rates")),
            None => None,
        };

        let transmon = match &self.transmon {
            Some(t) => {
                positive("transmon.e_c", t.e_c)?;
                Some(ResolvedTransmon {
                    e_c: t.e_c,
                    n_g: t.n_g.unwrap_or(0.0),
                    n_max: t.n_max.unwrap_or(DEFAULT_N_MAX),
                    levels: t.levels.unwrap_or(3),
                })
            }
            None if needs(&[Transmon, TransmonChain]) => return Err(missing("transmon")),
            None => None,
        };

        let chain = match &self.chain {
            Some(c) => Some(ResolvedChain {
                ej_over_ec_1: c.ej_over_ec_1,
                g1: c.g1,
                g2: c.g2,
                transmon_levels: c.transmon_levels.unwrap_or(CHAIN_LEVELS),
            }),
            None if needs(&[TransmonChain]) => return Err(missing("chain")),
            None => None,
        };

        if let Some(u) = &self.units {
            positive("units.cavity_ghz", u.cavity_ghz)?;
        }

        Ok(Resolved {
            name: self.name.clone(),
            kind: self.kind,
            description: self.description.clone().unwrap_or_default(),
            system,
            sweep,
            dynamics,
            rates,
            transmon,
            chain,
            units: self.units.clone(),
            effective_levels: self.effective_levels.unwrap_or(DEFAULT_LEVELS),
            validity_ratio: self.tolerances.validity_ratio.unwrap_or(DEFAULT_VALIDITY_RATIO),
        })
    }
}

fn resolve_sweep(s: &SweepConfig) -> Result<ResolvedSweep, CliError> {
    let grid = match (&s.values, s.start, s.stop, s.points) {
        (Some(v), None, None, None) => v.clone(),
        (None, Some(a), Some(b), Some(n)) => {
            if n < 2 {
                return Err(CliError::Config(format!("`sweep.points` must be at least 2, got {n}")));
            }
            linspace(a, b, n)
        }
        _ => {
            return Err(CliError::Config(
                "`sweep` needs either `values` or all of `start`, `stop`, `points`".into(),
            ))
        }
    };
    if grid.is_empty() {
        return Err(CliError::Config("`sweep.values` is empty".into()));
    }
    Ok(ResolvedSweep {
        parameter: s.parameter.clone(),
        grid,
        levels: s.levels.unwrap_or(DEFAULT_SPECTRUM_LEVELS),
    })
}

fn resolve_dynamics(d: &DynamicsConfig) -> Result<ResolvedDynamics, CliError> {
    let window = match (d.t_start, d.t_stop, d.transfer_start, d.transfer_times) {
        (start, Some(stop), None, None) => Window::Absolute {
            start: start.unwrap_or(0.0),
            stop,
        },
        (None, None, start, stop) => Window::TransferTimes {
            start: start.unwrap_or(0.0),
            stop: stop.unwrap_or(DEFAULT_TRANSFER_TIMES),
        },
        _ => {
            return Err(CliError::Config(
                "`dynamics` takes either `t_start`/`t_stop` or `transfer_start`/`transfer_times`, not both".into(),
            ))
        }
    };
    let (start, stop) = match window {
        Window::Absolute { start, stop } | Window::TransferTimes { start, stop } => (start, stop),
    };
    if !(start >= 0.0 && stop > start) {
        return Err(CliError::Config(format!("`dynamics` window must satisfy 0 ≤ start < stop, got [{start}, {stop}]")));
    }
    let initial = d.initial.clone().unwrap_or_else(|| {
        match d.mode {
            DynamicsMode::Inversion => "0:D21",
            _ => "0:eg",
        }
        .to_string()
    });
    paritybus::model::parse_labelled_state(&initial)
        .map_err(|e| CliError::Config(format!("`dynamics.initial`: {e}")))?;
    let g_values = d.g_values.clone().unwrap_or_default();
    if matches!(d.mode, DynamicsMode::Series | DynamicsMode::Speed) && g_values.is_empty() {
        return Err(CliError::Config("`dynamics.g_values` is required for this mode".into()));
    }
    let points = d.points.unwrap_or(DEFAULT_POINTS);
    if points < 2 {
        return Err(CliError::Config(format!("`dynamics.points` must be at least 2, got {points}")));
    }
    Ok(ResolvedDynamics {
        mode: d.mode,
        initial,
        window,
        points,
        g_values,
    })
}

impl Resolved {
    pub fn system_params(&self) -> Result<SystemParams, CliError> {
        let s = self.system.as_ref().ok_or_else(|| missing("system"))?;
        let rabi = RabiParams {
            omega_p: s.omega_p,
            omega_cav: s.omega_cav,
            g_p: s.g_p,
            n_fock: s.n_fock,
        };
        let qubits = s
            .qubits
            .iter()
            .map(|q| QubitParams {
                omega_q: q.omega_q,
                g: q.g,
            })
            .collect();
        Ok(SystemParams::new(rabi, qubits))
    }

    pub fn rabi_params(&self) -> Result<RabiParams, CliError> {
        Ok(self.system_params()?.rabi)
    }

    pub fn rates(&self) -> Result<DissipationRates, CliError> {
        let r = self.rates.as_ref().ok_or_else(|| missing("rates"))?;
        Ok(DissipationRates {
            gamma_pump: r.gamma_pump,
            gamma_out: r.gamma_out,
            gamma_x: r.gamma_x,
            gamma_z: r.gamma_z,
            gamma_cav: r.gamma_cav,
        })
    }

    pub fn transmon_params(&self, ej_over_ec: f64) -> Result<TransmonParams, CliError> {
        let t = self.transmon.as_ref().ok_or_else(|| missing("transmon"))?;
        Ok(TransmonParams {
            n_g: t.n_g,
            n_max: t.n_max,
            ..TransmonParams::new(t.e_c, ej_over_ec)
        })
    }

    /// Initial state for dynamics.
    pub fn initial_state(&self) -> Result<(usize, TwoQubitState), CliError> {
        let d = self.dynamics.as_ref().ok_or_else(|| missing("dynamics"))?;
        paritybus::model::parse_labelled_state(&d.initial).map_err(|e| CliError::Config(format!("`dynamics.initial`: {e}")))
    }

    /// Same experiment with the cavity (or charge) cutoff doubled.
    pub fn doubled(&self) -> Resolved {
        let mut r = self.clone();
        match r.kind {
            Kind::Transmon => {
                if let Some(t) = r.transmon.as_mut() {
                    t.n_max *= 2;
                }
            }
            _ => {
                if let Some(s) = r.system.as_mut() {
                    s.n_fock *= 2;
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MIN: &str = r#"
name = "t"
kind = "spectrum"
[system]
omega_p = 0.8
g_p = 0.3
n_fock = 10
qubits = [{ omega_q = 0.2, g = 0.02 }, { omega_q = 0.2, g = 0.02 }]
[sweep]
parameter = "delta"
start = 0.1
stop = 0.3
points = 5
"#;

    #[test]
    fn defaults_are_resolved() {
        let r = ExperimentConfig::parse(MIN).unwrap().resolve().unwrap();
        assert_eq!(r.sweep.as_ref().unwrap().levels, DEFAULT_SPECTRUM_LEVELS);
        assert_eq!(r.system.as_ref().unwrap().omega_cav, 1.0);
        assert_eq!(r.validity_ratio, DEFAULT_VALIDITY_RATIO);
        assert_eq!(r.sweep.unwrap().grid.len(), 5);
    }

    #[test]
    fn unknown_field_names_the_field() {
        let bad = MIN.replace("omega_p = 0.8", "omega_pp = 0.8");
        let err = ExperimentConfig::parse(&bad).unwrap_err().to_string();
        assert!(err.contains("omega_pp"), "{err}");
    }

    #[test]
    fn missing_section_is_reported() {
        let bad: String = MIN.split("[sweep]").next().unwrap().into();
        let err = ExperimentConfig::parse(&bad).unwrap().resolve().unwrap_err().to_string();
        assert!(err.contains("[sweep]"), "{err}");
    }

    #[test]
    fn nonpositive_frequency_is_rejected() {
        let bad = MIN.replace("omega_q = 0.2, g = 0.02 }]", "omega_q = -0.2, g = 0.02 }]");
        let err = ExperimentConfig::parse(&bad).unwrap().resolve().unwrap_err().to_string();
        assert!(err.contains("qubits[1].omega_q"), "{err}");
    }

    #[test]
    fn doubling_targets_the_cutoff() {
        let r = ExperimentConfig::parse(MIN).unwrap().resolve().unwrap();
        assert_eq!(r.doubled().system.unwrap().n_fock, 20);
    }
}
