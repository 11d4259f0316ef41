//! Conversion between `ω_cav` units and laboratory GHz / ns.

use std::f64::consts::PI;

/// Cavity frequency used in the entangling-time estimates.
pub const CAVITY_GHZ_MAIN: f64 = 8.0;
/// Cavity frequency used for the transmon implementation.
pub const CAVITY_GHZ_TRANSMON: f64 = 16.0;
/// Transmon charging energy `E_C/h` in GHz.
pub const TRANSMON_EC_GHZ: f64 = 0.31;

/// Fixes `ω_cav = 2π × f_cav`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Units {
    pub cavity_ghz: f64,
}

impl Units {
    pub fn new(cavity_ghz: f64) -> Self {
        Self { cavity_ghz }
    }

    /// Angular cavity frequency in rad/ns.
    pub fn omega_cav(&self) -> f64 {
        2.0 * PI * self.cavity_ghz
    }

    /// Dimensionless time `t·ω_cav` to nanoseconds.
    pub fn time_ns(&self, t: f64) -> f64 {
        t / self.omega_cav()
    }

    /// Dimensionless angular frequency to `ω/2π` in GHz.
    pub fn frequency_ghz(&self, w: f64) -> f64 {
        w * self.cavity_ghz
    }

    /// `ω/2π` in GHz to units of `ω_cav`.
    pub fn from_ghz(&self, f: f64) -> f64 {
        f / self.cavity_ghz
    }
}

/// Entangling time `π/(4J)` in units of `1/ω_cav`.
pub fn entangling_time(j_eff: f64) -> f64 {
    PI / (4.0 * j_eff.abs())
}

/// Charging energy in units of the transmon-setup cavity frequency.
pub fn transmon_charging_energy() -> f64 {
    Units::new(CAVITY_GHZ_TRANSMON).from_ghz(TRANSMON_EC_GHZ)
}
