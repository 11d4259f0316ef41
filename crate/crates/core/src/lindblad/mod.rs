//! Dressed-basis master equation: channels, Liouvillian, steady states and
//! the comparison against the effective two-qubit master equation.
//!
//! Jump operators connect eigenstates `|φ_j⟩` of the full Hamiltonian.
//! Rates follow `Γ^{jk} = γ (ε_kj / ω) |⟨φ_j|O|φ_k⟩|²` with `O` the bare
//! operator of the channel and `ω` its bare frequency (zero temperature).

mod scan;
mod solve;
mod superop;

pub use scan::{
    dressed_basis, effective_master, fig6_system, fig8_system, standard_channels, steady_excitation,
    steady_scan, steady_scan_identical, steady_scan_nonidentical, DressedProblem,
    EffectiveComparison, SteadyPoint,
};
pub use solve::{
    integrate_master, liouvillian_eigenvalues, rate_equation_steady_state, relaxation_gap,
    steady_state, steady_state_spectral, MasterRun, RateSteadyState, SpectralSteadyState, RESIDUAL_TOL,
    TRACE_TOL, ZERO_TOL,
};
pub use superop::{
    channel_jumps, liouvillian, liouvillian_from_jumps, master_rhs, unvec, vec_column_major,
    vec_row_major, Jump, Superoperator,
};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, EigenSystem};

/// Bare damping rates, in units of `ω_cav`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DissipationRates {
    /// Incoherent pumping of qubit 1.
    pub gamma_pump: f64,
    /// Spontaneous emission of qubit 2.
    pub gamma_out: f64,
    pub gamma_x: f64,
    pub gamma_z: f64,
    pub gamma_cav: f64,
}

impl DissipationRates {
    /// Rates used for the identical-qubit steady-state scan.
    pub fn fig6() -> Self {
        Self {
            gamma_pump: 1e-2,
            gamma_out: 1e-1,
            gamma_x: 1e-2,
            gamma_z: 1e-2,
            gamma_cav: 1e-2,
        }
    }

    /// Rates used for the nonidentical-qubit scan.
    pub fn fig8() -> Self {
        Self {
            gamma_out: 1e-4,
            ..Self::fig6()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (label, g) in [
            ("x1", self.gamma_pump),
            ("x2", self.gamma_out),
            ("xp", self.gamma_x),
            ("zp", self.gamma_z),
            ("b", self.gamma_cav),
        ] {
            check_gamma(label, g)?;
        }
        Ok(())
    }
}

fn check_gamma(label: &str, g: f64) -> Result<()> {
    if !(g.is_finite() && g >= 0.0) {
        return Err(Error::InvalidRate {
            channel: label.into(),
            reason: format!("rate must be finite and non-negative, got {g}"),
        });
    }
    Ok(())
}

/// Whether a channel moves population up (pump) or down in energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raising,
    Lowering,
}

/// A bare system operator together with its rate and reference frequency.
#[derive(Clone, Debug)]
pub struct BareChannel {
    pub label: String,
    pub op: ComplexMatrix,
    pub gamma: f64,
    pub omega: f64,
    pub direction: Direction,
}

impl BareChannel {
    pub fn new(label: impl Into<String>, op: ComplexMatrix, gamma: f64, omega: f64, direction: Direction) -> Self {
        Self {
            label: label.into(),
            op,
            gamma,
            omega,
            direction,
        }
    }
}

/// Eigenstate pair `j < k` with `ε_k > ε_j` and its rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub lower: usize,
    pub upper: usize,
    pub rate: f64,
}

impl Transition {
    /// `(source, target)` eigenstate indices for a channel direction.
    pub fn endpoints(&self, direction: Direction) -> (usize, usize) {
        match direction {
            Direction::Raising => (self.lower, self.upper),
            Direction::Lowering => (self.upper, self.lower),
        }
    }
}

/// Dressed channel: every nonzero transition of one bare operator.
///
/// Jump operators are `|φ_k⟩⟨φ_j|` for raising channels and `|φ_j⟩⟨φ_k|`
/// otherwise. They are built on demand by [`LindbladChannel::jump_operator`]
/// since storing thousands of dense `d×d` matrices is wasteful.
#[derive(Clone, Debug)]
pub struct LindbladChannel {
    pub label: String,
    pub direction: Direction,
    pub transitions: Vec<Transition>,
}

impl LindbladChannel {
    pub fn jump_operator(&self, basis: &EigenSystem, t: &Transition) -> ComplexMatrix {
        let (from, to) = t.endpoints(self.direction);
        ComplexMatrix::outer(&basis.vector(to), &basis.vector(from))
    }

    pub fn total_rate(&self) -> f64 {
        self.transitions.iter().map(|t| t.rate).sum()
    }
}

/// Matrix elements below this are treated as selection-rule zeros.
const MATRIX_ELEMENT_FLOOR: f64 = 1e-20;

/// Dressed channels of each bare operator in the eigenbasis `basis`.
pub fn dressed_channels(basis: &EigenSystem, bare: &[BareChannel]) -> Result<Vec<LindbladChannel>> {
    let d = basis.dim();
    let mut out = Vec::with_capacity(bare.len());
    for ch in bare {
        check_gamma(&ch.label, ch.gamma)?;
        if !(ch.omega.is_finite() && ch.omega > 0.0) {
            return Err(Error::InvalidRate {
                channel: ch.label.clone(),
                reason: format!("bare frequency must be positive, got {}", ch.omega),
            });
        }
        if ch.op.rows() != d || ch.op.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: ch.op.rows(),
            });
        }
        let m = basis.to_eigenbasis(&ch.op)?;
        let mut transitions = Vec::new();
        if ch.gamma > 0.0 {
            for j in 0..d {
                for k in j + 1..d {
                    let eps = basis.values[k] - basis.values[j];
                    let m2 = m[(j, k)].norm_sqr();
                    if eps <= 0.0 || m2 <= MATRIX_ELEMENT_FLOOR {
                        continue;
                    }
                    transitions.push(Transition {
                        lower: j,
                        upper: k,
                        rate: ch.gamma * eps / ch.omega * m2,
                    });
                }
            }
        }
        out.push(LindbladChannel {
            label: ch.label.clone(),
            direction: ch.direction,
            transitions,
        });
    }
    Ok(out)
}

/// Classical rate matrix `W[target][source]` (row-major, `d×d`).
pub fn rate_matrix(d: usize, channels: &[LindbladChannel]) -> Vec<f64> {
    let mut w = vec![0.0; d * d];
    for ch in channels {
        for t in &ch.transitions {
            let (from, to) = t.endpoints(ch.direction);
            w[to * d + from] += t.rate;
        }
    }
    w
}
