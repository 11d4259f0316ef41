//! Named two-qubit reference states.
//!
//! Two-qubit index is `2·q1 + q2` with `e = 0`, `g = 1`, so the basis order is
//! `(ee, eg, ge, gg)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{kron_vec, EigenSystem, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoQubitState {
    /// Dicke `|D_{2,0}> = |gg>`.
    D20,
    /// Dicke `|D_{2,1}> = (|eg> + |ge>)/√2`.
    D21,
    /// Dicke `|D_{2,2}> = |ee>`.
    D22,
    PsiPlus,
    PsiMinus,
    Eg,
    Ge,
    Gg,
    Ee,
}

impl TwoQubitState {
    pub const ALL: [TwoQubitState; 9] = [
        TwoQubitState::D20,
        TwoQubitState::D21,
        TwoQubitState::D22,
        TwoQubitState::PsiPlus,
        TwoQubitState::PsiMinus,
        TwoQubitState::Eg,
        TwoQubitState::Ge,
        TwoQubitState::Gg,
        TwoQubitState::Ee,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwoQubitState::D20 => "D20",
            TwoQubitState::D21 => "D21",
            TwoQubitState::D22 => "D22",
            TwoQubitState::PsiPlus => "psi_plus",
            TwoQubitState::PsiMinus => "psi_minus",
            TwoQubitState::Eg => "eg",
            TwoQubitState::Ge => "ge",
            TwoQubitState::Gg => "gg",
            TwoQubitState::Ee => "ee",
        }
    }

    /// Amplitudes in the `(ee, eg, ge, gg)` basis.
    pub fn amplitudes(self) -> [C64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = |a: f64, b: f64, c: f64, d: f64| {
            [C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0)]
        };
        match self {
            TwoQubitState::D20 | TwoQubitState::Gg => r(0.0, 0.0, 0.0, 1.0),
            TwoQubitState::D22 | TwoQubitState::Ee => r(1.0, 0.0, 0.0, 0.0),
            TwoQubitState::D21 | TwoQubitState::PsiPlus => r(0.0, s, s, 0.0),
            TwoQubitState::PsiMinus => r(0.0, s, -s, 0.0),
            TwoQubitState::Eg => r(0.0, 1.0, 0.0, 0.0),
            TwoQubitState::Ge => r(0.0, 0.0, 1.0, 0.0),
        }
    }
}

impl fmt::Display for TwoQubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TwoQubitState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TwoQubitState::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    }
}

/// `|j> ⊗ |state>` in the canonical layout, with `|j>` the `j`-th eigenvector
/// of the Rabi Hamiltonian.
pub fn named_state(rabi_eig: &EigenSystem, qrs_level: usize, state: TwoQubitState) -> Result<Vec<C64>> {
    if qrs_level >= rabi_eig.dim() {
        return Err(Error::InvalidDimension(format!(
            "QRS level {qrs_level} outside the {}-level truncation",
            rabi_eig.dim()
        )));
    }
    Ok(kron_vec(&rabi_eig.vector(qrs_level), &state.amplitudes()))
}

/// Parse `"<level>:<state>"` or a bare state name (level 0), e.g. `"1:D20"`.
pub fn parse_labelled_state(s: &str) -> Result<(usize, TwoQubitState)> {
    match s.split_once(':') {
        Some((level, state)) => {
            let level = level
                .trim()
                .parse()
                .map_err(|_| Error::UnknownState(s.to_string()))?;
            Ok((level, state.trim().parse()?))
        }
        None => Ok((0, s.trim().parse()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, norm};
    use crate::model::{rabi_eigensystem, RabiParams};

    #[test]
    fn psi_states_are_orthogonal() {
        let p = TwoQubitState::PsiPlus.amplitudes();
        let m = TwoQubitState::PsiMinus.amplitudes();
        assert!(inner(&p, &m).norm() < 1e-16);
    }

    #[test]
    fn named_states_are_normalised() {
        let eig = rabi_eigensystem(&RabiParams::new(0.8, 0.3, 10)).unwrap();
        for st in TwoQubitState::ALL {
            let v = named_state(&eig, 1, st).unwrap();
            assert_eq!(v.len(), 80);
            assert!((norm(&v) - 1.0).abs() < 1e-14);
        }
        assert!(named_state(&eig, 20, TwoQubitState::Gg).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("psi_minus".parse::<TwoQubitState>().unwrap(), TwoQubitState::PsiMinus);
        assert_eq!("d21".parse::<TwoQubitState>().unwrap(), TwoQubitState::D21);
        assert!(matches!("bell".parse::<TwoQubitState>(), Err(Error::UnknownState(_))));
        assert_eq!(parse_labelled_state("1:D20").unwrap(), (1, TwoQubitState::D20));
        assert_eq!(parse_labelled_state("eg").unwrap(), (0, TwoQubitState::Eg));
    }
}
