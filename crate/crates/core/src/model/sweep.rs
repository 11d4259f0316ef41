//! Spectrum sweeps with parity labels and avoided-crossing detection.

use std::fmt;

use super::{build_rabi, build_total, classify_parity, parity_operator, rabi_parity, Parity, RabiParams, SystemParams};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, inner, ComplexMatrix, C64};
use crate::util::{parabola_vertex, quadratic_at, try_par_map};

/// Parameter varied along a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParameter {
    /// All qubit frequencies set to the same value `Δ`.
    OmegaQubits,
    /// Frequency of one qubit (counting from 1).
    OmegaQubit(usize),
    /// Coupling of every qubit to the cavity.
    CouplingQubits,
    CouplingP,
    OmegaP,
}

impl SweepParameter {
    pub fn apply(self, s: &SystemParams, value: f64) -> Result<SystemParams> {
        let mut out = s.clone();
        match self {
            SweepParameter::OmegaQubits => out.qubits.iter_mut().for_each(|q| q.omega_q = value),
            SweepParameter::OmegaQubit(n) => {
                let q = n
                    .checked_sub(1)
                    .and_then(|i| out.qubits.get_mut(i))
                    .ok_or_else(|| Error::InvalidParameter {
                        field: "sweep",
                        reason: format!("no qubit {n}"),
                    })?;
                q.omega_q = value;
            }
            SweepParameter::CouplingQubits => out.qubits.iter_mut().for_each(|q| q.g = value),
            SweepParameter::CouplingP => out.rabi.g_p = value,
            SweepParameter::OmegaP => out.rabi.omega_p = value,
        }
        Ok(out)
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepParameter::OmegaQubits => f.write_str("delta"),
            SweepParameter::OmegaQubit(n) => write!(f, "omega_q{n}"),
            SweepParameter::CouplingQubits => f.write_str("g"),
            SweepParameter::CouplingP => f.write_str("g_p"),
            SweepParameter::OmegaP => f.write_str("omega_p"),
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(SweepParameter::OmegaQubits),
            "g" => Ok(SweepParameter::CouplingQubits),
            "g_p" => Ok(SweepParameter::CouplingP),
            "omega_p" => Ok(SweepParameter::OmegaP),
            _ => s
                .strip_prefix("omega_q")
                .and_then(|n| n.parse().ok())
                .filter(|&n| n >= 1)
                .map(SweepParameter::OmegaQubit)
                .ok_or_else(|| Error::InvalidParameter {
                    field: "sweep.parameter",
                    reason: format!("unknown sweep parameter `{s}`"),
                }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub grid: Vec<f64>,
}

impl Sweep {
    pub fn new(parameter: SweepParameter, grid: Vec<f64>) -> Self {
        Self { parameter, grid }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPoint {
    pub value: f64,
    pub energies: Vec<f64>,
    pub parities: Vec<Parity>,
}

/// Minimum of the gap between two same-parity levels whose characters swap.
#[derive(Clone, Debug, PartialEq)]
pub struct AvoidedCrossing {
    /// Sweep value at the gap minimum (parabolic refinement).
    pub location: f64,
    pub gap: f64,
    /// Mean energy of the two levels at the minimum.
    pub energy: f64,
    pub parity: Parity,
    /// Level indices (in ascending energy order) at the nearest grid point.
    pub levels: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct SpectrumScan {
    pub parameter: String,
    pub points: Vec<SpectrumPoint>,
    pub crossings: Vec<AvoidedCrossing>,
}

impl SpectrumScan {
    /// The detected crossing lowest in energy, i.e. the first one met going up
    /// the spectrum.
    pub fn lowest_crossing(&self) -> Option<&AvoidedCrossing> {
        self.crossings.iter().min_by(|a, b| a.energy.total_cmp(&b.energy))
    }
}

/// Lowest levels of one grid point with their eigenvectors, used for tracking.
pub(crate) struct TrackedPoint {
    pub value: f64,
    pub energies: Vec<f64>,
    pub parities: Vec<Parity>,
    pub vectors: Vec<Vec<C64>>,
}

/// Extra levels diagonalised beyond the reported ones so that branches near
/// the top of the window can still be followed.
const TRACK_MARGIN: usize = 4;

pub(crate) fn track_point(value: f64, h: &ComplexMatrix, parity: &ComplexMatrix, n_track: usize) -> Result<TrackedPoint> {
    let eig = hermitian_eig(h)?;
    let basis = classify_parity(&eig, parity)?;
    let n = n_track.min(eig.dim());
    Ok(TrackedPoint {
        value,
        energies: basis.eig.values[..n].to_vec(),
        parities: basis.labels[..n].to_vec(),
        vectors: (0..n).map(|j| basis.eig.vector(j)).collect(),
    })
}

/// Diagonalise `build(x)` over the grid and assemble the scan.
pub(crate) fn scan_with<F>(parameter: String, grid: &[f64], levels: usize, parity: &ComplexMatrix, build: F) -> Result<SpectrumScan>
where
    F: Fn(f64) -> Result<ComplexMatrix> + Sync + Send,
{
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let n_track = levels + TRACK_MARGIN;
    let tracked = try_par_map(grid, |&x| track_point(x, &build(x)?, parity, n_track))?;
    let crossings = detect_avoided_crossings(&tracked);
    let points = tracked
        .into_iter()
        .map(|p| {
            let m = levels.min(p.energies.len());
            SpectrumPoint {
                value: p.value,
                energies: p.energies[..m].to_vec(),
                parities: p.parities[..m].to_vec(),
            }
        })
        .collect();
    Ok(SpectrumScan {
        parameter,
        points,
        crossings,
    })
}

/// Spectrum of the full Hamiltonian along a sweep.
pub fn spectrum_scan(s: &SystemParams, sweep: &Sweep, levels: usize) -> Result<SpectrumScan> {
    s.validate()?;
    let parity = parity_operator(&s.layout())?;
    scan_with(sweep.parameter.to_string(), &sweep.grid, levels, &parity, |x| {
        build_total(&sweep.parameter.apply(s, x)?)
    })
}

/// Spectrum of the bare Rabi Hamiltonian versus `g_p`, labelled by `Π_p`.
pub fn rabi_spectrum_scan(p: &RabiParams, g_grid: &[f64], levels: usize) -> Result<SpectrumScan> {
    p.validate()?;
    let parity = rabi_parity(p.n_fock)?;
    scan_with("g_p".into(), g_grid, levels, &parity, |g| {
        build_rabi(&RabiParams { g_p: g, ..p.clone() })
    })
}

struct Branch {
    start: usize,
    levels: Vec<usize>,
}

impl Branch {
    fn end(&self) -> usize {
        self.start + self.levels.len()
    }

    fn level_at(&self, i: usize) -> Option<usize> {
        (i >= self.start && i < self.end()).then(|| self.levels[i - self.start])
    }
}

/// Minimum overlap for continuing a branch to the next grid point.
const CONTINUE_OVERLAP: f64 = 0.25;
/// Gaps below this are treated as true crossings.
const TRUE_CROSSING_GAP: f64 = 1e-7;
/// Required overlap between the lower state left of the minimum and the upper
/// state right of it.
const EXCHANGE_OVERLAP: f64 = 0.5;

/// Follow eigenvectors of one parity sector across the grid by greedy
/// maximum-overlap matching.
fn track_branches(points: &[TrackedPoint], parity: Parity) -> Vec<Branch> {
    let sector = |p: &TrackedPoint| -> Vec<usize> {
        (0..p.energies.len()).filter(|&j| p.parities[j] == parity).collect()
    };
    let mut branches: Vec<Branch> = sector(&points[0])
        .into_iter()
        .map(|j| Branch { start: 0, levels: vec![j] })
        .collect();
    let mut active: Vec<usize> = (0..branches.len()).collect();
    for i in 1..points.len() {
        let next = sector(&points[i]);
        let mut pairs = Vec::with_capacity(active.len() * next.len());
        for (ai, &b) in active.iter().enumerate() {
            let prev = &points[i - 1].vectors[*branches[b].levels.last().expect("nonempty")];
            for (ni, &j) in next.iter().enumerate() {
                pairs.push((inner(prev, &points[i].vectors[j]).norm_sqr(), ai, ni));
            }
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut used_branch = vec![false; active.len()];
        let mut used_level = vec![false; next.len()];
        let mut still_active = Vec::new();
        for (ov, ai, ni) in pairs {
            if ov < CONTINUE_OVERLAP {
                break;
            }
            if used_branch[ai] || used_level[ni] {
                continue;
            }
            used_branch[ai] = true;
            used_level[ni] = true;
            branches[active[ai]].levels.push(next[ni]);
            still_active.push(active[ai]);
        }
        for (ni, &j) in next.iter().enumerate() {
            if !used_level[ni] {
                branches.push(Branch { start: i, levels: vec![j] });
                still_active.push(branches.len() - 1);
            }
        }
        active = still_active;
    }
    branches
}

/// Avoided crossings between same-parity levels.
///
/// Branches are tracked by eigenvector overlap, so decoupled states that truly
/// cross a pair of levels do not hide the pair's anticrossing. A candidate is
/// an interior local minimum of the gap between two branches that keep their
/// energy order; it is accepted when the lower state on one side of the
/// minimum has swapped character with the upper state on the other. The grid
/// must resolve the gap for the tracking to follow adiabatic states.
pub(crate) fn detect_avoided_crossings(points: &[TrackedPoint]) -> Vec<AvoidedCrossing> {
    let mut found = Vec::new();
    if points.len() < 3 {
        return found;
    }
    for parity in [Parity::Even, Parity::Odd] {
        let branches = track_branches(points, parity);
        for a in 0..branches.len() {
            for b in a + 1..branches.len() {
                found.extend(pair_crossings(points, &branches[a], &branches[b], parity));
            }
        }
    }
    found.sort_by(|x, y| x.location.total_cmp(&y.location).then(x.energy.total_cmp(&y.energy)));
    found
}

fn pair_crossings(points: &[TrackedPoint], a: &Branch, b: &Branch, parity: Parity) -> Vec<AvoidedCrossing> {
    let lo = a.start.max(b.start);
    let hi = a.end().min(b.end());
    let mut out = Vec::new();
    if hi < lo + 3 {
        return out;
    }
    let energy = |br: &Branch, i: usize| points[i].energies[br.level_at(i).expect("in range")];
    let gap: Vec<f64> = (lo..hi).map(|i| energy(b, i) - energy(a, i)).collect();
    for c in 1..gap.len() - 1 {
        let (g0, g1, g2) = (gap[c - 1], gap[c], gap[c + 1]);
        let sign = g1.signum();
        if g0.signum() != sign || g2.signum() != sign {
            continue;
        }
        let (m0, m1, m2) = (g0.abs(), g1.abs(), g2.abs());
        if !(m1 <= m0 && m1 < m2) || m1 < TRUE_CROSSING_GAP {
            continue;
        }
        let Some(left) = (0..c).rev().find(|&k| gap[k].abs() >= 2.0 * m1) else {
            continue;
        };
        let Some(right) = (c + 1..gap.len()).find(|&k| gap[k].abs() >= 2.0 * m1) else {
            continue;
        };
        if gap[left..=right].iter().any(|g| g.signum() != sign) {
            continue;
        }
        let (lower, upper) = if sign > 0.0 { (a, b) } else { (b, a) };
        let (il, ir) = (lo + left, lo + right);
        let lower_left = &points[il].vectors[lower.level_at(il).expect("in range")];
        let upper_right = &points[ir].vectors[upper.level_at(ir).expect("in range")];
        if inner(lower_left, upper_right).norm_sqr() < EXCHANGE_OVERLAP {
            continue;
        }
        let i = lo + c;
        let xs = [points[i - 1].value, points[i].value, points[i + 1].value];
        let g2s = [m0 * m0, m1 * m1, m2 * m2];
        let (location, gap_min) = match parabola_vertex(xs, g2s) {
            Some((xv, yv)) if xv >= xs[0] && xv <= xs[2] && yv >= 0.0 => (xv, yv.sqrt()),
            _ => (xs[1], m1),
        };
        let means = [i - 1, i, i + 1].map(|k| 0.5 * (energy(a, k) + energy(b, k)));
        let mut levels = (a.level_at(i).expect("in range"), b.level_at(i).expect("in range"));
        if levels.0 > levels.1 {
            levels = (levels.1, levels.0);
        }
        out.push(AvoidedCrossing {
            location,
            gap: gap_min,
            energy: quadratic_at(xs, means, location),
            parity,
            levels,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, Axis};
    use crate::util::linspace;

    #[test]
    fn detects_two_level_anticrossing() {
        // H(x) = x σz + c σx sits in one parity sector under P = I.
        let c = 0.05;
        let grid = linspace(-0.5, 0.5, 101);
        let parity = ComplexMatrix::identity(2);
        let scan = scan_with("x".into(), &grid, 2, &parity, |x| {
            Ok(&pauli(Axis::Z).scale_real(x) + &pauli(Axis::X).scale_real(c))
        })
        .unwrap();
        assert_eq!(scan.crossings.len(), 1);
        let ac = &scan.crossings[0];
        assert!(ac.location.abs() < 1e-9);
        assert!((ac.gap - 2.0 * c).abs() < 1e-9);
    }

    #[test]
    fn ignores_true_crossing() {
        let grid = linspace(-0.5, 0.5, 101);
        let parity = ComplexMatrix::identity(2);
        let scan = scan_with("x".into(), &grid, 2, &parity, |x| Ok(pauli(Axis::Z).scale_real(x))).unwrap();
        assert!(scan.crossings.is_empty());
    }

    #[test]
    fn empty_grid_is_rejected() {
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.3, 6), 0.2, 0.2, 0.02, 0.02);
        let sweep = Sweep::new(SweepParameter::OmegaQubits, vec![]);
        assert!(matches!(spectrum_scan(&s, &sweep, 4), Err(Error::EmptyGrid)));
    }

    #[test]
    fn sweep_parameter_names_round_trip() {
        for p in [
            SweepParameter::OmegaQubits,
            SweepParameter::OmegaQubit(2),
            SweepParameter::CouplingQubits,
            SweepParameter::CouplingP,
            SweepParameter::OmegaP,
        ] {
            assert_eq!(p.to_string().parse::<SweepParameter>().unwrap(), p);
        }
        assert!("omega_q0".parse::<SweepParameter>().is_err());
        assert!("kappa".parse::<SweepParameter>().is_err());
    }

    #[test]
    fn sweep_parameter_application() {
        let s = SystemParams::two_qubit(RabiParams::new(0.8, 0.3, 6), 0.2, 0.2, 0.02, 0.02);
        let t = SweepParameter::OmegaQubit(2).apply(&s, 0.5).unwrap();
        assert_eq!((t.qubits[0].omega_q, t.qubits[1].omega_q), (0.2, 0.5));
        assert!(SweepParameter::OmegaQubit(3).apply(&s, 0.5).is_err());
        assert_eq!(SweepParameter::CouplingP.apply(&s, 0.1).unwrap().rabi.g_p, 0.1);
    }
}
