//! Transmons in the charge basis and the transmon–bus–transmon chain.

use crate::error::{Error, Result};
use crate::linalg::{
    annihilation, hermitian_eig, pauli, Axis, ComplexMatrix, HilbertLayout, C64, CAVITY, QRS,
};
use crate::model::{build_rabi, scan_with, RabiParams, SpectrumScan};

/// Default charge cutoff.
pub const DEFAULT_N_MAX: usize = 20;
/// Levels kept per transmon in the chain.
pub const CHAIN_LEVELS: usize = 3;
/// Boundary amplitude above which the charge cutoff is reported as too small.
const CUTOFF_WARNING: f64 = 1e-6;

pub const T1: &str = "t1";
pub const T2: &str = "t2";

/// `4E_C(N − N_g)² − E_J cos θ` truncated to charges `|n| ≤ n_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransmonParams {
    pub e_c: f64,
    pub e_j: f64,
    pub n_g: f64,
    pub n_max: usize,
}

impl TransmonParams {
    /// Transmon at `N_g = 0` with the default cutoff.
    pub fn new(e_c: f64, ej_over_ec: f64) -> Self {
        Self {
            e_c,
            e_j: ej_over_ec * e_c,
            n_g: 0.0,
            n_max: DEFAULT_N_MAX,
        }
    }

    pub fn ej_over_ec(&self) -> f64 {
        self.e_j / self.e_c
    }

    pub fn dim(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e_c.is_finite() && self.e_c > 0.0) {
            return Err(Error::InvalidParameter {
                field: "e_c",
                reason: format!("must be positive, got {}", self.e_c),
            });
        }
        if !(self.e_j.is_finite() && self.e_j >= 0.0) {
            return Err(Error::InvalidParameter {
                field: "e_j",
                reason: format!("must be non-negative, got {}", self.e_j),
            });
        }
        if !self.n_g.is_finite() {
            return Err(Error::InvalidParameter {
                field: "n_g",
                reason: "must be finite".into(),
            });
        }
        if self.n_max < 10 {
            return Err(Error::InvalidParameter {
                field: "n_max",
                reason: format!("must be at least 10, got {}", self.n_max),
            });
        }
        Ok(())
    }
}

/// Charge-basis Hamiltonian; row `i` is the charge `n = i − n_max`.
pub fn transmon_hamiltonian(p: &TransmonParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let d = p.dim();
    let m = p.n_max as f64;
    Ok(ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            let n = i as f64 - m;
            C64::new(4.0 * p.e_c * (n - p.n_g).powi(2), 0.0)
        } else if i.abs_diff(j) == 1 {
            C64::new(-p.e_j / 2.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// Lowest transmon levels with the ground energy set to zero.
#[derive(Clone, Debug)]
pub struct TransmonLevels {
    pub energies: Vec<f64>,
    /// `⟨i|N|j⟩` between the kept eigenstates.
    pub charge: ComplexMatrix,
    pub warnings: Vec<String>,
}

impl TransmonLevels {
    pub fn transition(&self, lower: usize, upper: usize) -> f64 {
        self.energies[upper] - self.energies[lower]
    }
}

pub fn transmon_levels(p: &TransmonParams, k: usize) -> Result<TransmonLevels> {
    let h = transmon_hamiltonian(p)?;
    let d = p.dim();
    if k == 0 || k > d {
        return Err(Error::InvalidDimension(format!("requested {k} levels from a {d}-state charge basis")));
    }
    let eig = hermitian_eig(&h)?;
    let e0 = eig.values[0];
    let energies = eig.values[..k].iter().map(|e| e - e0).collect();
    let charges: Vec<f64> = (0..d).map(|i| i as f64 - p.n_max as f64).collect();
    let charge = ComplexMatrix::from_fn(k, k, |a, b| {
        (0..d)
            .map(|i| eig.vectors[(i, a)].conj() * eig.vectors[(i, b)] * charges[i])
            .sum()
    });
    let edge = (0..k)
        .map(|j| eig.vectors[(0, j)].norm().max(eig.vectors[(d - 1, j)].norm()))
        .fold(0.0, f64::max);
    let mut warnings = Vec::new();
    if edge > CUTOFF_WARNING {
        warnings.push(format!(
            "charge cutoff n_max = {} too small: boundary amplitude {edge:.2e}",
            p.n_max
        ));
    }
    Ok(TransmonLevels {
        energies,
        charge,
        warnings,
    })
}

/// `α = E₁₀ − E₂₁`.
pub fn anharmonicity(p: &TransmonParams) -> Result<f64> {
    let l = transmon_levels(p, 3)?;
    Ok(l.transition(0, 1) - l.transition(1, 2))
}

/// Two transmons coupled through `N_ℓ (b + b†)` to the Rabi bus.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainParams {
    pub t1: TransmonParams,
    pub t2: TransmonParams,
    pub rabi: RabiParams,
    pub g1: f64,
    pub g2: f64,
    /// Levels kept per transmon.
    pub levels: usize,
}

impl ChainParams {
    pub fn new(t1: TransmonParams, t2: TransmonParams, rabi: RabiParams, g1: f64, g2: f64) -> Self {
        Self {
            t1,
            t2,
            rabi,
            g1,
            g2,
            levels: CHAIN_LEVELS,
        }
    }

    /// `[t1, qrs, cavity, t2]`.
    pub fn layout(&self) -> HilbertLayout {
        HilbertLayout::new([
            (T1, self.levels),
            (QRS, 2),
            (CAVITY, self.rabi.n_fock),
            (T2, self.levels),
        ])
        .expect("fixed distinct labels")
    }
}

/// Chain Hamiltonian on `[t1, qrs, cavity, t2]`.
pub fn build_transmon_chain(c: &ChainParams) -> Result<ComplexMatrix> {
    if c.levels < 2 {
        return Err(Error::InvalidParameter {
            field: "levels",
            reason: format!("each transmon needs at least 2 levels, got {}", c.levels),
        });
    }
    let layout = c.layout();
    // H_p occupies the contiguous [qrs, cavity] block.
    let hp = build_rabi(&c.rabi)?;
    let ik = ComplexMatrix::identity(c.levels);
    let mut h = ik.kron(&hp).kron(&ik);
    let b = annihilation(c.rabi.n_fock)?;
    let x = &b + &b.adjoint();
    for (label, t, g) in [(T1, &c.t1, c.g1), (T2, &c.t2, c.g2)] {
        let lv = transmon_levels(t, c.levels)?;
        h += &layout.embed(&ComplexMatrix::from_diagonal(&lv.energies), label)?;
        if g != 0.0 {
            h += &layout.embed_product(&[(label, &lv.charge), (CAVITY, &x)])?.scale_real(g);
        }
    }
    Ok(h)
}

/// `Π_T1 ⊗ Π_p ⊗ Π_T2` with `Π_T = (−1)^j` on transmon levels and
/// `Π_p = −e^{iπ b†b} σz_p`. Exact for `N_g = 0`.
pub fn chain_parity(c: &ChainParams) -> Result<ComplexMatrix> {
    let layout = c.layout();
    let alt = |n: usize| -> Vec<f64> { (0..n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect() };
    let pt = ComplexMatrix::from_diagonal(&alt(c.levels));
    let photon = ComplexMatrix::from_diagonal(&alt(c.rabi.n_fock));
    let sz = pauli(Axis::Z);
    let p = layout.embed_product(&[(T1, &pt), (QRS, &sz), (CAVITY, &photon), (T2, &pt)])?;
    Ok(p.scale_real(-1.0))
}

/// Chain spectrum versus `E_J/E_C` of transmon 2, energies measured from the
/// uncoupled ground level (bus ground state, both transmons in `|0⟩`).
pub fn transmon_chain_scan(c: &ChainParams, ej_over_ec: &[f64], levels: usize) -> Result<SpectrumScan> {
    if c.t1.n_g != 0.0 || c.t2.n_g != 0.0 {
        return Err(Error::InvalidParameter {
            field: "n_g",
            reason: "chain parity labels need N_g = 0".into(),
        });
    }
    let parity = chain_parity(c)?;
    let e0 = hermitian_eig(&build_rabi(&c.rabi)?)?.values[0];
    let d = c.layout().dim();
    let shift = ComplexMatrix::identity(d).scale_real(-e0);
    scan_with("ej_over_ec_2".into(), ej_over_ec, levels, &parity, |r| {
        let mut p = c.clone();
        p.t2.e_j = r * p.t2.e_c;
        Ok(&build_transmon_chain(&p)? + &shift)
    })
}

/// `⟨i|N|j⟩` selection: at `N_g = 0` the charge operator only couples levels
/// of opposite charge parity.
pub fn charge_parity_violation(levels: &TransmonLevels) -> f64 {
    let k = levels.energies.len();
    let mut worst = 0.0_f64;
    for i in 0..k {
        for j in 0..k {
            if (i + j) % 2 == 0 {
                worst = worst.max(levels.charge[(i, j)].norm());
            }
        }
    }
    worst
}
