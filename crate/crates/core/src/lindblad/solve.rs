//! Steady states and time integration of the master equation.

use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::Mat;

use super::{rate_matrix, LindbladChannel, Superoperator};
use crate::dynamics::{Observable, TimeSeries};
use crate::error::{Error, Result};
use crate::linalg::{expm_faer, inner, ComplexMatrix, EigenSystem, C64, ONE, ZERO};

/// Residual bound on `‖L vec(ρ_ss)‖₂`.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Eigenvalues (or singular values) below this, relative to `max(1, ‖L‖)`,
/// count as zero.
pub const ZERO_TOL: f64 = 1e-10;
/// Allowed `|tr ρ − 1|` during integration.
pub const TRACE_TOL: f64 = 1e-8;

/// Null vector of the `n×n` generator `m` normalized by `Σ_i x[diag_i] = 1`.
///
/// Row `diag[0]` of `m` is replaced by the trace functional, which makes the
/// system regular exactly when the null space is one-dimensional. A few
/// inverse-iteration sweeps estimate the smallest singular value of the
/// bordered matrix to detect a degenerate null space.
fn bordered_null_vector(m: &Mat<C64>, diag: &[usize], scale: f64) -> Result<Vec<C64>> {
    let n = m.nrows();
    let mut b = m.clone();
    let row = diag[0];
    for c in 0..n {
        b[(row, c)] = ZERO;
    }
    for &i in diag {
        b[(row, i)] = ONE;
    }
    let lu = PartialPivLu::new(b.as_ref());
    let mut rhs = Mat::<C64>::zeros(n, 1);
    rhs[(row, 0)] = ONE;
    let x = lu.solve(&rhs);

    let sigma = smallest_singular_value(&lu, n);
    let tol = ZERO_TOL * scale.max(1.0);
    let finite = (0..n).all(|i| x[(i, 0)].re.is_finite() && x[(i, 0)].im.is_finite());
    if !finite || sigma < tol {
        return Err(Error::DegenerateSteadyState { count: 2, tol });
    }
    Ok((0..n).map(|i| x[(i, 0)]).collect())
}

/// Inverse iteration on `(B Bᴴ)⁻¹` using an existing LU of `B`.
fn smallest_singular_value(lu: &PartialPivLu<C64>, n: usize) -> f64 {
    let mut u = Mat::from_fn(n, 1, |i, _| C64::new(1.0 + (i % 7) as f64 * 0.1, 0.0));
    let mut estimate = f64::INFINITY;
    for _ in 0..6 {
        let un = u.norm_l2();
        if !(un.is_finite() && un > 0.0) {
            return 0.0;
        }
        u *= faer::Scale(C64::new(1.0 / un, 0.0));
        let y = lu.solve_adjoint(&u);
        let z = lu.solve(&y);
        let zn = z.norm_l2();
        if !zn.is_finite() || zn == 0.0 {
            return 0.0;
        }
        estimate = (1.0 / zn).sqrt();
        u = z;
    }
    estimate
}

fn residual_2(l: &Superoperator, v: &[C64]) -> f64 {
    l.apply_vec(v).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn finish_density(v: Vec<C64>, d: usize) -> Result<ComplexMatrix> {
    let rho = ComplexMatrix::from_vec(d, d, v)?.hermitian_part();
    let tr = rho.trace().re;
    Ok(rho.scale_real(1.0 / tr))
}

/// Unique steady state `L vec(ρ) = 0`, hermitized and trace-normalized.
pub fn steady_state(l: &Superoperator) -> Result<ComplexMatrix> {
    let d = l.dim();
    let diag: Vec<usize> = (0..d).map(|i| i * d + i).collect();
    let x = bordered_null_vector(l.as_faer(), &diag, l.max_abs())?;
    let rho = finish_density(x, d)?;
    let residual = residual_2(l, rho.as_slice());
    if residual > RESIDUAL_TOL {
        return Err(Error::NoSteadyState {
            residual,
            tol: RESIDUAL_TOL,
        });
    }
    Ok(rho)
}

/// Full spectrum of `L`.
pub fn liouvillian_eigenvalues(l: &Superoperator) -> Result<Vec<C64>> {
    l.as_faer().eigenvalues().map_err(|_| Error::EigenFailure)
}

/// Steady state from the full eigendecomposition, with its spectrum.
#[derive(Clone, Debug)]
pub struct SpectralSteadyState {
    pub rho: ComplexMatrix,
    /// Eigenvalue of smallest modulus.
    pub lambda_min: C64,
    pub eigenvalues: Vec<C64>,
}

impl SpectralSteadyState {
    /// Largest real part among the eigenvalues other than `lambda_min`.
    pub fn max_nonzero_real_part(&self) -> f64 {
        let mut skipped = false;
        let mut m = f64::NEG_INFINITY;
        for &z in &self.eigenvalues {
            if !skipped && z == self.lambda_min {
                skipped = true;
                continue;
            }
            m = m.max(z.re);
        }
        m
    }
}

/// Dense eigendecomposition route for small systems.
pub fn steady_state_spectral(l: &Superoperator) -> Result<SpectralSteadyState> {
    let eig = l.as_faer().eigen().map_err(|_| Error::EigenFailure)?;
    let n = l.size();
    let values: Vec<C64> = (0..n).map(|i| eig.S().column_vector()[i]).collect();
    let scale = l.max_abs().max(1.0);
    let tol = ZERO_TOL * scale;
    let idx = (0..n)
        .min_by(|&a, &b| values[a].norm().total_cmp(&values[b].norm()))
        .ok_or(Error::EigenFailure)?;
    let count = values.iter().filter(|z| z.norm() < tol).count();
    if count > 1 {
        return Err(Error::DegenerateSteadyState { count, tol });
    }
    if values[idx].norm() > RESIDUAL_TOL * scale {
        return Err(Error::NoSteadyState {
            residual: values[idx].norm(),
            tol: RESIDUAL_TOL * scale,
        });
    }
    let v: Vec<C64> = (0..n).map(|i| eig.U()[(i, idx)]).collect();
    let rho = finish_density(v, l.dim())?;
    Ok(SpectralSteadyState {
        rho,
        lambda_min: values[idx],
        eigenvalues: values,
    })
}

/// Slowest decay rate: `min |Re λ|` over the nonzero eigenvalues of `L`.
pub fn relaxation_gap(l: &Superoperator) -> Result<f64> {
    let tol = ZERO_TOL * l.max_abs().max(1.0);
    let values = liouvillian_eigenvalues(l)?;
    values
        .iter()
        .filter(|z| z.norm() >= tol)
        .map(|z| z.re.abs())
        .filter(|&r| r > tol)
        .min_by(f64::total_cmp)
        .ok_or(Error::EigenFailure)
}

/// Steady state of dressed channels from their classical rate equation.
#[derive(Clone, Debug)]
pub struct RateSteadyState {
    /// Populations of the eigenstates of `basis`.
    pub populations: Vec<f64>,
    pub rho: ComplexMatrix,
}

/// For jumps of the form `|φ_a⟩⟨φ_b|` between eigenstates of `H`, eigenbasis
/// populations obey `ṗ = (W − diag κ) p` exactly while each coherence
/// `ρ_cd` decays at `(κ_c + κ_d)/2`. The steady state is therefore diagonal
/// in the eigenbasis whenever it is unique.
pub fn rate_equation_steady_state(basis: &EigenSystem, channels: &[LindbladChannel]) -> Result<RateSteadyState> {
    let d = basis.dim();
    let w = rate_matrix(d, channels);
    let kappa: Vec<f64> = (0..d).map(|b| (0..d).map(|a| w[a * d + b]).sum()).collect();
    let scale = w.iter().copied().fold(0.0, f64::max);

    // An undamped coherence between degenerate levels is a second zero mode.
    let tol = ZERO_TOL * scale.max(1.0);
    for c in 0..d {
        for e in c + 1..d {
            if kappa[c] + kappa[e] <= tol && (basis.values[c] - basis.values[e]).abs() <= tol {
                return Err(Error::DegenerateSteadyState { count: 2, tol });
            }
        }
    }

    let g = Mat::from_fn(d, d, |r, c| {
        let v = if r == c { w[r * d + c] - kappa[c] } else { w[r * d + c] };
        C64::new(v, 0.0)
    });
    let diag: Vec<usize> = (0..d).collect();
    let x = bordered_null_vector(&g, &diag, scale)?;
    let populations: Vec<f64> = x.iter().map(|z| z.re).collect();

    let residual = (0..d)
        .map(|r| (0..d).map(|c| g[(r, c)].re * populations[c]).sum::<f64>().powi(2))
        .sum::<f64>()
        .sqrt();
    if residual > RESIDUAL_TOL {
        return Err(Error::NoSteadyState {
            residual,
            tol: RESIDUAL_TOL,
        });
    }
    let v = &basis.vectors;
    let rho = ComplexMatrix::from_fn(d, d, |i, j| {
        (0..d).map(|a| v[(i, a)] * populations[a] * v[(j, a)].conj()).sum()
    });
    Ok(RateSteadyState { populations, rho })
}

/// Result of [`integrate_master`].
#[derive(Clone, Debug)]
pub struct MasterRun {
    pub series: TimeSeries,
    pub final_state: ComplexMatrix,
}

fn expectation(obs: &Observable, rho: &ComplexMatrix) -> f64 {
    match obs {
        Observable::Operator { op, .. } => {
            let d = rho.rows();
            let mut s = ZERO;
            for i in 0..d {
                for k in 0..d {
                    s += op[(i, k)] * rho[(k, i)];
                }
            }
            s.re
        }
        Observable::Projector { state, .. } => {
            let v = rho.matvec(state).expect("dimensions checked");
            inner(state, &v).re
        }
    }
}

fn check_density(rho: &ComplexMatrix, d: usize) -> Result<()> {
    if rho.rows() != d || rho.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.rows(),
        });
    }
    let herm = rho.hermiticity_error();
    if herm > 1e-10 {
        return Err(Error::NotHermitian(herm));
    }
    let drift = (rho.trace().re - 1.0).abs();
    if drift > 1e-10 {
        return Err(Error::InvalidParameter {
            field: "rho0",
            reason: format!("trace must be 1, got {}", rho.trace().re),
        });
    }
    Ok(())
}

/// Propagates `rho0` from `t = 0` with `exp(L Δt)` between samples.
///
/// Propagators are cached per distinct step, so uniform grids cost a single
/// exponential. Fails when `|tr ρ − 1|` exceeds [`TRACE_TOL`].
pub fn integrate_master(
    l: &Superoperator,
    rho0: &ComplexMatrix,
    times: &[f64],
    observables: &[Observable],
) -> Result<MasterRun> {
    let d = l.dim();
    check_density(rho0, d)?;
    if times.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::InvalidParameter {
            field: "times",
            reason: "times must be non-negative".into(),
        });
    }
    for obs in observables {
        let n = match obs {
            Observable::Operator { op, .. } => op.rows(),
            Observable::Projector { state, .. } => state.len(),
        };
        if n != d {
            return Err(Error::DimensionMismatch { expected: d, found: n });
        }
    }
    let mut series = TimeSeries::new(times.to_vec())?;
    let n = l.size();
    let mut cache: Vec<(f64, Mat<C64>)> = Vec::new();
    let mut x = Mat::from_fn(n, 1, |i, _| rho0.as_slice()[i]);
    let mut t_prev = 0.0;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(times.len());
    let mut rho = rho0.clone();
    for &t in times {
        let dt = t - t_prev;
        if dt > 0.0 {
            let pos = cache.iter().position(|(s, _)| (s - dt).abs() <= 1e-12 * dt);
            let pos = match pos {
                Some(p) => p,
                None => {
                    let a = l.as_faer() * faer::Scale(C64::new(dt, 0.0));
                    cache.push((dt, expm_faer(&a)));
                    cache.len() - 1
                }
            };
            x = &cache[pos].1 * &x;
            t_prev = t;
            let v: Vec<C64> = (0..n).map(|i| x[(i, 0)]).collect();
            rho = ComplexMatrix::from_vec(d, d, v)?;
            let drift = (rho.trace().re - 1.0).abs();
            if drift > TRACE_TOL {
                return Err(Error::TraceDrift {
                    drift,
                    tol: TRACE_TOL,
                });
            }
        }
        rows.push(observables.iter().map(|o| expectation(o, &rho)).collect());
    }
    for (k, obs) in observables.iter().enumerate() {
        series.push(obs.name(), rows.iter().map(|r| r[k]).collect());
    }
    Ok(MasterRun {
        series,
        final_state: rho.hermitian_part(),
    })
}
