//! Vectorized Liouvillian under row-major vectorization.
//!
//! `vec(ρ)[i·d + j] = ρ_ij`, so `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)` and the
//! sandwich `OρO†` becomes `O ⊗ O*`.

use faer::Mat;

use super::{rate_matrix, LindbladChannel};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, EigenSystem, C64, ZERO};

/// Dense `d²×d²` generator acting on row-major `vec(ρ)`.
#[derive(Clone, Debug)]
pub struct Superoperator {
    dim: usize,
    mat: Mat<C64>,
}

impl Superoperator {
    /// Wraps a `d²×d²` matrix given in row-major vectorization.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        let n = m.rows();
        let d = (n as f64).sqrt().round() as usize;
        if !m.is_square() || d * d != n {
            return Err(Error::InvalidDimension(format!(
                "superoperator must be d²×d², got {}×{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { dim: d, mat: m.to_faer() })
    }

    /// Hilbert-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Liouville-space dimension `d²`.
    pub fn size(&self) -> usize {
        self.dim * self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.mat[(r, c)]
    }

    pub(crate) fn as_faer(&self) -> &Mat<C64> {
        &self.mat
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_faer(self.mat.as_ref())
    }

    /// The same map under column-major vectorization `vec(ρ)[j·d + i] = ρ_ij`.
    pub fn to_column_major(&self) -> ComplexMatrix {
        let d = self.dim;
        let swap = |r: usize| (r % d) * d + r / d;
        ComplexMatrix::from_fn(self.size(), self.size(), |r, c| self.mat[(swap(r), swap(c))])
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0_f64;
        for c in 0..self.mat.ncols() {
            for r in 0..self.mat.nrows() {
                m = m.max(self.mat[(r, c)].norm());
            }
        }
        m
    }

    /// `L vec(ρ)`, reshaped back to a matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_state(rho)?;
        let v = self.apply_vec(rho.as_slice());
        ComplexMatrix::from_vec(self.dim, self.dim, v)
    }

    pub(crate) fn apply_vec(&self, v: &[C64]) -> Vec<C64> {
        let x = Mat::from_fn(v.len(), 1, |i, _| v[i]);
        let y = &self.mat * &x;
        (0..v.len()).map(|i| y[(i, 0)]).collect()
    }

    /// `max_c |Σ_i L[(i,i), c]|`: zero iff the dynamics preserves the trace.
    pub fn trace_preservation_error(&self) -> f64 {
        let d = self.dim;
        (0..self.size())
            .map(|c| (0..d).map(|i| self.mat[(i * d + i, c)]).sum::<C64>().norm())
            .fold(0.0, f64::max)
    }

    fn check_state(&self, rho: &ComplexMatrix) -> Result<()> {
        if rho.rows() != self.dim || rho.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.rows(),
            });
        }
        Ok(())
    }
}

pub fn vec_row_major(rho: &ComplexMatrix) -> Vec<C64> {
    rho.as_slice().to_vec()
}

pub fn vec_column_major(rho: &ComplexMatrix) -> Vec<C64> {
    rho.transpose().into_vec()
}

/// Inverse of [`vec_row_major`].
pub fn unvec(v: &[C64], d: usize) -> Result<ComplexMatrix> {
    ComplexMatrix::from_vec(d, d, v.to_vec())
}

/// One dissipator term `Γ D[O]`.
#[derive(Clone, Debug)]
pub struct Jump {
    pub rate: f64,
    pub op: ComplexMatrix,
}

/// Every transition of `channels` as an explicit jump operator.
pub fn channel_jumps(basis: &EigenSystem, channels: &[LindbladChannel]) -> Vec<Jump> {
    channels
        .iter()
        .flat_map(|ch| {
            ch.transitions.iter().map(move |t| Jump {
                rate: t.rate,
                op: ch.jump_operator(basis, t),
            })
        })
        .collect()
}

fn check_hamiltonian(h: &ComplexMatrix, d: usize) -> Result<()> {
    if !h.is_square() || h.rows() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: h.rows(),
        });
    }
    let err = h.hermiticity_error();
    if err > 1e-12 * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian(err));
    }
    Ok(())
}

/// `−i H⊗I + i I⊗Hᵀ − ½(K⊗I + I⊗Kᵀ)` added into `m`.
fn add_coherent_and_loss(m: &mut Mat<C64>, h: &ComplexMatrix, k: &ComplexMatrix) {
    let d = h.rows();
    let mi = C64::new(0.0, -1.0);
    for i in 0..d {
        for j in 0..d {
            let r = i * d + j;
            for x in 0..d {
                // (A⊗I)[(i,j),(x,j)] = A_ix
                m[(r, x * d + j)] += mi * h[(i, x)] - 0.5 * k[(i, x)];
                // (I⊗Bᵀ)[(i,j),(i,x)] = B_xj
                m[(r, i * d + x)] += -mi * h[(x, j)] - 0.5 * k[(x, j)];
            }
        }
    }
}

/// Liouvillian for dressed channels, assembled in the eigenbasis.
///
/// Every jump is `|φ_a⟩⟨φ_b|`, so the gain part is `A W Aᴴ` with columns
/// `A_a = vec(|φ_a⟩⟨φ_a|)` and the loss part involves only
/// `K = Σ_b κ_b |φ_b⟩⟨φ_b|`, `κ_b = Σ_a W_ab`.
pub fn liouvillian(h: &ComplexMatrix, basis: &EigenSystem, channels: &[LindbladChannel]) -> Result<Superoperator> {
    let d = basis.dim();
    check_hamiltonian(h, d)?;
    let w = rate_matrix(d, channels);
    let kappa: Vec<f64> = (0..d).map(|b| (0..d).map(|a| w[a * d + b]).sum()).collect();
    let v = &basis.vectors;

    let a = Mat::from_fn(d * d, d, |r, col| v[(r / d, col)] * v[(r % d, col)].conj());
    let wm = Mat::from_fn(d, d, |r, c| C64::new(w[r * d + c], 0.0));
    let wa = &wm * a.adjoint();
    let mut m = &a * &wa;

    let k = ComplexMatrix::from_fn(d, d, |i, j| (0..d).map(|b| v[(i, b)] * kappa[b] * v[(j, b)].conj()).sum());
    add_coherent_and_loss(&mut m, h, &k);
    Ok(Superoperator { dim: d, mat: m })
}

/// Generic assembly `Σ Γ[O⊗O* − ½ I⊗OᵀO* − ½ O†O⊗I]` over explicit jumps.
pub fn liouvillian_from_jumps(h: &ComplexMatrix, jumps: &[Jump]) -> Result<Superoperator> {
    let d = h.rows();
    check_hamiltonian(h, d)?;
    let mut m = Mat::<C64>::zeros(d * d, d * d);
    let mut k = ComplexMatrix::zeros(d, d);
    for jump in jumps {
        let o = &jump.op;
        if o.rows() != d || o.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: o.rows(),
            });
        }
        for i in 0..d {
            for x in 0..d {
                let oix = o[(i, x)];
                if oix == ZERO {
                    continue;
                }
                for j in 0..d {
                    for y in 0..d {
                        m[(i * d + j, x * d + y)] += oix * o[(j, y)].conj() * jump.rate;
                    }
                }
            }
        }
        k += &(&o.adjoint() * o).scale_real(jump.rate);
    }
    add_coherent_and_loss(&mut m, h, &k);
    Ok(Superoperator { dim: d, mat: m })
}

/// `−i[H, ρ] + Σ Γ (OρO† − ½{O†O, ρ})`, evaluated directly.
pub fn master_rhs(h: &ComplexMatrix, jumps: &[Jump], rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mi = C64::new(0.0, -1.0);
    let mut out = (&h.matmul(rho)? - &rho.matmul(h)?).scale(mi);
    for jump in jumps {
        let o = &jump.op;
        let od = o.adjoint();
        let ood = od.matmul(o)?;
        let sandwich = o.matmul(&rho.matmul(&od)?)?;
        let anti = &ood.matmul(rho)? + &rho.matmul(&ood)?;
        out += &(&sandwich - &anti.scale_real(0.5)).scale_real(jump.rate);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::{dressed_channels, BareChannel, Direction};
    use crate::linalg::{hermitian_eig, pauli, Axis};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let a = ComplexMatrix::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        a.hermitian_part()
    }

    fn random_density(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let a = ComplexMatrix::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let p = &a * &a.adjoint();
        let tr = p.trace().re;
        p.scale_real(1.0 / tr)
    }

    fn setup(d: usize, seed: u64) -> (ComplexMatrix, EigenSystem, Vec<LindbladChannel>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(d, &mut rng);
        let basis = hermitian_eig(&h).unwrap();
        let bare = vec![
            BareChannel::new("a", random_hermitian(d, &mut rng), 0.3, 1.0, Direction::Lowering),
            BareChannel::new("b", random_hermitian(d, &mut rng), 0.1, 0.5, Direction::Raising),
        ];
        let ch = dressed_channels(&basis, &bare).unwrap();
        (h, basis, ch)
    }

    #[test]
    fn fast_and_generic_assembly_agree() {
        let (h, basis, ch) = setup(5, 3);
        let fast = liouvillian(&h, &basis, &ch).unwrap();
        let generic = liouvillian_from_jumps(&h, &channel_jumps(&basis, &ch)).unwrap();
        let diff = (&fast.to_matrix() - &generic.to_matrix()).max_abs();
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn action_matches_direct_form() {
        let (h, basis, ch) = setup(4, 11);
        let l = liouvillian(&h, &basis, &ch).unwrap();
        let jumps = channel_jumps(&basis, &ch);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let rho = random_density(4, &mut rng);
            let direct = master_rhs(&h, &jumps, &rho).unwrap();
            assert!((&l.apply(&rho).unwrap() - &direct).max_abs() < 1e-10);
        }
    }

    #[test]
    fn column_major_form_matches_direct_form() {
        let (h, basis, ch) = setup(3, 17);
        let l = liouvillian(&h, &basis, &ch).unwrap();
        let lc = l.to_column_major();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = random_density(3, &mut rng);
        let direct = master_rhs(&h, &channel_jumps(&basis, &ch), &rho).unwrap();
        let got = lc.matvec(&vec_column_major(&rho)).unwrap();
        let want = vec_column_major(&direct);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn trace_is_preserved() {
        let (h, basis, ch) = setup(6, 1);
        assert!(liouvillian(&h, &basis, &ch).unwrap().trace_preservation_error() < 1e-12);
    }

    #[test]
    fn rejects_mismatched_hamiltonian() {
        let (_, basis, ch) = setup(3, 2);
        assert!(matches!(
            liouvillian(&pauli(Axis::Z), &basis, &ch),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn from_matrix_requires_square_size() {
        assert!(Superoperator::from_matrix(&ComplexMatrix::identity(3)).is_err());
        assert_eq!(Superoperator::from_matrix(&ComplexMatrix::identity(9)).unwrap().dim(), 3);
    }
}
