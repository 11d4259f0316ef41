//! Random open systems shared by the integration tests.
#![allow(dead_code)]

use paritybus::lindblad::{
    dressed_channels, liouvillian, BareChannel, Direction, LindbladChannel, Superoperator,
};
use paritybus::linalg::{hermitian_eig, ComplexMatrix, EigenSystem, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct OpenSystem {
    pub h: ComplexMatrix,
    pub basis: EigenSystem,
    pub channels: Vec<LindbladChannel>,
    pub l: Superoperator,
}

pub fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .hermitian_part()
}

pub fn random_density(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let p = &a * &a.adjoint();
    let tr = p.trace().re;
    p.scale_real(1.0 / tr)
}

/// Random Hamiltonian with one lowering and one raising dressed channel.
pub fn random_open_system(d: usize, seed: u64) -> OpenSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_hermitian(d, &mut rng);
    let basis = hermitian_eig(&h).unwrap();
    let bare = vec![
        BareChannel::new("down", random_hermitian(d, &mut rng), rng.gen_range(0.05..0.5), 1.0, Direction::Lowering),
        BareChannel::new("up", random_hermitian(d, &mut rng), rng.gen_range(0.0..0.1), 1.0, Direction::Raising),
    ];
    let channels = dressed_channels(&basis, &bare).unwrap();
    let l = liouvillian(&h, &basis, &channels).unwrap();
    OpenSystem { h, basis, channels, l }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(rho: &ComplexMatrix) -> f64 {
    hermitian_eig(&rho.hermitian_part()).unwrap().values[0]
}
