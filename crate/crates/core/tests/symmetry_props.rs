//! Parity symmetry of the bus Hamiltonian under random parameters.

use paritybus::linalg::commutator;
use paritybus::model::{build_total, parity_operator, RabiParams, SystemParams};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamiltonian_commutes_with_parity(
        omega_p in 0.05f64..2.0,
        g_p in 0.0f64..1.2,
        n_fock in 4usize..12,
        w1 in 0.01f64..2.0,
        w2 in 0.01f64..2.0,
        g1 in 0.0f64..0.3,
        g2 in 0.0f64..0.3,
    ) {
        let s = SystemParams::two_qubit(RabiParams::new(omega_p, g_p, n_fock), w1, w2, g1, g2);
        let h = build_total(&s).unwrap();
        let p = parity_operator(&s.layout()).unwrap();
        prop_assert!(commutator(&h, &p).unwrap().max_abs() < 1e-10);
        prop_assert!((&(&p * &p) - &paritybus::linalg::ComplexMatrix::identity(p.rows())).max_abs() < 1e-15);
    }
}
