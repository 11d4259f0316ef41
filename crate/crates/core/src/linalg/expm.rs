//! Matrix exponential by Padé-13 scaling and squaring.

use faer::linalg::solvers::Solve;
use faer::Mat;

use super::{ComplexMatrix, C64};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &Mat<C64>) -> f64 {
    (0..a.ncols())
        .map(|j| (0..a.nrows()).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `Σ c_k M_k + c_I I`.
fn combine(terms: &[(f64, &Mat<C64>)], identity_coeff: f64, n: usize) -> Mat<C64> {
    Mat::from_fn(n, n, |i, j| {
        let mut acc: C64 = terms.iter().map(|(c, m)| m[(i, j)] * *c).sum();
        if i == j {
            acc += identity_coeff;
        }
        acc
    })
}

pub(crate) fn expm_faer(a: &Mat<C64>) -> Mat<C64> {
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scale = 0.5f64.powi(s);
    let a = Mat::from_fn(n, n, |i, j| a[(i, j)] * scale);
    let b = &PADE13;
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = combine(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], 0.0, n);
    let u_tail = combine(&[(b[7], &a6), (b[5], &a4), (b[3], &a2)], b[1], n);
    let u = &a * &(&(&a6 * &u_inner) + &u_tail);
    let v_inner = combine(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], 0.0, n);
    let v_tail = combine(&[(b[6], &a6), (b[4], &a4), (b[2], &a2)], b[0], n);
    let v = &(&a6 * &v_inner) + &v_tail;

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.partial_piv_lu().solve(&p);
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// `e^A` for a square matrix.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square(), "expm needs a square matrix");
    ComplexMatrix::from_faer(expm_faer(&a.to_faer()).as_ref())
}
