//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `A[p][q]` with a
//! diagonal unitary and then applies the ordinary real Jacobi rotation that
//! annihilates it. Sweeps visit every upper-triangular pair in row order.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{SquareMatrix, ZERO};

/// Inputs with `max |A - A^H|` above this are rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Convergence target for the off-diagonal Frobenius norm.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;

pub const MAX_SWEEPS: usize = 64;

fn off_diagonal_norm<const N: usize>(a: &SquareMatrix<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues<const N: usize>(m: &SquareMatrix<N>) -> Result<[f64; N]> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    // Symmetrize so round-off in the input cannot leak imaginary parts onto
    // the diagonal.
    let mut a = (*m + m.adjoint()).scale(C64::new(0.5, 0.0));
    let target = OFF_DIAGONAL_TOL * a.norm_fro().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }

    let mut evals: [f64; N] = std::array::from_fn(|i| a[(i, i)].re);
    evals.sort_by(f64::total_cmp);
    Ok(evals)
}

/// Annihilate `a[p][q]` (and `a[q][p]`) with a unitary similarity.
fn rotate<const N: usize>(a: &mut SquareMatrix<N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots already negligible against both diagonal entries.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let pc = phase.conj();

    // A <- A V with V = [[c, s], [-s conj(e), c conj(e)]] on the (p, q) plane.
    for k in 0..N {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * pc * s;
        a[(k, q)] = akp * s + akq * pc * c;
    }
    // A <- V^H A.
    for k in 0..N {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(app - t * g, 0.0);
    a[(q, q)] = C64::new(aqq + t * g, 0.0);
}
