//! Eigenvalues of small Hermitian matrices by cyclic complex Jacobi rotations.

use super::{CMatrix, Complex, MatrixError, Tolerance};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a Hermitian matrix, ascending. Uses the default tolerance
/// for the Hermitian check and the convergence test.
pub fn eig_hermitian(a: &CMatrix) -> Result<Vec<f64>, MatrixError> {
    eig_hermitian_with(a, Tolerance::default())
}

/// Rotations stop once the off-diagonal Frobenius norm drops below `eps·‖a‖`.
pub fn eig_hermitian_with(a: &CMatrix, t: Tolerance) -> Result<Vec<f64>, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare {
            op: "eig_hermitian",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let dev = a.max_abs_diff(&a.adjoint()).unwrap_or(0.0);
    if dev > t.eps() {
        return Err(MatrixError::NotHermitian(dev));
    }
    let n = a.rows();
    // Symmetrize away the admitted rounding.
    let mut m = (a + &a.adjoint()).scale(Complex::new(0.5, 0.0));
    let scale = m.norm();
    let target = t.eps() * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, p, q);
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    eigs.sort_by(f64::total_cmp);
    Ok(eigs)
}

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Zero `m[p][q]` with the unitary `U = D·R`, where `D = diag(1, e^{-iφ})`
/// makes the pivot real and `R` is the real Jacobi rotation; `m ← U† m U`.
fn rotate(m: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * mag);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    let e = phase.conj();
    let u00 = Complex::new(cs, 0.0);
    let u01 = Complex::new(sn, 0.0);
    let u10 = -e * sn;
    let u11 = e * cs;

    let n = m.rows();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * u00 + mkq * u10;
        m[(k, q)] = mkp * u01 + mkq * u11;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = u00.conj() * mpk + u10.conj() * mqk;
        m[(q, k)] = u01.conj() * mpk + u11.conj() * mqk;
    }
    m[(p, q)] = Complex::new(0.0, 0.0);
    m[(q, p)] = Complex::new(0.0, 0.0);
    m[(p, p)] = Complex::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex::new(m[(q, q)].re, 0.0);
}
