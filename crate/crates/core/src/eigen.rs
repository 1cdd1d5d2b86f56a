//! Eigenvalues of dense complex Hermitian matrices via cyclic Jacobi
//! rotations. The matrices here are small (dimension <= 1024) and positive
//! semidefinite, where Jacobi is simple, robustly accurate, and needs no
//! external linear algebra backend.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix in row-major order, ascending.
///
/// The input must satisfy a[p][q] = conj(a[q][p]); only the given storage is
/// read, no symmetrization is applied here.
pub fn hermitian_eigenvalues(a: &[Complex64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix storage size mismatch");
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m = a.to_vec();
    let scale: f64 = m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let tol = 1e-14 * scale;
    let mut converged = false;
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[p * n + q].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag; // e^{i phi}
                let alpha = m[p * n + p].re;
                let gamma = m[q * n + q].re;
                let tau = (gamma - alpha) / (2.0 * mag);
                let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U restricted to the (p,q) plane:
                //   [ c          -s        ]
                //   [ s conj(ph)  c conj(ph) ]
                let u_qp = Complex64::new(s, 0.0) * phase.conj();
                let u_qq = Complex64::new(c, 0.0) * phase.conj();
                // columns: B = A U
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = akp * c + akq * u_qp;
                    m[k * n + q] = akp * (-s) + akq * u_qq;
                }
                // rows: A' = U* B
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = apk * c + aqk * u_qp.conj();
                    m[q * n + k] = apk * (-s) + aqk * u_qq.conj();
                }
                // pin the analytically-zero entries
                m[p * n + q] = Complex64::new(0.0, 0.0);
                m[q * n + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    if !converged {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[p * n + q].norm_sqr();
            }
        }
        return Err(Error::Numeric {
            message: "Jacobi eigen-iteration did not converge".into(),
            achieved: off.sqrt() / scale,
        });
    }
    let mut evals: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    evals.sort_by(f64::total_cmp);
    Ok(evals)
}
