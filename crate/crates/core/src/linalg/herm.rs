//! Dense complex-Hermitian eigensolver.
//!
//! Strategy: reduce to complex tridiagonal form with Householder reflectors,
//! rotate the subdiagonal real with a diagonal phase matrix, then reuse the
//! real QL iteration. Matrices whose imaginary parts are identically zero
//! take the real-symmetric path directly.

use num_complex::Complex64;

use super::sym;
use crate::error::Result;

/// Full eigendecomposition of an `n × n` Hermitian matrix (row-major).
///
/// Returns ascending real eigenvalues and, when requested, the row-major
/// unitary matrix whose column `k` is the eigenvector for eigenvalue `k`.
pub(super) fn hermitian_eigen(
    n: usize,
    a: &[Complex64],
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Complex64>>)> {
    debug_assert_eq!(a.len(), n * n);

    if a.iter().all(|z| z.im == 0.0) {
        let real: Vec<f64> = a.iter().map(|z| z.re).collect();
        let (vals, vecs) = sym::symmetric_eigen(n, &real, want_vectors)?;
        let vecs = vecs.map(|v| v.into_iter().map(|x| Complex64::new(x, 0.0)).collect());
        return Ok((vals, vecs));
    }

    let mut work = a.to_vec();
    let mut q: Option<Vec<Complex64>> = if want_vectors {
        let mut id = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            id[i * n + i] = Complex64::ONE;
        }
        Some(id)
    } else {
        None
    };

    // Householder reduction: zero out column k below the first subdiagonal.
    let mut v = vec![Complex64::ZERO; n];
    let mut p = vec![Complex64::ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let norm_sq: f64 = (lo..n).map(|i| work[i * n + k].norm_sqr()).sum();
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            continue; // column already reduced
        }
        let x0 = work[lo * n + k];
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * norm
        } else {
            Complex64::new(-norm, 0.0)
        };
        for i in lo..n {
            v[i] = work[i * n + k];
        }
        v[lo] -= alpha;
        let v_sq: f64 = (lo..n).map(|i| v[i].norm_sqr()).sum();
        if v_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / v_sq;

        // Two-sided update of the trailing block: A ← A − v w† − w v†
        // with p = β A v and w = p − (β/2)(v† p) v.
        for i in lo..n {
            let mut acc = Complex64::ZERO;
            for j in lo..n {
                acc += work[i * n + j] * v[j];
            }
            p[i] = acc * beta;
        }
        let vp: Complex64 = (lo..n).map(|i| v[i].conj() * p[i]).sum();
        let kappa = vp * (beta / 2.0);
        for i in lo..n {
            p[i] -= kappa * v[i];
        }
        for i in lo..n {
            let vi = v[i];
            let wi = p[i];
            for j in lo..n {
                work[i * n + j] -= vi * p[j].conj() + wi * v[j].conj();
            }
        }

        // Install the produced subdiagonal entry and clear the rest.
        work[lo * n + k] = alpha;
        work[k * n + lo] = alpha.conj();
        for i in (lo + 1)..n {
            work[i * n + k] = Complex64::ZERO;
            work[k * n + i] = Complex64::ZERO;
        }

        if let Some(q) = q.as_deref_mut() {
            // Q ← Q (I − β v v†)
            for r in 0..n {
                let mut t = Complex64::ZERO;
                for m in lo..n {
                    t += q[r * n + m] * v[m];
                }
                let t = t * beta;
                for m in lo..n {
                    q[r * n + m] -= t * v[m].conj();
                }
            }
        }
    }

    // Phase-rotate the complex subdiagonal onto the real axis.
    let mut d: Vec<f64> = (0..n).map(|i| work[i * n + i].re).collect();
    let mut e = vec![0.0; n];
    let mut phase = vec![Complex64::ONE; n];
    for i in 0..n.saturating_sub(1) {
        let b = work[(i + 1) * n + i];
        let r = b.norm();
        e[i + 1] = r;
        phase[i + 1] = if r == 0.0 { phase[i] } else { phase[i] * (b / r) };
    }

    if let Some(q) = q.as_mut() {
        // Fold the phases into Q's columns, run QL with a real rotation
        // accumulator, then combine.
        for (j, ph) in phase.iter().enumerate() {
            for i in 0..n {
                q[i * n + j] *= ph;
            }
        }
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        sym::tql2(n, &mut d, &mut e, Some(&mut z))?;
        let mut u = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for kk in 0..n {
                let qik = q[i * n + kk];
                if qik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    u[i * n + j] += qik * z[kk * n + j];
                }
            }
        }
        Ok((d, Some(u)))
    } else {
        sym::tql2(n, &mut d, &mut e, None)?;
        Ok((d, None))
    }
}
