//! Dense real-symmetric eigensolver: Householder tridiagonalization followed
//! by the implicit-shift QL iteration, with optional eigenvector
//! accumulation. The algorithms are the classic EISPACK `tred2`/`tql2` pair.

use crate::error::{Error, Result};

/// Total QL iteration budget, as sweeps per matrix dimension.
const SWEEPS_PER_DIM: usize = 64;

/// Reduces a symmetric matrix to tridiagonal form by Householder
/// similarity transforms.
///
/// On entry `z` holds the matrix (row-major, `n × n`). On exit `d` holds the
/// tridiagonal diagonal and `e[1..]` the subdiagonal (`e[0] = 0`). When
/// `accumulate` is set, `z` is overwritten with the orthogonal matrix `Q`
/// such that `Qᵀ A Q` is tridiagonal; otherwise `z` is scratch afterwards.
fn tred2(n: usize, z: &mut [f64], d: &mut [f64], e: &mut [f64], accumulate: bool) {
    for j in 0..n {
        d[j] = z[(n - 1) * n + j];
    }

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        let mut scale = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[l];
            for j in 0..i {
                d[j] = z[l * n + j];
                z[i * n + j] = 0.0;
                z[j * n + i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[l];
            let mut g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            d[l] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }
            // Apply the similarity transform to the leading block.
            for j in 0..i {
                f = d[j];
                z[j * n + i] = f;
                g = e[j] + z[j * n + j] * f;
                for k in (j + 1)..=l {
                    g += z[k * n + j] * d[k];
                    e[k] += z[k * n + j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..=l {
                    z[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = z[l * n + j];
                z[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    if accumulate {
        for i in 0..n.saturating_sub(1) {
            z[(n - 1) * n + i] = z[i * n + i];
            z[i * n + i] = 1.0;
            let h = d[i + 1];
            if h != 0.0 {
                for k in 0..=i {
                    d[k] = z[k * n + i + 1] / h;
                }
                for j in 0..=i {
                    let mut g = 0.0;
                    for k in 0..=i {
                        g += z[k * n + i + 1] * z[k * n + j];
                    }
                    for k in 0..=i {
                        z[k * n + j] -= g * d[k];
                    }
                }
            }
            for k in 0..=i {
                z[k * n + i + 1] = 0.0;
            }
        }
        for j in 0..n {
            d[j] = z[(n - 1) * n + j];
            z[(n - 1) * n + j] = 0.0;
        }
        z[(n - 1) * n + (n - 1)] = 1.0;
    } else {
        // The reduced diagonal sits on the matrix diagonal after phase one.
        for j in 0..n {
            d[j] = z[j * n + j];
        }
    }
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal and `e[1..]` the subdiagonal on entry; on success
/// `d` holds the eigenvalues in ascending order. When `z` is provided, its
/// columns are rotated alongside and sorted with the eigenvalues, so that a
/// `z` seeded by `tred2` accumulation ends as the full eigenvector matrix.
pub(super) fn tql2(n: usize, d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }

    let eps = f64::EPSILON;
    let mut shift_total = 0.0;
    let mut tst1 = 0.0_f64;
    let mut iterations = 0usize;
    let budget = SWEEPS_PER_DIM * n.max(1);

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        let m = m.min(n - 1);

        if m > l {
            loop {
                iterations += 1;
                if iterations > budget {
                    return Err(Error::EigenNonConvergence {
                        dim: n,
                        residual: e[l].abs(),
                    });
                }
                // Wilkinson-style shift from the leading 2×2 block.
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                shift_total += h;

                // One implicit QL sweep from m back down to l.
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            h = z[k * n + i + 1];
                            z[k * n + i + 1] = s * z[k * n + i] + c * h;
                            z[k * n + i] = c * z[k * n + i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }

    // Ascending selection sort, carrying eigenvector columns along.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in (i + 1)..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d.swap(i, k);
            if let Some(z) = z.as_deref_mut() {
                for row in 0..n {
                    z.swap(row * n + i, row * n + k);
                }
            }
        }
    }
    Ok(())
}

/// Full eigendecomposition of a symmetric matrix given as a row-major slice.
///
/// Returns ascending eigenvalues and, when requested, the row-major matrix
/// whose column `k` is the eigenvector for eigenvalue `k`.
pub(super) fn symmetric_eigen(
    n: usize,
    a: &[f64],
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    debug_assert_eq!(a.len(), n * n);
    let mut z = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(n, &mut z, &mut d, &mut e, want_vectors);
    if want_vectors {
        tql2(n, &mut d, &mut e, Some(&mut z))?;
        Ok((d, Some(z)))
    } else {
        tql2(n, &mut d, &mut e, None)?;
        Ok((d, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(v: impl Iterator<Item = f64>) -> f64 {
        v.fold(0.0, |m, x| m.max(x.abs()))
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = [1.0, -0.3, -0.3, 1.0];
        let (vals, _) = symmetric_eigen(2, &a, false).unwrap();
        assert!((vals[0] - 0.7).abs() < 1e-14);
        assert!((vals[1] - 1.3).abs() < 1e-14);
    }

    #[test]
    fn one_by_one() {
        let (vals, vecs) = symmetric_eigen(1, &[4.25], true).unwrap();
        assert_eq!(vals, vec![4.25]);
        assert_eq!(vecs.unwrap(), vec![1.0]);
    }

    #[test]
    fn diagonal_matrix_sorted() {
        let a = [3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0];
        let (vals, _) = symmetric_eigen(3, &a, false).unwrap();
        assert_eq!(vals, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn values_agree_with_and_without_vectors() {
        // Deterministic dense test matrix with entries from a simple LCG.
        let n = 24;
        let mut seed = 0x2545f4914f6cdd1d_u64;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = ((seed >> 11) as f64) / ((1u64 << 53) as f64) - 0.5;
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let (v1, _) = symmetric_eigen(n, &a, false).unwrap();
        let (v2, z) = symmetric_eigen(n, &a, true).unwrap();
        let z = z.unwrap();
        assert!(max_abs(v1.iter().zip(&v2).map(|(a, b)| a - b)) < 1e-12);

        // Reconstruction: max |Z diag(v) Zᵀ − A|.
        let mut err = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += z[i * n + k] * v2[k] * z[j * n + k];
                }
                err = err.max((s - a[i * n + j]).abs());
            }
        }
        assert!(err < 1e-12, "reconstruction error {err}");

        // Orthonormality: max |ZᵀZ − I|.
        let mut ortho = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += z[k * n + i] * z[k * n + j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                ortho = ortho.max((s - target).abs());
            }
        }
        assert!(ortho < 1e-13, "orthonormality error {ortho}");
    }

    #[test]
    fn repeated_eigenvalues_handled() {
        // I₄ plus a rank-one bump: eigenvalues {1, 1, 1, 5}.
        let n = 4;
        let mut a = vec![0.0; 16];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = if i == j { 2.0 } else { 1.0 };
            }
        }
        let (vals, _) = symmetric_eigen(n, &a, false).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-13);
        assert!((vals[1] - 1.0).abs() < 1e-13);
        assert!((vals[2] - 1.0).abs() < 1e-13);
        assert!((vals[3] - 5.0).abs() < 1e-13);
    }
}
