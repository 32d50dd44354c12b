//! Dense symmetric/Hermitian eigendecomposition and spectral calculus.
//!
//! Everything downstream — thermal covariance algebra, partial-transpose
//! spectra, certificate norms — reduces to the operations here: eigensolves,
//! functions of a symmetric matrix, and spectra of products of symmetric
//! positive-definite matrices.

mod herm;
mod sym;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for accepting nearly-symmetric input.
const SYMMETRY_TOL: f64 = 1e-12;

/// Relative tolerance (against the largest eigenvalue) for positive
/// definiteness checks.
const SPD_REL_TOL: f64 = 1e-12;

/// Dense real symmetric matrix, row-major.
///
/// Constructors enforce symmetry up to a scale-relative `1e-12` and store
/// the exactly symmetrized average, so `get(i, j) == get(j, i)` always holds
/// bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from row-major entries, rejecting asymmetry beyond tolerance.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidShape {
                reason: "dimension must be at least 1".into(),
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidShape {
                reason: format!(
                    "expected {} entries for dim {dim}, got {}",
                    dim * dim,
                    entries.len()
                ),
            });
        }
        let scale = entries.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        let mut deviation = 0.0_f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                deviation = deviation.max((entries[i * dim + j] - entries[j * dim + i]).abs());
            }
        }
        if deviation > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric {
                dim,
                kind: "real",
                deviation,
                tolerance: SYMMETRY_TOL * scale,
            });
        }
        Ok(Self::symmetrized(dim, entries))
    }

    /// Builds from a function of `(row, col)`; the result must satisfy the
    /// same symmetry tolerance as [`SymmetricMatrix::new`].
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = f(i, j);
            }
        }
        Self::new(dim, entries)
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        Self { dim, entries }
    }

    /// Averages mirrored entries unconditionally (internal constructor for
    /// spectral reconstructions, whose asymmetry is pure roundoff).
    pub(crate) fn symmetrized(dim: usize, mut entries: Vec<f64>) -> Self {
        for i in 0..dim {
            for j in (i + 1)..dim {
                let avg = 0.5 * (entries[i * dim + j] + entries[j * dim + i]);
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg;
            }
        }
        Self { dim, entries }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }
}

/// Dense complex Hermitian matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds from row-major entries, rejecting conjugate-asymmetry beyond
    /// a scale-relative `1e-12`; stores the Hermitian average.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidShape {
                reason: "dimension must be at least 1".into(),
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidShape {
                reason: format!(
                    "expected {} entries for dim {dim}, got {}",
                    dim * dim,
                    entries.len()
                ),
            });
        }
        let scale = entries.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
        let mut deviation = 0.0_f64;
        for i in 0..dim {
            deviation = deviation.max(entries[i * dim + i].im.abs());
            for j in (i + 1)..dim {
                deviation =
                    deviation.max((entries[i * dim + j] - entries[j * dim + i].conj()).norm());
            }
        }
        if deviation > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric {
                dim,
                kind: "conjugate",
                deviation,
                tolerance: SYMMETRY_TOL * scale,
            });
        }
        let mut entries = entries;
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(entries[i * dim + i].re, 0.0);
            for j in (i + 1)..dim {
                let avg = 0.5 * (entries[i * dim + j] + entries[j * dim + i].conj());
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg.conj();
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds from a function of `(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = f(i, j);
            }
        }
        Self::new(dim, entries)
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }
}

/// Eigendecomposition of a symmetric matrix.
///
/// Eigenvalues ascend; `eigenvectors()` is row-major with column `k` holding
/// the unit eigenvector for `eigenvalues()[k]`. The columns are orthonormal
/// to ~1e-13 and reconstruct the input to ~1e-12 relative — both properties
/// are exercised by the test suite rather than re-verified on every call.
#[derive(Clone, Debug)]
pub struct Spectrum {
    dim: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<f64>,
}

impl Spectrum {
    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Row-major orthonormal matrix; column `k` pairs with eigenvalue `k`.
    pub fn eigenvectors(&self) -> &[f64] {
        &self.eigenvectors
    }
}

/// Eigendecomposition of a symmetric matrix (eigenvalues ascending).
pub fn eigh_sym(a: &SymmetricMatrix) -> Result<Spectrum> {
    let (vals, vecs) = sym::symmetric_eigen(a.dim, &a.entries, true)?;
    Ok(Spectrum {
        dim: a.dim,
        eigenvalues: vals,
        eigenvectors: vecs.expect("vectors requested"),
    })
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
pub fn eigh_sym_values(a: &SymmetricMatrix) -> Result<Vec<f64>> {
    let (vals, _) = sym::symmetric_eigen(a.dim, &a.entries, false)?;
    Ok(vals)
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// the unitary eigenvector matrix (row-major, column `k` per eigenvalue `k`).
pub fn eigh_herm(a: &HermitianMatrix) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let (vals, vecs) = herm::hermitian_eigen(a.dim, &a.entries, true)?;
    Ok((vals, vecs.expect("vectors requested")))
}

/// Eigenvalues of a Hermitian matrix (ascending), without eigenvectors.
pub fn eigh_herm_values(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let (vals, _) = herm::hermitian_eigen(a.dim, &a.entries, false)?;
    Ok(vals)
}

/// Applies a scalar function to a symmetric matrix through its spectrum:
/// `g(A) = U diag(g(λ)) Uᵀ`.
///
/// Fails if `g` returns a non-finite value at any eigenvalue.
pub fn matrix_function(a: &SymmetricMatrix, g: impl Fn(f64) -> f64) -> Result<SymmetricMatrix> {
    let spectrum = eigh_sym(a)?;
    let mut gvals = Vec::with_capacity(a.dim);
    for &lambda in spectrum.eigenvalues() {
        let v = g(lambda);
        if !v.is_finite() {
            return Err(Error::FunctionDomain { eigenvalue: lambda });
        }
        gvals.push(v);
    }
    Ok(reconstruct(a.dim, spectrum.eigenvectors(), &gvals))
}

/// Forms `U diag(w) Uᵀ` for a row-major orthonormal `u` (columns = vectors).
pub(crate) fn reconstruct(n: usize, u: &[f64], w: &[f64]) -> SymmetricMatrix {
    // scaled = U diag(w)
    let mut scaled = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            scaled[i * n + k] = u[i * n + k] * w[k];
        }
    }
    // result[i][j] = Σ_k scaled[i][k] · u[j][k]  (multiply by Uᵀ)
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = 0.0;
            for k in 0..n {
                s += scaled[i * n + k] * u[j * n + k];
            }
            out[i * n + j] = s;
            out[j * n + i] = s;
        }
    }
    SymmetricMatrix { dim: n, entries: out }
}

/// Verifies positive definiteness from an ascending eigenvalue list.
fn ensure_spd(vals: &[f64]) -> Result<()> {
    let min = vals[0];
    let max = vals[vals.len() - 1];
    if min <= SPD_REL_TOL * max.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
            max_eigenvalue: max,
        });
    }
    Ok(())
}

/// Spectrum of the product `A·B` of two symmetric positive-definite
/// matrices, returned ascending.
///
/// The product itself is not symmetric, but its spectrum is real and
/// positive; it is computed stably as the spectrum of `B^{1/2} A B^{1/2}`.
pub fn spd_product_spectrum(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<Vec<f64>> {
    if a.dim != b.dim {
        return Err(Error::InvalidShape {
            reason: format!("dimension mismatch: {} vs {}", a.dim, b.dim),
        });
    }
    let n = a.dim;
    let a_vals = eigh_sym_values(a)?;
    ensure_spd(&a_vals)?;
    let spec_b = eigh_sym(b)?;
    ensure_spd(spec_b.eigenvalues())?;
    let roots: Vec<f64> = spec_b.eigenvalues().iter().map(|&l| l.sqrt()).collect();
    let b_half = reconstruct(n, spec_b.eigenvectors(), &roots);
    let sa = mat_mul(n, &b_half.entries, &a.entries);
    let sas = mat_mul(n, &sa, &b_half.entries);
    let symmetric = SymmetricMatrix::symmetrized(n, sas);
    eigh_sym_values(&symmetric)
}

/// Row-major dense matrix product (`ikj` loop order for cache locality).
pub(crate) fn mat_mul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        let crow = &mut c[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            for (cv, bv) in crow.iter_mut().zip(brow.iter()) {
                *cv += aik * bv;
            }
        }
    }
    c
}

/// Gram product `BᵀB`, exploiting the symmetry of the result.
pub(crate) fn gram(n: usize, b: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; n * n];
    for i in 0..n {
        let row = &b[i * n..(i + 1) * n];
        for a in 0..n {
            let via = row[a];
            if via == 0.0 {
                continue;
            }
            let grow = &mut g[a * n..(a + 1) * n];
            for bcol in a..n {
                grow[bcol] += via * row[bcol];
            }
        }
    }
    for a in 0..n {
        for b_ in 0..a {
            g[a * n + b_] = g[b_ * n + a];
        }
    }
    g
}
