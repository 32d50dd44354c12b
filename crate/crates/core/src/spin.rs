//! Exact diagonalization of small XX spin chains and partial-transpose
//! negativity.
//!
//! The qubit-scale companion to the oscillator chain: the transverse-field
//! XX model
//!
//! ```text
//! H = −Σ_j (σˣ_j σˣ_{j+1} + σʸ_j σʸ_{j+1}) + B Σ_j σᶻ_j
//! ```
//!
//! is diagonalized densely (n ≤ 12), its thermal state `ρ = e^{−H/T}/Z` is
//! assembled spectrally, and entanglement across a bipartition is measured
//! by the negativity — the total weight of negative eigenvalues of the
//! partially transposed state. The same area-law mechanism as in the
//! oscillator chain shows up here: the even-odd negativity grows with `n`
//! while the half-half negativity saturates and dies at lower temperature,
//! opening a window where the state is entangled yet PPT across every
//! contiguous cut.
//!
//! Basis convention: computational basis states are indexed by bit patterns
//! with site `j` stored in bit `j` (site 0 is the least significant bit);
//! bit 0 means spin up (`σᶻ = +1`).

use crate::error::{Error, Result};
use crate::gaussian::Temperature;
use crate::linalg::{
    eigh_herm, eigh_herm_values, eigh_sym, HermitianMatrix, SymmetricMatrix,
};
use num_complex::Complex64;

/// Negativities at or below this floor count as a positive partial
/// transpose; matches the eigenvalue tolerance of the oscillator-side test.
pub const NEGATIVITY_FLOOR: f64 = 1e-10;

/// Largest chain the dense representation accepts (`2¹² = 4096` states).
pub const MAX_SITES: usize = 12;

/// Chain termination: couple site `n−1` back to site 0 or leave the ends
/// free.
///
/// The ring is the default throughout; open ends exist because contiguous
/// cuts of a ring cross two bonds while the same cuts of an open chain cross
/// one, which shifts small-`n` negativities near their vanishing point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Ring: bonds `(j, j+1 mod n)` for every site (two sites get a doubled
    /// bond).
    Periodic,
    /// Line: bonds `(j, j+1)` for `j < n−1`.
    Open,
}

impl Boundary {
    /// Stable lowercase name for output rows.
    pub fn label(&self) -> &'static str {
        match self {
            Boundary::Periodic => "periodic",
            Boundary::Open => "open",
        }
    }
}

/// An `n`-site XX chain in a transverse field `B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinChainModel {
    n: usize,
    b: f64,
    boundary: Boundary,
}

impl SpinChainModel {
    /// Validates `2 ≤ n ≤ 12` (dense cap) and a finite field.
    pub fn new(n: usize, b: f64, boundary: Boundary) -> Result<Self> {
        if !(2..=MAX_SITES).contains(&n) {
            return Err(Error::InvalidParameter {
                reason: format!("site count must be in 2..={MAX_SITES}, got {n}"),
            });
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter {
                reason: format!("transverse field must be finite, got {b}"),
            });
        }
        Ok(SpinChainModel { n, b, boundary })
    }

    /// Number of sites.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Transverse field strength.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Chain termination.
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Hilbert-space dimension `2ⁿ`.
    pub fn hilbert_dim(&self) -> usize {
        1 << self.n
    }

    /// Nearest-neighbor bond list. On the ring the sum runs over every
    /// site, so `n = 2` picks up the (0,1) bond twice — the two-site ring
    /// genuinely has a doubled coupling.
    fn bonds(&self) -> Vec<(usize, usize)> {
        match self.boundary {
            Boundary::Periodic => (0..self.n).map(|j| (j, (j + 1) % self.n)).collect(),
            Boundary::Open => (0..self.n - 1).map(|j| (j, j + 1)).collect(),
        }
    }

    /// Single Hamiltonian matrix element in the computational basis.
    ///
    /// The hopping term `−(σˣσˣ + σʸσʸ)` sends `|…01…⟩ ↦ −2|…10…⟩`, so the
    /// off-diagonal element is −2 per bond connecting the two patterns; the
    /// field contributes `B·(#up − #down)` on the diagonal. Everything is
    /// real.
    fn element(&self, r: usize, c: usize) -> f64 {
        if r == c {
            return self.b * (self.n as f64 - 2.0 * r.count_ones() as f64);
        }
        let mut value = 0.0;
        for (i, j) in self.bonds() {
            let mask = (1usize << i) | (1usize << j);
            if r ^ c == mask && (r >> i) & 1 != (r >> j) & 1 {
                value -= 2.0;
            }
        }
        value
    }
}

/// Dense XX Hamiltonian in the computational basis.
///
/// The matrix is real (hopping elements are −2 per bond, the field is
/// diagonal) but is returned in the Hermitian container used by the thermal
/// and partial-transpose pipeline.
pub fn build_xx_hamiltonian(model: &SpinChainModel) -> Result<HermitianMatrix> {
    let dim = model.hilbert_dim();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        entries[r * dim + r] =
            Complex64::new(model.b * (model.n as f64 - 2.0 * r.count_ones() as f64), 0.0);
    }
    for (i, j) in model.bonds() {
        let mask = (1usize << i) | (1usize << j);
        for r in 0..dim {
            if (r >> i) & 1 != (r >> j) & 1 {
                entries[r * dim + (r ^ mask)] += Complex64::new(-2.0, 0.0);
            }
        }
    }
    HermitianMatrix::new(dim, entries)
}

/// A quantum state: Hermitian with unit trace.
///
/// The constructor checks the trace (the container already enforces
/// Hermiticity); positive semidefiniteness is guaranteed by the thermal
/// constructors and can be re-verified spectrally with
/// [`DensityMatrix::ensure_positive`] — it is not re-checked on every wrap
/// because that would double the cost of each construction with a full
/// eigensolve.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
}

impl DensityMatrix {
    /// Wraps a Hermitian matrix whose trace is 1 within 1e-10.
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let trace: f64 = (0..matrix.dim()).map(|i| matrix.get(i, i).re).sum();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter {
                reason: format!("density matrix must have unit trace, got {trace}"),
            });
        }
        Ok(DensityMatrix { matrix })
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Entry at `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    /// The underlying Hermitian matrix.
    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// Verifies positive semidefiniteness spectrally (minimum eigenvalue
    /// ≥ −1e-10).
    pub fn ensure_positive(&self) -> Result<()> {
        let vals = eigh_herm_values(&self.matrix)?;
        if vals[0] < -1e-10 {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: vals[0],
                max_eigenvalue: vals[vals.len() - 1],
            });
        }
        Ok(())
    }
}

/// Thermal state `ρ = e^{−H/T} / Tr e^{−H/T}` by spectral assembly.
///
/// Weights are shifted so the ground state gets weight 1 (`e^{−(λ−λ₀)/T}`),
/// which keeps the exponentials in range at any temperature. `T = 0` is
/// rejected: the zero-temperature limit is a projector whose rank depends
/// on ground-state degeneracy, and nothing downstream needs it.
pub fn thermal_state(h: &HermitianMatrix, t: Temperature) -> Result<DensityMatrix> {
    if t.is_zero() {
        return Err(Error::InvalidParameter {
            reason: "thermal state needs T > 0 (the T = 0 projector is ambiguous under degeneracy)"
                .into(),
        });
    }
    let dim = h.dim();
    let (vals, vecs) = eigh_herm(h)?;
    let lambda0 = vals[0];
    let weights: Vec<f64> = vals
        .iter()
        .map(|&l| (-(l - lambda0) / t.value()).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let scaled: Vec<f64> = weights.iter().map(|w| w / z).collect();

    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in r..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &w) in scaled.iter().enumerate() {
                acc += w * vecs[r * dim + k] * vecs[c * dim + k].conj();
            }
            entries[r * dim + c] = acc;
            entries[c * dim + r] = acc.conj();
        }
    }
    DensityMatrix::new(HermitianMatrix::new(dim, entries)?)
}

/// [`thermal_state`] through the magnetization sectors.
///
/// `H` commutes with `Σσᶻ`, so it block-diagonalizes over the `n+1`
/// popcount classes of basis states; each block is real symmetric and is
/// diagonalized independently, then the blocks are reassembled into the
/// (block-diagonal) dense state. Same output as the dense path within
/// roundoff, at a fraction of the eigensolver cost for `n ≥ 10`.
pub fn thermal_state_sectored(model: &SpinChainModel, t: Temperature) -> Result<DensityMatrix> {
    if t.is_zero() {
        return Err(Error::InvalidParameter {
            reason: "thermal state needs T > 0 (the T = 0 projector is ambiguous under degeneracy)"
                .into(),
        });
    }
    let dim = model.hilbert_dim();
    let mut sectors = Vec::with_capacity(model.n + 1);
    for magnetization in 0..=model.n {
        let states: Vec<usize> = (0..dim)
            .filter(|r| r.count_ones() as usize == magnetization)
            .collect();
        let block = SymmetricMatrix::from_fn(states.len(), |a, b| {
            model.element(states[a], states[b])
        })?;
        sectors.push((states, eigh_sym(&block)?));
    }

    let lambda0 = sectors
        .iter()
        .map(|(_, s)| s.eigenvalues()[0])
        .fold(f64::INFINITY, f64::min);
    let weight = |l: f64| (-(l - lambda0) / t.value()).exp();
    let z: f64 = sectors
        .iter()
        .flat_map(|(_, s)| s.eigenvalues().iter().map(|&l| weight(l)))
        .sum();

    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (states, spectrum) in &sectors {
        let len = states.len();
        let vecs = spectrum.eigenvectors();
        for a in 0..len {
            for b in a..len {
                let mut acc = 0.0;
                for (k, &l) in spectrum.eigenvalues().iter().enumerate() {
                    acc += weight(l) / z * vecs[a * len + k] * vecs[b * len + k];
                }
                entries[states[a] * dim + states[b]] = Complex64::new(acc, 0.0);
                entries[states[b] * dim + states[a]] = Complex64::new(acc, 0.0);
            }
        }
    }
    DensityMatrix::new(HermitianMatrix::new(dim, entries)?)
}

/// Validates a qubit subset and packs it into a bit mask.
fn subset_mask(dim: usize, subset: &[usize]) -> Result<usize> {
    let n = dim.trailing_zeros() as usize;
    let mut mask = 0usize;
    for &q in subset {
        if q >= n {
            return Err(Error::InvalidParameter {
                reason: format!("qubit index {q} out of range for {n} sites"),
            });
        }
        mask |= 1 << q;
    }
    Ok(mask)
}

/// Partial transpose over the given qubit subset.
///
/// In bit language: entry `(r, c)` of the result is entry `(r', c')` of the
/// input, where `r'` and `c'` swap the subset bits of `r` and `c`. The
/// operation permutes entries only, so applying it twice restores the input
/// exactly, and Hermiticity is preserved.
pub fn partial_transpose(rho: &DensityMatrix, subset: &[usize]) -> Result<HermitianMatrix> {
    let dim = rho.dim();
    let mask = subset_mask(dim, subset)?;
    HermitianMatrix::from_fn(dim, |r, c| {
        let rp = (r & !mask) | (c & mask);
        let cp = (c & !mask) | (r & mask);
        rho.get(rp, cp)
    })
}

/// Negativity `Σ |min(λᵢ, 0)|` over the partial-transpose spectrum: zero
/// exactly when the state is PPT across the cut, and an entanglement
/// monotone when it is not.
pub fn negativity(rho: &DensityMatrix, subset: &[usize]) -> Result<f64> {
    let pt = partial_transpose(rho, subset)?;
    let vals = eigh_herm_values(&pt)?;
    Ok(vals.iter().map(|&l| l.min(0.0).abs()).sum())
}

/// Named bipartitions of the spin chain, mirroring the oscillator-side
/// partitions plus an explicit site list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpinPartition {
    /// Even sites `{0, 2, 4, …}` against odd sites.
    EvenOdd,
    /// First `n/2` sites against the rest; needs even `n`.
    HalfHalf,
    /// Explicit transposed-site list.
    Custom(Vec<usize>),
}

impl SpinPartition {
    /// The transposed-qubit set for an `n`-site chain.
    pub fn subset(&self, n: usize) -> Result<Vec<usize>> {
        match self {
            SpinPartition::EvenOdd => Ok((0..n).step_by(2).collect()),
            SpinPartition::HalfHalf => {
                if n % 2 != 0 {
                    return Err(Error::InvalidParameter {
                        reason: format!("half-half partition needs even n, got {n}"),
                    });
                }
                Ok((0..n / 2).collect())
            }
            SpinPartition::Custom(sites) => {
                if sites.is_empty() || sites.len() >= n {
                    return Err(Error::InvalidParameter {
                        reason: "custom partition must be a nonempty proper subset".into(),
                    });
                }
                for &q in sites {
                    if q >= n {
                        return Err(Error::InvalidParameter {
                            reason: format!("site {q} out of range for n = {n}"),
                        });
                    }
                }
                Ok(sites.clone())
            }
        }
    }

    /// Stable name for output rows.
    pub fn label(&self) -> String {
        match self {
            SpinPartition::EvenOdd => "even-odd".into(),
            SpinPartition::HalfHalf => "half-half".into(),
            SpinPartition::Custom(sites) => {
                let list: Vec<String> = sites.iter().map(|q| q.to_string()).collect();
                format!("custom:{}", list.join(","))
            }
        }
    }
}

/// One output row of [`spin_sweep`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpinSweepRow {
    /// Sites in the chain.
    pub n: usize,
    /// Temperature of the thermal state.
    pub temperature: f64,
    /// Chain termination used.
    pub boundary: Boundary,
    /// Partition label (see [`SpinPartition::label`]).
    pub partition: String,
    /// Partial-transpose negativity across the cut.
    pub negativity: f64,
}

/// Negativity of every `(n, partition)` combination at one temperature,
/// in the given order. Thermal states go through the sector path (verified
/// against the dense one in the test suite).
pub fn spin_sweep(
    ns: &[usize],
    b: f64,
    boundary: Boundary,
    t: Temperature,
    partitions: &[SpinPartition],
) -> Result<Vec<SpinSweepRow>> {
    let mut rows = Vec::with_capacity(ns.len() * partitions.len());
    for &n in ns {
        let model = SpinChainModel::new(n, b, boundary)?;
        let rho = thermal_state_sectored(&model, t)?;
        for partition in partitions {
            rows.push(SpinSweepRow {
                n,
                temperature: t.value(),
                boundary,
                partition: partition.label(),
                negativity: negativity(&rho, &partition.subset(n)?)?,
            });
        }
    }
    Ok(rows)
}
