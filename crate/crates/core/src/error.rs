//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Error`]; the variants
//! carry enough context (dimensions, offending values, brackets) for a caller
//! to report a failure without re-running the computation.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the numerical kernels and model constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix constructor received entries violating the required symmetry.
    #[error("matrix of dim {dim} is not {kind} symmetric: max deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotSymmetric {
        /// Matrix dimension.
        dim: usize,
        /// "real" or "conjugate" depending on the matrix type.
        kind: &'static str,
        /// Largest observed `|a_ij - a_ji|` (or conjugate analogue).
        deviation: f64,
        /// Scale-relative tolerance that was applied.
        tolerance: f64,
    },

    /// A constructor received inconsistent dimensions or an empty matrix.
    #[error("invalid matrix shape: {reason}")]
    InvalidShape {
        /// What was wrong (entry count vs dim, zero dim, ...).
        reason: String,
    },

    /// The iterative eigensolver failed to drive an off-diagonal entry to zero
    /// within its iteration budget.
    #[error("eigensolver did not converge for dim {dim}: off-diagonal residual {residual:.3e} after iteration cap")]
    EigenNonConvergence {
        /// Dimension of the matrix being decomposed.
        dim: usize,
        /// Magnitude of the stubborn off-diagonal entry.
        residual: f64,
    },

    /// A spectral function was evaluated outside its domain.
    #[error("scalar function undefined at eigenvalue {eigenvalue}: result was not finite")]
    FunctionDomain {
        /// The eigenvalue at which the function returned NaN/infinity.
        eigenvalue: f64,
    },

    /// A matrix required to be symmetric positive definite was not.
    #[error("matrix is not positive definite: min eigenvalue {min_eigenvalue:.6e} (max {max_eigenvalue:.6e})")]
    NotPositiveDefinite {
        /// Smallest eigenvalue found.
        min_eigenvalue: f64,
        /// Largest eigenvalue, against which the tolerance is scaled.
        max_eigenvalue: f64,
    },

    /// A root-finding bracket did not straddle a sign change.
    #[error("bisection bracket [{lo}, {hi}] does not straddle a sign change (f(lo) = {f_lo:.3e}, f(hi) = {f_hi:.3e}); widen the bracket")]
    BracketInvalid {
        /// Lower bracket endpoint.
        lo: f64,
        /// Upper bracket endpoint.
        hi: f64,
        /// Function value at `lo`.
        f_lo: f64,
        /// Function value at `hi`.
        f_hi: f64,
    },

    /// A pre-scan of the objective found more than one sign change, so a
    /// bisection result would be ambiguous.
    #[error("objective changes sign {crossings} times on [{lo}, {hi}]; single-crossing assumption violated")]
    MultipleCrossings {
        /// Lower end of the scanned interval.
        lo: f64,
        /// Upper end of the scanned interval.
        hi: f64,
        /// Number of sign changes observed.
        crossings: usize,
    },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not reach tolerance {requested:.3e}: achieved {achieved:.3e}")]
    QuadratureNonConvergence {
        /// Tolerance asked for.
        requested: f64,
        /// Error estimate actually attained.
        achieved: f64,
    },

    /// Parameters outside the documented domain of an operation.
    #[error("invalid parameter: {reason}")]
    InvalidParameter {
        /// Which parameter and why.
        reason: String,
    },

    /// The PPT certificate never fired anywhere in the scanned window.
    #[error("certificate holds nowhere in the scanned temperature window [{t_lo}, {t_hi}]")]
    CertificateNeverFires {
        /// Bottom of the scanned window.
        t_lo: f64,
        /// Top of the scanned window.
        t_hi: f64,
    },

    /// An operation requiring a circulant potential received something else.
    #[error("potential matrix is not circulant (row {row} deviates by {deviation:.3e}); this bound applies to the periodic chain only")]
    NotCirculant {
        /// First row found not to be a cyclic shift of row 0.
        row: usize,
        /// Largest entry deviation in that row.
        deviation: f64,
    },
}
