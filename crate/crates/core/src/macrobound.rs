//! PPT certificates for the half-half bipartition of the periodic chain.
//!
//! Proving that the contiguous-half split of a *macroscopic* chain is PPT
//! cannot be done by diagonalizing matrices — there is no `n` to plug in.
//! Instead this module bounds the two operator norms that control the
//! partial transpose through the Fourier coefficients of the continuum
//! symbols
//!
//! ```text
//! d±(x) = Λ(x)^{±1/2} · tanh(√Λ(x)/(2T)),    Λ(x) = 1 − 2c·cos x,
//! ```
//!
//! whose coefficient `v_l` decays like `C_s/(2π l^s)` after `s` integrations
//! by parts, with `C_s = ∫|d^{(s)}(x)| dx`. Truncating at `|l| ≤ m` and
//! padding with a Hurwitz-zeta tail yields certified norm bounds `K⁺`
//! (whole symbol of `ω⁺`) and `K⁻` (the half-row of `ω⁻` that couples the
//! two blocks). The certificate
//!
//! ```text
//! 2·K⁺·K⁻ + tanh²(√(1+2c)/(2T)) < 1
//! ```
//!
//! is sufficient for a positive partial transpose of the half-half split in
//! the `n → ∞` limit; scanning it over temperature traces the upper bound
//! curve that closes the bound-entanglement window from above.
//!
//! A finite-`n` companion certificate works directly on the circulant chain:
//! with `X` the block of `ω⁻` coupling the two halves, positivity follows
//! from `λ_min[W]⁻² + 2·r(Xω⁺) < 1`, where the spectral radius `r` is first
//! bounded by the max row sum and only computed exactly (via the symmetric
//! similarity `ω⁺^{1/2} X ω⁺^{1/2}`) when the cheap bound is inconclusive.
//!
//! Everything here is a *sufficient* criterion: `false` never claims
//! entanglement, it only means the certificate is inconclusive.

use crate::error::{Error, Result};
use crate::gaussian::{omega, HarmonicModel, Sign, Temperature};
use crate::linalg::{eigh_sym_values, mat_mul, matrix_function, SymmetricMatrix};
use crate::numerics::{adaptive_simpson, bisect, bisect_predicate, Jet};

use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// Quadrature tolerance used when certificates assemble their own
/// coefficients.
const CERT_QUAD_TOL: f64 = 1e-10;

/// Temperature window scanned by [`hh_macro_bound_curve`].
const SCAN_WINDOW: (f64, f64) = (0.02, 2.0);

/// Grid points of the certificate scan over the window.
const SCAN_POINTS: usize = 256;

/// Cells scanned when locating sign changes of the s-th derivative.
const DERIVATIVE_SCAN_CELLS: usize = 2048;

/// Truncation order `m` and integration-by-parts order `s` of the norm
/// bounds.
///
/// Larger `m` moves coefficients from the zeta tail into the exact partial
/// sum; larger `s` makes the tail decay faster at the price of a larger
/// derivative constant `C_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormBoundParams {
    m: usize,
    s: u32,
}

impl NormBoundParams {
    /// Validates `m ≥ 1` and `2 ≤ s ≤ 6` (the tail needs `s ≥ 2` to
    /// converge; derivatives are carried to sixth order).
    pub fn new(m: usize, s: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter {
                reason: "partial-sum cutoff m must be at least 1".into(),
            });
        }
        if !(2..=6).contains(&s) {
            return Err(Error::InvalidParameter {
                reason: format!("integration-by-parts order s must be in 2..=6, got {s}"),
            });
        }
        Ok(NormBoundParams { m, s })
    }

    /// Partial-sum cutoff.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Integration-by-parts order.
    pub fn s(&self) -> u32 {
        self.s
    }
}

fn ensure_subcritical(c: f64) -> Result<()> {
    if !(0.0..0.5).contains(&c) {
        return Err(Error::InvalidParameter {
            reason: format!("coupling must satisfy 0 <= c < 0.5, got {c}"),
        });
    }
    Ok(())
}

/// Continuum symbol `d±(x) = Λ(x)^{±1/2}·tanh(√Λ(x)/(2T))`, the `n → ∞`
/// limit of the `ω±` eigenvalues at mode angle `x`.
pub fn d_continuum(x: f64, c: f64, t: Temperature, sign: Sign) -> f64 {
    let lam = 1.0 - 2.0 * c * x.cos();
    let root = lam.sqrt();
    let weight = if t.is_zero() {
        1.0
    } else {
        (root / (2.0 * t.value())).tanh()
    };
    match sign {
        Sign::Plus => root * weight,
        Sign::Minus => weight / root,
    }
}

/// [`d_continuum`] as a truncated Taylor jet in `x`, for exact derivatives.
fn d_jet(x: f64, c: f64, t: Temperature, sign: Sign) -> Jet {
    let lam = Jet::constant(1.0) - Jet::variable(x).cos().scale(2.0 * c);
    let root = lam.sqrt();
    let weight = if t.is_zero() {
        Jet::constant(1.0)
    } else {
        root.scale(1.0 / (2.0 * t.value())).tanh()
    };
    match sign {
        Sign::Plus => root * weight,
        Sign::Minus => weight.div(&root),
    }
}

/// Fourier coefficient `v_l = (1/2π)∫₀^{2π} d±(x)·e^{ilx} dx`.
///
/// The symbol is even around `x = π`, so the imaginary (sine) part vanishes;
/// it is evaluated anyway and asserted below 1e-12 as a self-check of the
/// quadrature. The returned value is the cosine part.
pub fn fourier_coeff(l: i64, sign: Sign, c: f64, t: Temperature, quad_tol: f64) -> Result<f64> {
    ensure_subcritical(c)?;
    let lf = l as f64;
    let cosine = adaptive_simpson(
        |x| d_continuum(x, c, t, sign) * (lf * x).cos(),
        0.0,
        TWO_PI,
        quad_tol,
    )? / TWO_PI;
    let sine = adaptive_simpson(
        |x| d_continuum(x, c, t, sign) * (lf * x).sin(),
        0.0,
        TWO_PI,
        quad_tol,
    )? / TWO_PI;
    assert!(
        sine.abs() <= 1e-12,
        "sine part of v_{l} should vanish by symmetry, got {sine:.3e}"
    );
    Ok(cosine)
}

/// Derivative-magnitude constant `C_s = ∫₀^{2π} |dˢ/dxˢ d±(x)| dx`.
///
/// The derivative comes from forward-mode jets (exact to roundoff). Because
/// `|g|` has kinks at the zeros of `g`, the integral is split at sign
/// changes located by a 2048-cell scan plus bisection, and each smooth piece
/// is integrated adaptively.
pub fn c_s_constant(s: u32, sign: Sign, c: f64, t: Temperature, quad_tol: f64) -> Result<f64> {
    ensure_subcritical(c)?;
    if !(1..=6).contains(&s) {
        return Err(Error::InvalidParameter {
            reason: format!("derivative order s must be in 1..=6, got {s}"),
        });
    }
    let g = |x: f64| d_jet(x, c, t, sign).derivative(s as usize);

    let mut cuts = vec![0.0];
    let step = TWO_PI / DERIVATIVE_SCAN_CELLS as f64;
    let mut prev = g(0.0);
    for i in 1..=DERIVATIVE_SCAN_CELLS {
        let xi = i as f64 * step;
        let cur = g(xi);
        if prev * cur < 0.0 {
            cuts.push(bisect(g, xi - step, xi, 1e-12)?);
        }
        prev = cur;
    }
    cuts.push(TWO_PI);

    let pieces = cuts.len() - 1;
    let piece_tol = quad_tol / pieces as f64;
    let mut total = 0.0;
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b - a < 1e-14 {
            continue;
        }
        total += adaptive_simpson(|x| g(x).abs(), a, b, piece_tol)?;
    }
    Ok(total)
}

/// Hurwitz zeta `ζ(s, a) = Σ_{j≥0} (j+a)^{−s}` for integer `s ≥ 2`, `a ≥ 1`.
///
/// 400 terms are summed directly (smallest first); the remainder is the
/// Euler–Maclaurin tail through the `B₆` correction, leaving an absolute
/// error below 1e-12 everywhere in the domain.
pub fn hurwitz_zeta(s: u32, a: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::InvalidParameter {
            reason: format!("zeta order must satisfy s >= 2, got {s}"),
        });
    }
    if !(a >= 1.0 && a.is_finite()) {
        return Err(Error::InvalidParameter {
            reason: format!("zeta offset must satisfy a >= 1, got {a}"),
        });
    }
    const DIRECT_TERMS: usize = 400;
    let sf = f64::from(s);
    let mut sum = 0.0;
    for j in (0..DIRECT_TERMS).rev() {
        sum += (a + j as f64).powf(-sf);
    }
    let x0 = a + DIRECT_TERMS as f64;
    let tail = x0.powf(1.0 - sf) / (sf - 1.0)
        + 0.5 * x0.powf(-sf)
        + sf / 12.0 * x0.powf(-sf - 1.0)
        - sf * (sf + 1.0) * (sf + 2.0) / 720.0 * x0.powf(-sf - 3.0)
        + sf * (sf + 1.0) * (sf + 2.0) * (sf + 3.0) * (sf + 4.0) / 30240.0 * x0.powf(-sf - 5.0);
    Ok(sum + tail)
}

/// Cached Fourier data of one symbol side: the coefficients `v_0 … v_m` and
/// the derivative constant `C_s`.
///
/// Coefficients are even in `l` (`v_{−l} = v_l`), so only `l ≥ 0` is stored.
#[derive(Clone, Debug)]
pub struct FourierSide {
    sign: Sign,
    coefficients: Vec<f64>,
    c_s: f64,
    s: u32,
}

impl FourierSide {
    /// Computes coefficients `l = 0 … m` and `C_s` for one side.
    pub fn build(
        sign: Sign,
        c: f64,
        t: Temperature,
        params: &NormBoundParams,
        quad_tol: f64,
    ) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(params.m + 1);
        for l in 0..=params.m {
            coefficients.push(fourier_coeff(l as i64, sign, c, t, quad_tol)?);
        }
        let c_s = c_s_constant(params.s, sign, c, t, quad_tol)?;
        Ok(FourierSide {
            sign,
            coefficients,
            c_s,
            s: params.s,
        })
    }

    /// Which symbol this side describes.
    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `v_l` for `|l| ≤ m` (even in `l`).
    pub fn coefficient(&self, l: i64) -> f64 {
        self.coefficients[l.unsigned_abs() as usize]
    }

    /// The derivative constant `C_s`.
    pub fn c_s(&self) -> f64 {
        self.c_s
    }

    /// Tail-bound order.
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Largest cached `l`.
    pub fn m(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Certified norm bound of one side.
///
/// * `Plus`: `K⁺ = Σ_{l=−m}^{m} |v_l⁺| + C_s⁺·ζ(s, m+1)/π` bounds the
///   operator norm of `ω⁺` (the full symbol).
/// * `Minus`: `K⁻ = Σ_{l=1}^{m} |v_l⁻| + C_s⁻·ζ(s, m+1)/(2π)` bounds the
///   norm of the half-row of `ω⁻` coupling the two blocks (the `l = 0`
///   diagonal never crosses the cut, and only one orientation of each
///   coefficient appears in the coupling row).
pub fn k_bound(params: &NormBoundParams, sign: Sign, c: f64, t: Temperature) -> Result<f64> {
    let side = FourierSide::build(sign, c, t, params, CERT_QUAD_TOL)?;
    k_bound_from_side(params, &side)
}

/// [`k_bound`] when the Fourier data is already available.
fn k_bound_from_side(params: &NormBoundParams, side: &FourierSide) -> Result<f64> {
    let zeta = hurwitz_zeta(params.s, (params.m + 1) as f64)?;
    let partial: f64 = (1..=params.m)
        .map(|l| side.coefficient(l as i64).abs())
        .sum();
    Ok(match side.sign() {
        Sign::Plus => side.coefficient(0).abs() + 2.0 * partial + side.c_s() * zeta / PI,
        Sign::Minus => partial + side.c_s() * zeta / TWO_PI,
    })
}

/// Outcome of the macroscopic half-half PPT certificate at one `(c, T)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MacroCertificate {
    /// Norm bound `K⁺` on `ω⁺`.
    pub k_plus: f64,
    /// Norm bound `K⁻` on the cross-block row of `ω⁻`.
    pub k_minus: f64,
    /// Left side `2K⁺K⁻ + tanh²(√(1+2c)/(2T))` of the criterion.
    pub lhs: f64,
    /// Whether `lhs < 1`, certifying a positive partial transpose.
    pub certified: bool,
}

/// Evaluates the macroscopic certificate with full diagnostics.
pub fn macro_certificate(
    c: f64,
    t: Temperature,
    params: &NormBoundParams,
) -> Result<MacroCertificate> {
    ensure_subcritical(c)?;
    let k_plus = k_bound(params, Sign::Plus, c, t)?;
    let k_minus = k_bound(params, Sign::Minus, c, t)?;
    // tanh(√(1+2c)/(2T)) = 1/λ_min[W] of the stiffest mode; 1 exactly at T=0.
    let edge = if t.is_zero() {
        1.0
    } else {
        ((1.0 + 2.0 * c).sqrt() / (2.0 * t.value())).tanh()
    };
    let lhs = 2.0 * k_plus * k_minus + edge * edge;
    Ok(MacroCertificate {
        k_plus,
        k_minus,
        lhs,
        certified: lhs < 1.0,
    })
}

/// True iff the half-half partition of the infinite chain is certified PPT
/// at `(c, T)`; `false` is inconclusive, never a claim of entanglement.
pub fn hh_ppt_certified_macro(c: f64, t: Temperature, params: &NormBoundParams) -> Result<bool> {
    Ok(macro_certificate(c, t, params)?.certified)
}

/// Result of the bound-curve search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MacroBoundCurve {
    /// Smallest temperature (within the requested tolerance) at which the
    /// certificate fires.
    pub temperature: Temperature,
    /// Whether the scan saw a clean false→true pattern; a `false` here means
    /// the certificate flickered along the grid and the returned edge is the
    /// highest transition.
    pub certificate_monotone: bool,
}

/// Upper bound on the half-half distillability threshold: the lowest
/// temperature above which [`hh_ppt_certified_macro`] holds, located by a
/// 256-point scan over `T ∈ [0.02, 2]` refined by bisection.
///
/// When the certificate already holds at the bottom of the window the edge
/// is refined downward to `1e−6`. If it holds nowhere in the window the
/// search fails with [`Error::CertificateNeverFires`].
pub fn hh_macro_bound_curve(
    c: f64,
    params: &NormBoundParams,
    tol: f64,
) -> Result<MacroBoundCurve> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::InvalidParameter {
            reason: format!("bound curve is defined for 0 < c < 0.5, got {c}"),
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter {
            reason: format!("bisection tolerance must be positive, got {tol}"),
        });
    }
    curve_in_window(c, params, tol, SCAN_WINDOW)
}

/// Scan-and-bisect implementation over an explicit window.
fn curve_in_window(
    c: f64,
    params: &NormBoundParams,
    tol: f64,
    (w_lo, w_hi): (f64, f64),
) -> Result<MacroBoundCurve> {
    let certified_at = |t: f64| -> Result<bool> {
        hh_ppt_certified_macro(c, Temperature::new(t)?, params)
    };

    let mut flags = Vec::with_capacity(SCAN_POINTS);
    for i in 0..SCAN_POINTS {
        let t = w_lo + (w_hi - w_lo) * i as f64 / (SCAN_POINTS - 1) as f64;
        flags.push(certified_at(t)?);
    }
    if !flags.iter().any(|&f| f) {
        return Err(Error::CertificateNeverFires {
            t_lo: w_lo,
            t_hi: w_hi,
        });
    }
    let certificate_monotone = !flags.windows(2).any(|w| w[0] && !w[1]);

    // Highest false→true transition; refine below the window when the
    // certificate is already live at its bottom edge.
    let mut edge_cell = None;
    for i in 1..SCAN_POINTS {
        if !flags[i - 1] && flags[i] {
            edge_cell = Some(i);
        }
    }
    let (lo, hi) = match edge_cell {
        Some(i) => {
            let grid = |j: usize| w_lo + (w_hi - w_lo) * j as f64 / (SCAN_POINTS - 1) as f64;
            (grid(i - 1), grid(i))
        }
        None => (1e-6, w_lo),
    };

    let mut failure = None;
    let temperature = bisect_predicate(
        |t| match certified_at(t) {
            Ok(flag) => flag,
            Err(e) => {
                failure = Some(e);
                false
            }
        },
        lo,
        hi,
        tol,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(MacroBoundCurve {
        temperature: Temperature::new(temperature)?,
        certificate_monotone,
    })
}

/// The cross-block part of `ω⁻` for the contiguous half-half split: entries
/// with exactly one index in the first half survive, all others are zeroed.
pub fn build_x(model: &HarmonicModel, t: Temperature) -> Result<SymmetricMatrix> {
    let n = model.n();
    if n % 2 != 0 {
        return Err(Error::InvalidParameter {
            reason: format!("half-half split needs an even oscillator count, got {n}"),
        });
    }
    let minus = omega(model, t, Sign::Minus)?;
    let half = n / 2;
    SymmetricMatrix::from_fn(n, |i, j| {
        if (i < half) != (j < half) {
            minus.get(i, j)
        } else {
            0.0
        }
    })
}

/// Verifies that the potential is circulant (each row a cyclic shift of row
/// 0) and returns the first row.
fn circulant_first_row(v: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = v.dim();
    let row0: Vec<f64> = (0..n).map(|j| v.get(0, j)).collect();
    let scale = row0.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
    for i in 1..n {
        let mut deviation = 0.0f64;
        for j in 0..n {
            deviation = deviation.max((v.get(i, j) - row0[(j + n - i) % n]).abs());
        }
        if deviation > 1e-12 * scale {
            return Err(Error::NotCirculant { row: i, deviation });
        }
    }
    Ok(row0)
}

/// Max row sum of absolute values — an upper bound on the spectral radius.
fn row_sum_norm(n: usize, a: &[f64]) -> f64 {
    (0..n)
        .map(|i| a[i * n..(i + 1) * n].iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Exact spectral radius of `X·ω⁺` through the symmetric similarity
/// `ω⁺^{1/2} X ω⁺^{1/2}` (same spectrum, real because `ω⁺` is positive
/// definite).
fn exact_cross_radius(
    model: &HarmonicModel,
    t: Temperature,
    x: &SymmetricMatrix,
) -> Result<f64> {
    let n = model.n();
    // ω⁺^{1/2} = g(V) with g(λ) = √(√λ·tanh(√λ/2T)).
    let half = matrix_function(model.potential(), |lam| {
        let root = lam.sqrt();
        let weight = if t.is_zero() {
            1.0
        } else {
            (root / (2.0 * t.value())).tanh()
        };
        (weight * root).sqrt()
    })?;
    let hx = mat_mul(n, half.as_slice(), x.as_slice());
    let hxh = mat_mul(n, &hx, half.as_slice());
    let vals = eigh_sym_values(&SymmetricMatrix::symmetrized(n, hxh))?;
    Ok(vals[0].abs().max(vals[vals.len() - 1].abs()))
}

/// Finite-`n` sufficient PPT condition for the half-half split of a
/// circulant chain: `λ_min[W]⁻² + 2·r(Xω⁺) < 1`.
///
/// `λ_min[W] = coth(√Λ_max/(2T))` comes from the stiffest circulant mode
/// (the first row's cosine transform). The radius `r` is bounded by the max
/// row sum of `Xω⁺` first; the exact symmetric-similarity eigensolve runs
/// only when that cheap bound cannot already certify. `false` is
/// inconclusive, never a claim of entanglement.
pub fn hh_ppt_sufficient_finite(model: &HarmonicModel, t: Temperature) -> Result<bool> {
    let n = model.n();
    let row0 = circulant_first_row(model.potential())?;
    // Circulant eigenvalues are the cosine transform of the first row (the
    // sine parts cancel by symmetry of the matrix).
    let lambda_max = (0..n)
        .map(|k| {
            (0..n)
                .map(|j| row0[j] * (TWO_PI * (j * k) as f64 / n as f64).cos())
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let w_min_inv = if t.is_zero() {
        1.0
    } else {
        (lambda_max.sqrt() / (2.0 * t.value())).tanh()
    };
    let base = w_min_inv * w_min_inv;

    let x = build_x(model, t)?;
    let plus = omega(model, t, Sign::Plus)?;
    let product = mat_mul(n, x.as_slice(), plus.as_slice());
    let cheap = row_sum_norm(n, &product);
    if base + 2.0 * cheap < 1.0 {
        return Ok(true);
    }
    let exact = exact_cross_radius(model, t, &x)?;
    Ok(base + 2.0 * exact < 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{t_eo_threshold, ChainParams};
    use crate::gaussian::{
        half_half_partition, is_ppt, threshold_temperature, NegativityEngine,
    };

    fn t(v: f64) -> Temperature {
        Temperature::new(v).unwrap()
    }

    fn params(m: usize, s: u32) -> NormBoundParams {
        NormBoundParams::new(m, s).unwrap()
    }

    #[test]
    fn norm_params_validate() {
        assert!(NormBoundParams::new(10, 3).is_ok());
        assert!(NormBoundParams::new(0, 3).is_err());
        assert!(NormBoundParams::new(10, 1).is_err());
        assert!(NormBoundParams::new(10, 7).is_err());
    }

    #[test]
    fn symbol_closed_values_and_evenness() {
        // Uncoupled: Λ ≡ 1, both signs collapse to the same tanh.
        for sign in [Sign::Plus, Sign::Minus] {
            let v = d_continuum(1.234, 0.0, t(0.4), sign);
            assert!((v - (1.0 / 0.8f64).tanh()).abs() < 1e-15);
        }
        // Ground state at the soft mode: pure dispersion roots.
        assert!((d_continuum(0.0, 0.3, Temperature::ZERO, Sign::Plus) - 0.4f64.sqrt()).abs() < 1e-15);
        assert!(
            (d_continuum(0.0, 0.3, Temperature::ZERO, Sign::Minus) - 1.0 / 0.4f64.sqrt()).abs()
                < 1e-15
        );
        // d(x) = d(2π − x).
        for i in 0..32 {
            let x = TWO_PI * i as f64 / 32.0;
            let a = d_continuum(x, 0.3, t(0.3), Sign::Plus);
            let b = d_continuum(TWO_PI - x, 0.3, t(0.3), Sign::Plus);
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn jet_derivatives_match_finite_differences() {
        let g = |x: f64| d_continuum(x, 0.3, t(0.3), Sign::Minus);
        let x0 = 0.9;
        let h = 1e-5;
        let fd1 = (g(x0 + h) - g(x0 - h)) / (2.0 * h);
        let jet = d_jet(x0, 0.3, t(0.3), Sign::Minus);
        assert!((jet.derivative(1) - fd1).abs() < 1e-8);
        let h2 = 1e-4;
        let fd2 = (g(x0 + h2) - 2.0 * g(x0) + g(x0 - h2)) / (h2 * h2);
        assert!((jet.derivative(2) - fd2).abs() < 1e-6);
    }

    #[test]
    fn fourier_uncoupled_chain() {
        let v0 = fourier_coeff(0, Sign::Plus, 0.0, t(0.4), 1e-11).unwrap();
        assert!((v0 - (1.0 / 0.8f64).tanh()).abs() < 1e-10);
        for l in [1i64, 5] {
            let v = fourier_coeff(l, Sign::Plus, 0.0, t(0.4), 1e-11).unwrap();
            assert!(v.abs() < 1e-12, "v_{l} = {v}");
        }
    }

    #[test]
    fn fourier_matches_discrete_ring() {
        // The continuum coefficient is the n → ∞ limit of the circulant
        // first-row entry (1/n)·Σ_k d(2πk/n)·cos(2πkl/n).
        let (c, temp, n) = (0.3, t(0.3), 4096usize);
        for sign in [Sign::Plus, Sign::Minus] {
            for l in [0i64, 1, 3] {
                let continuum = fourier_coeff(l, sign, c, temp, 1e-11).unwrap();
                let discrete: f64 = (0..n)
                    .map(|k| {
                        let x = TWO_PI * k as f64 / n as f64;
                        d_continuum(x, c, temp, sign) * (l as f64 * x).cos()
                    })
                    .sum::<f64>()
                    / n as f64;
                assert!(
                    (continuum - discrete).abs() < 1e-6,
                    "sign {sign:?} l {l}: {continuum} vs {discrete}"
                );
            }
        }
    }

    #[test]
    fn negative_index_equals_positive() {
        let a = fourier_coeff(2, Sign::Minus, 0.3, t(0.3), 1e-11).unwrap();
        let b = fourier_coeff(-2, Sign::Minus, 0.3, t(0.3), 1e-11).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn derivative_constant_vanishes_uncoupled() {
        for s in [1u32, 2, 3] {
            let c_s = c_s_constant(s, Sign::Plus, 0.0, t(0.3), 1e-10).unwrap();
            assert!(c_s.abs() < 1e-12, "C_{s} = {c_s}");
        }
    }

    #[test]
    fn first_order_constant_is_total_variation() {
        let (c, temp) = (0.3, t(0.3));
        let c1 = c_s_constant(1, Sign::Plus, c, temp, 1e-10).unwrap();
        let samples = 100_000;
        let mut tv = 0.0;
        let mut prev = d_continuum(0.0, c, temp, Sign::Plus);
        for i in 1..=samples {
            let x = TWO_PI * i as f64 / samples as f64;
            let cur = d_continuum(x, c, temp, Sign::Plus);
            tv += (cur - prev).abs();
            prev = cur;
        }
        assert!(
            ((c1 - tv) / tv).abs() < 1e-4,
            "C_1 = {c1} vs sampled total variation {tv}"
        );
    }

    #[test]
    fn coefficients_obey_tail_bound() {
        let (c, temp) = (0.3, t(0.3));
        for sign in [Sign::Plus, Sign::Minus] {
            for s in [2u32, 3, 4] {
                let c_s = c_s_constant(s, sign, c, temp, 1e-10).unwrap();
                for l in 1..=12i64 {
                    let v = fourier_coeff(l, sign, c, temp, 1e-11).unwrap();
                    let bound = c_s / (TWO_PI * (l as f64).powi(s as i32));
                    assert!(
                        v.abs() <= bound + 1e-12,
                        "sign {sign:?} s {s} l {l}: |{v}| > {bound}"
                    );
                }
            }
        }
    }

    #[test]
    fn zeta_identities_and_reference() {
        let basel = hurwitz_zeta(2, 1.0).unwrap();
        assert!((basel - PI * PI / 6.0).abs() < 1e-12);
        let a = hurwitz_zeta(3, 4.0).unwrap();
        let b = hurwitz_zeta(3, 5.0).unwrap();
        assert!((a - b - 4.0f64.powi(-3)).abs() < 1e-12);
        // Regression constant pinned by 80-digit summation.
        let frozen = hurwitz_zeta(3, 11.0).unwrap();
        assert!((frozen - 0.0045249174854010337).abs() < 1e-13, "got {frozen}");
        assert!(hurwitz_zeta(1, 2.0).is_err());
        assert!(hurwitz_zeta(3, 0.5).is_err());
    }

    #[test]
    fn k_bounds_uncoupled_chain() {
        let p = params(10, 3);
        let k_plus = k_bound(&p, Sign::Plus, 0.0, t(0.4)).unwrap();
        assert!((k_plus - (1.0 / 0.8f64).tanh()).abs() < 1e-9);
        let k_minus = k_bound(&p, Sign::Minus, 0.0, t(0.4)).unwrap();
        assert!(k_minus.abs() < 1e-9);
    }

    #[test]
    fn k_bound_tightens_with_m() {
        let (c, temp) = (0.3, t(0.5));
        for sign in [Sign::Plus, Sign::Minus] {
            let mut last = f64::INFINITY;
            for m in 1..=8 {
                let k = k_bound(&params(m, 3), sign, c, temp).unwrap();
                assert!(k <= last + 1e-12, "K grew at m = {m} for {sign:?}");
                last = k;
            }
        }
    }

    #[test]
    fn k_bound_reference_values() {
        let p = params(10, 3);
        let k_plus = k_bound(&p, Sign::Plus, 0.3, t(0.5)).unwrap();
        let k_minus = k_bound(&p, Sign::Minus, 0.3, t(0.5)).unwrap();
        assert!((k_plus - 1.126213).abs() < 2e-5, "K+ = {k_plus}");
        assert!((k_minus - 0.057607).abs() < 2e-5, "K- = {k_minus}");
    }

    #[test]
    fn k_plus_dominates_finite_operator_norm() {
        // K⁺ upper-bounds the row-sum norm of the finite-n ω⁺ (which itself
        // dominates its spectral norm).
        let (c, temp) = (0.3, t(0.3));
        let k_plus = k_bound(&params(10, 3), Sign::Plus, c, temp).unwrap();
        let model = ChainParams::new(512, c).unwrap().model().unwrap();
        let plus = omega(&model, temp, Sign::Plus).unwrap();
        let finite_norm = row_sum_norm(512, plus.as_slice());
        assert!(
            k_plus >= finite_norm - 1e-9,
            "K+ = {k_plus} below finite norm {finite_norm}"
        );
    }

    #[test]
    fn certificate_fires_above_curve_not_below() {
        let p = params(10, 3);
        assert!(hh_ppt_certified_macro(0.0, t(0.4), &p).unwrap());
        assert!(hh_ppt_certified_macro(0.3, t(0.45), &p).unwrap());
        assert!(!hh_ppt_certified_macro(0.3, t(0.40), &p).unwrap());
        // T = 0 can never be certified: the edge term alone reaches 1.
        assert!(!hh_ppt_certified_macro(0.3, Temperature::ZERO, &p).unwrap());
    }

    #[test]
    fn certificate_is_sound_against_numerics() {
        // Where the macroscopic certificate fires, a long finite ring must be
        // numerically PPT across the half-half cut.
        let (c, temp) = (0.3, t(0.45));
        assert!(hh_ppt_certified_macro(c, temp, &params(10, 3)).unwrap());
        let model = ChainParams::new(128, c).unwrap().model().unwrap();
        let engine =
            NegativityEngine::new(&model, &half_half_partition(128, 0).unwrap()).unwrap();
        let e = engine.log_negativity(temp).unwrap();
        assert!(e <= 1e-10, "E_N = {e} despite certificate");
    }

    #[test]
    fn bound_curve_reference_and_ordering() {
        let p = params(10, 3);
        let curve = hh_macro_bound_curve(0.3, &p, 1e-5).unwrap();
        assert!(curve.certificate_monotone);
        let curve_t = curve.temperature.value();
        assert!((curve_t - 0.427605).abs() < 1e-3, "curve = {curve_t}");
        // Below the analytic even-odd threshold...
        let eo = t_eo_threshold(0.3, 1e-10).unwrap().value();
        assert!(curve_t < eo);
        // ...and above the numeric half-half threshold of a long ring.
        let model = ChainParams::new(128, 0.3).unwrap().model().unwrap();
        let hh = threshold_temperature(
            &model,
            &half_half_partition(128, 0).unwrap(),
            0.01,
            1.0,
            1e-6,
        )
        .unwrap()
        .value();
        assert!(
            hh <= curve_t,
            "numeric threshold {hh} exceeds bound curve {curve_t}"
        );
    }

    #[test]
    fn bound_curve_tightens_with_effort() {
        let loose = hh_macro_bound_curve(0.3, &params(5, 2), 1e-5).unwrap();
        let tight = hh_macro_bound_curve(0.3, &params(20, 4), 1e-5).unwrap();
        assert!(
            tight.temperature.value() <= loose.temperature.value() + 1e-6,
            "tight {} vs loose {}",
            tight.temperature.value(),
            loose.temperature.value()
        );
    }

    #[test]
    fn bound_curve_increases_with_coupling() {
        let p = params(10, 3);
        let mut last = 0.0;
        for &c in &[0.1, 0.3, 0.45] {
            let v = hh_macro_bound_curve(c, &p, 1e-5).unwrap().temperature.value();
            assert!(v > last, "curve not increasing at c = {c}");
            last = v;
        }
    }

    #[test]
    fn bound_curve_reports_dead_window() {
        // In a window capped below the true edge the certificate never fires.
        let err = curve_in_window(0.45, &params(10, 3), 1e-4, (0.02, 0.2)).unwrap_err();
        assert!(matches!(err, Error::CertificateNeverFires { .. }));
    }

    #[test]
    fn cross_block_structure() {
        let model = ChainParams::new(6, 0.25).unwrap().model().unwrap();
        let temp = t(0.3);
        let x = build_x(&model, temp).unwrap();
        let minus = omega(&model, temp, Sign::Minus).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let crosses = (i < 3) != (j < 3);
                let expect = if crosses { minus.get(i, j) } else { 0.0 };
                assert_eq!(x.get(i, j), expect);
            }
        }
    }

    #[test]
    fn cross_block_rejects_odd_size() {
        let mut entries = vec![0.0; 9];
        for i in 0..3 {
            entries[i * 3 + i] = 1.0 + i as f64;
        }
        let model = HarmonicModel::new(SymmetricMatrix::new(3, entries).unwrap()).unwrap();
        assert!(matches!(
            build_x(&model, t(0.3)),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn finite_certificate_rejects_non_circulant() {
        let mut entries = vec![0.0; 16];
        for i in 0..4 {
            entries[i * 4 + i] = 1.0 + i as f64;
        }
        let model = HarmonicModel::new(SymmetricMatrix::new(4, entries).unwrap()).unwrap();
        assert!(matches!(
            hh_ppt_sufficient_finite(&model, t(0.5)),
            Err(Error::NotCirculant { .. })
        ));
    }

    #[test]
    fn finite_certificate_uncoupled_chain() {
        let model = ChainParams::new(8, 0.0).unwrap().model().unwrap();
        assert!(hh_ppt_sufficient_finite(&model, t(0.5)).unwrap());
    }

    #[test]
    fn finite_certificate_is_sound() {
        let model = ChainParams::new(64, 0.3).unwrap().model().unwrap();
        let partition = half_half_partition(64, 0).unwrap();
        let mut fired = false;
        for &temp in &[0.35, 0.45, 0.6, 1.0] {
            if hh_ppt_sufficient_finite(&model, t(temp)).unwrap() {
                fired = true;
                assert!(
                    is_ppt(&model, t(temp), &partition).unwrap(),
                    "certificate fired at T = {temp} but state is NPPT"
                );
            }
        }
        assert!(fired, "certificate never fired on the test grid");
    }

    #[test]
    fn exact_radius_matches_two_by_two_closed_form() {
        let model = ChainParams::new(2, 0.2).unwrap().model().unwrap();
        let temp = t(0.5);
        let x = build_x(&model, temp).unwrap();
        let plus = omega(&model, temp, Sign::Plus).unwrap();
        let p = mat_mul(2, x.as_slice(), plus.as_slice());
        let trace = p[0] + p[3];
        let det = p[0] * p[3] - p[1] * p[2];
        let disc = (trace * trace - 4.0 * det).sqrt();
        let expect = (0.5 * (trace + disc)).abs().max((0.5 * (trace - disc)).abs());
        let got = exact_cross_radius(&model, temp, &x).unwrap();
        assert!((got - expect).abs() < 1e-12, "{got} vs {expect}");
    }

    #[test]
    fn row_sum_bound_dominates_exact_radius() {
        let model = ChainParams::new(16, 0.3).unwrap().model().unwrap();
        for &temp in &[0.3, 0.6] {
            let x = build_x(&model, t(temp)).unwrap();
            let plus = omega(&model, t(temp), Sign::Plus).unwrap();
            let cheap = row_sum_norm(16, &mat_mul(16, x.as_slice(), plus.as_slice()));
            let exact = exact_cross_radius(&model, t(temp), &x).unwrap();
            assert!(exact <= cheap + 1e-12, "exact {exact} > bound {cheap}");
        }
    }
}
