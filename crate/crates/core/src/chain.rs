//! Closed-form machinery for the periodic nearest-neighbor chain.
//!
//! The ring of `n` oscillators with coupling `c` has the circulant potential
//! `V = circ(1, −c, 0, …, 0, −c)`, whose eigenvalues are the dispersion
//! values `Λ_k = 1 − 2c·cos(2πk/n)`. For the alternating (even-odd)
//! bipartition the spectrum of the entanglement product `Q` collapses to the
//! scalar family
//!
//! ```text
//! f(k) = √(Λ_{k+n/2} / Λ_k) · tanh(√Λ_k / 2T) · tanh(√Λ_{k+n/2} / 2T),
//! ```
//!
//! indexed by `k = 0…n/4`, so the log-negativity, its distillability
//! threshold, and the per-site density in the `n → ∞` limit all admit
//! closed forms. Everything here is cross-checked against the generic
//! matrix route in [`crate::gaussian`] by the test suite; the analytic path
//! exists both as an independent oracle and because it reaches system sizes
//! the dense route cannot.
//!
//! The endpoint bookkeeping of the `f(k)` family (multiplicity 1 at `k = 0`,
//! 2 elsewhere) is not obvious from the block structure alone; it was fixed
//! by matching multisets against the numeric `Q` spectrum on small rings and
//! is pinned by tests here.

use crate::error::{Error, Result};
use crate::gaussian::{HarmonicModel, Temperature};
use crate::linalg::SymmetricMatrix;
use crate::numerics::{adaptive_simpson, bisect, count_sign_changes};

use std::f64::consts::{FRAC_PI_2, PI};

/// Initial bisection bracket for threshold searches, in temperature units.
const THRESHOLD_BRACKET: (f64, f64) = (1e-6, 10.0);
/// How many times the upper bracket end may be widened (×10 each time).
const BRACKET_WIDENINGS: usize = 2;

/// Ring geometry: `n` oscillators, nearest-neighbor coupling `c ∈ [0, ½)`.
///
/// The upper limit is the critical point of the chain, where `Λ_0 → 0` and
/// the potential loses definiteness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainParams {
    n: usize,
    c: f64,
}

impl ChainParams {
    /// Validates `n ≥ 1` and `0 ≤ c < ½`.
    pub fn new(n: usize, c: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                reason: "chain needs at least one oscillator".into(),
            });
        }
        if !(0.0..0.5).contains(&c) {
            return Err(Error::InvalidParameter {
                reason: format!("coupling must satisfy 0 <= c < 0.5, got {c}"),
            });
        }
        Ok(ChainParams { n, c })
    }

    /// Oscillator count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nearest-neighbor coupling.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Dispersion value `Λ_k = 1 − 2c·cos(2πk/n)`; requires `k < n`.
    pub fn lambda_k(&self, k: usize) -> f64 {
        assert!(k < self.n, "mode index {k} out of range for n = {}", self.n);
        1.0 - 2.0 * self.c * (2.0 * PI * k as f64 / self.n as f64).cos()
    }

    /// The circulant potential matrix `circ(1, −c, 0, …, 0, −c)`.
    ///
    /// Neighbor couplings accumulate, so the two-site ring gets a single
    /// off-diagonal entry of `−2c` (both bonds connect the same pair).
    pub fn potential_matrix(&self) -> SymmetricMatrix {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] += 1.0;
            entries[i * n + (i + 1) % n] -= self.c;
            entries[i * n + (i + n - 1) % n] -= self.c;
        }
        SymmetricMatrix::new(n, entries).expect("circulant construction is symmetric")
    }

    /// The ring as a [`HarmonicModel`] for the generic matrix route.
    pub fn model(&self) -> Result<HarmonicModel> {
        HarmonicModel::new(self.potential_matrix())
    }

    /// The even-odd `Q`-spectrum value `f(k)`; requires `k ≤ n/4`.
    ///
    /// The partner index `k + n/2` is taken literally (no wraparound is
    /// needed in this range). At `T = 0` both `tanh` factors are 1.
    pub fn f_eval(&self, k: usize, t: Temperature) -> f64 {
        assert!(
            k <= self.n / 4,
            "f(k) is defined for k <= n/4 = {}, got {k}",
            self.n / 4
        );
        let lam_low = self.lambda_k(k);
        let lam_high = self.lambda_k(k + self.n / 2);
        (lam_high / lam_low).sqrt()
            * thermal_tanh(lam_low.sqrt(), t)
            * thermal_tanh(lam_high.sqrt(), t)
    }

    /// Requires `n` to be a positive multiple of 4, the geometry in which the
    /// even-odd reduction below holds; other sizes must use the generic
    /// numeric route.
    fn ensure_mod4(&self) -> Result<()> {
        if self.n < 4 || self.n % 4 != 0 {
            return Err(Error::InvalidParameter {
                reason: format!(
                    "analytic even-odd spectrum needs n to be a multiple of 4 (n >= 4), got {}; \
                     use gaussian::log_negativity for other sizes",
                    self.n
                ),
            });
        }
        Ok(())
    }

    /// The family `f(k)` for `k = 0…n/4` with multiplicities, covering every
    /// eigenvalue of `Q` that can exceed 1.
    pub fn even_odd_spectrum_analytic(&self, t: Temperature) -> Result<EvenOddSpectrum> {
        self.ensure_mod4()?;
        let top = self.n / 4;
        let mut values = Vec::with_capacity(top + 1);
        let mut multiplicities = Vec::with_capacity(top + 1);
        for k in 0..=top {
            values.push(self.f_eval(k, t));
            // The k = 0 mode pairs with k = n/2 in a single 2×2 block; every
            // other k shares its f with the mirror mode n/2 − k. (At k = n/4
            // the value is tanh² ≤ 1 and never contributes to E_N.)
            multiplicities.push(if k == 0 { 1 } else { 2 });
        }
        Ok(EvenOddSpectrum {
            values,
            multiplicities,
        })
    }

    /// Even-odd log-negativity in closed form, with the index of the last
    /// entangled mode.
    pub fn even_odd_logneg_analytic(&self, t: Temperature) -> Result<AnalyticLogNegativity> {
        let spectrum = self.even_odd_spectrum_analytic(t)?;
        let mut value = 0.0;
        let mut k_bar = None;
        for (k, (&f, &m)) in spectrum
            .values
            .iter()
            .zip(&spectrum.multiplicities)
            .enumerate()
        {
            if f > 1.0 {
                value += f64::from(m) * f.log2();
                k_bar = Some(k);
            }
        }
        Ok(AnalyticLogNegativity { value, k_bar })
    }
}

/// `tanh(√λ/(2T))` with the exact ground-state limit.
fn thermal_tanh(sqrt_lambda: f64, t: Temperature) -> f64 {
    if t.is_zero() {
        1.0
    } else {
        (sqrt_lambda / (2.0 * t.value())).tanh()
    }
}

/// The even-odd `Q`-spectrum candidates `f(k)` for `k = 0…n/4`.
#[derive(Clone, Debug)]
pub struct EvenOddSpectrum {
    values: Vec<f64>,
    multiplicities: Vec<u32>,
}

impl EvenOddSpectrum {
    /// `f(k)` values, indexed by `k`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Multiplicity of each value in the full `Q` spectrum.
    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }
}

/// Result of the closed-form even-odd log-negativity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticLogNegativity {
    /// `Σ multiplicity · log₂ max(1, f(k))`, in bits.
    pub value: f64,
    /// Largest `k` with `f(k) > 1`; `None` when the state is PPT.
    pub k_bar: Option<usize>,
}

/// `g(T) + 1` is the `k = 0` mode value `f(0)` in the macroscopic limit;
/// its root in `T` is the even-odd distillability threshold.
fn threshold_excess(c: f64, t: f64) -> f64 {
    let low = (1.0 - 2.0 * c).sqrt();
    let high = (1.0 + 2.0 * c).sqrt();
    (high / low) * (low / (2.0 * t)).tanh() * (high / (2.0 * t)).tanh() - 1.0
}

/// Temperature where the even-odd bipartition of the infinite chain turns
/// PPT: the unique root of `√((1+2c)/(1−2c))·tanh(√(1−2c)/2T)·tanh(√(1+2c)/2T) = 1`.
///
/// The left side decreases strictly in `T` from `√((1+2c)/(1−2c)) > 1` to 0,
/// so a root exists for every `c ∈ (0, ½)`; at `c = 0` the expression never
/// reaches 1 and the search is rejected. The initial bracket `[1e−6, 10]` is
/// widened upward ×10 at most twice before giving up.
pub fn t_eo_threshold(c: f64, tol: f64) -> Result<Temperature> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::InvalidParameter {
            reason: format!(
                "even-odd threshold exists for 0 < c < 0.5 only (at c = 0 the chain is PPT \
                 at every temperature), got {c}"
            ),
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter {
            reason: format!("bisection tolerance must be positive, got {tol}"),
        });
    }
    let (lo, mut hi) = THRESHOLD_BRACKET;
    let mut widenings = 0;
    loop {
        match bisect(|t| threshold_excess(c, t), lo, hi, tol) {
            Ok(root) => return Temperature::new(root),
            Err(e) if widenings < BRACKET_WIDENINGS => {
                let _ = e;
                hi *= 10.0;
                widenings += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Continuum dispersion `Λ(x) = 1 − 2c·cos x`.
fn lambda_continuum(c: f64, x: f64) -> f64 {
    1.0 - 2.0 * c * x.cos()
}

/// Continuum even-odd spectrum value `f(x)`, the `n → ∞` limit of `f(k)`
/// at `x = 2πk/n`.
fn f_continuum(c: f64, x: f64, t: Temperature) -> f64 {
    let low = lambda_continuum(c, x);
    let high = lambda_continuum(c, x + PI);
    (high / low).sqrt() * thermal_tanh(low.sqrt(), t) * thermal_tanh(high.sqrt(), t)
}

fn ensure_subcritical(c: f64) -> Result<()> {
    if !(0.0..0.5).contains(&c) {
        return Err(Error::InvalidParameter {
            reason: format!("coupling must satisfy 0 <= c < 0.5, got {c}"),
        });
    }
    Ok(())
}

/// Edge of the entangled mode band: the root of `f(x) = 1` on `[0, π/2]`.
///
/// Returns 0 when even the `x = 0` mode is PPT (temperature at or above
/// [`t_eo_threshold`]) and `π/2` when the whole band is entangled (the
/// `T → 0` limit). The root is assumed unique — `f` decreases across the
/// band — and a 1024-cell scan verifies that before bisecting; a
/// multi-interval band would be reported as [`Error::MultipleCrossings`].
pub fn x_bar(c: f64, t: Temperature) -> Result<f64> {
    ensure_subcritical(c)?;
    let excess = |x: f64| f_continuum(c, x, t) - 1.0;
    if excess(0.0) <= 0.0 {
        return Ok(0.0);
    }
    if excess(FRAC_PI_2) >= 0.0 {
        return Ok(FRAC_PI_2);
    }
    let crossings = count_sign_changes(excess, 0.0, FRAC_PI_2, 1024);
    if crossings > 1 {
        return Err(Error::MultipleCrossings {
            lo: 0.0,
            hi: FRAC_PI_2,
            crossings,
        });
    }
    bisect(excess, 0.0, FRAC_PI_2, 1e-13)
}

/// Log-negativity per oscillator of the infinite chain across the even-odd
/// bipartition: `(1/π) ∫₀^{x̄} log₂ f(x) dx`, the limit of `E_N / n`.
///
/// The prefactor merges the `2/n` mode spacing of the double-multiplicity
/// family with the `x = 2πk/n` substitution. Zero at or above the
/// threshold temperature, where the band is empty.
pub fn macro_logneg_density(c: f64, t: Temperature, quad_tol: f64) -> Result<f64> {
    let edge = x_bar(c, t)?;
    if edge == 0.0 {
        return Ok(0.0);
    }
    let integral = adaptive_simpson(
        |x| f_continuum(c, x, t).log2(),
        0.0,
        edge,
        quad_tol,
    )?;
    Ok(integral / PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{even_odd_partition, log_negativity, NegativityEngine};

    fn t(v: f64) -> Temperature {
        Temperature::new(v).unwrap()
    }

    #[test]
    fn params_validate_coupling_and_size() {
        assert!(ChainParams::new(8, 0.3).is_ok());
        assert!(ChainParams::new(8, 0.0).is_ok());
        assert!(ChainParams::new(0, 0.3).is_err());
        assert!(ChainParams::new(8, 0.5).is_err());
        assert!(ChainParams::new(8, -0.1).is_err());
    }

    #[test]
    fn dispersion_closed_values() {
        let p = ChainParams::new(8, 0.3).unwrap();
        assert!((p.lambda_k(0) - 0.4).abs() < 1e-15);
        assert!((p.lambda_k(4) - 1.6).abs() < 1e-15);
        let free = ChainParams::new(8, 0.0).unwrap();
        for k in 0..8 {
            assert_eq!(free.lambda_k(k), 1.0);
        }
    }

    #[test]
    fn potential_matches_dispersion_spectrum() {
        let p = ChainParams::new(6, 0.25).unwrap();
        let v = p.potential_matrix();
        for i in 0..6 {
            assert_eq!(v.get(i, i), 1.0);
            assert_eq!(v.get(i, (i + 1) % 6), -0.25);
        }
        let mut numeric = crate::linalg::eigh_sym_values(&v).unwrap();
        let mut analytic: Vec<f64> = (0..6).map(|k| p.lambda_k(k)).collect();
        numeric.sort_by(f64::total_cmp);
        analytic.sort_by(f64::total_cmp);
        for (a, b) in numeric.iter().zip(&analytic) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn two_site_ring_merges_both_bonds() {
        let p = ChainParams::new(2, 0.2).unwrap();
        let v = p.potential_matrix();
        assert_eq!(v.get(0, 1), -0.4);
        let vals = crate::linalg::eigh_sym_values(&v).unwrap();
        assert!((vals[0] - 0.6).abs() < 1e-14);
        assert!((vals[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn f_eval_closed_values() {
        // Uncoupled ring: ratio 1, both tanh factors equal.
        let free = ChainParams::new(8, 0.0).unwrap();
        let expect = (1.0 / 0.8f64).tanh().powi(2);
        for k in 0..=2 {
            assert!((free.f_eval(k, t(0.4)) - expect).abs() < 1e-14);
        }
        // Ground state, softest mode: pure dispersion ratio √(1.6/0.4) = 2.
        let p = ChainParams::new(8, 0.3).unwrap();
        assert!((p.f_eval(0, Temperature::ZERO) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn f_zero_matches_largest_numeric_q_eigenvalue() {
        let p = ChainParams::new(8, 0.3).unwrap();
        let engine =
            NegativityEngine::new(&p.model().unwrap(), &even_odd_partition(8).unwrap()).unwrap();
        let max_q = engine.max_q_eigenvalue(t(0.4)).unwrap();
        assert!((p.f_eval(0, t(0.4)) - max_q).abs() < 1e-9);
    }

    #[test]
    fn spectrum_multiset_matches_numeric_q() {
        let p = ChainParams::new(8, 0.3).unwrap();
        let spectrum = p.even_odd_spectrum_analytic(t(0.1)).unwrap();
        assert_eq!(spectrum.values().len(), 3);
        assert_eq!(spectrum.multiplicities(), &[1, 2, 2]);

        let mut analytic_entangled: Vec<f64> = Vec::new();
        for (&f, &m) in spectrum.values().iter().zip(spectrum.multiplicities()) {
            if f > 1.0 {
                for _ in 0..m {
                    analytic_entangled.push(f);
                }
            }
        }
        analytic_entangled.sort_by(f64::total_cmp);

        let engine =
            NegativityEngine::new(&p.model().unwrap(), &even_odd_partition(8).unwrap()).unwrap();
        let numeric: Vec<f64> = engine
            .q_eigenvalues(t(0.1))
            .unwrap()
            .into_iter()
            .filter(|&lam| lam > 1.0)
            .collect();
        assert_eq!(numeric.len(), analytic_entangled.len());
        for (a, b) in analytic_entangled.iter().zip(&numeric) {
            assert!((a - b).abs() < 1e-9, "analytic {a} vs numeric {b}");
        }
    }

    #[test]
    fn spectrum_requires_multiple_of_four() {
        let p = ChainParams::new(6, 0.3).unwrap();
        let err = p.even_odd_spectrum_analytic(t(0.1)).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { .. }));
        assert!(err.to_string().contains("multiple of 4"));
    }

    #[test]
    fn analytic_negativity_matches_matrix_route() {
        for &n in &[8usize, 16] {
            let partition = even_odd_partition(n).unwrap();
            for &c in &[0.1, 0.45] {
                let p = ChainParams::new(n, c).unwrap();
                let model = p.model().unwrap();
                for &temp in &[0.0, 0.05, 0.5] {
                    let analytic = p.even_odd_logneg_analytic(t(temp)).unwrap().value;
                    let numeric = log_negativity(&model, t(temp), &partition).unwrap();
                    assert!(
                        (analytic - numeric).abs() < 1e-8,
                        "n={n} c={c} T={temp}: analytic {analytic} vs numeric {numeric}"
                    );
                }
            }
        }
    }

    #[test]
    fn softest_mode_dominates() {
        let p = ChainParams::new(16, 0.45).unwrap();
        for &temp in &[0.0, 0.05, 0.2, 0.5] {
            let spectrum = p.even_odd_spectrum_analytic(t(temp)).unwrap();
            let f0 = spectrum.values()[0];
            for &f in spectrum.values() {
                assert!(f <= f0 + 1e-15);
            }
        }
    }

    #[test]
    fn k_bar_tracks_the_entangled_band() {
        let p = ChainParams::new(8, 0.3).unwrap();
        let cold = p.even_odd_logneg_analytic(t(0.1)).unwrap();
        assert!(cold.value > 0.0);
        assert_eq!(cold.k_bar, Some(1));
        // Above the threshold no mode is entangled.
        let hot = p.even_odd_logneg_analytic(t(0.6)).unwrap();
        assert_eq!(hot.value, 0.0);
        assert_eq!(hot.k_bar, None);
        // The uncoupled ring is PPT at any temperature.
        let free = ChainParams::new(8, 0.0).unwrap();
        let r = free.even_odd_logneg_analytic(t(0.1)).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.k_bar, None);
    }

    #[test]
    fn threshold_reference_value_and_monotonicity() {
        // Regression constant pinned by 1e-10 bisection.
        let root = t_eo_threshold(0.3, 1e-10).unwrap();
        assert!(
            (root.value() - 0.48023975064844604).abs() < 1e-9,
            "got {}",
            root.value()
        );
        let grid = [0.05, 0.15, 0.25, 0.35, 0.45];
        let mut last = 0.0;
        for &c in &grid {
            let v = t_eo_threshold(c, 1e-10).unwrap().value();
            assert!(v > last, "threshold not increasing at c = {c}");
            last = v;
        }
    }

    #[test]
    fn threshold_rejects_uncoupled_and_critical() {
        assert!(t_eo_threshold(0.0, 1e-8).is_err());
        assert!(t_eo_threshold(0.5, 1e-8).is_err());
        assert!(t_eo_threshold(0.3, 0.0).is_err());
    }

    #[test]
    fn band_edge_limits_and_reference_value() {
        // Ground state: the whole band is entangled.
        assert_eq!(x_bar(0.3, Temperature::ZERO).unwrap(), FRAC_PI_2);
        // Pinned value from 1e-13 bisection on the continuum spectrum.
        let edge = x_bar(0.3, t(0.1)).unwrap();
        assert!((edge - 1.5704936604577329).abs() < 1e-10, "got {edge}");
        // At or above the threshold the band closes.
        let threshold = t_eo_threshold(0.3, 1e-12).unwrap();
        assert_eq!(x_bar(0.3, t(threshold.value() + 1e-6)).unwrap(), 0.0);
        assert_eq!(x_bar(0.0, t(0.1)).unwrap(), 0.0);
        assert!(x_bar(0.6, t(0.1)).is_err());
    }

    #[test]
    fn density_matches_finite_chain_rate() {
        // The per-site density should reproduce the closed-form sum at
        // n = 4096 to well within half a percent.
        let density = macro_logneg_density(0.3, t(0.1), 1e-10).unwrap();
        let p = ChainParams::new(4096, 0.3).unwrap();
        let finite = p.even_odd_logneg_analytic(t(0.1)).unwrap().value;
        let rate = finite / 4096.0;
        assert!(
            ((density - rate) / rate).abs() < 5e-3,
            "density {density} vs finite-n rate {rate}"
        );
    }

    #[test]
    fn density_vanishes_above_threshold_and_decreases_in_temperature() {
        let threshold = t_eo_threshold(0.3, 1e-12).unwrap().value();
        assert_eq!(macro_logneg_density(0.3, t(threshold + 1e-6), 1e-10).unwrap(), 0.0);
        assert_eq!(macro_logneg_density(0.0, t(0.2), 1e-10).unwrap(), 0.0);
        let grid = [0.0, 0.05, 0.1, 0.2, 0.3, 0.45];
        let mut last = f64::INFINITY;
        for &temp in &grid {
            let d = macro_logneg_density(0.3, t(temp), 1e-10).unwrap();
            assert!(d <= last + 1e-12, "density rose at T = {temp}");
            last = d;
        }
    }

    #[test]
    fn linear_growth_slope_matches_density() {
        // E_N grows linearly in n; the increment from n = 400 to n = 800
        // equals 400 × density to within 1%.
        let (c, temp) = (0.3, t(0.05));
        let e400 = ChainParams::new(400, c)
            .unwrap()
            .even_odd_logneg_analytic(temp)
            .unwrap()
            .value;
        let e800 = ChainParams::new(800, c)
            .unwrap()
            .even_odd_logneg_analytic(temp)
            .unwrap()
            .value;
        let slope = (e800 - e400) / 400.0;
        let density = macro_logneg_density(c, temp, 1e-10).unwrap();
        assert!(
            ((slope - density) / density).abs() < 1e-2,
            "slope {slope} vs density {density}"
        );
    }
}
