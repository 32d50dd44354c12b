//! Bisection root finding for scalar functions and boolean predicates.

use crate::error::{Error, Result};

/// Finds a root of `f` inside `[lo, hi]` by bisection.
///
/// Requires a sign change across the bracket; returns the interval midpoint
/// once the bracket width is at most `tol`. A function value of exactly zero
/// at an endpoint or midpoint is returned immediately.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    assert!(tol > 0.0, "bisection tolerance must be positive");
    assert!(lo < hi, "bracket must satisfy lo < hi");
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::BracketInvalid { lo, hi, f_lo, f_hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f_lo;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket narrower than floating-point spacing
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locates the boundary of a monotone boolean predicate by bisection.
///
/// Requires `pred(lo) == false` and `pred(hi) == true`; returns the smallest
/// value (within `tol`) at which the predicate has been observed to hold.
pub fn bisect_predicate<F: FnMut(f64) -> bool>(
    mut pred: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    assert!(tol > 0.0, "bisection tolerance must be positive");
    assert!(lo < hi, "bracket must satisfy lo < hi");
    if pred(lo) || !pred(hi) {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            f_lo: if pred(lo) { 1.0 } else { -1.0 },
            f_hi: if pred(hi) { 1.0 } else { -1.0 },
        });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Counts sign changes of `f` sampled at `points + 1` equispaced abscissae
/// over `[lo, hi]`. Exact zeros count as a single change.
pub fn count_sign_changes<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> usize {
    assert!(points >= 1);
    let mut changes = 0;
    let mut prev = f(lo).signum();
    for i in 1..=points {
        let x = lo + (hi - lo) * (i as f64) / (points as f64);
        let s = f(x).signum();
        if s != prev && s != 0.0 {
            if prev != 0.0 {
                changes += 1;
            }
            prev = s;
        } else if s != 0.0 {
            prev = s;
        }
    }
    changes
}
