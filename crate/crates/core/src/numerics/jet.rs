//! Forward-mode automatic differentiation with truncated Taylor series.
//!
//! A [`Jet`] carries the coefficients of a degree-7 Taylor polynomial in one
//! variable, so derivatives up to order 7 of any composition of the
//! supported primitives come out exact to roundoff. Arithmetic follows the
//! standard truncated power-series recurrences (Cauchy products and the
//! ODE-derived rules for `sqrt`, `sin`/`cos`, and `tanh`).

use std::ops::{Add, Mul, Neg, Sub};

/// Number of stored Taylor coefficients (value plus seven derivatives).
pub const JET_TERMS: usize = 8;

const FACTORIALS: [f64; JET_TERMS] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0];

/// Truncated Taylor polynomial of a scalar function of one variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; JET_TERMS],
}

impl Jet {
    /// The independent variable seeded at `x0`: value `x0`, slope 1.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; JET_TERMS];
        c[0] = x0;
        c[1] = 1.0;
        Jet { c }
    }

    /// A constant (all derivatives zero).
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_TERMS];
        c[0] = v;
        Jet { c }
    }

    /// Value of the underlying function at the seed point.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// The `k`-th derivative at the seed point, `k < 8`.
    pub fn derivative(&self, k: usize) -> f64 {
        assert!(k < JET_TERMS, "derivative order {k} exceeds jet capacity");
        self.c[k] * FACTORIALS[k]
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(mut self, s: f64) -> Self {
        for v in &mut self.c {
            *v *= s;
        }
        self
    }

    /// Square root; requires a strictly positive leading value.
    pub fn sqrt(&self) -> Self {
        assert!(
            self.c[0] > 0.0,
            "jet sqrt requires a positive value, got {}",
            self.c[0]
        );
        let mut w = [0.0; JET_TERMS];
        w[0] = self.c[0].sqrt();
        for k in 1..JET_TERMS {
            let mut conv = 0.0;
            for j in 1..k {
                conv += w[j] * w[k - j];
            }
            w[k] = (self.c[k] - conv) / (2.0 * w[0]);
        }
        Jet { c: w }
    }

    /// Cosine of the jet (the paired sine is computed internally).
    pub fn cos(&self) -> Self {
        let mut s = [0.0; JET_TERMS];
        let mut c = [0.0; JET_TERMS];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..JET_TERMS {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                let ju = (j as f64) * self.c[j];
                ds += ju * c[k - j];
                dc += ju * s[k - j];
            }
            s[k] = ds / (k as f64);
            c[k] = -dc / (k as f64);
        }
        Jet { c }
    }

    /// Hyperbolic tangent, via the recurrence for w' = (1 − w²)·u'.
    pub fn tanh(&self) -> Self {
        let mut w = [0.0; JET_TERMS];
        let mut sq = [0.0; JET_TERMS]; // running coefficients of w²
        w[0] = self.c[0].tanh();
        sq[0] = w[0] * w[0];
        for k in 1..JET_TERMS {
            let mut acc = 0.0;
            for j in 1..=k {
                let gate = if k == j { 1.0 - sq[0] } else { -sq[k - j] };
                acc += (j as f64) * self.c[j] * gate;
            }
            w[k] = acc / (k as f64);
            let mut conv = 0.0;
            for i in 0..=k {
                conv += w[i] * w[k - i];
            }
            sq[k] = conv;
        }
        Jet { c: w }
    }

    /// Quotient `self / other`; requires a nonzero leading value in `other`.
    pub fn div(&self, other: &Jet) -> Self {
        assert!(
            other.c[0] != 0.0,
            "jet division by a jet with zero leading value"
        );
        let mut w = [0.0; JET_TERMS];
        for k in 0..JET_TERMS {
            let mut conv = 0.0;
            for j in 0..k {
                conv += w[j] * other.c[k - j];
            }
            w[k] = (self.c[k] - conv) / other.c[0];
        }
        Jet { c: w }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; JET_TERMS];
        for k in 0..JET_TERMS {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.c[j] * rhs.c[k - j];
            }
            c[k] = acc;
        }
        Jet { c }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}
