//! Exact arithmetic with sums of r-th roots of unity.
//!
//! Values are kept as integer vectors over the group ring Z[Z_r] (one
//! coefficient per power of the primitive root xi = e^{2 pi i / r}). That
//! representation is not canonical — e.g. 1 + xi + xi^2 = 0 for r = 3 —
//! so equality, zero and integrality tests reduce modulo the r-th
//! cyclotomic polynomial first. Floating point only appears at the
//! output boundary.

use crate::error::{Error, Result};

/// An element of Z[xi_r] in group-ring form: `coeffs[j]` multiplies xi^j.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    r: usize,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(r: usize) -> Cyclotomic {
        assert!(r >= 1);
        Cyclotomic {
            r,
            coeffs: vec![0; r],
        }
    }

    pub fn one(r: usize) -> Cyclotomic {
        Cyclotomic::root_power(r, 0)
    }

    pub fn integer(r: usize, value: i64) -> Cyclotomic {
        let mut c = Cyclotomic::zero(r);
        c.coeffs[0] = value;
        c
    }

    /// xi^e, with `e` taken modulo r (negative exponents allowed).
    pub fn root_power(r: usize, e: i64) -> Cyclotomic {
        let mut c = Cyclotomic::zero(r);
        c.coeffs[e.rem_euclid(r as i64) as usize] = 1;
        c
    }

    pub fn order(&self) -> usize {
        self.r
    }

    /// Adds xi^e in place.
    pub fn add_root_power(&mut self, e: i64) {
        let idx = e.rem_euclid(self.r as i64) as usize;
        self.coeffs[idx] += 1;
    }

    pub fn add_assign(&mut self, other: &Cyclotomic) {
        assert_eq!(self.r, other.r);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += *b;
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.r, other.r);
        Cyclotomic {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: i64) -> Cyclotomic {
        Cyclotomic {
            r: self.r,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Convolution product modulo x^r - 1.
    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.r, other.r);
        let mut out = vec![0i64; self.r];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[(i + j) % self.r] += a * b;
                }
            }
        }
        Cyclotomic {
            r: self.r,
            coeffs: out,
        }
    }

    /// Complex conjugate: xi^j maps to xi^{-j}.
    pub fn conjugate(&self) -> Cyclotomic {
        let mut out = vec![0i64; self.r];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[(self.r - j) % self.r] += c;
        }
        Cyclotomic {
            r: self.r,
            coeffs: out,
        }
    }

    /// Canonical coordinates: the remainder modulo the r-th cyclotomic
    /// polynomial, i.e. coefficients on the basis 1, xi, ..., xi^{phi(r)-1}.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.r);
        let deg = phi.len() - 1;
        let mut work = self.coeffs.clone();
        for d in (deg..work.len()).rev() {
            let c = work[d];
            if c == 0 {
                continue;
            }
            work[d] = 0;
            // x^deg = -sum_{j<deg} phi[j] x^j, shifted up by d - deg
            for j in 0..deg {
                work[d - deg + j] -= c * phi[j];
            }
        }
        work.truncate(deg.max(1));
        work
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// Some(v) when the value is the rational integer v.
    pub fn as_integer(&self) -> Option<i64> {
        let red = self.reduced();
        if red[1..].iter().all(|&c| c == 0) {
            Some(red[0])
        } else {
            None
        }
    }

    /// Evaluation at xi = e^{2 pi i / r}.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let theta = 2.0 * std::f64::consts::PI * (j as f64) / (self.r as f64);
                re += c as f64 * theta.cos();
                im += c as f64 * theta.sin();
            }
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.sub(other).is_zero()
    }
}

impl Eq for Cyclotomic {}

/// Coefficients of the r-th cyclotomic polynomial, ascending degree,
/// computed by exact division of x^r - 1 by all lower cyclotomic factors.
pub fn cyclotomic_polynomial(r: usize) -> Vec<i64> {
    assert!(r >= 1);
    let mut num = vec![0i64; r + 1];
    num[0] = -1;
    num[r] = 1;
    for d in 1..r {
        if r % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Divides by a monic polynomial; panics if the division is not exact.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for d in (dd..rem.len()).rev() {
        let c = rem[d];
        if c == 0 {
            continue;
        }
        quot[d - dd] = c;
        for j in 0..=dd {
            rem[d - dd + j] -= c * den[j];
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}

/// A cyclotomic value with a positive integer denominator, for quantities
/// like character averages that are a priori rational combinations of
/// roots of unity. Comparison cross-multiplies, so it stays exact.
#[derive(Clone, Debug)]
pub struct CycRat {
    pub num: Cyclotomic,
    pub den: i64,
}

impl CycRat {
    pub fn new(num: Cyclotomic, den: i64) -> CycRat {
        assert!(den > 0);
        CycRat { num, den }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let (re, im) = self.num.to_complex();
        (re / self.den as f64, im / self.den as f64)
    }

    /// Some(v) when the value is the rational integer v.
    pub fn as_integer(&self) -> Option<i64> {
        let n = self.num.as_integer()?;
        if n % self.den == 0 {
            Some(n / self.den)
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.num == self.num.conjugate()
    }
}

impl PartialEq for CycRat {
    fn eq(&self, other: &Self) -> bool {
        self.num.scale(other.den) == other.num.scale(self.den)
    }
}

impl Eq for CycRat {}

/// Guard used by callers that expect an exact integer out of a cyclotomic
/// average; a failure here is a mathematical bug upstream.
pub fn expect_integer(value: &CycRat, context: &str) -> Result<i64> {
    value.as_integer().ok_or_else(|| {
        Error::Invariant(format!("{context}: value {value:?} is not a rational integer"))
    })
}
