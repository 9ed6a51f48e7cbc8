//! Exact rational scalars and dense univariate polynomials.
//!
//! Every scalar is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; every operation is exact. Floating point appears only
//! in display formatting (see [`approx_f64`]).
//!
//! Text formats: a rational is `p/q` or `p` with an optional leading minus; a
//! polynomial is a comma-separated list of rationals in ascending power order,
//! e.g. `1,-1,1` for x^2 - x + 1.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, the universal scalar of this crate.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rat: zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Small non-negative integer power, exact.
pub fn rat_pow(x: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= x;
    }
    acc
}

/// Decimal approximation, for display fields only.
pub fn approx_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parse `p/q` or `p` (optional leading minus). Rejects zero denominators
/// instead of panicking like `BigRational::new` would.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    match t.split_once('/') {
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|e| Error::Parse(format!("bad integer `{t}`: {e}"))),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim())
                .map_err(|e| Error::Parse(format!("bad numerator in `{t}`: {e}")))?;
            let d = BigInt::from_str(d.trim())
                .map_err(|e| Error::Parse(format!("bad denominator in `{t}`: {e}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{t}`")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Binomial coefficient C(n, k) as an exact rational; 0 when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    if k < 0 || (k as u64) > n {
        return Rational::zero();
    }
    Rational::from_integer(binomial_int(n, k as u64))
}

pub(crate) fn binomial_int(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: C(n, i+1) = C(n, i) * (n - i) / (i + 1)
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient a(a-1)...(a-k+1)/k! for rational `a`;
/// agrees with [`binomial`] on integer arguments, and `k = 0` gives 1.
pub fn generalized_binomial(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= a - rat_u64(i);
        acc /= rat_u64(i + 1);
    }
    acc
}

/// Dense univariate polynomial over [`Rational`], coefficients in ascending
/// power order. Trailing zero coefficients are trimmed on construction; the
/// zero polynomial has an empty coefficient vector and no degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact formal derivative.
    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_u64(i as u64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Full convolution product.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// (1 + x)^m, built from the iterated binomial row.
    pub fn one_plus_x_pow(m: u64) -> Polynomial {
        let mut c = BigInt::one();
        let mut row = Vec::with_capacity(m as usize + 1);
        row.push(Rational::one());
        for k in 1..=m {
            c = c * BigInt::from(m - k + 1) / BigInt::from(k);
            row.push(Rational::from_integer(c.clone()));
        }
        Polynomial::new(row)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = t
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}
