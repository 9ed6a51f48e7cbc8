//! The degree-(d-2) polynomial h_c^(j)(m) in the exact error expansion
//!
//!   f_c^(j)(1/(m+d)) - f_c^(j)(0) = c(1-c) h_c^(j)(m) / ((m+1)...(m+d-1)),
//!
//! its closed forms for d = 3 and d = 4, the reflection h_c^(j) = h_{1-c}^(d-j),
//! and the sign table over c-intervals.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::fc::f_value;
use crate::error::Error;
use crate::ratpoly::{rat, rat_int, rat_u64, Rational};

/// h_c^(j)(m) recovered from f: (f(1/(m+d)) - f(0)) (m+1)...(m+d-1) / (c(1-c)).
/// Undefined at c in {0, 1}; callers use the explicit formulas there.
pub fn derive_h(c: &Rational, j: usize, d: usize, m: u64) -> Result<Rational, Error> {
    assert!(d >= 2, "derive_h: d must be >= 2");
    assert!(j <= d, "derive_h: j must be <= d");
    if c.is_zero() || *c == Rational::one() {
        return Err(Error::DivisionByZero(format!(
            "h is undefined at c = {c}; use the explicit closed form"
        )));
    }
    let x = Rational::new(1.into(), (m + d as u64).into());
    let diff = f_value(c, j, d, &x) - f_value(c, j, d, &Rational::zero());
    let mut falling = Rational::one();
    for i in 1..d {
        falling *= rat_u64(m + i as u64);
    }
    let c_factor = c * (Rational::one() - c);
    Ok(diff * falling / c_factor)
}

/// Closed forms of h_c^(j)(m) for d = 3 and d = 4; j past the middle routes
/// through the reflection h_c^(j)(m) = h_{1-c}^(d-j)(m).
pub fn explicit_h(c: &Rational, j: usize, d: usize, m: u64) -> Result<Rational, Error> {
    if j > d {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds d = {d}")));
    }
    let mr = rat_u64(m);
    match (d, j) {
        (3, 0) => Ok((rat_int(-3) + rat_int(3) * c) * &mr + (rat_int(-5) + rat_int(7) * c)),
        (3, 1) => Ok((rat_int(2) - rat_int(3) * c) * &mr + (rat_int(4) - rat_int(7) * c)),
        (3, _) => explicit_h(&(Rational::one() - c), 3 - j, 3, m),
        (4, 0) => Ok(quadratic_in_m(c, &mr, [-6, 12, -6], [-37, 63, -26], [-58, 78, -26])),
        (4, 1) => Ok(quadratic_in_m(c, &mr, [6, -9, 3], [37, -50, 15], [58, -68, 18])),
        (4, 2) => Ok(quadratic_in_m(c, &mr, [-6, 6, -1], [-37, 37, -7], [-58, 58, -12])),
        (4, _) => explicit_h(&(Rational::one() - c), 4 - j, 4, m),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// m^2 (q2[0] c^2 + q2[1] c + q2[2]) + m (q1...) + (q0...).
fn quadratic_in_m(c: &Rational, m: &Rational, q2: [i64; 3], q1: [i64; 3], q0: [i64; 3]) -> Rational {
    let at = |q: [i64; 3]| rat_int(q[0]) * c * c + rat_int(q[1]) * c + rat_int(q[2]);
    at(q2) * m * m + at(q1) * m + at(q0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    /// All sampled values >= 0, at least one > 0.
    NonNegative,
    /// All sampled values <= 0, at least one < 0.
    NonPositive,
    /// Strictly positive and strictly negative samples both occur.
    Mixed,
    /// Every sample is exactly zero.
    Zero,
}

impl std::fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SignVerdict::NonNegative => ">=0",
            SignVerdict::NonPositive => "<=0",
            SignVerdict::Mixed => "?",
            SignVerdict::Zero => "0",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignCell {
    pub j: usize,
    pub c_lo: Rational,
    pub c_hi: Rational,
    pub verdict: SignVerdict,
}

#[derive(Debug, Clone)]
pub struct SignTable {
    pub d: usize,
    pub m_min: u64,
    pub m_max: u64,
    pub cells: Vec<SignCell>,
}

/// Column boundaries of the sign table.
///
/// For d = 3 these are the exact rational breakpoints 2/7, 1/3, 3/7, 4/7,
/// 2/3, 5/7. For d = 4 the analytic breakpoints are irrational, so each cell
/// is given by rational inner brackets (verified exact in tests):
///   e1   = (3-sqrt(3))/6          in (21132/100000, 21133/100000)
///   e212 = (127-sqrt(1585))/212   in (41126/100000, 41127/100000)
///   e202 = (127-sqrt(1585))/202   in (43162/100000, 43163/100000)
/// Both 212- and 202-denominator candidates appear as cell boundaries; the
/// cell between them shows which one the arithmetic supports (h^(1) stays
/// nonnegative up to e202, the root of h^(1)(1) = 101c^2 - 127c + 36).
fn cell_bounds(d: usize) -> Result<Vec<(Rational, Rational)>, Error> {
    match d {
        3 => {
            let cuts = [
                rat_int(0),
                rat(2, 7),
                rat(1, 3),
                rat(3, 7),
                rat(4, 7),
                rat(2, 3),
                rat(5, 7),
                rat_int(1),
            ];
            Ok(cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect())
        }
        4 => Ok(vec![
            (rat_int(0), rat(21132, 100000)),
            (rat(21133, 100000), rat(41126, 100000)),
            (rat(41127, 100000), rat(43162, 100000)),
            (rat(43163, 100000), rat(499, 1000)),
            (rat(1, 2), rat(1, 2)),
        ]),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

fn rows(d: usize) -> usize {
    // d = 3 tabulates every j; d = 4 tabulates j = 0..2, the rest mirror
    if d == 3 {
        3
    } else {
        2
    }
}

fn m_min(d: usize) -> u64 {
    // the degree-4 case analysis is an m >= 1 statement; at m = 0 the sign of
    // h^(1)(0) = 58c^2 - 68c + 18 flips inside the first column
    if d == 4 {
        1
    } else {
        0
    }
}

/// Sample h_c^(j)(m) over every cell and classify the sign per (j, cell).
pub fn sign_table(d: usize, m_max: u64) -> Result<SignTable, Error> {
    let bounds = cell_bounds(d)?;
    let m_lo = m_min(d);
    assert!(m_max >= m_lo);
    let mut cells = Vec::new();
    for j in 0..=rows(d) {
        for (lo, hi) in &bounds {
            let mut samples = vec![lo.clone()];
            if lo != hi {
                let w = hi - lo;
                for q in [1i64, 2, 3] {
                    samples.push(lo + &w * rat(q, 4));
                }
                samples.push(hi.clone());
            }
            let mut has_pos = false;
            let mut has_neg = false;
            for c in &samples {
                for m in m_lo..=m_max {
                    let h = explicit_h(c, j, d, m)?;
                    if h.is_positive() {
                        has_pos = true;
                    } else if h.is_negative() {
                        has_neg = true;
                    }
                }
            }
            let verdict = match (has_pos, has_neg) {
                (true, true) => SignVerdict::Mixed,
                (true, false) => SignVerdict::NonNegative,
                (false, true) => SignVerdict::NonPositive,
                (false, false) => SignVerdict::Zero,
            };
            cells.push(SignCell { j, c_lo: lo.clone(), c_hi: hi.clone(), verdict });
        }
    }
    Ok(SignTable { d, m_min: m_lo, m_max, cells })
}

/// Reference verdicts the computed table must reproduce. For d = 3 this is
/// the published table, "?" cells included. For d = 4 it records what the
/// exact arithmetic gives at m >= 1 (see `cell_bounds` on the 212/202
/// boundary question; on the last open cell h^(2) is nonnegative because the
/// m-quadratic has its vertex left of 0 there and h^(2)(0) > 0).
pub fn reference_sign_table(d: usize) -> Result<Vec<SignCell>, Error> {
    use SignVerdict::{Mixed as M, NonNegative as P, NonPositive as N};
    let verdicts: Vec<Vec<SignVerdict>> = match d {
        3 => vec![
            vec![N, N, N, N, N, N, M],
            vec![P, P, P, P, M, N, N],
            vec![N, N, M, P, P, P, P],
            vec![M, N, N, N, N, N, N],
        ],
        4 => vec![
            vec![N, N, N, N, N],
            vec![P, P, P, M, N],
            vec![N, M, P, P, P],
        ],
        _ => return Err(Error::UnsupportedDegree(d)),
    };
    let bounds = cell_bounds(d)?;
    let mut cells = Vec::new();
    for (j, row) in verdicts.into_iter().enumerate() {
        for ((lo, hi), verdict) in bounds.iter().zip(row) {
            cells.push(SignCell { j, c_lo: lo.clone(), c_hi: hi.clone(), verdict });
        }
    }
    Ok(cells)
}
