//! Expansion of (1+x)^m P(x), the all-positive-coefficients criterion, and
//! the exhaustive search for the minimal exponent.
//!
//! The search never assumes monotonicity (positivity at m does not imply
//! positivity at m+1 here); it checks every m from 0 upward, reusing the
//! previous expansion through a single (1+x) convolution step per increment.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::Error;
use crate::positivity::{certify_positive, CertStatus};
use crate::ratpoly::{binomial, Polynomial, Rational};

/// Exact coefficients of (1+x)^m p(x); length m + d + 1 for nonzero p.
pub fn expand(p: &Polynomial, m: u64) -> Polynomial {
    p.mul(&Polynomial::one_plus_x_pow(m))
}

/// True iff every coefficient of (1+x)^m p(x) is strictly positive
/// (a zero coefficient fails the criterion).
pub fn all_coeffs_positive(p: &Polynomial, m: u64) -> bool {
    !p.is_zero() && expand(p, m).coeffs().iter().all(Signed::is_positive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalMOutcome {
    Found(u64),
    ExceededCap,
}

#[derive(Debug, Clone)]
pub struct MinimalMResult {
    pub outcome: MinimalMOutcome,
    pub cap: u64,
    /// For each failing m below the answer, the smallest index with a
    /// nonpositive coefficient.
    pub first_failing_index_per_m: BTreeMap<u64, usize>,
}

/// Default search cap: generous, since both degree bounds upper-bound the
/// answer, so exceeding it signals a bug or a non-positive input.
pub fn default_cap(pr_threshold: u64) -> u64 {
    64.max(pr_threshold.saturating_mul(4))
}

/// Smallest m in 0..=cap with all coefficients of (1+x)^m p positive.
pub fn minimal_m(p: &Polynomial, cap: u64) -> Result<MinimalMResult, Error> {
    let cert = certify_positive(p)?;
    if cert.status != CertStatus::PositiveOnNonneg {
        return Err(Error::NotPositive(cert));
    }
    let mut cur: Vec<Rational> = p.coeffs().to_vec();
    let mut first_failing_index_per_m = BTreeMap::new();
    for m in 0..=cap {
        match cur.iter().position(|c| !c.is_positive()) {
            None => {
                return Ok(MinimalMResult {
                    outcome: MinimalMOutcome::Found(m),
                    cap,
                    first_failing_index_per_m,
                })
            }
            Some(k) => {
                first_failing_index_per_m.insert(m, k);
            }
        }
        // one convolution step with (1+x)
        let mut next = Vec::with_capacity(cur.len() + 1);
        next.push(cur[0].clone());
        for i in 1..cur.len() {
            next.push(&cur[i] + &cur[i - 1]);
        }
        next.push(cur.last().unwrap().clone());
        cur = next;
    }
    Ok(MinimalMResult {
        outcome: MinimalMOutcome::ExceededCap,
        cap,
        first_failing_index_per_m,
    })
}

/// Coefficient k of (1+x)^m p(x) through the binomial formula
/// sum_j a_j C(m, k - j); must equal the convolution coefficient.
pub fn coeff_via_binomials(p: &Polynomial, m: u64, k: i64) -> Result<Rational, Error> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if k < 0 || (k as u64) > m + d as u64 {
        return Err(Error::IndexOutOfRange(format!(
            "k = {k} outside 0..={}",
            m + d as u64
        )));
    }
    Ok((0..=d)
        .map(|j| p.coeff(j) * binomial(m, k - j as i64))
        .sum())
}
