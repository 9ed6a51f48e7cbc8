//! Partial-fraction decomposition of f_c^(j) and the general-degree envelope.
//!
//! f_c^(j) has numerator degree <= d-1 and denominator (1-x)(1-2x)...(1-(d-1)x),
//! so f = gamma + sum_{r=1}^{d-1} alpha_r / (1 - rx) with simple poles at 1/r.
//! The residue coefficient is obtained by evaluating (1 - rx) f(x) at x = 1/r:
//!
//!   alpha_c^(j)(r) = (-1)^(d-r-1) * d / (r * C(d,j))
//!                    * C(cr, j) * C((1-c)r, d-j) * C(d-1, r).
//!
//! Every decomposition is verified exactly at d check points, so a wrong
//! residue cannot slip through. gamma is solved from one evaluation at x = 0
//! rather than from a closed form.

use num_traits::{One, Signed, Zero};

use super::fc::f_value;
use crate::error::Error;
use crate::ratpoly::{binomial, generalized_binomial, rat, rat_u64, Rational};

/// One residue alpha_c^(j)(r) of the decomposition.
#[derive(Debug, Clone)]
pub struct AlphaResidue {
    pub value: Rational,
    pub r: usize,
    pub j: usize,
    pub d: usize,
    pub c: Rational,
}

/// Exact residue coefficient at the pole x = 1/r, for 1 <= r <= d-1, j <= d.
pub fn alpha(c: &Rational, j: usize, r: usize, d: usize) -> AlphaResidue {
    assert!(d >= 2, "alpha: d must be >= 2");
    assert!((1..d).contains(&r), "alpha: r must lie in 1..=d-1");
    assert!(j <= d, "alpha: j must be <= d");
    let sign = if (d - r - 1) % 2 == 0 { 1 } else { -1 };
    let cr = c * rat_u64(r as u64);
    let qr = (Rational::one() - c) * rat_u64(r as u64);
    let value = rat(sign * d as i64, r as i64) / binomial(d as u64, j as i64)
        * generalized_binomial(&cr, j as u64)
        * generalized_binomial(&qr, (d - j) as u64)
        * binomial((d - 1) as u64, r as i64);
    AlphaResidue { value, r, j, d, c: c.clone() }
}

#[derive(Debug, Clone)]
pub struct PartialFractionDecomposition {
    pub gamma: Rational,
    pub residues: Vec<AlphaResidue>,
}

impl PartialFractionDecomposition {
    /// gamma + sum_r alpha_r / (1 - r x).
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = self.gamma.clone();
        for a in &self.residues {
            acc += &a.value / (Rational::one() - x * rat_u64(a.r as u64));
        }
        acc
    }
}

/// Decompose f_c^(j) into gamma + sum alpha_r/(1-rx), solving gamma from the
/// exact value at x = 0, then verify the reconstruction at the d further
/// points x = 1/(d+1), ..., 1/(2d).
pub fn decompose_partial_fractions(
    c: &Rational,
    j: usize,
    d: usize,
) -> Result<PartialFractionDecomposition, Error> {
    if d < 2 {
        return Err(Error::UnsupportedDegree(d));
    }
    if j > d {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds d = {d}")));
    }
    let residues: Vec<AlphaResidue> = (1..d).map(|r| alpha(c, j, r, d)).collect();
    let residue_sum: Rational = residues.iter().map(|a| a.value.clone()).sum();
    let gamma = f_value(c, j, d, &Rational::zero()) - residue_sum;
    let decomposition = PartialFractionDecomposition { gamma, residues };
    for t in 1..=d {
        let x = Rational::new(1.into(), ((d + t) as u64).into());
        let direct = f_value(c, j, d, &x);
        let reconstructed = decomposition.eval(&x);
        if direct != reconstructed {
            return Err(Error::VerificationFailed(format!(
                "partial fractions disagree at x = {x} for c = {c}, j = {j}, d = {d}: \
                 f = {direct}, reconstruction = {reconstructed}"
            )));
        }
    }
    Ok(decomposition)
}

/// Q_c(r) = sum_j C(d,j) |alpha_c^(j)(r)| / (c(1-c)); requires 0 < c < 1.
pub fn q_weight(c: &Rational, r: usize, d: usize) -> Rational {
    assert!(
        c.is_positive() && *c < Rational::one(),
        "q_weight: c must lie strictly inside (0, 1)"
    );
    let mut total = Rational::zero();
    for j in 0..=d {
        total += binomial(d as u64, j as i64) * alpha(c, j, r, d).value.abs();
    }
    total / (c * (Rational::one() - c))
}

/// c(1-c) sum_{r=1}^{d-1} (d r/(d-r)) Q_c(r) — the grid quantity whose max
/// over c bounds (m+d)/(m+1) times the scaled sum.
pub fn envelope_value(c: &Rational, d: usize) -> Rational {
    let mut total = Rational::zero();
    for r in 1..d {
        total += rat((d * r) as i64, (d - r) as i64) * q_weight(c, r, d);
    }
    total * c * (Rational::one() - c)
}

#[derive(Debug, Clone)]
pub struct CdEstimateReport {
    pub d: usize,
    pub grid_denominator: u64,
    pub max_value: Rational,
    pub argmax_c: Rational,
    /// The claimed constant this estimate is checked against (d = 5 only).
    pub claimed_bound: Option<Rational>,
    /// Provenance of the claimed constant.
    pub claimed_label: Option<&'static str>,
    /// Grid points whose value reaches or exceeds the claimed bound.
    pub violations: Vec<(Rational, Rational)>,
}

/// Max of [`envelope_value`] over c = k/grid_denominator with 0 < k/gd <= 1/2.
/// For d = 5 the report carries the claimed bound 33/2 and any violations of
/// the strict inequality.
pub fn estimate_cd(d: usize, grid_denominator: u64) -> CdEstimateReport {
    assert!(d >= 2, "estimate_cd: d must be >= 2");
    assert!(grid_denominator >= 2, "estimate_cd: grid too coarse");
    let claimed_bound = if d == 5 { Some(rat(33, 2)) } else { None };
    let claimed_label = claimed_bound.as_ref().map(|_| "conjectural, sweep-supported");
    let mut max_value = Rational::zero();
    let mut argmax_c = Rational::zero();
    let mut violations = Vec::new();
    for k in 1..=(grid_denominator / 2) {
        let c = Rational::new(k.into(), grid_denominator.into());
        let value = envelope_value(&c, d);
        if value > max_value {
            max_value = value.clone();
            argmax_c = c.clone();
        }
        if let Some(bound) = &claimed_bound {
            if value >= *bound {
                violations.push((c, value));
            }
        }
    }
    CdEstimateReport {
        d,
        grid_denominator,
        max_value,
        argmax_c,
        claimed_bound,
        claimed_label,
        violations,
    }
}
