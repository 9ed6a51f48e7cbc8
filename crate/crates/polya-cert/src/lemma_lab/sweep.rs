//! Exhaustive scaled-sum sweeps over the (c, m) grid.
//!
//! `sweep_lemma` checks the claimed constants C_3 = 3/2 and C_4 = 4232/2505.
//! The d = 3 claim holds (the value at c = 1/2 is (3/2)(m+1)/(m+2), approaching
//! 3/2 from below). The d = 4 claim is refuted by the arithmetic: violations
//! start at m = 1 (the m = 1 maximum is 529/303 ~ 1.7459 > 4232/2505 ~ 1.6894)
//! and the values keep growing with m toward the limit curve
//! c(1-c) sum_j C(4,j) |q_j(c)|, where q_j is the m^2-coefficient of h^(j).
//! That curve is 24c(1-c)^2(1-2c) for c below (3-sqrt(3))/6 and
//! 12c(1-c)(1-2c^2) above it; its maximum ~ 2.0765327, at the root
//! c ~ 0.3222921 of 8c^3 - 6c^2 - 2c + 1, is the true supremum of the
//! degree-4 scaled sum (approached, never attained). Sweeps against the
//! rational envelope constant [`observed_sum_bound_d4`] are clean.

use num_traits::Zero;
use rayon::prelude::*;

use super::fc::scaled_sum;
use crate::error::Error;
use crate::ratpoly::{rat, Rational};

#[derive(Debug, Clone)]
pub struct SweepViolation {
    pub c: Rational,
    pub m: u64,
    pub value: Rational,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub d: usize,
    pub m_min: u64,
    pub m_max: u64,
    pub grid_denominator: u64,
    pub max_scaled_sum: Rational,
    pub argmax_c: Rational,
    pub argmax_m: u64,
    pub claimed_c_d: Rational,
    pub violations: Vec<SweepViolation>,
}

/// The claimed scaled-sum bound per degree: 3/2 for d = 3, 4232/2505 for d = 4.
pub fn claimed_sum_bound(d: usize) -> Result<Rational, Error> {
    match d {
        3 => Ok(rat(3, 2)),
        4 => Ok(rat(4232, 2505)),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// Rational constant just above the true supremum (~ 2.0765327) of the
/// degree-4 scaled sum: 10383/5000 = 2.0766. Every value is bounded by
/// c(1-c) max(S2, S1/5, S0/6) where Sk sums C(4,j)|m^k-coefficient of h^(j)|
/// (since m^2, m, 1 are at most m^2+5m+6, (m^2+5m+6)/5, (m^2+5m+6)/6), and
/// all three envelope curves stay below this constant.
pub fn observed_sum_bound_d4() -> Rational {
    rat(10383, 5000)
}

/// Sweep against the claimed constant for d in {3, 4}.
pub fn sweep_lemma(d: usize, m_max: u64, grid_denominator: u64) -> Result<SweepReport, Error> {
    if m_max < 1 {
        return Err(Error::InvalidParameter("m_max must be >= 1".into()));
    }
    if grid_denominator < 2 {
        return Err(Error::InvalidParameter("grid denominator must be >= 2".into()));
    }
    let claimed = claimed_sum_bound(d)?;
    Ok(sweep_scaled_sum(d, m_max, grid_denominator, &claimed))
}

struct Row {
    m: u64,
    max: Rational,
    argmax_c: Rational,
    violations: Vec<SweepViolation>,
}

/// Evaluate scaled_sum on every c = k/grid_denominator in [0, 1] and
/// m in 1..=m_max, recording the max, its argmax (ties resolved to the
/// smallest c, then the smallest m) and every value above `claimed`.
/// Rows are scanned in parallel; the reduction order is fixed, so the
/// report is identical under any thread schedule.
pub fn sweep_scaled_sum(
    d: usize,
    m_max: u64,
    grid_denominator: u64,
    claimed: &Rational,
) -> SweepReport {
    let rows: Vec<Row> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let mut max = Rational::zero();
            let mut argmax_c = Rational::zero();
            let mut violations = Vec::new();
            for k in 0..=grid_denominator {
                let c = Rational::new(k.into(), grid_denominator.into());
                let value = scaled_sum(&c, d, m);
                if value > max {
                    max = value.clone();
                    argmax_c = c.clone();
                }
                if value > *claimed {
                    violations.push(SweepViolation { c, m, value });
                }
            }
            Row { m, max, argmax_c, violations }
        })
        .collect();

    let mut max_scaled_sum = Rational::zero();
    let mut argmax_c = Rational::zero();
    let mut argmax_m = 1;
    let mut violations = Vec::new();
    for row in rows {
        if row.max > max_scaled_sum
            || (row.max == max_scaled_sum && row.argmax_c < argmax_c)
        {
            max_scaled_sum = row.max;
            argmax_c = row.argmax_c;
            argmax_m = row.m;
        }
        violations.extend(row.violations);
    }
    SweepReport {
        d,
        m_min: 1,
        m_max,
        grid_denominator,
        max_scaled_sum,
        argmax_c,
        argmax_m,
        claimed_c_d: claimed.clone(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat_int, rat_u64};
    use num_traits::Signed;

    #[test]
    fn d3_small_sweep_is_clean_and_peaks_at_one_half() {
        let r = sweep_lemma(3, 40, 80).unwrap();
        assert!(r.violations.is_empty());
        // max on the grid is the closed form (3/2)(m+1)/(m+2) at c = 1/2, m = m_max
        assert_eq!(r.argmax_c, rat(1, 2));
        assert_eq!(r.argmax_m, 40);
        assert_eq!(r.max_scaled_sum, rat(3, 2) * rat_u64(41) / rat_u64(42));
    }

    #[test]
    fn d4_sweep_refutes_the_claimed_constant_starting_at_m_1() {
        let r = sweep_lemma(4, 3, 400).unwrap();
        assert!(!r.violations.is_empty());
        assert!(r.violations.iter().any(|v| v.m == 1));
        assert!(r.max_scaled_sum > rat(4232, 2505));
        // at m = 1 the maximum is 529/303 (the Case-1 peak, c(1-c) = 23/202);
        // the grid stays strictly below it there
        let m1_max = (0..=400u64)
            .map(|k| scaled_sum(&Rational::new(k.into(), 400.into()), 4, 1))
            .max()
            .unwrap();
        assert!(m1_max > rat(4232, 2505) && m1_max < rat(529, 303));
    }

    #[test]
    fn d4_values_grow_with_m_past_every_smaller_candidate() {
        // near c = 0.3223 the sign pattern (-,+,+,-,-) makes the value
        // increase in m toward 12c(1-c)(1-2c^2)
        let c = rat(3223, 10000);
        let v = scaled_sum(&c, 4, 500);
        assert!(v > rat(529, 303));
        assert!(v < observed_sum_bound_d4());
        assert!(scaled_sum(&c, 4, 50) < v);
    }

    #[test]
    fn d4_sweep_is_clean_against_the_envelope_constant() {
        let r = sweep_scaled_sum(4, 60, 400, &observed_sum_bound_d4());
        assert!(r.violations.is_empty());
        assert!(r.max_scaled_sum < observed_sum_bound_d4());
    }

    #[test]
    fn envelope_constant_certifiably_bounds_the_limit_curve() {
        // the two limit-curve pieces are polynomials in c; Sturm-count each
        // difference on (0, 1/2) to certify the bound exceeds them everywhere
        use crate::positivity::SturmChain;
        use crate::ratpoly::Polynomial;
        let bound = observed_sum_bound_d4();
        // 24c(1-c)^2(1-2c) = 24c - 96c^2 + 120c^3 - 48c^4
        let low_piece = Polynomial::new(vec![
            rat_int(0),
            rat_int(24),
            rat_int(-96),
            rat_int(120),
            rat_int(-48),
        ]);
        // 12c(1-c)(1-2c^2) = 12c - 12c^2 - 24c^3 + 24c^4
        let high_piece = Polynomial::new(vec![
            rat_int(0),
            rat_int(12),
            rat_int(-12),
            rat_int(-24),
            rat_int(24),
        ]);
        for piece in [low_piece, high_piece] {
            let gap = Polynomial::constant(bound.clone()).sub(&piece);
            let chain = SturmChain::new(&gap);
            assert_eq!(chain.count_roots_between(&rat_int(0), &rat(1, 2)), 0);
            assert!(gap.eval(&rat_int(0)).is_positive());
            assert!(gap.eval(&rat(1, 2)).is_positive());
        }
    }

    #[test]
    fn sweep_is_symmetric_so_argmax_is_left_of_center() {
        let r = sweep_lemma(3, 5, 50).unwrap();
        assert!(r.argmax_c <= rat(1, 2));
    }

    #[test]
    fn sweep_input_validation() {
        assert!(sweep_lemma(5, 10, 100).is_err());
        assert!(sweep_lemma(3, 0, 100).is_err());
        assert!(sweep_lemma(3, 10, 1).is_err());
    }

    #[test]
    fn sweep_report_is_schedule_independent() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| sweep_lemma(3, 12, 60).unwrap());
        let b = four.install(|| sweep_lemma(3, 12, 60).unwrap());
        assert_eq!(a.max_scaled_sum, b.max_scaled_sum);
        assert_eq!(a.argmax_c, b.argmax_c);
        assert_eq!(a.argmax_m, b.argmax_m);
        assert_eq!(a.violations.len(), b.violations.len());
    }

    #[test]
    fn violations_empty_iff_max_below_claim() {
        for (d, m_max, gd) in [(3usize, 10u64, 40u64), (4, 2, 120)] {
            let r = sweep_lemma(d, m_max, gd).unwrap();
            assert_eq!(
                r.violations.is_empty(),
                r.max_scaled_sum <= r.claimed_c_d,
                "d={d}"
            );
        }
        let _ = rat_int(0);
    }
}
