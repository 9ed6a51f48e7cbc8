//! Degree thresholds from the invariant ratio L(P)/lambda(P).
//!
//! Two bounds are compared: the Powers–Reznick bound
//! m > (d^2-d)/2 * ratio - d, and the improved bound m > C_d * ratio - 1 with
//! the table constants C_1..C_4 = 0, 1, 3/2, 4232/2505. Strict inequalities
//! are resolved to integer thresholds by exact rational comparison, never by
//! floating floor, so boundary ratios cannot go off by one.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::Error;
use crate::ratpoly::{rat, rat_int, Rational};

/// Table constant C_d for the improved bound, d = 1..4.
pub fn table_c(d: usize) -> Result<Rational, Error> {
    match d {
        1 => Ok(rat_int(0)),
        2 => Ok(rat_int(1)),
        3 => Ok(rat(3, 2)),
        4 => Ok(rat(4232, 2505)),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// Smallest nonnegative integer strictly greater than `bound`.
fn threshold_above(bound: &Rational) -> u64 {
    let next = bound.floor().to_integer() + num_bigint::BigInt::from(1);
    if next.is_negative() {
        0
    } else {
        next.to_u64().expect("threshold exceeds u64")
    }
}

/// Smallest nonnegative integer m with m > (d^2-d)/2 * ratio - d.
pub fn powers_reznick_threshold(d: usize, ratio: &Rational) -> u64 {
    assert!(d >= 1, "powers_reznick_threshold: degree must be >= 1");
    let half_d2_minus_d = rat((d as i64) * (d as i64 - 1), 2);
    threshold_above(&(half_d2_minus_d * ratio - rat_int(d as i64)))
}

/// Smallest nonnegative integer m with m > C_d * ratio - 1 (d = 1..4).
pub fn improved_threshold(d: usize, ratio: &Rational) -> Result<u64, Error> {
    let c = table_c(d)?;
    Ok(threshold_above(&(c * ratio - rat_int(1))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    PowersReznick,
    Improved,
    Tie,
    /// Reserved for degrees where only the improved bound is defined; not
    /// produced in the current degree range.
    ImprovedOnly,
}

impl std::fmt::Display for Winner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Winner::PowersReznick => "powers_reznick",
            Winner::Improved => "improved",
            Winner::Tie => "tie",
            Winner::ImprovedOnly => "improved_only",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct BoundComparison {
    pub d: usize,
    pub pr_threshold: u64,
    pub improved_threshold: u64,
    pub winner: Winner,
    /// For d = 3: whether ratio >= 4/3, the crossover past which the improved
    /// bound is at least as strong.
    pub d3_ratio_ge_4_3: Option<bool>,
}

/// Compare both thresholds for d = 1..4.
pub fn compare_bounds(d: usize, ratio: &Rational) -> Result<BoundComparison, Error> {
    let pr = powers_reznick_threshold(d, ratio);
    let imp = improved_threshold(d, ratio)?;
    let winner = match imp.cmp(&pr) {
        std::cmp::Ordering::Less => Winner::Improved,
        std::cmp::Ordering::Equal => Winner::Tie,
        std::cmp::Ordering::Greater => Winner::PowersReznick,
    };
    let d3_ratio_ge_4_3 = (d == 3).then(|| *ratio >= rat(4, 3));
    Ok(BoundComparison { d, pr_threshold: pr, improved_threshold: imp, winner, d3_ratio_ge_4_3 })
}

/// Threshold report for any degree; the improved side is absent for d > 4.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub d: usize,
    pub ratio_hi: Rational,
    pub pr_threshold: u64,
    pub improved_threshold: Option<u64>,
    pub c_d: Option<Rational>,
    pub winner: Option<Winner>,
    pub d3_ratio_ge_4_3: Option<bool>,
}

pub fn bound_report(d: usize, ratio_hi: &Rational) -> BoundReport {
    let pr_threshold = powers_reznick_threshold(d, ratio_hi);
    if d <= 4 {
        let cmp = compare_bounds(d, ratio_hi).expect("d <= 4");
        BoundReport {
            d,
            ratio_hi: ratio_hi.clone(),
            pr_threshold,
            improved_threshold: Some(cmp.improved_threshold),
            c_d: Some(table_c(d).expect("d <= 4")),
            winner: Some(cmp.winner),
            d3_ratio_ge_4_3: cmp.d3_ratio_ge_4_3,
        }
    } else {
        BoundReport {
            d,
            ratio_hi: ratio_hi.clone(),
            pr_threshold,
            improved_threshold: None,
            c_d: None,
            winner: None,
            d3_ratio_ge_4_3: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn table_values() {
        assert_eq!(table_c(1).unwrap(), rat_int(0));
        assert_eq!(table_c(2).unwrap(), rat_int(1));
        assert_eq!(table_c(3).unwrap(), rat(3, 2));
        assert_eq!(table_c(4).unwrap(), rat(4232, 2505));
        assert!(matches!(table_c(5), Err(Error::UnsupportedDegree(5))));
        assert!(matches!(table_c(0), Err(Error::UnsupportedDegree(0))));
    }

    #[test]
    fn pr_threshold_examples() {
        assert_eq!(powers_reznick_threshold(2, &rat_int(4)), 3);
        assert_eq!(powers_reznick_threshold(3, &rat_int(1)), 1);
        assert_eq!(powers_reznick_threshold(1, &rat_int(1)), 0);
        assert_eq!(powers_reznick_threshold(1, &rat(999, 7)), 0);
    }

    #[test]
    fn improved_threshold_examples() {
        assert_eq!(improved_threshold(3, &rat_int(4)).unwrap(), 6);
        assert_eq!(improved_threshold(4, &rat_int(1)).unwrap(), 1);
        assert_eq!(improved_threshold(2, &rat_int(1)).unwrap(), 1);
        assert!(improved_threshold(7, &rat_int(1)).is_err());
    }

    #[test]
    fn exact_boundary_has_no_off_by_one() {
        // ratio = 4/3 at d = 3 makes the improved bound exactly 1: m > 1 -> 2
        assert_eq!(improved_threshold(3, &rat(4, 3)).unwrap(), 2);
        // PR at the same ratio: m > 4 - 3 = 1 -> 2
        assert_eq!(powers_reznick_threshold(3, &rat(4, 3)), 2);
    }

    #[test]
    fn compare_examples() {
        let c = compare_bounds(3, &rat_int(4)).unwrap();
        assert_eq!((c.improved_threshold, c.pr_threshold), (6, 10));
        assert_eq!(c.winner, Winner::Improved);
        assert_eq!(c.d3_ratio_ge_4_3, Some(true));

        let c = compare_bounds(3, &rat_int(1)).unwrap();
        assert_eq!((c.improved_threshold, c.pr_threshold), (1, 1));
        assert_eq!(c.winner, Winner::Tie);
        assert_eq!(c.d3_ratio_ge_4_3, Some(false));

        let c = compare_bounds(4, &rat_int(1)).unwrap();
        assert!(matches!(c.winner, Winner::Improved | Winner::Tie));
    }

    #[test]
    fn d4_improved_never_loses() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let ratio = rat_int(1) + rat(rng.gen_range(0..=4000), rng.gen_range(1..=40));
            let c = compare_bounds(4, &ratio).unwrap();
            assert!(
                c.improved_threshold <= c.pr_threshold,
                "ratio {ratio}: improved {} > pr {}",
                c.improved_threshold,
                c.pr_threshold
            );
        }
    }

    #[test]
    fn d3_crossover_matches_claim() {
        // on a rational grid, improved <= pr whenever ratio >= 4/3
        for k in 0..=300 {
            let ratio = rat_int(1) + rat(k, 30);
            let c = compare_bounds(3, &ratio).unwrap();
            if ratio >= rat(4, 3) {
                assert!(c.improved_threshold <= c.pr_threshold, "ratio {ratio}");
            }
        }
    }

    #[test]
    fn thresholds_are_monotone_in_ratio() {
        let mut prev = (0u64, 0u64);
        for k in 0..=200 {
            let ratio = rat_int(1) + rat(k, 13);
            let pr = powers_reznick_threshold(4, &ratio);
            let imp = improved_threshold(4, &ratio).unwrap();
            assert!(pr >= prev.0 && imp >= prev.1);
            prev = (pr, imp);
        }
    }

    #[test]
    fn report_for_high_degree_has_no_improved_side() {
        let r = bound_report(5, &rat_int(3));
        assert_eq!(r.improved_threshold, None);
        assert_eq!(r.c_d, None);
        assert_eq!(r.pr_threshold, powers_reznick_threshold(5, &rat_int(3)));
    }
}
