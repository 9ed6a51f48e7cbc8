//! The rational function f_c^(j)(x) and the scaled absolute-difference sum.
//!
//! f_c^(j)(x) = [ c(c-x)...(c-(j-1)x) * (1-c)(1-c-x)...(1-c-(d-j-1)x) ]
//!            / [ (1)(1-x)(1-2x)...(1-(d-1)x) ],
//! with empty products equal to 1 (j = 0 kills the left block, j = d the
//! right one). At x = 1/(m+d) it relates C(m, c(m+d)-j) to C(m+d, c(m+d)),
//! and f_c^(j)(0) = c^j (1-c)^(d-j).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::ratpoly::{binomial, rat_u64, Rational};

/// Validated argument pack for [`f`].
#[derive(Debug, Clone)]
pub struct FParams {
    pub c: Rational,
    pub j: usize,
    pub d: usize,
    pub x: Rational,
}

impl FParams {
    /// Requires 0 <= c <= 1, j <= d, d >= 2 and 0 <= x < 1/(d-1) (the last
    /// keeps every denominator factor positive).
    pub fn new(c: Rational, j: usize, d: usize, x: Rational) -> Result<Self, Error> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d = {d} must be >= 2")));
        }
        if j > d {
            return Err(Error::InvalidParameter(format!("j = {j} exceeds d = {d}")));
        }
        if c.is_negative() || c > Rational::one() {
            return Err(Error::InvalidParameter(format!("c = {c} outside [0, 1]")));
        }
        if x.is_negative() {
            return Err(Error::InvalidParameter(format!("x = {x} negative")));
        }
        if &x * rat_u64((d - 1) as u64) >= Rational::one() {
            return Err(Error::DenominatorZero(format!(
                "x = {x} not below 1/(d-1) = 1/{}",
                d - 1
            )));
        }
        Ok(Self { c, j, d, x })
    }
}

/// Exact evaluation of f_c^(j)(x).
pub fn f(params: &FParams) -> Rational {
    f_value(&params.c, params.j, params.d, &params.x)
}

pub(crate) fn f_value(c: &Rational, j: usize, d: usize, x: &Rational) -> Rational {
    let mut num = Rational::one();
    for i in 0..j {
        num *= c - x * rat_u64(i as u64);
    }
    let one_minus_c = Rational::one() - c;
    for i in 0..(d - j) {
        num *= &one_minus_c - x * rat_u64(i as u64);
    }
    num / denominator(d, x)
}

fn denominator(d: usize, x: &Rational) -> Rational {
    let mut den = Rational::one();
    for i in 1..d {
        den *= Rational::one() - x * rat_u64(i as u64);
    }
    den
}

/// All of f_c^(0..=d)(x), sharing the prefix products and the denominator.
pub(crate) fn f_all(c: &Rational, d: usize, x: &Rational) -> Vec<Rational> {
    let mut left = Vec::with_capacity(d + 1);
    left.push(Rational::one());
    for i in 0..d {
        let factor = c - x * rat_u64(i as u64);
        let prev = left.last().unwrap().clone();
        left.push(prev * factor);
    }
    let one_minus_c = Rational::one() - c;
    let mut right = Vec::with_capacity(d + 1);
    right.push(Rational::one());
    for i in 0..d {
        let factor = &one_minus_c - x * rat_u64(i as u64);
        let prev = right.last().unwrap().clone();
        right.push(prev * factor);
    }
    let den = denominator(d, x);
    (0..=d).map(|j| &left[j] * &right[d - j] / &den).collect()
}

/// All of f_c^(0..=d)(0) = c^j (1-c)^(d-j).
pub(crate) fn f_zero_all(c: &Rational, d: usize) -> Vec<Rational> {
    let one_minus_c = Rational::one() - c;
    let mut cp = vec![Rational::one()];
    let mut qp = vec![Rational::one()];
    for i in 0..d {
        cp.push(&cp[i] * c);
        qp.push(&qp[i] * &one_minus_c);
    }
    (0..=d).map(|j| &cp[j] * &qp[d - j]).collect()
}

/// (m+1) * sum_j C(d,j) |f_c^(j)(1/(m+d)) - f_c^(j)(0)|, exact.
pub fn scaled_sum(c: &Rational, d: usize, m: u64) -> Rational {
    assert!(m >= 1, "scaled_sum: m must be >= 1");
    assert!(
        !c.is_negative() && *c <= Rational::one(),
        "scaled_sum: c must lie in [0, 1]"
    );
    let x = Rational::new(BigInt::one(), BigInt::from(m + d as u64));
    let fx = f_all(c, d, &x);
    let f0 = f_zero_all(c, d);
    let mut total = Rational::zero();
    for j in 0..=d {
        total += binomial(d as u64, j as i64) * (&fx[j] - &f0[j]).abs();
    }
    total * rat_u64(m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f_examples() {
        // f at x = 0 is c^j (1-c)^(d-j)
        let p = FParams::new(rat(1, 2), 1, 3, rat_int(0)).unwrap();
        assert_eq!(f(&p), rat(1, 8));
        // j = 0, c = 1/2, d = 3, x = 1/4: the numerator factor (1-c-2x) vanishes
        let p = FParams::new(rat(1, 2), 0, 3, rat(1, 4)).unwrap();
        assert_eq!(f(&p), rat_int(0));
    }

    #[test]
    fn f_param_validation() {
        assert!(FParams::new(rat(1, 2), 1, 1, rat_int(0)).is_err());
        assert!(FParams::new(rat(1, 2), 4, 3, rat_int(0)).is_err());
        assert!(FParams::new(rat(3, 2), 1, 3, rat_int(0)).is_err());
        assert!(FParams::new(rat(1, 2), 1, 3, rat(-1, 5)).is_err());
        // x = 1/2 hits the 1 - 2x denominator factor for d = 3
        assert!(matches!(
            FParams::new(rat(1, 2), 1, 3, rat(1, 2)),
            Err(Error::DenominatorZero(_))
        ));
    }

    #[test]
    fn f_symmetry_under_c_and_j_reflection() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let d = rng.gen_range(2..=6usize);
            let j = rng.gen_range(0..=d);
            let c = rat(rng.gen_range(0..=20), 20);
            let m = rng.gen_range(0..=30u64);
            let x = Rational::new(1.into(), (m + d as u64).into());
            assert_eq!(
                f_value(&c, j, d, &x),
                f_value(&(Rational::one() - &c), d - j, d, &x),
                "d={d} j={j} c={c}"
            );
        }
    }

    #[test]
    fn f_matches_binomial_ratio() {
        // C(m, k-j) = C(m+d, k) f_c^(j)(1/(m+d)) with c = k/(m+d)
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let d = rng.gen_range(1..=6usize);
            let m = rng.gen_range(0..=25u64);
            let n = m + d as u64;
            let k = rng.gen_range(0..=n);
            let c = Rational::new(k.into(), n.into());
            let x = Rational::new(1.into(), n.into());
            for j in 0..=d {
                let lhs = binomial(m, k as i64 - j as i64);
                let rhs = binomial(n, k as i64) * f_value(&c, j, d, &x);
                assert_eq!(lhs, rhs, "d={d} m={m} k={k} j={j}");
            }
        }
    }

    #[test]
    fn f_all_agrees_with_single_evaluations() {
        let c = rat(3, 7);
        let x = rat(1, 9);
        for d in 2..=6 {
            let all = f_all(&c, d, &x);
            let zeros = f_zero_all(&c, d);
            for j in 0..=d {
                assert_eq!(all[j], f_value(&c, j, d, &x));
                assert_eq!(zeros[j], f_value(&c, j, d, &rat_int(0)));
            }
        }
    }

    #[test]
    fn scaled_sum_examples() {
        // d=3, c=1/2, m=1: the four diffs are 1/8, 1/24, 1/24, 1/8
        assert_eq!(scaled_sum(&rat(1, 2), 3, 1), rat_int(1));
        // endpoints vanish exactly
        for d in 2..=5 {
            assert_eq!(scaled_sum(&rat_int(0), d, 3), rat_int(0));
            assert_eq!(scaled_sum(&rat_int(1), d, 3), rat_int(0));
        }
    }

    #[test]
    fn scaled_sum_symmetric_in_c() {
        for d in [3usize, 4] {
            for m in [1u64, 2, 7] {
                for k in 0..=20 {
                    let c = rat(k, 20);
                    let mirrored = Rational::one() - &c;
                    assert_eq!(scaled_sum(&c, d, m), scaled_sum(&mirrored, d, m));
                }
            }
        }
    }

    #[test]
    fn scaled_sum_closed_form_at_one_half_d3() {
        // at c = 1/2 the degree-3 value is (3/2)(m+1)/(m+2)
        for m in [1u64, 2, 10, 200] {
            let expected = rat(3, 2) * rat_u64(m + 1) / rat_u64(m + 2);
            assert_eq!(scaled_sum(&rat(1, 2), 3, m), expected);
        }
    }
}
