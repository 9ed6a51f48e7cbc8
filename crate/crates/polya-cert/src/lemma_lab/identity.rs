//! The binomial error identity behind the coefficient criterion.
//!
//! For every k with c = k/(m+d), the coefficient of x^k in (1+x)^m P(x)
//! differs from the approximator C(m+d, k) sum_j a_j c^j (1-c)^(d-j) by
//! exactly C(m+d, k) sum_j a_j (f_c^(j)(1/(m+d)) - f_c^(j)(0)). The
//! approximator is kept in its polynomial form so the c = 1 endpoint needs
//! no division by 1 - c.

use num_bigint::BigInt;
use num_traits::Zero;

use super::fc::{f_all, f_zero_all};
use crate::expansion::expand;
use crate::ratpoly::{binomial, Polynomial, Rational};

/// Check the identity exactly for every admissible k. Requires a nonzero
/// polynomial and m + deg(p) >= 1.
pub fn verify_lemma_identity(p: &Polynomial, m: u64) -> bool {
    let d = p.degree().expect("verify_lemma_identity: zero polynomial");
    let n = m + d as u64;
    assert!(n >= 1, "verify_lemma_identity: need m + d >= 1");
    let expanded = expand(p, m);
    let x = Rational::new(BigInt::from(1), BigInt::from(n));
    for k in 0..=n {
        let c = Rational::new(BigInt::from(k), BigInt::from(n));
        let fx = f_all(&c, d, &x);
        let f0 = f_zero_all(&c, d);
        let mut approx = Rational::zero();
        let mut err = Rational::zero();
        for j in 0..=d {
            let aj = p.coeff(j);
            approx += &aj * &f0[j];
            err += aj * (&fx[j] - &f0[j]);
        }
        let b = binomial(n, k as i64);
        if expanded.coeff(k as usize) - &b * approx != b * err {
            return false;
        }
    }
    true
}
