//! Seeded random polynomial generation for the verification suites.
//!
//! Coefficients are integers in [-bound, bound] with a nonzero leading
//! coefficient; positivity is forced by rejection against the certifier.

use rand::Rng;

use crate::positivity::{certify_positive, CertStatus};
use crate::ratpoly::Polynomial;

/// Random polynomial of exact degree `degree`.
pub fn sample_polynomial<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> Polynomial {
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    while coeffs[degree] == 0 {
        coeffs[degree] = rng.gen_range(-bound..=bound);
    }
    Polynomial::from_i64(&coeffs)
}

/// Random polynomial of exact degree `degree` that is certified positive on
/// [0, inf), by rejection sampling.
pub fn sample_positive_polynomial<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> Polynomial {
    loop {
        let p = sample_polynomial(rng, degree, bound);
        if certify_positive(&p).is_ok_and(|c| c.status == CertStatus::PositiveOnNonneg) {
            return p;
        }
    }
}
