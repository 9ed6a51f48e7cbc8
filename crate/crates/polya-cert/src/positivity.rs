//! Positivity certificates on [0, inf) and the invariants L(P) and lambda(P).
//!
//! Root isolation is by bisection driven by Sturm-chain sign-variation counts,
//! entirely in exact rational arithmetic. The chain is the signed remainder
//! sequence of (p, p'); its variation difference V(a) - V(b) counts *distinct*
//! real roots in (a, b], so multiple roots need no square-free preprocessing.
//! A midpoint that evaluates to exactly zero collapses to a degenerate
//! interval, which is how rational critical points come out exact.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::ratpoly::{binomial, rat_int, rat_pow, rat_u64, Polynomial, Rational};

/// Closed rational interval. A degenerate interval (`lo == hi`) pins an exact
/// value; otherwise the tracked root lies strictly between the endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    PositiveOnNonneg,
    HasNonnegRoot,
    NegativeSomewhere,
}

impl fmt::Display for CertStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertStatus::PositiveOnNonneg => "positive_on_nonneg",
            CertStatus::HasNonnegRoot => "has_nonneg_root",
            CertStatus::NegativeSomewhere => "negative_somewhere",
        };
        write!(f, "{s}")
    }
}

/// Evidence that P > 0 on [0, inf), or a witness interval against it.
#[derive(Debug, Clone)]
pub struct PositivityCertificate {
    pub status: CertStatus,
    pub witness: Option<RootInterval>,
    pub method_trace: String,
}

impl fmt::Display for PositivityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{} (witness {})", self.status, w),
            None => write!(f, "{}", self.status),
        }
    }
}

/// Exact and certified invariants of a positive polynomial:
/// L exactly, lambda as a certified interval, and the ratio L / lambda_lo.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub l: Rational,
    pub lambda_lo: Rational,
    pub lambda_hi: Rational,
    pub ratio_hi: Rational,
}

/// Outcome of the L >= lambda comparison.
#[derive(Debug, Clone)]
pub struct LambdaComparison {
    pub l: Rational,
    pub lambda_lo: Rational,
    pub lambda_hi: Rational,
    /// L >= lambda_lo (the testable form of L >= lambda).
    pub holds: bool,
    /// True iff p = b (1+x)^d for some b > 0, checked structurally.
    pub equality: bool,
}

/// Default certification tolerance: 1/10^9.
pub fn default_tolerance() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(10u64).pow(9))
}

// ---------------------------------------------------------------------------
// Sturm machinery
// ---------------------------------------------------------------------------

/// Remainder of polynomial long division.
fn poly_rem(num: &Polynomial, den: &Polynomial) -> Polynomial {
    let dd = den.degree().expect("poly_rem: zero divisor");
    let lead = den.leading_coeff().unwrap().clone();
    let mut rem: Vec<Rational> = num.coeffs().to_vec();
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().unwrap() / &lead;
        for i in 0..=dd {
            let t = &factor * &den.coeffs()[i];
            rem[shift + i] -= t;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    Polynomial::new(rem)
}

/// Signed remainder sequence of (p, p').
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        assert!(!p.is_zero(), "SturmChain of the zero polynomial");
        let mut chain = vec![p.clone()];
        if p.degree().unwrap() >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = poly_rem(&chain[n - 2], &chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        Self { chain }
    }

    /// Sign variations of the chain at `x`, zero entries skipped.
    fn variations_at(&self, x: &Rational) -> usize {
        let mut last: Option<bool> = None;
        let mut v = 0;
        for q in &self.chain {
            let val = q.eval(x);
            if val.is_zero() {
                continue;
            }
            let pos = val.is_positive();
            if let Some(prev) = last {
                if prev != pos {
                    v += 1;
                }
            }
            last = Some(pos);
        }
        v
    }

    /// Number of distinct real roots in the open interval (a, b).
    /// Requires p(a) != 0 and p(b) != 0.
    pub fn count_roots_between(&self, a: &Rational, b: &Rational) -> usize {
        debug_assert!(a < b);
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        debug_assert!(va >= vb, "variation count must be nonincreasing");
        va - vb
    }
}

/// Strict upper bound on |x| over all real roots: 1 + max_i |a_i / a_d|.
pub fn cauchy_root_bound(p: &Polynomial) -> Rational {
    let d = p.degree().expect("cauchy_root_bound: zero polynomial");
    let lead = p.leading_coeff().unwrap().abs();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..d] {
        let r = c.abs() / &lead;
        if r > m {
            m = r;
        }
    }
    m + Rational::one()
}

/// Exact quotient of `p / (x - root)`; the division must be exact.
fn synthetic_quotient(p: &Polynomial, root: &Rational) -> Polynomial {
    let d = p.degree().expect("synthetic_quotient: zero polynomial");
    let mut out = vec![Rational::zero(); d];
    let mut carry = Rational::zero();
    for i in (0..d).rev() {
        carry = p.coeff(i + 1) + carry * root;
        out[i] = carry.clone();
    }
    debug_assert!((p.coeff(0) + carry * root).is_zero(), "inexact deflation");
    Polynomial::new(out)
}

/// Divide out every power of (x - root).
fn deflate(mut p: Polynomial, root: &Rational) -> Polynomial {
    while p.degree().is_some_and(|d| d >= 1) && p.eval(root).is_zero() {
        p = synthetic_quotient(&p, root);
    }
    p
}

/// Exact rational roots of degree-1 and degree-2 polynomials (empty when the
/// roots are irrational or complex). Higher degrees fall back to bisection,
/// which still collapses onto a root whenever a midpoint lands on one.
fn small_degree_rational_roots(q: &Polynomial) -> Vec<Rational> {
    match q.degree() {
        Some(1) => vec![-(q.coeff(0) / q.coeff(1))],
        Some(2) => {
            let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
            let disc = &b * &b - rat_int(4) * &a * &c;
            if disc.is_negative() {
                return Vec::new();
            }
            let sn = disc.numer().sqrt();
            let sd = disc.denom().sqrt();
            if &(&sn * &sn) != disc.numer() || &(&sd * &sd) != disc.denom() {
                return Vec::new();
            }
            let s = Rational::new(sn, sd);
            let two_a = rat_int(2) * &a;
            let r1 = (-&b - &s) / &two_a;
            let r2 = (-&b + &s) / &two_a;
            if r1 == r2 {
                vec![r1]
            } else {
                vec![r1, r2]
            }
        }
        _ => Vec::new(),
    }
}

/// Count distinct real roots of `p` in [0, B] where B is the Cauchy bound;
/// this is the global count against which the isolation output is checked.
pub fn count_distinct_nonneg_roots(p: &Polynomial) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let at_zero = if p.coeff(0).is_zero() { 1 } else { 0 };
    let q = deflate(p.clone(), &Rational::zero());
    if q.degree() == Some(0) {
        return Ok(at_zero);
    }
    let chain = SturmChain::new(&q);
    let b = cauchy_root_bound(&q);
    Ok(at_zero + chain.count_roots_between(&Rational::zero(), &b))
}

/// Isolate all nonnegative real roots of `p` into pairwise-disjoint rational
/// intervals, each containing exactly one distinct root. Rational roots hit
/// during bisection come back as degenerate intervals.
pub fn isolate_nonneg_roots(p: &Polynomial) -> Result<Vec<RootInterval>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zero = Rational::zero();
    let two = rat_int(2);

    let mut exact: Vec<Rational> = Vec::new();
    let mut q = p.clone();
    if q.degree().is_some_and(|d| d >= 1) && q.coeff(0).is_zero() {
        exact.push(zero.clone());
        q = deflate(q, &zero);
    }

    let mut open: Vec<(Rational, Rational)> = Vec::new();
    // Restart from scratch whenever a bisection midpoint turns out to be an
    // exact root: the root is recorded and divided out, so the loop shrinks
    // the degree and terminates.
    'restart: loop {
        open.clear();
        if q.degree().is_none_or(|d| d == 0) {
            break;
        }
        if q.degree().unwrap() <= 2 {
            let rational = small_degree_rational_roots(&q);
            if !rational.is_empty() {
                for r in rational {
                    q = deflate(q, &r);
                    if !r.is_negative() {
                        exact.push(r);
                    }
                }
                continue 'restart;
            }
            // degree 2 with irrational or complex roots: Sturm bisection below
        }
        let chain = SturmChain::new(&q);
        let bound = cauchy_root_bound(&q);
        let mut stack = vec![(zero.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            match chain.count_roots_between(&a, &b) {
                0 => {}
                1 => open.push((a, b)),
                _ => {
                    let mid = (&a + &b) / &two;
                    if q.eval(&mid).is_zero() {
                        exact.push(mid.clone());
                        q = deflate(q, &mid);
                        continue 'restart;
                    }
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
        break;
    }

    let mut out: Vec<RootInterval> = exact.iter().cloned().map(RootInterval::point).collect();
    if !open.is_empty() {
        let chain = SturmChain::new(&q);
        for (mut a, mut b) in open {
            // Shrink until the interval excludes every exact root found along
            // the way, so the returned intervals are pairwise disjoint.
            loop {
                let iv = RootInterval { lo: a.clone(), hi: b.clone() };
                match exact.iter().find(|r| iv.contains(r)) {
                    None => break,
                    Some(_) => {
                        let mid = (&a + &b) / &two;
                        if q.eval(&mid).is_zero() {
                            // The tracked root itself is rational after all.
                            a = mid.clone();
                            b = mid;
                            break;
                        }
                        if chain.count_roots_between(&a, &mid) == 1 {
                            b = mid;
                        } else {
                            a = mid;
                        }
                    }
                }
            }
            out.push(RootInterval { lo: a, hi: b });
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Decide whether p(x) > 0 for every x >= 0.
///
/// Positive verdicts require all three of: no root in [0, inf), p(0) > 0 and
/// a positive leading coefficient — root isolation alone cannot tell
/// "positive" from "negative with no roots".
pub fn certify_positive(p: &Polynomial) -> Result<PositivityCertificate, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let at_zero = p.coeff(0);
    let lead = p.leading_coeff().unwrap().clone();
    let bound = cauchy_root_bound(p);
    let roots = isolate_nonneg_roots(p)?;
    if let Some(first) = roots.first() {
        return Ok(PositivityCertificate {
            status: CertStatus::HasNonnegRoot,
            witness: Some(first.clone()),
            method_trace: format!(
                "sturm variation count gives {} distinct root(s) in [0, {bound})",
                roots.len()
            ),
        });
    }
    // no roots on the ray: sign is constant there, decided at x = 0
    if at_zero.is_negative() {
        return Ok(PositivityCertificate {
            status: CertStatus::NegativeSomewhere,
            witness: Some(RootInterval::point(Rational::zero())),
            method_trace: format!("no roots in [0, {bound}) and p(0) = {at_zero} < 0"),
        });
    }
    Ok(PositivityCertificate {
        status: CertStatus::PositiveOnNonneg,
        witness: None,
        method_trace: format!(
            "sturm variation count gives 0 roots in [0, {bound}); p(0) = {at_zero} > 0; \
             leading coefficient {lead} > 0"
        ),
    })
}

/// L(P) = max_j |a_j| / C(d, j), exact.
pub fn l_value(p: &Polynomial) -> Rational {
    let d = p.degree().expect("l_value: zero polynomial");
    (0..=d)
        .map(|j| p.coeff(j).abs() / binomial(d as u64, j as i64))
        .max()
        .unwrap()
}

// Rational interval arithmetic, just enough for a certified enclosure of
// P(x)/(1+x)^d over an isolating interval.
#[derive(Clone)]
struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    fn point(x: &Rational) -> Self {
        Self { lo: x.clone(), hi: x.clone() }
    }

    fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Enclosure) -> Enclosure {
        let mut vals = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        vals.sort();
        let [lo, .., hi] = vals;
        Enclosure { lo, hi }
    }
}

fn eval_enclosure(p: &Polynomial, x: &Enclosure) -> Enclosure {
    let mut acc = Enclosure::point(&Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Enclosure::point(c));
    }
    acc
}

/// Enclosure of P(t)/(1+t)^d over t in [lo, hi] with lo >= 0.
fn ratio_enclosure(p: &Polynomial, d: usize, iv: &RootInterval) -> Enclosure {
    if iv.is_point() {
        let v = p.eval(&iv.lo) / rat_pow(&(Rational::one() + &iv.lo), d);
        return Enclosure::point(&v);
    }
    let num = eval_enclosure(p, &Enclosure { lo: iv.lo.clone(), hi: iv.hi.clone() });
    let den_lo = rat_pow(&(Rational::one() + &iv.lo), d);
    let den_hi = rat_pow(&(Rational::one() + &iv.hi), d);
    let lo = if num.lo.is_negative() { &num.lo / &den_lo } else { &num.lo / &den_hi };
    let hi = if num.hi.is_negative() { &num.hi / &den_hi } else { &num.hi / &den_lo };
    Enclosure { lo, hi }
}

/// Refine an isolating interval of the critical-point polynomial until the
/// induced enclosure of P/(1+x)^d is positive and no wider than `tol`.
fn refine_candidate(
    p: &Polynomial,
    d: usize,
    k_poly: &Polynomial,
    chain: &SturmChain,
    mut iv: RootInterval,
    tol: &Rational,
) -> (Rational, Rational) {
    let two = rat_int(2);
    loop {
        let enc = ratio_enclosure(p, d, &iv);
        if enc.lo.is_positive() && (&enc.hi - &enc.lo) <= *tol {
            return (enc.lo, enc.hi);
        }
        debug_assert!(!iv.is_point(), "point enclosure is exact and positive");
        let mid = (&iv.lo + &iv.hi) / &two;
        if k_poly.eval(&mid).is_zero() {
            iv = RootInterval::point(mid);
            continue;
        }
        if chain.count_roots_between(&iv.lo, &mid) == 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
}

/// Certified interval of width <= tol around lambda(P) = inf_{x>=0} P(x)/(1+x)^d.
///
/// The infimum is attained among x = 0, the x -> inf limit (the leading
/// coefficient) and the nonnegative roots of K(x) = P'(x)(1+x) - d P(x);
/// every candidate contributes a certified enclosure and the minimum of the
/// endpoints brackets lambda. The returned lower bound is re-certified:
/// P - lambda_lo (1+x)^d must not be negative anywhere on the ray.
pub fn lambda_bounds(p: &Polynomial, tol: &Rational) -> Result<(Rational, Rational), Error> {
    assert!(tol.is_positive(), "lambda_bounds: tol must be positive");
    let cert = certify_positive(p)?;
    if cert.status != CertStatus::PositiveOnNonneg {
        return Err(Error::NotPositive(cert));
    }
    let d = p.degree().unwrap();
    let a0 = p.coeff(0);
    let ad = p.coeff(d);

    let mut lows = vec![a0.clone(), ad.clone()];
    let mut highs = vec![a0, ad];

    let one_plus_x = Polynomial::from_i64(&[1, 1]);
    let k_poly = p.derivative().mul(&one_plus_x).sub(&p.scale(&rat_u64(d as u64)));
    if !k_poly.is_zero() {
        let chain = SturmChain::new(&k_poly);
        for iv in isolate_nonneg_roots(&k_poly)? {
            let (lo, hi) = refine_candidate(p, d, &k_poly, &chain, iv, tol);
            lows.push(lo);
            highs.push(hi);
        }
    }
    // K identically zero means P/(1+x)^d is constant, and the x = 0 candidate
    // already pins it exactly.

    let lambda_lo = lows.into_iter().min().unwrap();
    let lambda_hi = highs.into_iter().min().unwrap();
    debug_assert!(lambda_lo <= lambda_hi);

    let check = p.sub(&Polynomial::one_plus_x_pow(d as u64).scale(&lambda_lo));
    if !check.is_zero() {
        let recheck = certify_positive(&check)?;
        if recheck.status == CertStatus::NegativeSomewhere {
            return Err(Error::VerificationFailed(format!(
                "lower bound {lambda_lo} is not certified: P - lambda_lo (1+x)^d reported {recheck}"
            )));
        }
    }
    Ok((lambda_lo, lambda_hi))
}

/// True iff p = b (1+x)^d for some b > 0, by exact coefficient comparison.
pub fn is_scaled_binomial_power(p: &Polynomial) -> bool {
    match p.degree() {
        None => false,
        Some(d) => {
            let b = p.coeff(0);
            b.is_positive()
                && (1..=d).all(|j| p.coeff(j) == &b * binomial(d as u64, j as i64))
        }
    }
}

/// Check L(P) >= lambda(P) in its testable form L >= lambda_lo, and flag the
/// equality case p = b (1+x)^d.
pub fn check_l_ge_lambda(p: &Polynomial) -> Result<LambdaComparison, Error> {
    let l = l_value(p);
    let (lambda_lo, lambda_hi) = lambda_bounds(p, &default_tolerance())?;
    Ok(LambdaComparison {
        holds: l >= lambda_lo,
        equality: is_scaled_binomial_power(p),
        l,
        lambda_lo,
        lambda_hi,
    })
}

/// Both invariants at once; `ratio_hi = L / lambda_lo` is the conservative
/// ratio used by the degree thresholds.
pub fn invariant_report(p: &Polynomial, tol: &Rational) -> Result<InvariantReport, Error> {
    let l = l_value(p);
    let (lambda_lo, lambda_hi) = lambda_bounds(p, tol)?;
    let ratio_hi = &l / &lambda_lo;
    Ok(InvariantReport { l, lambda_lo, lambda_hi, ratio_hi })
}
