//! Certified exact-arithmetic toolkit for Pólya-type coefficient positivity
//! on the nonnegative half-line.
//!
//! Given a real polynomial P with P(x) > 0 for all x >= 0, every coefficient
//! of (1+x)^m P(x) is positive once m is large enough. This crate computes,
//! in exact rational arithmetic:
//!
//! - a positivity certificate for P on [0, inf) via Sturm-chain root isolation,
//! - the invariants L(P) (exact) and lambda(P) (certified rational interval),
//! - the Powers–Reznick degree threshold and the improved C_d threshold,
//! - the true minimal exponent m by exhaustive search,
//! - machine verification of the underlying identities: the binomial error
//!   identity, the h-polynomial closed forms and their sign table, the
//!   scaled-sum bounds C_3 and C_4, and the partial-fraction machinery behind
//!   the general-degree envelope estimate.
//!
//! The `polya-cert` binary exposes all of it as batch subcommands with
//! machine-readable JSON records.

pub mod bounds;
pub mod error;
pub mod expansion;
pub mod lemma_lab;
pub mod positivity;
pub mod ratpoly;
pub mod sampling;

pub mod cli;

pub use error::Error;
pub use ratpoly::{Polynomial, Rational};
