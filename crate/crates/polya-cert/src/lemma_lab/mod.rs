//! Machine verification of the analytic core: the rational function f_c^(j),
//! the binomial error identity, the h-polynomial closed forms and sign table,
//! the scaled-sum bounds, and the partial-fraction envelope machinery.
//!
//! Continuous-in-c claims are verified on dense rational grids (grid density
//! is a CLI flag); absolute values of exact rationals are exact, so sweep
//! comparisons carry no floating error — only the grid choice approximates,
//! and refinement convergence is reported.

mod fc;
mod hpoly;
mod identity;
mod partial;
mod sweep;

pub use fc::{f, scaled_sum, FParams};
pub use hpoly::{
    derive_h, explicit_h, reference_sign_table, sign_table, SignCell, SignTable, SignVerdict,
};
pub use identity::verify_lemma_identity;
pub use partial::{
    alpha, decompose_partial_fractions, envelope_value, estimate_cd, q_weight, AlphaResidue,
    CdEstimateReport, PartialFractionDecomposition,
};
pub use sweep::{
    claimed_sum_bound, observed_sum_bound_d4, sweep_lemma, sweep_scaled_sum, SweepReport,
    SweepViolation,
};
