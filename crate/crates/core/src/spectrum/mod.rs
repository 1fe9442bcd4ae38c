//! Numeric bound calculus: feasible regions in θ-space, the diagonal
//! τ-solver, a certified maximizer, and closed-form bound formulas.

pub mod bounds;
pub mod identity;
pub mod monotone;
pub mod optimize;
pub mod real;
pub mod tau;

pub use bounds::{
    cw_gamma, cw_gamma_iterated, cw_gamma_min, generic_oneslice_bound,
    generic_partitioned_bound, three_direction_bound, toy_bound, BoundKind, BoundReport,
    Certificate,
};
pub use identity::{
    eval_gap, schoenhage_identity, strassen_identity, symmetrize, Identity, MmSum, MmTerm,
    ThetaPoint,
};
pub use monotone::{verify_bound_monotonicity, MonotonicityCheck, MonotonicityReport};
pub use optimize::{omega_from_identities, CertifiedMax, OmegaOptions};
pub use real::{Real, RealCtx};
pub use tau::{diagonal_tau, diagonal_tau_all, DiagonalTau};
