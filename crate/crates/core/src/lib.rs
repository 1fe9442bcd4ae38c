//! Exact-arithmetic tensor degeneration toolkit and certified bound calculus.
//!
//! The crate is organized in three layers:
//!
//! - [`algebra`]: exact scalars over the rationals and over the univariate
//!   rational-function field in the degeneration parameter `λ`, together with
//!   exact dense linear algebra (rank, nullspace, factorizations).
//! - [`tensor`] and [`speedup`]: order-3 tensors, restriction/degeneration
//!   semantics, and constructive speedup transformations that manufacture new
//!   verified degenerations with extra direct summands.
//! - [`spectrum`]: the numeric side. Feasible regions in `(θ1, θ2, θ3)`-space
//!   induced by degeneration identities, a diagonal τ-solver, a certified
//!   branch-and-bound maximizer of `θ1 + θ2 + θ3`, closed-form bound formulas,
//!   and monotonicity validators, all in software extended precision.
//!
//! Everything symbolic is exact: no floating point enters any verification
//! path. Numeric bound reports carry explicit certificates and tolerances.

pub mod algebra;
pub mod check;
pub mod error;
pub mod spectrum;
pub mod speedup;
pub mod tensor;

pub use error::CoreError;
