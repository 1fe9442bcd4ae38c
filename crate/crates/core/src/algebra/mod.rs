//! Exact scalar and linear algebra over the rationals and over the
//! univariate rational-function field in `λ`.

pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use laurent::{laurent_expand, LaurentWindow};
pub use matrix::Mat;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{parse_rat, rat, rat_frac, rat_to_string, Rat};

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An exact field. The two instantiations in this crate are the rationals
/// ([`Rat`]) and rational functions in `λ` ([`RatFunc`]).
///
/// Division by zero panics; callers guard with [`Field::is_zero`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Scale a row by a common nonzero factor that clears denominators,
    /// so that fraction-free elimination can work on denominator-free data.
    /// Rank and nullspace are invariant under row scaling.
    fn clear_denominators(row: &mut [Self]) {
        let _ = row;
    }
}
