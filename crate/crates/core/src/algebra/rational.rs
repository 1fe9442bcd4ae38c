//! Arbitrary-precision rationals and their textual form.
//!
//! The textual serialization is `"p/q"` with the `/q` part omitted when the
//! denominator is 1. `num_rational` keeps values normalized (positive
//! denominator, reduced fraction), which is exactly the invariant we need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;

use super::Field;

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Render as `"p/q"`, omitting `/q` when the denominator is 1.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse the `"p/q"` form (or a bare integer).
pub fn parse_rat(s: &str) -> Result<Rat, CoreError> {
    let s = s.trim();
    let bad = || CoreError::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let n: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = q.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(CoreError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }

    fn one() -> Self {
        <Rat as One>::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn clear_denominators(row: &mut [Self]) {
        let mut l = BigInt::one();
        for x in row.iter() {
            l = l.lcm(x.denom());
        }
        if l.is_one() {
            return;
        }
        let f = Rat::from_integer(l.abs());
        for x in row.iter_mut() {
            *x = &*x * &f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "5", "-3/7", "22/7", "-1"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&x), s);
        }
        // non-canonical input normalizes
        assert_eq!(rat_to_string(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(rat_to_string(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn clear_denominators_scales_to_integers() {
        let mut row = vec![rat_frac(1, 2), rat_frac(2, 3), rat(4)];
        Rat::clear_denominators(&mut row);
        assert!(row.iter().all(|x| x.denom().is_one()));
        assert_eq!(row[0], rat(3));
        assert_eq!(row[1], rat(4));
        assert_eq!(row[2], rat(24));
    }
}
