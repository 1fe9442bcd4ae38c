//! Software extended-precision reals with configurable decimal precision.
//!
//! All formula evaluation and optimization run on this type. Arithmetic is
//! correctly rounded to the working precision by the backend; for certified
//! bounds the optimizer widens values outward by a slack that dominates any
//! accumulated rounding error by dozens of orders of magnitude (the slack
//! is `2^(16−bits)` relative, against per-op errors of one unit in the last
//! place), so certificates remain valid under rounding.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::algebra::Rat;
use crate::error::CoreError;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
    static LN_CACHE: RefCell<HashMap<(u64, usize), BigFloat>> = RefCell::new(HashMap::new());
}

/// An extended-precision real. Values are created and combined through a
/// [`RealCtx`], which fixes the working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Real(BigFloat);

impl Real {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Eq for Real {}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .cmp(&other.0)
            .map(|s| s.cmp(&0))
            .expect("NaN in Real comparison")
    }
}

/// Fixed-precision arithmetic context.
#[derive(Clone, Copy, Debug)]
pub struct RealCtx {
    bits: usize,
    digits: u32,
}

impl RealCtx {
    /// Working precision in significant decimal digits (at least 15).
    pub fn new(digits: u32) -> Self {
        let digits = digits.max(15);
        // ~3.33 bits per decimal digit, plus guard bits
        let bits = (digits as usize) * 10 / 3 + 64;
        RealCtx { bits, digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    fn wrap(&self, x: BigFloat) -> Real {
        debug_assert!(!x.is_nan(), "NaN out of arithmetic");
        Real(x)
    }

    pub fn zero(&self) -> Real {
        self.from_i64(0)
    }

    pub fn one(&self) -> Real {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Real {
        Real(BigFloat::from_i64(n, self.bits))
    }

    pub fn from_u64(&self, n: u64) -> Real {
        Real(BigFloat::from_u64(n, self.bits))
    }

    pub fn from_u128(&self, n: u128) -> Real {
        Real(BigFloat::from_u128(n, self.bits))
    }

    pub fn from_f64(&self, x: f64) -> Real {
        Real(BigFloat::from_f64(x, self.bits))
    }

    /// Parse a decimal literal exactly (up to the working precision).
    pub fn from_str(&self, s: &str) -> Result<Real, CoreError> {
        let x = CONSTS.with(|cc| {
            BigFloat::parse(s.trim(), Radix::Dec, self.bits, RM, &mut cc.borrow_mut())
        });
        if x.is_nan() {
            return Err(CoreError::Parse(format!("invalid decimal literal {s:?}")));
        }
        Ok(Real(x))
    }

    pub fn from_rat(&self, x: &Rat) -> Real {
        let num = self
            .from_str(&x.numer().to_string())
            .expect("integer literal");
        let den = self
            .from_str(&x.denom().to_string())
            .expect("integer literal");
        self.div(&num, &den)
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        self.wrap(a.0.add(&b.0, self.bits, RM))
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        self.wrap(a.0.sub(&b.0, self.bits, RM))
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        self.wrap(a.0.mul(&b.0, self.bits, RM))
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        assert!(!b.0.is_zero(), "division by zero");
        self.wrap(a.0.div(&b.0, self.bits, RM))
    }

    pub fn neg(&self, a: &Real) -> Real {
        Real(a.0.neg())
    }

    pub fn abs(&self, a: &Real) -> Real {
        Real(a.0.abs())
    }

    pub fn min(&self, a: &Real, b: &Real) -> Real {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(&self, a: &Real, b: &Real) -> Real {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        assert!(!a.is_negative(), "sqrt of negative value");
        self.wrap(a.0.sqrt(self.bits, RM))
    }

    pub fn ln(&self, a: &Real) -> Real {
        assert!(a.0.is_positive(), "ln needs a positive argument");
        self.wrap(CONSTS.with(|cc| a.0.ln(self.bits, RM, &mut cc.borrow_mut())))
    }

    pub fn exp(&self, a: &Real) -> Real {
        self.wrap(CONSTS.with(|cc| a.0.exp(self.bits, RM, &mut cc.borrow_mut())))
    }

    /// `base^exp` for positive base.
    pub fn pow(&self, base: &Real, exp: &Real) -> Real {
        assert!(base.0.is_positive(), "pow needs a positive base");
        self.wrap(CONSTS.with(|cc| base.0.pow(&exp.0, self.bits, RM, &mut cc.borrow_mut())))
    }

    pub fn powi(&self, base: &Real, n: usize) -> Real {
        self.wrap(base.0.powi(n, self.bits, RM))
    }

    /// Cached `ln(n)` for an integer base.
    pub fn ln_u64(&self, n: u64) -> Real {
        assert!(n >= 1);
        LN_CACHE.with(|cache| {
            let mut cache = cache.borrow_mut();
            let key = (n, self.bits);
            if let Some(x) = cache.get(&key) {
                return Real(x.clone());
            }
            let v = self.ln(&self.from_u64(n));
            cache.insert(key, v.0.clone());
            v
        })
    }

    /// `n^x` for an integer base (`1^x = 1` exactly).
    pub fn ipow(&self, n: u64, x: &Real) -> Real {
        if n == 1 {
            return self.one();
        }
        self.exp(&self.mul(&self.ln_u64(n), x))
    }

    /// Outward widening for certified bounds: relative slack `2^(16−bits)`.
    fn slack(&self, x: &Real) -> Real {
        let mag = self.max(&self.abs(x), &self.one());
        let mut eps = BigFloat::from_u64(1, self.bits);
        eps.set_exponent(1 + 16 - self.bits as i32);
        self.mul(&mag, &Real(eps))
    }

    pub fn widen_up(&self, x: &Real) -> Real {
        self.add(x, &self.slack(x))
    }

    pub fn widen_down(&self, x: &Real) -> Real {
        self.sub(x, &self.slack(x))
    }

    /// Decimal rendering at full working precision; deterministic.
    pub fn to_decimal_string(&self, x: &Real) -> String {
        CONSTS.with(|cc| {
            x.0.format(Radix::Dec, RM, &mut cc.borrow_mut())
                .expect("decimal formatting")
        })
    }

    pub fn to_f64(&self, x: &Real) -> f64 {
        // round-trip through the decimal rendering; only used for display
        // decisions and coarse assertions
        parse_rendered(&self.to_decimal_string(x))
    }

    /// Fixed-point rendering with `k` fractional digits, round half away
    /// from zero.
    pub fn format_decimals(&self, x: &Real, k: usize) -> String {
        let sign = if x.is_negative() { "-" } else { "" };
        let a = self.abs(x);
        let scale = self.powi(&self.from_u64(10), k);
        let scaled = self.mul(&a, &scale);
        let half = self.from_str("0.5").expect("static literal");
        let int = self.add(&scaled, &half).0.floor();
        let digits = CONSTS.with(|cc| {
            int.format(Radix::Dec, RoundingMode::ToZero, &mut cc.borrow_mut())
                .expect("decimal formatting")
        });
        let digits = normalize_integer_string(&digits);
        let digits = if digits.len() <= k {
            format!("{}{}", "0".repeat(k + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (ip, fp) = digits.split_at(digits.len() - k);
        if k == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }
}

/// The backend renders in scientific form (`d.dddde+N`); normalize an
/// integer-valued float to a plain digit string.
fn normalize_integer_string(s: &str) -> String {
    let f = parse_rendered(s);
    format!("{:.0}", f)
}

fn parse_rendered(s: &str) -> f64 {
    s.parse::<f64>().unwrap_or_else(|_| {
        // formats like "1.234e+5" with explicit plus parse natively; fall
        // back to a manual split just in case
        let (m, e) = s.split_once('e').expect("scientific form");
        m.parse::<f64>().unwrap() * 10f64.powi(e.parse::<i32>().unwrap())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_frac;

    fn ctx() -> RealCtx {
        RealCtx::new(50)
    }

    #[test]
    fn arithmetic_against_f64() {
        let c = ctx();
        let a = c.from_str("2.371339").unwrap();
        let b = c.from_i64(3);
        let x = c.div(&a, &b);
        assert!((c.to_f64(&x) - 2.371339 / 3.0).abs() < 1e-12);
        let y = c.ipow(2, &x);
        assert!((c.to_f64(&y) - 2f64.powf(2.371339 / 3.0)).abs() < 1e-12);
        let z = c.sqrt(&c.from_i64(72));
        assert!((c.to_f64(&z) - 72f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exact_unit_power() {
        let c = ctx();
        let x = c.from_str("0.7904463333").unwrap();
        assert_eq!(c.ipow(1, &x), c.one());
    }

    #[test]
    fn ordering_and_widening() {
        let c = ctx();
        let x = c.from_str("1.5").unwrap();
        assert!(c.widen_down(&x) < x);
        assert!(x < c.widen_up(&x));
        // the widening is tiny
        let gap = c.sub(&c.widen_up(&x), &x);
        assert!(c.to_f64(&gap) < 1e-30);
    }

    #[test]
    fn from_rational() {
        let c = ctx();
        let x = c.from_rat(&rat_frac(22, 7));
        assert!((c.to_f64(&x) - 22.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn fixed_point_rendering() {
        let c = ctx();
        let x = c.from_str("3.9334837").unwrap();
        assert_eq!(c.format_decimals(&x, 6), "3.933484");
        assert_eq!(c.format_decimals(&c.from_i64(4), 6), "4.000000");
        assert_eq!(c.format_decimals(&c.from_str("-0.12").unwrap(), 3), "-0.120");
        assert_eq!(c.format_decimals(&c.from_str("0.0005").unwrap(), 3), "0.001");
    }

    #[test]
    fn decimal_string_round_trips() {
        let c = ctx();
        let x = c.div(&c.one(), &c.from_i64(3));
        let s = c.to_decimal_string(&x);
        let y = c.from_str(&s).unwrap();
        let diff = c.to_f64(&c.abs(&c.sub(&x, &y)));
        assert!(diff < 1e-45, "{s} round-trips badly: {diff}");
    }
}
