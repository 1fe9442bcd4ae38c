//! The univariate rational-function field in `λ` over the rationals.
//!
//! Values are kept in canonical form: numerator and denominator coprime, the
//! denominator monic and nonzero, and zero represented as `0/1`. Equality of
//! canonical forms therefore agrees with cross-multiplication.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CoreError;

use super::poly::Poly;
use super::rational::{parse_rat, rat_to_string, Rat};
use super::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Canonicalize `num/den`. Errors when `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoreError> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        // Monomial denominators are the common case in degeneration data;
        // their gcd is just a power of λ.
        if den.is_monic_monomial() {
            let k = den.degree().unwrap();
            let v = num.valuation().unwrap().min(k);
            return RatFunc {
                num: num.shift_down(v),
                den: den.shift_down(v),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().unwrap().clone();
        let inv = <Rat as Field>::one() / lead;
        RatFunc {
            num: num.scale(&inv),
            den: den.monic(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(super::rational::rat(n))
    }

    pub fn lambda() -> Self {
        Self::from_poly(Poly::lambda())
    }

    /// `λ^k` for any integer `k` (negative powers allowed).
    pub fn lambda_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(<Rat as Field>::one(), k as usize))
        } else {
            RatFunc {
                num: Poly::one(),
                den: Poly::monomial(<Rat as Field>::one(), (-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().map_or(true, |d| d == 0)
    }

    /// λ-adic valuation; `None` for zero. Canonical form guarantees that at
    /// most one of numerator and denominator is divisible by λ.
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().unwrap_or(0) as i64;
        Some(vn - vd)
    }

    /// Leading Laurent coefficient, i.e. the coefficient of `λ^valuation`.
    /// Panics on zero.
    pub fn lowest_coeff(&self) -> Rat {
        let vn = self.num.valuation().expect("lowest_coeff of zero");
        let vd = self.den.valuation().unwrap_or(0);
        self.num.coeff(vn) / self.den.coeff(vd)
    }

    /// Evaluate at a rational point; `None` when the denominator vanishes.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if Field::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn inv(&self) -> Result<RatFunc, CoreError> {
        if Field::is_zero(self) {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// Conservative window of λ-orders that appear in this value: the lower
    /// end is the valuation, the upper end a degree proxy. Used to size the
    /// order-separating exponent when composing two deformation parameters.
    pub fn order_span(&self) -> (i64, i64) {
        if Field::is_zero(self) {
            return (0, 0);
        }
        let lo = self.valuation().unwrap();
        let hi = self.num.degree().unwrap_or(0) as i64 - self.den.valuation().unwrap_or(0) as i64;
        (lo, hi.max(lo))
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if Field::is_zero(&self) {
            return rhs;
        }
        if Field::is_zero(&rhs) {
            return self;
        }
        if self.den == rhs.den {
            return RatFunc::normalized(self.num.add(&rhs.num), self.den);
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFunc::normalized(num, den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if Field::is_zero(&self) || Field::is_zero(&rhs) {
            return <RatFunc as Field>::zero();
        }
        RatFunc::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: RatFunc) -> RatFunc {
        let inv = rhs.inv().expect("division by zero rational function");
        self * inv
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn clear_denominators(row: &mut [Self]) {
        let mut l = Poly::one();
        for x in row.iter() {
            if Field::is_zero(x) || x.den.is_one() {
                continue;
            }
            let g = Poly::gcd(&l, &x.den);
            l = l.mul(&x.den.div_rem(&g).0);
        }
        if l.is_one() {
            return;
        }
        let f = RatFunc::from_poly(l);
        for x in row.iter_mut() {
            *x = x.clone() * f.clone();
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &Poly| -> String {
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !Field::is_zero(*c))
                .map(|(k, c)| match k {
                    0 => rat_to_string(c),
                    1 => format!("{}*L", rat_to_string(c)),
                    _ => format!("{}*L^{}", rat_to_string(c), k),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        if self.den.is_one() {
            write!(f, "{}", side(&self.num))
        } else {
            write!(f, "({}) / ({})", side(&self.num), side(&self.den))
        }
    }
}

fn poly_to_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

fn poly_from_strings(v: &[String]) -> Result<Poly, CoreError> {
    let coeffs = v.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?;
    Ok(Poly::new(coeffs))
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: poly_to_strings(&self.num),
            den: poly_to_strings(&self.den),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = RatFuncRepr::deserialize(de)?;
        let num = poly_from_strings(&repr.num).map_err(D::Error::custom)?;
        let den = poly_from_strings(&repr.den).map_err(D::Error::custom)?;
        RatFunc::new(num, den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_frac};

    fn l() -> RatFunc {
        RatFunc::lambda()
    }

    #[test]
    fn normal_form() {
        // (λ² - λ) / (λ - 1) = λ
        let num = Poly::new(vec![rat(0), rat(-1), rat(1)]);
        let den = Poly::new(vec![rat(-1), rat(1)]);
        assert_eq!(RatFunc::new(num, den).unwrap(), l());

        // denominator becomes monic: 1 / (2λ) = (1/2) / λ
        let f = RatFunc::new(Poly::one(), Poly::monomial(rat(2), 1)).unwrap();
        assert_eq!(f.num(), &Poly::constant(rat_frac(1, 2)));
        assert!(f.den().is_monic_monomial());

        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn valuations() {
        let f = RatFunc::lambda_pow(-3);
        assert_eq!(f.valuation(), Some(-3));
        assert_eq!(f.lowest_coeff(), rat(1));

        let g = RatFunc::lambda_pow(-3) - RatFunc::from_int(2) * RatFunc::lambda_pow(-2);
        assert_eq!(g.valuation(), Some(-3));
        assert_eq!(g.lowest_coeff(), rat(1));

        assert_eq!(<RatFunc as Field>::zero().valuation(), None);
    }

    #[test]
    fn eval_and_poles() {
        // 1 / (1 - λ)
        let f = RatFunc::new(Poly::one(), Poly::new(vec![rat(1), rat(-1)])).unwrap();
        assert_eq!(f.eval(&rat(0)), Some(rat(1)));
        assert_eq!(f.eval(&rat(2)), Some(rat(-1)));
        assert_eq!(f.eval(&rat(1)), None);
    }

    #[test]
    fn serde_round_trip() {
        let f = (l() + RatFunc::from_int(2)) / (l().clone() * l() - RatFunc::from_int(1));
        let s = serde_json::to_string(&f).unwrap();
        let g: RatFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
