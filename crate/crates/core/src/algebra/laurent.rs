//! Laurent-series expansion of rational functions around `λ = 0`.


use super::ratfunc::RatFunc;
use super::rational::Rat;
use super::Field;

/// A contiguous window of exact Laurent coefficients, orders `lo ..= hi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentWindow {
    lo: i64,
    coeffs: Vec<Rat>,
}

impl LaurentWindow {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `λ^k`; `None` outside the window.
    pub fn coeff(&self, k: i64) -> Option<&Rat> {
        if k < self.lo {
            return None;
        }
        self.coeffs.get((k - self.lo) as usize)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// Expand `f` as a Laurent series and return the window from the valuation
/// of `f` up to `hi` (up to the valuation itself when `hi` lies below it).
/// The zero input yields a single zero coefficient at order 0.
///
/// A denominator divisible by λ is handled by factoring the λ-power out
/// first; the remaining unit part is inverted as a power series.
pub fn laurent_expand(f: &RatFunc, hi: i64) -> LaurentWindow {
    if Field::is_zero(f) {
        return LaurentWindow {
            lo: 0,
            coeffs: vec![<Rat as Field>::zero(); (hi.max(0) + 1) as usize],
        };
    }
    let v = f.valuation().unwrap();
    let len = (hi - v).max(0) as usize + 1;

    // Strip λ-powers so the denominator has a nonzero constant term.
    let num = f.num().shift_down(f.num().valuation().unwrap());
    let den = f.den().shift_down(f.den().valuation().unwrap_or(0));
    let d0 = den.coeff(0);
    debug_assert!(!Field::is_zero(&d0));

    // c_k·d_0 = n_k − Σ_{j≥1} d_j·c_{k−j}
    let mut coeffs: Vec<Rat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(den.degree().unwrap_or(0)) {
            acc = acc - den.coeff(j) * coeffs[k - j].clone();
        }
        coeffs.push(acc / d0.clone());
    }
    LaurentWindow { lo: v, coeffs }
}

/// Windowed product of two expansions, for cross-checking `laurent_expand`
/// of a product against the convolution of the factors.
pub fn convolve(a: &LaurentWindow, b: &LaurentWindow, hi: i64) -> LaurentWindow {
    let lo = a.lo + b.lo;
    let len = (hi - lo).max(0) as usize + 1;
    let mut coeffs = vec![<Rat as Field>::zero(); len];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            let k = i + j;
            if k < len {
                coeffs[k] = coeffs[k].clone() + x.clone() * y.clone();
            }
        }
    }
    LaurentWindow { lo, coeffs }
}

#[cfg(test)]
mod tests {
    use crate::algebra::poly::Poly;
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn monomial() {
        let f = RatFunc::lambda_pow(-1);
        let w = laurent_expand(&f, 2);
        assert_eq!(w.lo(), -1);
        assert_eq!(w.hi(), 2);
        assert_eq!(w.coeff(-1), Some(&rat(1)));
        assert_eq!(w.coeff(0), Some(&rat(0)));
        assert_eq!(w.coeff(2), Some(&rat(0)));
    }

    #[test]
    fn geometric_series() {
        // 1/(1-λ) = 1 + λ + λ² + λ³ + ...
        let f = RatFunc::new(Poly::one(), Poly::new(vec![rat(1), rat(-1)])).unwrap();
        let w = laurent_expand(&f, 3);
        assert_eq!(w.lo(), 0);
        assert_eq!(w.coeffs(), &[rat(1), rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn negative_orders() {
        // λ⁻³ − 2λ⁻² has window {−3: 1, −2: −2, −1: 0, 0: 0}
        let f = RatFunc::lambda_pow(-3) - RatFunc::from_int(2) * RatFunc::lambda_pow(-2);
        let w = laurent_expand(&f, 0);
        assert_eq!(w.lo(), -3);
        assert_eq!(w.coeffs(), &[rat(1), rat(-2), rat(0), rat(0)]);
    }

    #[test]
    fn window_below_valuation() {
        let f = RatFunc::lambda_pow(5);
        let w = laurent_expand(&f, 2);
        assert_eq!((w.lo(), w.hi()), (5, 5));
        assert_eq!(w.coeff(5), Some(&rat(1)));
    }
}
