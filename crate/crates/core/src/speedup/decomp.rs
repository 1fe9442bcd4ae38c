//! Rank-one decompositions over `ℚ(λ)` and the slice scalars used by the
//! one-slice speedups.

use serde::{Deserialize, Serialize};

use crate::algebra::{rat, Field, Mat, Poly, Rat, RatFunc};
use crate::error::CoreError;
use crate::tensor::block::BlockSpec3;
use crate::tensor::degen::{verify_degeneration, DegenFamily, DegenReport};
use crate::tensor::tensor3::{kron, promote_tensor, Tensor3};
use crate::tensor::{cw_tensor, diagonal, CwVariant};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankOneTerm {
    pub a: Vec<RatFunc>,
    pub b: Vec<RatFunc>,
    pub c: Vec<RatFunc>,
}

/// A border decomposition `Σ_i a_i ⊗ b_i ⊗ c_i = target + O(λ)` with
/// declared border rank equal to the number of terms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankOneDecomposition {
    pub target: Tensor3<Rat>,
    pub terms: Vec<RankOneTerm>,
}

impl RankOneDecomposition {
    pub fn border_rank(&self) -> usize {
        self.terms.len()
    }

    /// Shape check: all vectors must match the target dims.
    pub fn validate(&self) -> Result<(), CoreError> {
        let d = self.target.dims();
        for (i, t) in self.terms.iter().enumerate() {
            if t.a.len() != d[0] || t.b.len() != d[1] || t.c.len() != d[2] {
                return Err(CoreError::ShapeMismatch(format!(
                    "term {i} has vector lengths ({}, {}, {}), target dims {:?}",
                    t.a.len(),
                    t.b.len(),
                    t.c.len(),
                    d
                )));
            }
        }
        Ok(())
    }

    /// Maps `A, B, C` with the term vectors as columns, witnessing
    /// `target ⊴ ⟨r⟩`.
    pub fn maps(&self) -> (Mat<RatFunc>, Mat<RatFunc>, Mat<RatFunc>) {
        let d = self.target.dims();
        let r = self.terms.len();
        let col = |vecs: &dyn Fn(&RankOneTerm) -> Vec<RatFunc>, rows: usize| {
            Mat::from_fn(rows, r, |i, j| vecs(&self.terms[j])[i].clone())
        };
        (
            col(&|t: &RankOneTerm| t.a.clone(), d[0]),
            col(&|t: &RankOneTerm| t.b.clone(), d[1]),
            col(&|t: &RankOneTerm| t.c.clone(), d[2]),
        )
    }

    /// The family `target ⊴ ⟨r⟩` with the diagonal source.
    pub fn as_family(&self) -> DegenFamily {
        let (a, b, c) = self.maps();
        let r = self.terms.len();
        DegenFamily {
            a,
            b,
            c,
            source: promote_tensor(&diagonal(r)),
            target: self.target.clone(),
            blocks: BlockSpec3::single(self.target.dims()),
            order_bound: 1,
        }
    }

    pub fn verify(&self) -> Result<DegenReport, CoreError> {
        self.validate()?;
        verify_degeneration(&self.as_family())
    }

    /// Kronecker power: terms are all tuples of factor terms (first index
    /// major), the target is the tensor power.
    pub fn power(&self, n: u32) -> RankOneDecomposition {
        assert!(n >= 1);
        let mut out = self.clone();
        for _ in 1..n {
            out = out.product(self);
        }
        out
    }

    pub fn product(&self, other: &RankOneDecomposition) -> RankOneDecomposition {
        let pair = |x: &[RatFunc], y: &[RatFunc]| -> Vec<RatFunc> {
            let mut v = Vec::with_capacity(x.len() * y.len());
            for a in x {
                for b in y {
                    v.push(a.clone() * b.clone());
                }
            }
            v
        };
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for t1 in &self.terms {
            for t2 in &other.terms {
                terms.push(RankOneTerm {
                    a: pair(&t1.a, &t2.a),
                    b: pair(&t1.b, &t2.b),
                    c: pair(&t1.c, &t2.c),
                });
            }
        }
        RankOneDecomposition {
            target: kron(&self.target, &other.target),
            terms,
        }
    }
}

/// Nonzero scalars `c'_i`, aligned with the terms of a decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SliceScalarsRepr", into = "SliceScalarsRepr")]
pub struct SliceScalars {
    weights: Vec<RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct SliceScalarsRepr {
    weights: Vec<RatFunc>,
}

impl TryFrom<SliceScalarsRepr> for SliceScalars {
    type Error = CoreError;
    fn try_from(r: SliceScalarsRepr) -> Result<Self, CoreError> {
        SliceScalars::new(r.weights)
    }
}

impl From<SliceScalars> for SliceScalarsRepr {
    fn from(s: SliceScalars) -> Self {
        SliceScalarsRepr { weights: s.weights }
    }
}

impl SliceScalars {
    pub fn new(weights: Vec<RatFunc>) -> Result<Self, CoreError> {
        if let Some(i) = weights.iter().position(|w| w.is_zero()) {
            return Err(CoreError::ZeroScalar(i));
        }
        Ok(SliceScalars { weights })
    }

    pub fn weights(&self) -> &[RatFunc] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Scalars for a tensor power, aligned with [`RankOneDecomposition::power`].
    pub fn power(&self, n: u32) -> SliceScalars {
        assert!(n >= 1);
        let mut w = self.weights.clone();
        for _ in 1..n {
            let mut next = Vec::with_capacity(w.len() * self.weights.len());
            for x in &w {
                for y in &self.weights {
                    next.push(x.clone() * y.clone());
                }
            }
            w = next;
        }
        SliceScalars { weights: w }
    }
}

/// `M = Σ_i c'_i · a_i b_iᵀ`.
pub fn slice_matrix(dec: &RankOneDecomposition, sc: &SliceScalars) -> Result<Mat<RatFunc>, CoreError> {
    if sc.len() != dec.terms.len() {
        return Err(CoreError::ShapeMismatch(format!(
            "{} scalars for {} terms",
            sc.len(),
            dec.terms.len()
        )));
    }
    let d = dec.target.dims();
    let mut m = Mat::<RatFunc>::zeros(d[0], d[1]);
    for (term, w) in dec.terms.iter().zip(sc.weights()) {
        m = m.add(&Mat::outer(&term.a, &term.b).scale(w));
    }
    Ok(m)
}

/// The classical border decomposition of the small CW tensor into `q + 2`
/// rank-one terms:
///
/// - term 0: `x_0 ⊗ y_0 ⊗ (λ⁻³ − qλ⁻²) z_0`,
/// - terms `1..=q`: `(x_0 + λx_i) ⊗ (y_0 + λy_i) ⊗ λ⁻²(z_0 + λz_i)`,
/// - term `q+1`: `(x_0 + λ²Σx_i) ⊗ (y_0 + λ²Σy_i) ⊗ (−λ⁻³)(z_0 + λ²Σz_i)`.
pub fn cw_border_decomposition(q: usize) -> Result<RankOneDecomposition, CoreError> {
    if q < 2 {
        return Err(CoreError::BadParameter(format!(
            "cw border decomposition needs q ≥ 2, got {q}"
        )));
    }
    let d = q + 1;
    let e = |i: usize| -> Vec<RatFunc> {
        let mut v = vec![<RatFunc as Field>::zero(); d];
        v[i] = <RatFunc as Field>::one();
        v
    };
    let scale = |v: &[RatFunc], s: &RatFunc| -> Vec<RatFunc> {
        v.iter().map(|x| x.clone() * s.clone()).collect()
    };

    let mut terms = Vec::with_capacity(q + 2);

    // x0 y0 z0 with weight λ⁻³ − qλ⁻²
    let w0 = RatFunc::lambda_pow(-3) - RatFunc::from_int(q as i64) * RatFunc::lambda_pow(-2);
    terms.push(RankOneTerm {
        a: e(0),
        b: e(0),
        c: scale(&e(0), &w0),
    });

    for i in 1..=q {
        let mut v = e(0);
        v[i] = RatFunc::lambda();
        terms.push(RankOneTerm {
            a: v.clone(),
            b: v.clone(),
            c: scale(&v, &RatFunc::lambda_pow(-2)),
        });
    }

    let mut big = e(0);
    for x in big.iter_mut().skip(1) {
        *x = RatFunc::lambda_pow(2);
    }
    terms.push(RankOneTerm {
        a: big.clone(),
        b: big.clone(),
        c: scale(&big, &(-RatFunc::lambda_pow(-3))),
    });

    Ok(RankOneDecomposition {
        target: cw_tensor(q, CwVariant::Standard)?,
        terms,
    })
}

/// Slice scalars that compress the CW decomposition to a rank-`q` matrix:
/// `c'_0 = … = c'_q = 1` and `c'_{q+1} = −1/((1 − qλ)² + qλ²)`.
pub fn cw_minrank_scalars(q: usize) -> Result<SliceScalars, CoreError> {
    if q < 2 {
        return Err(CoreError::BadParameter(format!(
            "minrank scalars need q ≥ 2, got {q}"
        )));
    }
    let qi = q as i64;
    // (1 − qλ)² + qλ² = 1 − 2qλ + (q² + q)λ²
    let den = Poly::new(vec![rat(1), rat(-2 * qi), rat(qi * qi + qi)]);
    let last = -RatFunc::new(Poly::one(), den)?;
    let mut weights = vec![<RatFunc as Field>::one(); q + 1];
    weights.push(last);
    SliceScalars::new(weights)
}

/// The exact rank-4 decomposition of the 3×3×3 permutation variant, valid
/// over the rationals, with the quarter factor folded into the `c` vectors.
pub fn cw2_prime_decomposition() -> RankOneDecomposition {
    let signs: [[i64; 3]; 4] = [[1, 1, 1], [-1, 1, -1], [1, -1, -1], [-1, -1, 1]];
    let vec = |s: &[i64; 3]| -> Vec<RatFunc> {
        s.iter().map(|&x| RatFunc::from_int(x)).collect()
    };
    let quarter = RatFunc::from_rat(crate::algebra::rat_frac(1, 4));
    let terms = signs
        .iter()
        .map(|s| RankOneTerm {
            a: vec(s),
            b: vec(s),
            c: vec(s).iter().map(|x| x.clone() * quarter.clone()).collect(),
        })
        .collect();
    RankOneDecomposition {
        target: cw_tensor(2, CwVariant::Prime2).expect("static"),
        terms,
    }
}

/// Weights `(1, 1, −1, −1)` for the permutation-variant decomposition.
pub fn cw2_prime_scalars() -> SliceScalars {
    SliceScalars::new(vec![
        RatFunc::from_int(1),
        RatFunc::from_int(1),
        RatFunc::from_int(-1),
        RatFunc::from_int(-1),
    ])
    .expect("static nonzero weights")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::laurent_expand;

    #[test]
    fn cw_border_identity_verifies() {
        for q in 2..=5 {
            let dec = cw_border_decomposition(q).unwrap();
            assert_eq!(dec.border_rank(), q + 2);
            let rep = dec.verify().unwrap();
            assert!(rep.pass, "q={q}: {}", rep.describe());
        }
        assert!(cw_border_decomposition(1).is_err());
    }

    #[test]
    fn cw_power_two_verifies() {
        let dec = cw_border_decomposition(2).unwrap().power(2);
        assert_eq!(dec.border_rank(), 16);
        assert_eq!(dec.target.dims(), [9, 9, 9]);
        assert!(dec.verify().unwrap().pass);
    }

    #[test]
    fn term_count_matches_declared_border_rank() {
        for q in 2..=8 {
            assert_eq!(cw_border_decomposition(q).unwrap().border_rank(), q + 2);
        }
    }

    #[test]
    fn minrank_scalars_drop_rank_to_q() {
        for q in 2..=6 {
            let dec = cw_border_decomposition(q).unwrap();
            let sc = cw_minrank_scalars(q).unwrap();
            let m = slice_matrix(&dec, &sc).unwrap();
            assert_eq!(m.rank(), q, "q={q}");
        }
    }

    #[test]
    fn minrank_matrix_keeps_rank_at_sample_point() {
        // evaluating at a generic rational λ0 away from poles preserves
        // rank q (at λ0 = 0 the first-mode vectors all collapse to e_0, so
        // that particular point degenerates)
        let q = 2;
        let dec = cw_border_decomposition(q).unwrap();
        let sc = cw_minrank_scalars(q).unwrap();
        let m = slice_matrix(&dec, &sc).unwrap();
        for sample in [rat(1), crate::algebra::rat_frac(1, 3)] {
            let at = m.map(|f| f.eval(&sample).expect("no pole"));
            assert_eq!(at.rank(), q);
        }
        let at_zero = m.map(|f| f.eval(&rat(0)).expect("no pole at 0"));
        assert_eq!(at_zero.rank(), 1);
    }

    #[test]
    fn minrank_last_weight_expansion() {
        // −1/((1−2λ)² + 2λ²) = −1 − 4λ + O(λ²) at q = 2
        let sc = cw_minrank_scalars(2).unwrap();
        let w = laurent_expand(&sc.weights()[3], 1);
        assert_eq!(w.coeff(0), Some(&rat(-1)));
        assert_eq!(w.coeff(1), Some(&rat(-4)));
    }

    #[test]
    fn prime_variant_decomposition_is_exact() {
        let dec = cw2_prime_decomposition();
        let rep = dec.verify().unwrap();
        assert!(rep.pass);
        // exact, not just border: residual identically zero
        assert_eq!(rep.residual_valuation, None);

        let m = slice_matrix(&dec, &cw2_prime_scalars()).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn zero_scalar_rejected() {
        assert!(matches!(
            SliceScalars::new(vec![RatFunc::from_int(1), <RatFunc as Field>::zero()]),
            Err(CoreError::ZeroScalar(1))
        ));
    }

    #[test]
    fn decomposition_file_round_trip() {
        let dec = cw_border_decomposition(2).unwrap();
        let s = serde_json::to_string(&dec).unwrap();
        let back: RankOneDecomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(back.target, dec.target);
        assert_eq!(back.terms.len(), dec.terms.len());
        assert!(back.verify().unwrap().pass);
    }
}
