//! Degeneration families and their mechanical verification.
//!
//! A family witnesses `T ⊴ S` through maps with entries in `ℚ(λ)`. The
//! contract is the standard normalization: every Laurent coefficient of
//! `(A ⊗ B ⊗ C)·S` at a negative order vanishes, and the order-0
//! coefficient equals the declared target exactly. Families given in a
//! scaled form must be pre-normalized by the caller.

use crate::algebra::{rat_to_string, Field, Mat, Rat, RatFunc};
use crate::error::CoreError;

use super::block::BlockSpec3;
use super::tensor3::{apply_restriction, promote_tensor, Tensor3};

/// An exact restriction `target = (A ⊗ B ⊗ C)·source`, checked on
/// construction.
#[derive(Clone, Debug)]
pub struct Restriction<F> {
    pub source: Tensor3<F>,
    pub a: Mat<F>,
    pub b: Mat<F>,
    pub c: Mat<F>,
    pub target: Tensor3<F>,
}

impl<F: Field> Restriction<F> {
    pub fn new(
        source: Tensor3<F>,
        a: Mat<F>,
        b: Mat<F>,
        c: Mat<F>,
        target: Tensor3<F>,
    ) -> Result<Self, CoreError> {
        let got = apply_restriction(&source, &a, &b, &c)?;
        if got != target {
            return Err(CoreError::VerificationFailed(
                "maps do not reproduce the declared restriction target".into(),
            ));
        }
        Ok(Restriction {
            source,
            a,
            b,
            c,
            target,
        })
    }
}

/// A λ-parametrized family witnessing `target ⊴ source`, with block
/// metadata for direct-sum targets. By convention the appended summand of a
/// speedup sits in the last block of each mode.
#[derive(Clone, Debug)]
pub struct DegenFamily {
    pub a: Mat<RatFunc>,
    pub b: Mat<RatFunc>,
    pub c: Mat<RatFunc>,
    pub source: Tensor3<RatFunc>,
    pub target: Tensor3<Rat>,
    pub blocks: BlockSpec3,
    /// Declared residual order bound `d` in `target + O(λ^d)`; the verifier
    /// checks the standard normalization, so `d = 1` in practice.
    pub order_bound: u32,
}

/// Outcome of verifying one family.
#[derive(Clone, Debug)]
pub struct DegenReport {
    pub pass: bool,
    /// Minimum λ-order of `(A⊗B⊗C)S − target` over all entries; `None` when
    /// the residual is identically zero. Passing means `≥ 1`.
    pub residual_valuation: Option<i64>,
    /// On failure: the first offending order, its position, and the
    /// offending Laurent coefficient rendered as text.
    pub failure: Option<DegenFailure>,
}

#[derive(Clone, Debug)]
pub struct DegenFailure {
    pub order: i64,
    pub position: [usize; 3],
    pub coefficient: String,
}

impl DegenReport {
    pub fn describe(&self) -> String {
        match (&self.failure, self.residual_valuation) {
            (None, None) => "pass (residual identically zero)".into(),
            (None, Some(v)) => format!("pass (residual order {v})"),
            (Some(f), _) => format!(
                "fail at order {} position ({}, {}, {}) with coefficient {}",
                f.order, f.position[0], f.position[1], f.position[2], f.coefficient
            ),
        }
    }
}

impl DegenFamily {
    /// The `ℚ(λ)`-tensor `(A ⊗ B ⊗ C)·S` before the limit `λ → 0`.
    pub fn raw_tensor(&self) -> Result<Tensor3<RatFunc>, CoreError> {
        apply_restriction(&self.source, &self.a, &self.b, &self.c)
    }

    /// Sub-block of the raw tensor at the given block coordinates.
    pub fn raw_block(&self, blocks: [usize; 3]) -> Result<Tensor3<RatFunc>, CoreError> {
        let ra = self.blocks.range(0, blocks[0])?;
        let rb = self.blocks.range(1, blocks[1])?;
        let rc = self.blocks.range(2, blocks[2])?;
        let sel = |m: &Mat<RatFunc>, r: &std::ops::Range<usize>| {
            m.select_rows(&r.clone().collect::<Vec<_>>())
        };
        apply_restriction(
            &self.source,
            &sel(&self.a, &ra),
            &sel(&self.b, &rb),
            &sel(&self.c, &rc),
        )
    }
}

/// Check a family against the degeneration contract.
///
/// Failures are reported, never raised: the report carries the valuation of
/// the residual and on failure the first offending (order, position).
pub fn verify_degeneration(fam: &DegenFamily) -> Result<DegenReport, CoreError> {
    let raw = fam.raw_tensor()?;
    if raw.dims() != fam.target.dims() {
        return Err(CoreError::ShapeMismatch(format!(
            "family produces dims {:?}, declared target has {:?}",
            raw.dims(),
            fam.target.dims()
        )));
    }
    let residual = raw.sub(&promote_tensor(&fam.target));
    let mut min_val: Option<i64> = None;
    let mut worst: Option<DegenFailure> = None;
    for ([i, j, k], v) in residual.nonzero() {
        let val = v.valuation().expect("nonzero entry has a valuation");
        if min_val.map_or(true, |m| val < m) {
            min_val = Some(val);
            if val <= 0 {
                worst = Some(DegenFailure {
                    order: val,
                    position: [i, j, k],
                    coefficient: rat_to_string(&v.lowest_coeff()),
                });
            }
        }
    }
    let pass = min_val.map_or(true, |v| v >= 1);
    Ok(DegenReport {
        pass,
        residual_valuation: min_val,
        failure: if pass { None } else { worst },
    })
}

/// Whether the direct summand in third-mode block `block` is isolated:
/// every block `(i, j, block)` of the raw `ℚ(λ)`-tensor with
/// `(i, j) ≠ (block, block)` is identically zero.
pub fn is_isolated(fam: &DegenFamily, block: usize) -> Result<bool, CoreError> {
    if block >= fam.blocks.count(2) {
        return Err(CoreError::UnknownBlock(block, fam.blocks.count(2)));
    }
    for i in 0..fam.blocks.count(0) {
        for j in 0..fam.blocks.count(1) {
            if i == block && j == block {
                continue;
            }
            if !fam.raw_block([i, j, block])?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rank of `(id ⊗ id ⊗ f)·S`: the fullness index of the covector `f` on the
/// third mode of `S`.
pub fn fullness_index<F: Field>(s: &Tensor3<F>, f: &[F]) -> Result<usize, CoreError> {
    Ok(s.contract_mode3(f)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::tensor::build::{diagonal, mm_tensor};
    use crate::tensor::tensor3::promote_mat;

    fn identity_family(t: &Tensor3<Rat>) -> DegenFamily {
        let d = t.dims();
        DegenFamily {
            a: promote_mat(&Mat::identity(d[0])),
            b: promote_mat(&Mat::identity(d[1])),
            c: promote_mat(&Mat::identity(d[2])),
            source: promote_tensor(t),
            target: t.clone(),
            blocks: BlockSpec3::single(d),
            order_bound: 1,
        }
    }

    #[test]
    fn identity_maps_pass() {
        let t = mm_tensor(2, 2, 2).unwrap();
        let rep = verify_degeneration(&identity_family(&t)).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.residual_valuation, None);
    }

    #[test]
    fn wrong_target_fails_at_order_zero() {
        let t = diagonal(2);
        let mut fam = identity_family(&t);
        fam.target.set(0, 1, 0, rat(1));
        let rep = verify_degeneration(&fam).unwrap();
        assert!(!rep.pass);
        let f = rep.failure.unwrap();
        assert_eq!(f.order, 0);
        assert_eq!(f.position, [0, 1, 0]);
        assert_eq!(f.coefficient, "-1");
    }

    #[test]
    fn negative_order_reported() {
        let t = diagonal(1);
        let mut fam = identity_family(&t);
        fam.a = fam.a.map(|x| x.clone() * RatFunc::lambda_pow(-2));
        let rep = verify_degeneration(&fam).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.failure.unwrap().order, -2);
    }

    #[test]
    fn nonzero_cross_block_breaks_isolation() {
        // two blocks per mode; an off-diagonal entry in the second
        // third-mode block makes the summand non-isolated
        let mut s = diagonal(2);
        s.set(0, 1, 1, rat(1));
        let mut fam = identity_family(&s);
        fam.blocks = BlockSpec3::new([vec![1, 1], vec![1, 1], vec![1, 1]]);
        assert!(!is_isolated(&fam, 1).unwrap());
        // without the stray entry the second summand is isolated
        let clean = identity_family(&diagonal(2));
        let mut clean = clean;
        clean.blocks = BlockSpec3::new([vec![1, 1], vec![1, 1], vec![1, 1]]);
        assert!(is_isolated(&clean, 1).unwrap());
        assert!(matches!(
            is_isolated(&clean, 5),
            Err(CoreError::UnknownBlock(5, 2))
        ));
    }

    #[test]
    fn fullness_of_zero_covector() {
        let s = mm_tensor(2, 3, 2).unwrap();
        let f = vec![rat(0); s.dims()[2]];
        assert_eq!(fullness_index(&s, &f).unwrap(), 0);
        assert!(fullness_index(&s, &[rat(1)]).is_err());
    }
}
