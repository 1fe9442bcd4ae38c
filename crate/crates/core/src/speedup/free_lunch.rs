//! The free-lunch construction: extract an extra direct summand from the
//! kernel structure of a restriction, at no cost on the right-hand side.
//!
//! Given maps `(A, B, C)` with `(A ⊗ B ⊗ C)S = T + O(λ)` and a covector
//! subspace `C'` on the third mode annihilating `(A ⊗ B ⊗ C')S`, the
//! subspaces
//!
//!   `A' = {u : (u ⊗ B ⊗ C')S = 0}`,  `B' = {v : (A ⊗ v ⊗ C')S = 0}`
//!
//! yield `T ⊕ T' ⊴ S` with `T' = (A' ⊗ B' ⊗ C')S`. The junk blocks are
//! removed by the monomial degeneration `diag(1,λ^K) ⊗ diag(1,λ^K) ⊗
//! diag(λ^{2K},1)` scaled by `λ^{-2K}`, folded into the maps.

use crate::algebra::{Field, Mat, Rat, RatFunc};
use crate::error::CoreError;
use crate::tensor::block::BlockSpec3;
use crate::tensor::degen::{DegenFamily, Restriction};
use crate::tensor::tensor3::{apply_restriction, direct_sum, Tensor3};

#[derive(Debug)]
pub struct FreeLunchOutput {
    /// Verified family for `T ⊕ T' ⊴ S`, appended summand in the last block.
    pub family: DegenFamily,
    /// The appended summand `T'` (the lowest-order coefficient of the
    /// extracted `ℚ(λ)`-tensor).
    pub appended: Tensor3<Rat>,
    pub a_prime: Mat<RatFunc>,
    pub b_prime: Mat<RatFunc>,
    /// The order-separating exponent `K` used to kill junk blocks.
    pub separation_exponent: i64,
}

/// Kernel of `u ↦ (u ⊗ B ⊗ C')S`, as rows of a matrix on the first mode.
pub fn mode1_annihilator(
    source: &Tensor3<RatFunc>,
    b: &Mat<RatFunc>,
    cprime: &Mat<RatFunc>,
) -> Result<Mat<RatFunc>, CoreError> {
    let dim_u = source.dims()[0];
    let contracted = apply_restriction(source, &Mat::identity(dim_u), b, cprime)?;
    // rows (target-b, cprime-row), columns u
    let rows = contracted.dims()[1] * contracted.dims()[2];
    let k = Mat::from_fn(rows, dim_u, |r, i| {
        contracted
            .get(i, r / contracted.dims()[2], r % contracted.dims()[2])
            .clone()
    });
    Ok(Mat::from_rows(k.nullspace()))
}

/// Kernel of `v ↦ (A ⊗ v ⊗ C')S`, as rows of a matrix on the second mode.
pub fn mode2_annihilator(
    source: &Tensor3<RatFunc>,
    a: &Mat<RatFunc>,
    cprime: &Mat<RatFunc>,
) -> Result<Mat<RatFunc>, CoreError> {
    let dim_v = source.dims()[1];
    let contracted = apply_restriction(source, a, &Mat::identity(dim_v), cprime)?;
    let rows = contracted.dims()[0] * contracted.dims()[2];
    let k = Mat::from_fn(rows, dim_v, |r, j| {
        contracted
            .get(r / contracted.dims()[2], j, r % contracted.dims()[2])
            .clone()
    });
    Ok(Mat::from_rows(k.nullspace()))
}

/// Minimum valuation over the junk blocks `(A'⊗B⊗C)S`, `(A⊗B'⊗C)S` and
/// `(A'⊗B'⊗C)S`; `None` when all three vanish identically.
fn junk_valuation(
    source: &Tensor3<RatFunc>,
    a: &Mat<RatFunc>,
    b: &Mat<RatFunc>,
    c: &Mat<RatFunc>,
    a2: &Mat<RatFunc>,
    b2: &Mat<RatFunc>,
) -> Result<Option<i64>, CoreError> {
    let mut min: Option<i64> = None;
    for t in [
        apply_restriction(source, a2, b, c)?,
        apply_restriction(source, a, b2, c)?,
        apply_restriction(source, a2, b2, c)?,
    ] {
        for (_, v) in t.nonzero() {
            let val = v.valuation().expect("nonzero has valuation");
            if min.map_or(true, |m| val < m) {
                min = Some(val);
            }
        }
    }
    Ok(min)
}

/// The exponent making `λ^K · junk` vanish in the limit. Any `K` at least
/// `1 − min junk valuation` separates the new deformation orders from the
/// λ-orders already present, which is the minimal sufficient choice.
pub fn separation_exponent(junk_val: Option<i64>) -> i64 {
    junk_val.map_or(1, |v| (1 - v).max(1))
}

/// Core engine behind the free-lunch speedups. The input maps may already
/// be λ-parametrized (the degeneration version); a plain restriction is the
/// special case of constant entries. `declared` must be the order-0
/// coefficient of `(A ⊗ B ⊗ C)S`, subdivided by `declared_blocks`.
pub fn free_lunch_degen(
    source: &Tensor3<RatFunc>,
    a: &Mat<RatFunc>,
    b: &Mat<RatFunc>,
    c: &Mat<RatFunc>,
    declared: &Tensor3<Rat>,
    declared_blocks: &BlockSpec3,
    cprime: &Mat<RatFunc>,
) -> Result<FreeLunchOutput, CoreError> {
    // kernel precondition
    let z = apply_restriction(source, a, b, cprime)?;
    if let Some(([i, j, k], _)) = z.nonzero().next() {
        return Err(CoreError::KernelPrecondition(i, j, k));
    }

    if cprime.rows() == 0 {
        let family = DegenFamily {
            a: a.clone().vstack(&Mat::zeros(0, a.cols())),
            b: b.clone().vstack(&Mat::zeros(0, b.cols())),
            c: c.clone().vstack(&Mat::zeros(0, c.cols())),
            source: source.clone(),
            target: direct_sum(&[declared, &Tensor3::zeros([0, 0, 0])]),
            blocks: declared_blocks.append([0, 0, 0]),
            order_bound: 1,
        };
        return Ok(FreeLunchOutput {
            family,
            appended: Tensor3::zeros([0, 0, 0]),
            a_prime: Mat::zeros(0, source.dims()[0]),
            b_prime: Mat::zeros(0, source.dims()[1]),
            separation_exponent: 1,
        });
    }

    let a_prime = mode1_annihilator(source, b, cprime)?;
    let b_prime = mode2_annihilator(source, a, cprime)?;

    let extracted = apply_restriction(source, &a_prime, &b_prime, cprime)?;
    let v = extracted
        .nonzero()
        .map(|(_, f)| f.valuation().expect("nonzero"))
        .min()
        .unwrap_or(0);
    let appended = extracted.map(|f| {
        if !f.is_zero() && f.valuation() == Some(v) {
            f.lowest_coeff()
        } else {
            Rat::zero()
        }
    });

    let k = separation_exponent(junk_valuation(source, a, b, c, &a_prime, &b_prime)?);
    let lk = RatFunc::lambda_pow(k);
    let family = DegenFamily {
        a: a.clone().vstack(&a_prime.scale(&lk)),
        b: b.clone().vstack(&b_prime.scale(&lk)),
        c: c.clone().vstack(&cprime.scale(&RatFunc::lambda_pow(-2 * k - v))),
        source: source.clone(),
        target: direct_sum(&[declared, &appended]),
        blocks: declared_blocks.append(appended.dims()),
        order_bound: 1,
    };
    Ok(FreeLunchOutput {
        family,
        appended,
        a_prime,
        b_prime,
        separation_exponent: k,
    })
}

/// Restriction version: exact maps over `ℚ(λ)` whose image equals the
/// target on the nose.
pub fn free_lunch(
    r: &Restriction<RatFunc>,
    cprime: &Mat<RatFunc>,
) -> Result<FreeLunchOutput, CoreError> {
    let declared = order_zero(&r.target)?;
    free_lunch_degen(
        &r.source,
        &r.a,
        &r.b,
        &r.c,
        &declared,
        &BlockSpec3::single(declared.dims()),
        cprime,
    )
}

/// Order-0 coefficient of a tensor with entries of nonnegative valuation.
pub fn order_zero(t: &Tensor3<RatFunc>) -> Result<Tensor3<Rat>, CoreError> {
    let mut out = Tensor3::zeros(t.dims());
    for ([i, j, k], f) in t.nonzero() {
        let v = f.valuation().expect("nonzero");
        if v < 0 {
            return Err(CoreError::VerificationFailed(format!(
                "entry ({i}, {j}, {k}) has negative order {v}"
            )));
        }
        if v == 0 {
            out.set(i, j, k, f.lowest_coeff());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::degen::{is_isolated, verify_degeneration};
    use crate::tensor::tensor3::{promote_mat, promote_tensor};
    use crate::tensor::{diagonal, mm_tensor};

    #[test]
    fn zero_dimensional_cprime_is_identity() {
        let t = mm_tensor(2, 2, 2).unwrap();
        let d = t.dims();
        let r = Restriction::new(
            promote_tensor(&t),
            promote_mat(&Mat::identity(d[0])),
            promote_mat(&Mat::identity(d[1])),
            promote_mat(&Mat::identity(d[2])),
            promote_tensor(&t),
        )
        .unwrap();
        let out = free_lunch(&r, &Mat::zeros(0, d[2])).unwrap();
        assert!(out.appended.is_empty());
        assert_eq!(out.family.target.dims(), d);
        assert!(verify_degeneration(&out.family).unwrap().pass);
    }

    #[test]
    fn kernel_precondition_reported() {
        let t = diagonal(2);
        let r = Restriction::new(
            promote_tensor(&t),
            promote_mat(&Mat::identity(2)),
            promote_mat(&Mat::identity(2)),
            promote_mat(&Mat::identity(2)),
            promote_tensor(&t),
        )
        .unwrap();
        // f = e_0 does not annihilate the diagonal
        let f = Mat::from_rows(vec![vec![RatFunc::from_int(1), RatFunc::from_int(0)]]);
        match free_lunch(&r, &f) {
            Err(CoreError::KernelPrecondition(0, 0, 0)) => {}
            other => panic!("expected kernel precondition error, got {other:?}"),
        }
    }

    #[test]
    fn extracts_summand_from_padded_diagonal() {
        // T = ⟨1⟩ sitting inside S = ⟨2⟩ via the first coordinate; the
        // second diagonal coordinate is unused, so f = e_1 annihilates and
        // the free lunch recovers it as an extra ⟨1⟩ summand.
        let s = diagonal(2);
        let pick = Mat::from_rows(vec![vec![RatFunc::from_int(1), RatFunc::from_int(0)]]);
        let r = Restriction::new(
            promote_tensor(&s),
            pick.clone(),
            pick.clone(),
            pick.clone(),
            promote_tensor(&diagonal(1)),
        )
        .unwrap();
        let f = Mat::from_rows(vec![vec![RatFunc::from_int(0), RatFunc::from_int(1)]]);
        let out = free_lunch(&r, &f).unwrap();
        // both annihilators are the full dual space here, so the raw
        // extracted summand is a 2×2 slice of rank 1
        assert_eq!(out.appended.dims(), [2, 2, 1]);
        assert_eq!(out.appended.contract_mode3(&[crate::algebra::rat(1)]).unwrap().rank(), 1);
        let rep = verify_degeneration(&out.family).unwrap();
        assert!(rep.pass, "{}", rep.describe());
        assert!(is_isolated(&out.family, 1).unwrap());
    }
}
