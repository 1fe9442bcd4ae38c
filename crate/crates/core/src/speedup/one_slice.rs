//! One-slice speedups: extend a restriction by a slice on the right, then
//! extract a slice on the left through the free-lunch kernel structure.

use crate::algebra::{Field, Mat, RatFunc};
use crate::error::CoreError;
use crate::tensor::block::BlockSpec3;
use crate::tensor::degen::{fullness_index, is_isolated, DegenFamily, Restriction};
use crate::tensor::one_slice;
use crate::tensor::tensor3::{apply_restriction, direct_sum, promote_tensor};
use crate::tensor::diagonal;

use super::decomp::{RankOneDecomposition, SliceScalars};
use super::multi_slice::append_canonical_slices;

/// Result of appending `⟨1, s, 1⟩` to the right-hand side of a restriction.
pub struct OneSliceExtension {
    /// The extended restriction `target ≤ S ⊕ ⟨1, s, 1⟩`.
    pub restriction: Restriction<RatFunc>,
    /// `f' = (f, −1)`, annihilating `(A_ext ⊗ B_ext ⊗ f')(S ⊕ ⟨1,s,1⟩)`.
    pub f_prime: Vec<RatFunc>,
    /// Rank of `(A ⊗ B ⊗ f)S`.
    pub s: usize,
}

/// Extend `target ≤ S` to `target ≤ S ⊕ ⟨1, s, 1⟩` so that the covector
/// `f' = (f, −1)` lies in the free-lunch kernel with fullness `q + s`.
pub fn add_one_slice(
    r: &Restriction<RatFunc>,
    f: &[RatFunc],
) -> Result<OneSliceExtension, CoreError> {
    let m0 = r.source.contract_mode3(f)?;
    let m = r.a.mul(&m0).mul(&r.b.transpose());
    let s = m.rank();
    let (p, q) = m.rank_factorization();

    let slice = promote_tensor(&one_slice(s));
    let source = direct_sum(&[&r.source, &slice]);
    let a_ext = r.a.hstack(&p);
    let b_ext = r.b.hstack(&q.transpose());
    let c_ext = r.c.hstack(&Mat::zeros(r.c.rows(), 1));
    let restriction = Restriction::new(source, a_ext, b_ext, c_ext, r.target.clone())?;

    let mut f_prime = f.to_vec();
    f_prime.push(-<RatFunc as Field>::one());
    debug_assert!(restriction
        .source
        .contract_mode3(&f_prime)
        .map(|m0| restriction
            .a
            .mul(&m0)
            .mul(&restriction.b.transpose())
            .is_zero())
        .unwrap_or(false));
    Ok(OneSliceExtension {
        restriction,
        f_prime,
        s,
    })
}

pub struct OneSliceSpeedup {
    /// Verified family `T ⊕ ⟨1,t,1⟩ ⊴ ⟨r⟩ ⊕ ⟨1,s,1⟩`; the appended slice
    /// is the last block of each mode.
    pub family: DegenFamily,
    pub r: usize,
    pub s: usize,
    /// Actual rank of the compressed slice; at least `r + s − n − m`.
    pub t: usize,
    /// Fullness index of the appended slice functional, equal to `r + s`.
    pub fullness: usize,
}

/// The one-slice speedup for a border decomposition `T ⊴ ⟨r⟩` with nonzero
/// slice scalars: produces `T ⊕ ⟨1,t,1⟩ ⊴ ⟨r⟩ ⊕ ⟨1,s,1⟩` with
/// `s = rank(Σ c'_i a_i b_iᵀ)`, the appended slice isolated and full.
pub fn one_slice_speedup(
    dec: &RankOneDecomposition,
    sc: &SliceScalars,
) -> Result<OneSliceSpeedup, CoreError> {
    dec.validate()?;
    let r = dec.border_rank();
    if sc.len() != r {
        return Err(CoreError::ShapeMismatch(format!(
            "{} scalars for a rank-{r} decomposition",
            sc.len()
        )));
    }
    let (a, b, c) = dec.maps();
    let source = promote_tensor(&diagonal(r));
    let raw = apply_restriction(&source, &a, &b, &c)?;
    let base = Restriction::new(source, a, b, c, raw)?;

    let ext = add_one_slice(&base, sc.weights())?;
    let s = ext.s;

    let out = append_canonical_slices(
        &ext.restriction.source,
        &ext.restriction.a,
        &ext.restriction.b,
        &ext.restriction.c,
        &dec.target,
        &BlockSpec3::single(dec.target.dims()),
        &[ext.f_prime.clone()],
    )?;
    let t = out.widths[0];

    let [n, m, _] = dec.target.dims();
    if t + n + m < r + s {
        return Err(CoreError::VerificationFailed(format!(
            "slice width {t} below the guaranteed r + s − n − m = {}",
            (r + s) as i64 - (n + m) as i64
        )));
    }
    if !is_isolated(&out.family, 1)? {
        return Err(CoreError::VerificationFailed(
            "appended slice is not isolated".into(),
        ));
    }
    let fullness = fullness_index(&out.family.source, &ext.f_prime)?;
    if fullness != r + s {
        return Err(CoreError::VerificationFailed(format!(
            "slice fullness {fullness}, expected r + s = {}",
            r + s
        )));
    }
    Ok(OneSliceSpeedup {
        family: out.family,
        r,
        s,
        t,
        fullness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::speedup::decomp::{
        cw2_prime_decomposition, cw2_prime_scalars, cw_border_decomposition, cw_minrank_scalars,
    };
    use crate::tensor::degen::verify_degeneration;
    use crate::tensor::mm_tensor;

    #[test]
    fn zero_covector_appends_nothing() {
        let t = mm_tensor(2, 2, 2).unwrap();
        let d = t.dims();
        let r = Restriction::new(
            promote_tensor(&t),
            crate::tensor::promote_mat(&Mat::identity(d[0])),
            crate::tensor::promote_mat(&Mat::identity(d[1])),
            crate::tensor::promote_mat(&Mat::identity(d[2])),
            promote_tensor(&t),
        )
        .unwrap();
        let f = vec![<RatFunc as Field>::zero(); d[2]];
        let ext = add_one_slice(&r, &f).unwrap();
        assert_eq!(ext.s, 0);
        assert_eq!(ext.restriction.source.dims(), [d[0], d[1], d[2] + 1]);
    }

    #[test]
    fn cw2_minrank_extension_parameters() {
        // s = 2, and the diagonal contracted by nonzero weights is full, so
        // the extended functional has fullness 4 + 2 = 6
        let dec = cw_border_decomposition(2).unwrap();
        let sc = cw_minrank_scalars(2).unwrap();
        let (a, b, c) = dec.maps();
        let source = promote_tensor(&diagonal(4));
        let raw = apply_restriction(&source, &a, &b, &c).unwrap();
        let base = Restriction::new(source, a, b, c, raw).unwrap();
        let ext = add_one_slice(&base, sc.weights()).unwrap();
        assert_eq!(ext.s, 2);
        assert_eq!(
            fullness_index(&ext.restriction.source, &ext.f_prime).unwrap(),
            6
        );
    }

    #[test]
    fn cw2_power_one_has_empty_slice() {
        // t = 4 + 2 − 3 − 3 = 0
        let dec = cw_border_decomposition(2).unwrap();
        let sc = cw_minrank_scalars(2).unwrap();
        let out = one_slice_speedup(&dec, &sc).unwrap();
        assert_eq!((out.r, out.s, out.t), (4, 2, 0));
        assert_eq!(out.fullness, 6);
        assert!(verify_degeneration(&out.family).unwrap().pass);
    }

    #[test]
    fn cw2_prime_rank_decomposition_speedup() {
        let out = one_slice_speedup(&cw2_prime_decomposition(), &cw2_prime_scalars()).unwrap();
        assert_eq!((out.r, out.s, out.t), (4, 2, 0));
    }
}
