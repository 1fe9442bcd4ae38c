//! Speedups for the square of an arbitrary `d×d×d` tensor through the
//! rectangular restriction `T ⊗ T ≤ ⟨d, d², d⟩`.
//!
//! The restriction combines the two mode-wise flattenings `T ≤ ⟨1,d,d⟩` and
//! `T ≤ ⟨d,d,1⟩`; the diagonal-matching functional on the third mode then
//! has fullness `d³`, and the one-slice machinery extracts a slice of width
//! `d³ − d²` (for generic input). Splitting the diagonal classes into
//! groups appends one slice of width `(d_α − 1)·d²` per group instead.

use crate::algebra::{Field, Mat, Rat, RatFunc};
use crate::error::CoreError;
use crate::tensor::block::BlockSpec3;
use crate::tensor::degen::{fullness_index, DegenFamily, Restriction};
use crate::tensor::tensor3::{direct_sum, kron, promote_mat, promote_tensor, Tensor3};
use crate::tensor::{mm_tensor, one_slice};

use super::multi_slice::append_canonical_slices;
use super::one_slice::add_one_slice;

/// The exact restriction `T ⊗ T ≤ ⟨1,d,d⟩ ⊗ ⟨d,d,1⟩` (the product source
/// is `⟨d,d²,d⟩` up to index regrouping).
pub fn rect_restriction_of_square(t: &Tensor3<Rat>) -> Result<Restriction<Rat>, CoreError> {
    let [d0, d1, d2] = t.dims();
    if d0 != d1 || d1 != d2 {
        return Err(CoreError::ShapeMismatch(format!(
            "need a cubic tensor, got {:?}",
            t.dims()
        )));
    }
    let d = d0;
    let f1 = mm_tensor(1, d, d)?;
    let f2 = mm_tensor(d, d, 1)?;

    // T ≤ ⟨1,d,d⟩: B1[j', i·d + k] = t[i, j', k]
    let a1 = Mat::<Rat>::identity(d);
    let b1 = Mat::from_fn(d, d * d, |jp, col| t.get(col / d, jp, col % d).clone());
    let c1 = Mat::<Rat>::identity(d);
    // T ≤ ⟨d,d,1⟩: A2[i', k·d + j] = t[i', j, k]
    let a2 = Mat::from_fn(d, d * d, |ip, col| t.get(ip, col % d, col / d).clone());
    let b2 = Mat::<Rat>::identity(d);
    let c2 = Mat::<Rat>::identity(d);

    Restriction::new(
        kron(&f1, &f2),
        a1.kron(&a2),
        b1.kron(&b2),
        c1.kron(&c2),
        kron(t, t),
    )
}

/// The diagonal-matching covector on the product third mode: 1 on the
/// coordinates where the two factors' slice indices agree.
pub fn diag_match_functional(d: usize) -> Vec<Rat> {
    let mut f = vec![Rat::zero(); d * d];
    for k in 0..d {
        f[k * d + k] = <Rat as Field>::one();
    }
    f
}

pub struct GenericSquareSpeedup {
    /// Verified family `T⊗T ⊕ ⊕_α ⟨1,t_α,1⟩ ⊴ S ⊕ ⊕_α ⟨1,s_α,1⟩`.
    pub family: DegenFamily,
    /// Appended right-hand slice widths `s_α`.
    pub s: Vec<usize>,
    /// Appended left-hand slice widths `t_α`.
    pub t: Vec<usize>,
    /// Fullness of the diagonal-matching functional before restriction.
    pub prerestriction_fullness: usize,
}

/// One-slice version: appends a single `⟨1, s, 1⟩` with
/// `s = rank((A ⊗ B ⊗ f)S)` and extracts one slice of width
/// `t ≥ d³ + s − 2d²` (equal to `d³ − d²` for generic `T`).
pub fn generic_square_oneslice(t: &Tensor3<Rat>) -> Result<GenericSquareSpeedup, CoreError> {
    let d = t.dims()[0];
    let base = rect_restriction_of_square(t)?;
    let f: Vec<RatFunc> = diag_match_functional(d)
        .iter()
        .map(|x| RatFunc::from_rat(x.clone()))
        .collect();
    let q = fullness_index(&base.source, &diag_match_functional(d))?;

    let basep = Restriction::new(
        promote_tensor(&base.source),
        promote_mat(&base.a),
        promote_mat(&base.b),
        promote_mat(&base.c),
        promote_tensor(&base.target),
    )?;
    let ext = add_one_slice(&basep, &f)?;
    let out = append_canonical_slices(
        &ext.restriction.source,
        &ext.restriction.a,
        &ext.restriction.b,
        &ext.restriction.c,
        &base.target,
        &BlockSpec3::single(base.target.dims()),
        &[ext.f_prime.clone()],
    )?;
    Ok(GenericSquareSpeedup {
        family: out.family,
        s: vec![ext.s],
        t: out.widths,
        prerestriction_fullness: q,
    })
}

/// Partitioned version: the diagonal classes `[d]` are split into prefix
/// groups of sizes `d_alphas` (`Σ d_α ≤ d`), each appending `⟨1, d², 1⟩` on
/// the right and extracting a slice of width `(d_α − 1)·d²` for generic `T`.
pub fn generic_square_partitioned(
    t: &Tensor3<Rat>,
    d_alphas: &[usize],
) -> Result<GenericSquareSpeedup, CoreError> {
    let d = t.dims()[0];
    if d_alphas.is_empty() || d_alphas.contains(&0) {
        return Err(CoreError::Partition("group sizes must be positive".into()));
    }
    if d_alphas.iter().sum::<usize>() > d {
        return Err(CoreError::Partition(format!(
            "group sizes sum beyond d = {d}"
        )));
    }
    let p = d_alphas.len();
    let dd = d * d;
    let base = rect_restriction_of_square(t)?;
    let a0 = promote_mat(&base.a);
    let b0 = promote_mat(&base.b);
    let c0 = promote_mat(&base.c);
    let source0 = promote_tensor(&base.source);

    // prefix index classes
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut off = 0;
    for &len in d_alphas {
        classes.push((off..off + len).collect());
        off += len;
    }

    // per-group slice matrix and its cancelling factorization, padded to d²
    let mut a_ext = a0.clone();
    let mut b_ext = b0.clone();
    for class in &classes {
        let mut f = vec![<RatFunc as Field>::zero(); dd];
        for &k in class {
            f[k * d + k] = <RatFunc as Field>::one();
        }
        let m0 = source0.contract_mode3(&f)?;
        let m = a0.mul(&m0).mul(&b0.transpose());
        let rank = m.rank();
        debug_assert!(rank <= dd);
        let (pmat, qmat) = m.rank_factorization();
        let pmat = pmat.hstack(&Mat::zeros(dd, dd - rank));
        let qmat = qmat.vstack(&Mat::zeros(dd - rank, dd));
        a_ext = a_ext.hstack(&pmat);
        b_ext = b_ext.hstack(&qmat.transpose());
    }
    let c_ext = c0.hstack(&Mat::zeros(dd, p));

    let slices: Vec<_> = (0..p).map(|_| one_slice(dd)).collect();
    let mut parts: Vec<&_> = vec![&base.source];
    for s in &slices {
        parts.push(s);
    }
    let source_full = promote_tensor(&direct_sum(&parts));

    let w_dim = dd + p;
    let functionals: Vec<Vec<RatFunc>> = classes
        .iter()
        .enumerate()
        .map(|(alpha, class)| {
            let mut f = vec![<RatFunc as Field>::zero(); w_dim];
            for &k in class {
                f[k * d + k] = <RatFunc as Field>::one();
            }
            f[dd + alpha] = -<RatFunc as Field>::one();
            f
        })
        .collect();

    let out = append_canonical_slices(
        &source_full,
        &a_ext,
        &b_ext,
        &c_ext,
        &base.target,
        &BlockSpec3::single(base.target.dims()),
        &functionals,
    )?;
    Ok(GenericSquareSpeedup {
        family: out.family,
        s: vec![dd; p],
        t: out.widths,
        prerestriction_fullness: fullness_index(&base.source, &diag_match_functional(d))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::speedup::random;
    use crate::tensor::degen::{is_isolated, verify_degeneration};

    fn seeded_cubic(d: usize, seed: u64) -> Tensor3<Rat> {
        let mut rng = random::rng(seed);
        random::random_tensor(&mut rng, [d, d, d], 3)
    }

    #[test]
    fn rect_restriction_is_exact() {
        let t = seeded_cubic(3, 5);
        let r = rect_restriction_of_square(&t).unwrap();
        assert_eq!(r.source.dims(), [27, 27, 9]);
        assert_eq!(r.target.dims(), [9, 9, 9]);
    }

    #[test]
    fn diagonal_functional_is_full() {
        let t = seeded_cubic(3, 5);
        let r = rect_restriction_of_square(&t).unwrap();
        assert_eq!(
            fullness_index(&r.source, &diag_match_functional(3)).unwrap(),
            27
        );
    }

    #[test]
    fn oneslice_extracts_d3_minus_d2() {
        let t = seeded_cubic(3, 5);
        let out = generic_square_oneslice(&t).unwrap();
        assert_eq!(out.prerestriction_fullness, 27);
        assert_eq!(out.s, vec![9]);
        assert_eq!(out.t, vec![18]);
        let rep = verify_degeneration(&out.family).unwrap();
        assert!(rep.pass, "{}", rep.describe());
        assert!(is_isolated(&out.family, 1).unwrap());
    }

    #[test]
    fn partitioned_single_group_matches_oneslice() {
        let t = seeded_cubic(3, 9);
        let one = generic_square_oneslice(&t).unwrap();
        let part = generic_square_partitioned(&t, &[3]).unwrap();
        assert_eq!(one.t, part.t);
        assert_eq!(part.s, vec![9]);
    }

    #[test]
    fn oversized_partition_rejected() {
        let t = seeded_cubic(3, 5);
        assert!(generic_square_partitioned(&t, &[2, 2]).is_err());
    }
}
