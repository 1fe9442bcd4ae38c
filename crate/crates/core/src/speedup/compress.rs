//! Compression of a direct sum of one-slice tensors by a subspace of small
//! codimension on the first mode.
//!
//! Greedy basis selection picks diagonal coordinates whose images under the
//! subspace map stay independent; zeroing the rest (and the paired second-
//! mode coordinates) leaves a direct sum of one-slice tensors whose total
//! width drops by exactly the codimension.

use crate::algebra::{Mat, Rat};
use crate::error::CoreError;
use crate::tensor::degen::Restriction;
use crate::tensor::tensor3::{apply_restriction, direct_sum};
use crate::tensor::one_slice;

pub struct Compression {
    /// Witness restriction from `(A ⊗ id ⊗ id)·T` to the compressed sum.
    pub restriction: Restriction<Rat>,
    /// Retained width per slice, `n_i − p_i`.
    pub retained: Vec<usize>,
    /// Width removed per slice; sums to the codimension.
    pub removed: Vec<usize>,
}

/// Compress `T = ⊕_i ⟨1, n_i, 1⟩` through a surjective map `asub` on the
/// first mode (rows = dim of the subspace, cols = Σ n_i).
pub fn compress_one_slice_sum(
    widths: &[usize],
    asub: &Mat<Rat>,
) -> Result<Compression, CoreError> {
    let total: usize = widths.iter().sum();
    if asub.cols() != total {
        return Err(CoreError::ShapeMismatch(format!(
            "subspace map has {} columns, slices total {total}",
            asub.cols()
        )));
    }
    if asub.rows() > total {
        return Err(CoreError::BadParameter(
            "subspace map has more rows than columns".into(),
        ));
    }
    let p = total - asub.rows();
    if p > total {
        return Err(CoreError::CompressionTooLarge { p, total });
    }
    if asub.rank() != asub.rows() {
        return Err(CoreError::BadParameter(
            "subspace map must have full row rank".into(),
        ));
    }

    // greedy independent columns, in index order
    let selected = asub.transpose().row_basis();
    debug_assert_eq!(selected.len(), asub.rows());

    let slices: Vec<_> = widths.iter().map(|&w| one_slice(w)).collect();
    let slice_refs: Vec<&_> = slices.iter().collect();
    let t_sum = direct_sum(&slice_refs);
    let t_mid = apply_restriction(
        &t_sum,
        asub,
        &Mat::identity(total),
        &Mat::identity(widths.len()),
    )?;

    let x = asub.select_cols(&selected).inverse()?;
    let mut pair_sel = Mat::<Rat>::zeros(selected.len(), total);
    for (r, &d) in selected.iter().enumerate() {
        pair_sel[(r, d)] = crate::algebra::rat(1);
    }

    let mut retained = vec![0usize; widths.len()];
    let mut offsets = vec![0usize; widths.len() + 1];
    for (i, &w) in widths.iter().enumerate() {
        offsets[i + 1] = offsets[i] + w;
    }
    for &d in &selected {
        let slice = offsets.iter().rposition(|&o| o <= d).unwrap();
        retained[slice] += 1;
    }
    let removed: Vec<usize> = widths.iter().zip(&retained).map(|(&w, &k)| w - k).collect();
    debug_assert_eq!(removed.iter().sum::<usize>(), p);

    // every original slice keeps its third-mode slot; a slice compressed to
    // width 0 contributes an empty block
    let kept_slices: Vec<_> = retained.iter().map(|&k| one_slice(k)).collect();
    let kept_refs: Vec<&_> = kept_slices.iter().collect();
    let target = direct_sum(&kept_refs);

    let restriction = Restriction::new(t_mid, x, pair_sel, Mat::identity(widths.len()), target)?;
    Ok(Compression {
        restriction,
        retained,
        removed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn zero_codimension_keeps_everything() {
        let widths = [2, 3];
        let out = compress_one_slice_sum(&widths, &Mat::identity(5)).unwrap();
        assert_eq!(out.retained, vec![2, 3]);
        assert_eq!(out.removed, vec![0, 0]);
    }

    #[test]
    fn single_slice_loses_exactly_p() {
        // ⟨1,4,1⟩ through a codim-2 subspace → ⟨1,2,1⟩
        let asub = Mat::from_rows(vec![
            vec![rat(1), rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(1), rat(1)],
        ]);
        let out = compress_one_slice_sum(&[4], &asub).unwrap();
        assert_eq!(out.retained, vec![2]);
        assert_eq!(out.removed, vec![2]);
        assert_eq!(out.restriction.target.dims(), [2, 2, 1]);
    }

    #[test]
    fn oversized_map_rejected() {
        assert!(compress_one_slice_sum(&[2], &Mat::identity(3)).is_err());
        // rank-deficient subspace map
        let bad = Mat::from_rows(vec![
            vec![rat(1), rat(1), rat(0)],
            vec![rat(2), rat(2), rat(0)],
        ]);
        assert!(compress_one_slice_sum(&[3], &bad).is_err());
    }
}
