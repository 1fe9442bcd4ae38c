//! Combinators on degeneration families: tensor products and removal of a
//! target summand.

use crate::algebra::{Mat, RatFunc};
use crate::error::CoreError;
use crate::tensor::degen::DegenFamily;
use crate::tensor::tensor3::kron;

/// Tensor product of two families. Both inputs must satisfy the
/// degeneration contract (entries of the raw tensors have nonnegative
/// order), so the order-0 coefficient of the product is the product of the
/// targets. Blocks multiply pairwise with the first factor major.
pub fn kron_family(f1: &DegenFamily, f2: &DegenFamily) -> DegenFamily {
    DegenFamily {
        a: f1.a.kron(&f2.a),
        b: f1.b.kron(&f2.b),
        c: f1.c.kron(&f2.c),
        source: kron(&f1.source, &f2.source),
        target: kron(&f1.target, &f2.target),
        blocks: f1.blocks.kron(&f2.blocks),
        order_bound: 1,
    }
}

/// Zero out one target summand in all three modes: the block's rows are
/// removed from each map and the block is dropped from the target. Returns
/// the new family together with the removed third-mode map rows.
pub fn remove_target_block(
    fam: &DegenFamily,
    blocks: [usize; 3],
) -> Result<(DegenFamily, Mat<RatFunc>), CoreError> {
    let mut keep: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for m in 0..3 {
        let range = fam.blocks.range(m, blocks[m])?;
        keep[m] = (0..fam.blocks.total(m)).filter(|i| !range.contains(i)).collect();
    }
    let removed_rows = fam
        .c
        .select_rows(&fam.blocks.range(2, blocks[2])?.collect::<Vec<_>>());
    let out = DegenFamily {
        a: fam.a.select_rows(&keep[0]),
        b: fam.b.select_rows(&keep[1]),
        c: fam.c.select_rows(&keep[2]),
        source: fam.source.clone(),
        target: fam.target.select([&keep[0], &keep[1], &keep[2]]),
        blocks: fam.blocks.remove_block(blocks),
        order_bound: fam.order_bound,
    };
    Ok((out, removed_rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::speedup::decomp::{cw_border_decomposition, cw_minrank_scalars};
    use crate::speedup::one_slice::one_slice_speedup;
    use crate::tensor::degen::verify_degeneration;

    #[test]
    fn squared_family_verifies() {
        let dec = cw_border_decomposition(2).unwrap();
        let sc = cw_minrank_scalars(2).unwrap();
        let base = one_slice_speedup(&dec, &sc).unwrap();
        let sq = kron_family(&base.family, &base.family);
        assert_eq!(sq.blocks.count(2), 4);
        let rep = verify_degeneration(&sq).unwrap();
        assert!(rep.pass, "{}", rep.describe());
    }

    #[test]
    fn removing_a_block_keeps_the_rest() {
        let dec = cw_border_decomposition(2).unwrap();
        let sc = cw_minrank_scalars(2).unwrap();
        let base = one_slice_speedup(&dec, &sc).unwrap();
        let sq = kron_family(&base.family, &base.family);
        let last = sq.blocks.count(0) - 1;
        let (rem, rows) = remove_target_block(&sq, [last, last, last]).unwrap();
        assert_eq!(rows.rows(), 1);
        assert_eq!(rem.blocks.count(2), 3);
        let rep = verify_degeneration(&rem).unwrap();
        assert!(rep.pass, "{}", rep.describe());
    }
}
