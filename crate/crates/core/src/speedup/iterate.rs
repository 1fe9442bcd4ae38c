//! Iterated speedup: square a one-slice speedup identity and replace the
//! product slice with a strictly wider one, keeping the right-hand side.
//!
//! Starting from the CW pipeline at level `(q, n)` with
//! `r = (q+2)ⁿ`, `s = qⁿ`, `N = (q+1)ⁿ` and `t = r + s − 2N`, the square
//! carries the summand `⟨1, t², 1⟩`; because that slice is full and
//! isolated, zeroing it and re-extracting through the free-lunch kernel
//! replaces it by `⟨1, t', 1⟩` with
//!
//!   `t' = (r + s)² − 2(N² + 2Nt) = t² + 2N²`.

use crate::error::CoreError;
use crate::tensor::degen::{is_isolated, DegenFamily};

use super::decomp::{cw_border_decomposition, cw_minrank_scalars};
use super::families::{kron_family, remove_target_block};
use super::multi_slice::append_canonical_slices;
use super::one_slice::one_slice_speedup;

pub struct IterateRecord {
    pub q: u64,
    pub n: u32,
    pub r: u128,
    pub s: u128,
    /// Dimension `N = (q+1)ⁿ` of each mode of the base tensor power.
    pub n_dim: u128,
    pub t: u128,
    pub t_prime: u128,
    /// Left- and right-hand sides of the bookkeeping identity.
    pub lhs: String,
    pub rhs: String,
    /// Present when the instance is small enough for symbolic verification.
    pub symbolic: Option<IterateSymbolic>,
}

pub struct IterateSymbolic {
    pub family: DegenFamily,
    pub verified_t_prime: usize,
}

fn checked_pow(base: u64, n: u32) -> Result<u128, CoreError> {
    (base as u128)
        .checked_pow(n)
        .ok_or_else(|| CoreError::BadParameter(format!("{base}^{n} overflows")))
}

/// Bookkeeping record for the iterated identity, with full symbolic
/// construction and verification when the total coefficient count of the
/// squared source stays within `coeff_cap`.
pub fn iterate_speedup(q: u64, n: u32, coeff_cap: usize) -> Result<IterateRecord, CoreError> {
    if q < 2 || n < 1 {
        return Err(CoreError::BadParameter(format!(
            "iterate needs q ≥ 2 and n ≥ 1, got q={q}, n={n}"
        )));
    }
    let r = checked_pow(q + 2, n)?;
    let s = checked_pow(q, n)?;
    let n_dim = checked_pow(q + 1, n)?;
    let t = r + s - 2 * n_dim;
    let t_prime = t * t + 2 * n_dim * n_dim;

    let lhs = format!("cw_{q}^⊗{m} ⊕ 2⊙(cw_{q}^⊗{n} ⊗ ⟨1,{t},1⟩) ⊕ ⟨1,{t_prime},1⟩", m = 2 * n);
    let rhs = format!("⟨{}⟩ ⊕ {}⊙⟨1,{s},1⟩ ⊕ ⟨1,{},1⟩", r * r, 2 * r, s * s);

    // symbolic cost: the squared source is (⟨r⟩ ⊕ ⟨1,s,1⟩)^⊗2
    let side = r + s;
    let w = r + 1;
    let cost = side * side * side * side * w * w;
    let symbolic = if cost <= coeff_cap as u128 {
        Some(build_symbolic(q as usize, n, t_prime)?)
    } else {
        None
    };

    Ok(IterateRecord {
        q,
        n,
        r,
        s,
        n_dim,
        t,
        t_prime,
        lhs,
        rhs,
        symbolic,
    })
}

fn build_symbolic(q: usize, n: u32, expect_t_prime: u128) -> Result<IterateSymbolic, CoreError> {
    let dec = cw_border_decomposition(q)?.power(n);
    let sc = cw_minrank_scalars(q)?.power(n);
    let base = one_slice_speedup(&dec, &sc)?;

    let sq = kron_family(&base.family, &base.family);
    // base blocks are [T, slice] per mode; the product slice sits in the
    // last product block
    let last = sq.blocks.count(0) - 1;
    let (rem, removed) = remove_target_block(&sq, [last, last, last])?;
    let functional: Vec<_> = removed.row(0).to_vec();

    let out = append_canonical_slices(
        &rem.source,
        &rem.a,
        &rem.b,
        &rem.c,
        &rem.target,
        &rem.blocks,
        &[functional],
    )?;
    let verified_t_prime = out.widths[0];
    if verified_t_prime as u128 != expect_t_prime {
        return Err(CoreError::VerificationFailed(format!(
            "replaced slice has width {verified_t_prime}, bookkeeping says {expect_t_prime}"
        )));
    }
    let appended_block = out.family.blocks.count(2) - 1;
    if !is_isolated(&out.family, appended_block)? {
        return Err(CoreError::VerificationFailed(
            "replaced slice is not isolated".into(),
        ));
    }
    Ok(IterateSymbolic {
        family: out.family,
        verified_t_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bookkeeping_values() {
        // q=2, n=4: t = 110, N = 81, t' = 12100 + 13122 = 25222
        let rec = iterate_speedup(2, 4, 0).unwrap();
        assert_eq!((rec.r, rec.s, rec.n_dim, rec.t), (256, 16, 81, 110));
        assert_eq!(rec.t_prime, 25222);
        assert!(rec.symbolic.is_none());

        // degenerate plug-in: t = 0, N = 1 gives t' = 2
        assert_eq!(0u128 * 0 + 2 * 1 * 1, 2);
    }

    #[test]
    fn smallest_instance_verifies_symbolically() {
        let rec = iterate_speedup(2, 1, 1_000_000).unwrap();
        assert_eq!(rec.t, 0);
        assert_eq!(rec.t_prime, 18);
        let sym = rec.symbolic.expect("within cap");
        assert_eq!(sym.verified_t_prime, 18);
        assert_eq!(sym.family.target.dims(), [27, 27, 16]);
    }

    #[test]
    fn parameter_checks() {
        assert!(iterate_speedup(1, 1, 0).is_err());
        assert!(iterate_speedup(2, 0, 0).is_err());
    }
}
