//! Diagonal τ-solver: the largest `τ ∈ [0,1]` keeping `(τ,τ,τ)` feasible.
//!
//! General gaps need not be monotone along the diagonal, so a coarse scan
//! (step 0.01) locates the last sign change before bisection refines it.

use crate::error::CoreError;

use super::identity::{eval_gap, Identity};
use super::real::{Real, RealCtx};

#[derive(Clone, Debug)]
pub struct DiagonalTau {
    pub tau: Real,
    /// The reported bound `3τ`, capped at 3.
    pub three_tau: Real,
    /// True when the gap stays feasible up to `τ = 1` and the cap applies.
    pub capped: bool,
}

const SCAN_STEPS: u32 = 100;

fn diag_gap(ctx: &RealCtx, ids: &[Identity], tau: &Real) -> Real {
    let point = [tau.clone(), tau.clone(), tau.clone()];
    let mut min: Option<Real> = None;
    for id in ids {
        let g = eval_gap(ctx, id, &point);
        min = Some(match min {
            None => g,
            Some(m) => ctx.min(&m, &g),
        });
    }
    min.expect("at least one identity")
}

/// `sup { τ ∈ [0,1] : gap(τ,τ,τ) ≥ 0 }` for a single identity.
pub fn diagonal_tau(ctx: &RealCtx, id: &Identity, tol: &Real) -> Result<DiagonalTau, CoreError> {
    diagonal_tau_all(ctx, std::slice::from_ref(id), tol)
}

/// Same, but feasibility must hold for every identity in the set.
pub fn diagonal_tau_all(
    ctx: &RealCtx,
    ids: &[Identity],
    tol: &Real,
) -> Result<DiagonalTau, CoreError> {
    if ids.is_empty() {
        return Err(CoreError::BadParameter("empty identity set".into()));
    }
    if tol.is_zero() || tol.is_negative() {
        return Err(CoreError::BadParameter("tolerance must be positive".into()));
    }
    let step = ctx.div(&ctx.one(), &ctx.from_u64(SCAN_STEPS as u64));
    let mut last_feasible: Option<u32> = None;
    for i in 0..=SCAN_STEPS {
        let tau = ctx.mul(&step, &ctx.from_u64(i as u64));
        if !diag_gap(ctx, ids, &tau).is_negative() {
            last_feasible = Some(i);
        }
    }
    let Some(i) = last_feasible else {
        return Err(CoreError::VerificationFailed(
            "infeasible already at τ = 0".into(),
        ));
    };
    if i == SCAN_STEPS {
        let one = ctx.one();
        return Ok(DiagonalTau {
            tau: one.clone(),
            three_tau: ctx.from_i64(3),
            capped: true,
        });
    }
    // bisect with gap(lo) ≥ 0 > gap(hi)
    let mut lo = ctx.mul(&step, &ctx.from_u64(i as u64));
    let mut hi = ctx.mul(&step, &ctx.from_u64(i as u64 + 1));
    while ctx.sub(&hi, &lo) > *tol {
        let mid = ctx.div(&ctx.add(&lo, &hi), &ctx.from_i64(2));
        if diag_gap(ctx, ids, &mid).is_negative() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(DiagonalTau {
        three_tau: ctx.mul(&ctx.from_i64(3), &lo),
        tau: lo,
        capped: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::identity::{schoenhage_identity, strassen_identity, Identity, MmSum};

    fn ctx() -> RealCtx {
        RealCtx::new(50)
    }

    #[test]
    fn strassen_reaches_log2_seven() {
        let c = ctx();
        let tol = c.from_str("1e-8").unwrap();
        let out = diagonal_tau(&c, &strassen_identity(), &tol).unwrap();
        assert!(!out.capped);
        let expect = c.div(&c.ln(&c.from_i64(7)), &c.ln(&c.from_i64(2)));
        let err = c.to_f64(&c.abs(&c.sub(&out.three_tau, &expect)));
        assert!(err < 1e-6, "3τ off by {err}");
    }

    #[test]
    fn schoenhage_root_and_literal_bound() {
        let c = ctx();
        let tol = c.from_str("1e-5").unwrap();
        let out = diagonal_tau(&c, &schoenhage_identity(), &tol).unwrap();
        let v = c.to_f64(&out.three_tau);
        assert!((2.5070..=2.5085).contains(&v), "3τ = {v}");
        assert!(out.three_tau < c.from_str("2.516094").unwrap());
    }

    #[test]
    fn trivial_identity_caps_at_three() {
        let c = ctx();
        let id = Identity::new("unit", MmSum::diagonal(1), MmSum::diagonal(1)).unwrap();
        let out = diagonal_tau(&c, &id, &c.from_str("1e-5").unwrap()).unwrap();
        assert!(out.capped);
        assert_eq!(out.three_tau, c.from_i64(3));
    }

    #[test]
    fn infeasible_at_zero_reported() {
        let c = ctx();
        // ⟨8⟩ ⊴ ⟨2⟩ is already infeasible at τ = 0
        let id = Identity::new("bad", MmSum::diagonal(8), MmSum::diagonal(2)).unwrap();
        assert!(diagonal_tau(&c, &id, &c.from_str("1e-5").unwrap()).is_err());
    }
}
