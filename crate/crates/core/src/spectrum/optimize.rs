//! Certified global maximization of `θ1 + θ2 + θ3` over the region of
//! `[0,1]³` cut out by a set of degeneration identities.
//!
//! Branch-and-bound over boxes, best-first by certified box upper bound.
//! Monotonicity gives cheap infeasibility and full-feasibility checks:
//! each side of each identity is nondecreasing in every coordinate, so
//! `lhs(lo) > rhs(hi)` certifies an empty box and `lhs(hi) ≤ rhs(lo)`
//! certifies a fully feasible one. For boxes straddling the boundary, each
//! constraint side is a positive combination of exponentials and hence
//! convex; the tangent plane at the box's upper corner yields a linear
//! relaxation whose knapsack maximum bounds the objective to second order
//! in the box size. All comparisons use outward-widened values, so the
//! returned upper bound is a true bound under rounding.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::CoreError;

use super::identity::{eval_gap, symmetrize, Identity, MmSum, ThetaPoint};
use super::real::{Real, RealCtx};
use super::tau::diagonal_tau_all;

#[derive(Clone, Debug)]
pub struct OmegaOptions {
    pub tol: Real,
    /// Include the extra constraint `θ1 + θ2 + θ3 ≥ 2` (off by default: the
    /// relativized feasible region does not contain it).
    pub require_sum_ge_two: bool,
    /// Close the identity set under mode permutations first (default on).
    pub symmetrize: bool,
    pub max_boxes: usize,
}

impl OmegaOptions {
    pub fn new(ctx: &RealCtx, tol: &Real) -> Self {
        OmegaOptions {
            tol: tol.clone(),
            require_sum_ge_two: false,
            symmetrize: true,
            max_boxes: 2_000_000,
        }
        .validate(ctx)
    }

    fn validate(self, _ctx: &RealCtx) -> Self {
        assert!(!self.tol.is_negative() && !self.tol.is_zero());
        self
    }
}

#[derive(Clone, Debug)]
pub struct CertifiedMax {
    /// Objective value of the returned feasible point.
    pub lower: Real,
    /// Certified upper bound on the maximum; `upper − lower ≤ tol`.
    pub upper: Real,
    /// A feasible point attaining `lower`, re-verified conservatively.
    pub point: ThetaPoint,
    pub boxes: u64,
    /// True when the identity set was empty and the whole cube is feasible.
    pub vacuous: bool,
}

struct Box3 {
    lo: [Real; 3],
    hi: [Real; 3],
    upper: Real,
}

struct Entry {
    upper: Real,
    seq: u64,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.upper == other.upper && self.seq == other.seq
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .cmp(&other.upper)
            .then(other.seq.cmp(&self.seq))
    }
}

fn sum3(ctx: &RealCtx, v: &[Real; 3]) -> Real {
    ctx.add(&ctx.add(&v[0], &v[1]), &v[2])
}

/// Gradient of `Σ mult·n^θ1 m^θ2 p^θ3` at `θ`, componentwise.
fn sum_gradient(ctx: &RealCtx, s: &MmSum, theta: &[Real; 3]) -> [Real; 3] {
    let mut g = [ctx.zero(), ctx.zero(), ctx.zero()];
    for t in s.terms() {
        let mut mono = ctx.from_u64(t.mult);
        for (base, th) in [(t.n, &theta[0]), (t.m, &theta[1]), (t.p, &theta[2])] {
            if base != 1 {
                mono = ctx.mul(&mono, &ctx.ipow(base, th));
            }
        }
        for (i, base) in [t.n, t.m, t.p].into_iter().enumerate() {
            if base != 1 {
                g[i] = ctx.add(&g[i], &ctx.mul(&mono, &ctx.ln_u64(base)));
            }
        }
    }
    g
}

/// A point is conservatively feasible when every widened gap is nonnegative.
fn point_feasible(ctx: &RealCtx, ids: &[Identity], theta: &[Real; 3], sum_floor: bool) -> bool {
    if sum_floor && ctx.widen_down(&sum3(ctx, theta)) < ctx.from_i64(2) {
        return false;
    }
    ids.iter().all(|id| {
        let lhs = ctx.widen_up(&id.lhs.eval(ctx, theta));
        let rhs = ctx.widen_down(&id.rhs.eval(ctx, theta));
        lhs <= rhs
    })
}

enum BoxState {
    Infeasible,
    Open(Real),
    FullyFeasible,
}

/// Certified upper bound of the objective over the feasible part of a box
/// (or a stronger classification).
fn assess(ctx: &RealCtx, ids: &[Identity], lo: &[Real; 3], hi: &[Real; 3], sum_floor: bool) -> BoxState {
    let mut upper = ctx.widen_up(&sum3(ctx, hi));
    if sum_floor && upper < ctx.from_i64(2) {
        return BoxState::Infeasible;
    }
    let mut all_full = true;
    for id in ids {
        let bound = ctx.widen_up(&id.rhs.eval(ctx, hi));
        let lhs_lo = ctx.widen_down(&id.lhs.eval(ctx, lo));
        if lhs_lo > bound {
            return BoxState::Infeasible;
        }
        let lhs_hi_up = ctx.widen_up(&id.lhs.eval(ctx, hi));
        let rhs_lo_down = ctx.widen_down(&id.rhs.eval(ctx, lo));
        if lhs_hi_up > rhs_lo_down {
            all_full = false;
            // tangent-plane relaxation anchored at the upper corner:
            // lhs(θ) ≥ lhs(hi) + g·(θ − hi), so feasible θ satisfy
            // g·θ ≤ rhs(hi) − lhs(hi) + g·hi
            let lhs_hi_down = ctx.widen_down(&id.lhs.eval(ctx, hi));
            let g: Vec<Real> = sum_gradient(ctx, &id.lhs, hi)
                .into_iter()
                .map(|x| ctx.max(&ctx.widen_down(&x), &ctx.zero()))
                .collect();
            let mut beta = ctx.sub(&bound, &lhs_hi_down);
            for i in 0..3 {
                beta = ctx.add(&beta, &ctx.widen_up(&ctx.mul(&g[i], &hi[i])));
            }
            // knapsack: maximize Σθ over the box under g·θ ≤ beta
            let mut slack = beta;
            for i in 0..3 {
                slack = ctx.sub(&slack, &ctx.mul(&g[i], &lo[i]));
            }
            if slack.is_negative() {
                return BoxState::Infeasible;
            }
            let mut order: Vec<usize> = (0..3).collect();
            order.sort_by(|&i, &j| g[i].cmp(&g[j]));
            let mut cut = sum3(ctx, lo);
            for &i in &order {
                let room = ctx.sub(&hi[i], &lo[i]);
                let step = if g[i].is_zero() {
                    room
                } else {
                    ctx.min(&room, &ctx.div(&slack, &g[i]))
                };
                cut = ctx.add(&cut, &step);
                slack = ctx.sub(&slack, &ctx.mul(&g[i], &step));
                if slack.is_negative() {
                    break;
                }
            }
            upper = ctx.min(&upper, &ctx.widen_up(&cut));
        }
    }
    if all_full {
        BoxState::FullyFeasible
    } else {
        BoxState::Open(upper)
    }
}

/// Certified maximum of `θ1 + θ2 + θ3` over `[0,1]³` intersected with the
/// feasible region of the symmetrized identity set.
pub fn omega_from_identities(
    ctx: &RealCtx,
    ids: &[Identity],
    opts: &OmegaOptions,
) -> Result<CertifiedMax, CoreError> {
    if opts.tol.is_negative() || opts.tol.is_zero() {
        return Err(CoreError::BadParameter("tolerance must be positive".into()));
    }
    let sym = if opts.symmetrize {
        symmetrize(ids)
    } else {
        ids.to_vec()
    };
    let one = ctx.one();
    let corner = [one.clone(), one.clone(), one.clone()];
    if sym.is_empty() {
        return Ok(CertifiedMax {
            lower: ctx.from_i64(3),
            upper: ctx.from_i64(3),
            point: ThetaPoint::new(ctx, corner)?,
            boxes: 0,
            vacuous: true,
        });
    }

    let mut best: Option<(Real, [Real; 3])> = None;
    let consider = |ctx: &RealCtx, point: &[Real; 3], best: &mut Option<(Real, [Real; 3])>| {
        if point_feasible(ctx, &sym, point, opts.require_sum_ge_two) {
            let v = ctx.widen_down(&sum3(ctx, point));
            if best.as_ref().map_or(true, |(b, _)| v > *b) {
                *best = Some((v, point.clone()));
            }
        }
    };

    // seed with the best diagonal point; the diagonal is feasible whenever
    // anything is, and keeps the reported maximizer on the diagonal when
    // the true maximum is attained there
    let seed_tol = ctx.div(&opts.tol, &ctx.from_i64(1000));
    if let Ok(diag) = diagonal_tau_all(ctx, &sym, &seed_tol) {
        let p = [diag.tau.clone(), diag.tau.clone(), diag.tau.clone()];
        consider(ctx, &p, &mut best);
    }
    consider(ctx, &corner, &mut best);

    let zero = ctx.zero();
    let root = Box3 {
        lo: [zero.clone(), zero.clone(), zero.clone()],
        hi: corner,
        upper: ctx.from_i64(3),
    };

    let mut heap: BinaryHeap<Entry> = BinaryHeap::new();
    let mut boxes: Vec<Option<Box3>> = Vec::new();
    let push = |b: Box3, heap: &mut BinaryHeap<Entry>, boxes: &mut Vec<Option<Box3>>| {
        heap.push(Entry {
            upper: b.upper.clone(),
            seq: boxes.len() as u64,
        });
        boxes.push(Some(b));
    };
    push(root, &mut heap, &mut boxes);

    let mut processed: u64 = 0;
    let certified_upper;
    loop {
        let Some(top) = heap.pop() else {
            certified_upper = best.as_ref().map(|(b, _)| b.clone());
            break;
        };
        let b = boxes[top.seq as usize].take().expect("box present");
        if let Some((bv, _)) = &best {
            if ctx.sub(&b.upper, bv) <= opts.tol {
                certified_upper = Some(ctx.max(&b.upper, bv));
                break;
            }
        }
        processed += 1;
        if processed as usize > opts.max_boxes {
            return Err(CoreError::VerificationFailed(format!(
                "optimizer did not converge within {} boxes",
                opts.max_boxes
            )));
        }

        // split the longest edge
        let mut axis = 0;
        let mut len = ctx.sub(&b.hi[0], &b.lo[0]);
        for i in 1..3 {
            let l = ctx.sub(&b.hi[i], &b.lo[i]);
            if l > len {
                len = l;
                axis = i;
            }
        }
        let mid = ctx.div(&ctx.add(&b.lo[axis], &b.hi[axis]), &ctx.from_i64(2));
        for half in 0..2 {
            let mut lo = b.lo.clone();
            let mut hi = b.hi.clone();
            if half == 0 {
                hi[axis] = mid.clone();
            } else {
                lo[axis] = mid.clone();
            }
            match assess(ctx, &sym, &lo, &hi, opts.require_sum_ge_two) {
                BoxState::Infeasible => {}
                BoxState::FullyFeasible => {
                    consider(ctx, &hi, &mut best);
                }
                BoxState::Open(upper) => {
                    consider(ctx, &hi, &mut best);
                    // the corner probe may have closed the box
                    let achieved = best
                        .as_ref()
                        .map_or(false, |(bv, _)| ctx.sub(&upper, bv) <= ctx.zero());
                    if !achieved {
                        if let Some((bv, _)) = &best {
                            if upper <= *bv {
                                continue;
                            }
                        }
                        push(
                            Box3 { lo, hi, upper },
                            &mut heap,
                            &mut boxes,
                        );
                    }
                }
            }
        }
    }

    let Some((lower, point)) = best else {
        return Err(CoreError::VerificationFailed(
            "feasible region is empty".into(),
        ));
    };
    let upper = match certified_upper {
        Some(u) => ctx.max(&u, &lower),
        None => lower.clone(),
    };
    // final re-verification of the returned point
    for id in &sym {
        let gap = eval_gap(ctx, id, &point);
        if ctx.widen_down(&gap).is_negative() && !point_feasible(ctx, &sym, &point, false) {
            return Err(CoreError::VerificationFailed(format!(
                "returned point violates {}",
                id.name
            )));
        }
    }
    Ok(CertifiedMax {
        lower,
        upper,
        point: ThetaPoint::new(ctx, point)?,
        boxes: processed,
        vacuous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::identity::{schoenhage_identity, strassen_identity};
    use crate::spectrum::tau::diagonal_tau;

    fn ctx() -> RealCtx {
        RealCtx::new(50)
    }

    #[test]
    fn empty_set_is_vacuous() {
        let c = ctx();
        let out = omega_from_identities(&c, &[], &OmegaOptions::new(&c, &c.from_str("1e-3").unwrap())).unwrap();
        assert!(out.vacuous);
        assert_eq!(out.upper, c.from_i64(3));
    }

    #[test]
    fn strassen_certified_to_log2_seven() {
        let c = ctx();
        let tol = c.from_str("2e-5").unwrap();
        let out =
            omega_from_identities(&c, &[strassen_identity()], &OmegaOptions::new(&c, &tol)).unwrap();
        let opt = c.div(&c.ln(&c.from_i64(7)), &c.ln(&c.from_i64(2)));
        assert!(out.lower <= opt && opt <= out.upper);
        let gap = c.to_f64(&c.sub(&out.upper, &out.lower));
        assert!(gap <= 2e-5, "gap {gap}, boxes {}", out.boxes);
        let v = c.to_f64(&out.upper);
        assert!((2.8073..=2.8074).contains(&v), "upper {v}");
    }

    #[test]
    fn schoenhage_max_sits_on_the_diagonal() {
        let c = ctx();
        let tol = c.from_str("1e-3").unwrap();
        let out =
            omega_from_identities(&c, &[schoenhage_identity()], &OmegaOptions::new(&c, &tol))
                .unwrap();
        let diag = diagonal_tau(&c, &schoenhage_identity(), &c.from_str("1e-7").unwrap()).unwrap();
        let dv = c.to_f64(&diag.three_tau);
        assert!((c.to_f64(&out.upper) - dv).abs() <= 2e-3);
        assert!(out.lower <= out.upper);
        // maximizer reported on the diagonal
        let m = c.to_f64(&c.div(&sum3(&c, out.point.coords()), &c.from_i64(3)));
        for i in 0..3 {
            assert!((c.to_f64(&out.point.coords()[i]) - m).abs() <= 1e-3);
        }
    }
}
