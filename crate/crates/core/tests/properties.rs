//! Property suites over the exact layers: field axioms, rank behavior
//! under specialization, Laurent windows, tensor combinators, pipeline
//! widths, and the numeric soundness invariants.

use arank_core::algebra::{Field, Poly, RatFunc};
use arank_core::check;
use arank_core::spectrum::RealCtx;
use proptest::prelude::*;

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|cs| {
        Poly::new(cs.into_iter().map(arank_core::algebra::rat).collect())
    })
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_poly(3), arb_poly(2)).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(RatFunc::new(n, d).unwrap())
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ratfunc_addition_associates(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a + (b + c));
    }

    #[test]
    fn ratfunc_distributes(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b + a * c);
    }

    #[test]
    fn ratfunc_inverse(a in arb_ratfunc()) {
        if !a.is_zero() {
            prop_assert!(Field::is_one(&(a.clone() * a.inv().unwrap())));
        }
    }

    #[test]
    fn ratfunc_equality_matches_cross_multiplication(a in arb_ratfunc(), b in arb_ratfunc()) {
        let cross = a.num().mul(b.den()) == b.num().mul(a.den());
        prop_assert_eq!(a == b, cross);
    }
}

// the heavier seeded invariants run via the shared checkers

#[test]
fn rank_specialization() {
    check::check_rank_specialization(60, 0xA11CE);
}

#[test]
fn laurent_convolution() {
    check::check_laurent_convolution(200, 0xA11CE);
}

#[test]
fn rank_nullity() {
    check::check_rank_nullity(200, 0xA11CE);
}

#[test]
fn mm_multiplicativity_up_to_regrouping() {
    check::check_mm_multiplicativity();
}

#[test]
fn identity_families_verify() {
    check::check_identity_families(120, 0xA11CE);
}

#[test]
fn permutation_involution() {
    check::check_permutation_involution(200, 0xA11CE);
}

#[test]
fn product_isolation_and_fullness() {
    check::check_product_isolation_and_fullness();
}

#[test]
fn cw_pipeline_widths() {
    check::check_cw_pipeline_widths();
}

#[test]
fn monotone_bounds() {
    check::check_monotone_bounds(200, 0xA11CE);
}

#[test]
fn certified_max_sandwich() {
    check::check_certified_max_sandwich();
}

#[test]
fn tau_consistency() {
    check::check_tau_consistency();
}

#[test]
fn gamma_pipeline_cross_check() {
    check::check_gamma_cross(&RealCtx::new(50));
}

#[test]
fn compression_widths() {
    check::check_compression_widths(200, 0xA11CE);
}

#[test]
fn generic_333_round_trips() {
    check::check_333_round_trip(20, 0xA11CE);
}
