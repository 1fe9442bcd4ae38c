//! Reusable seeded invariant checks.
//!
//! Each function draws its own deterministic sample stream and panics with
//! context on the first violation. The property-test suites and the
//! acceptance suite both drive these, the latter at a fixed seed and case
//! count.

use rand::Rng;

use crate::algebra::{laurent, Field, Mat, Poly, Rat, RatFunc};
use crate::speedup::{self, random};
use crate::spectrum::{self, Identity, MmSum, MmTerm, Real, RealCtx};
use crate::tensor::{self, degen, tensor3, Tensor3};

fn sample_poly(rng: &mut rand_chacha::ChaCha8Rng, max_deg: usize, bound: i64) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::new((0..=deg).map(|_| random::small_rat(rng, bound)).collect())
}

pub fn sample_ratfunc(rng: &mut rand_chacha::ChaCha8Rng) -> RatFunc {
    let num = sample_poly(rng, 3, 4);
    let den = loop {
        let d = sample_poly(rng, 2, 3);
        if !d.is_zero() {
            break d;
        }
    };
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Field axioms on random rational-function samples: associativity of
/// addition, distributivity, and multiplicative inverses.
pub fn check_field_axioms(cases: u32, seed: u64) {
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let a = sample_ratfunc(&mut rng);
        let b = sample_ratfunc(&mut rng);
        let c = sample_ratfunc(&mut rng);
        let assoc = (a.clone() + b.clone()) + c.clone();
        let assoc2 = a.clone() + (b.clone() + c.clone());
        assert_eq!(assoc, assoc2, "associativity failed at case {case}");
        let dist = a.clone() * (b.clone() + c.clone());
        let dist2 = a.clone() * b.clone() + a.clone() * c.clone();
        assert_eq!(dist, dist2, "distributivity failed at case {case}");
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero");
            assert!(
                Field::is_one(&(a.clone() * inv)),
                "inverse failed at case {case}"
            );
        }
    }
}

/// Exact rank over `ℚ(λ)` dominates the rank at every rational sample
/// point, with equality at some of 16 seeded points.
pub fn check_rank_specialization(cases: u32, seed: u64) {
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m = Mat::from_fn(rows, cols, |_, _| sample_ratfunc(&mut rng));
        let symbolic = m.rank();
        let mut matched = false;
        let mut tried = 0;
        while tried < 16 {
            let x = random::small_rat(&mut rng, 20);
            let entries: Option<Vec<Rat>> = (0..rows)
                .flat_map(|i| m.row(i).to_vec())
                .map(|f| f.eval(&x))
                .collect();
            let Some(entries) = entries else {
                continue; // denominator vanished; resample
            };
            let mut it = entries.into_iter();
            let eval = Mat::from_fn(rows, cols, |_, _| it.next().unwrap());
            tried += 1;
            let specialized = eval.rank();
            assert!(
                specialized <= symbolic,
                "rank rose under specialization at case {case}"
            );
            if specialized == symbolic {
                matched = true;
            }
        }
        assert!(
            matched,
            "no sample point attained the symbolic rank, case {case}"
        );
    }
}

/// Laurent expansion of a product equals the windowed convolution of the
/// factors' expansions.
pub fn check_laurent_convolution(cases: u32, seed: u64) {
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let f = sample_ratfunc(&mut rng);
        let g = sample_ratfunc(&mut rng);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let hi = rng.gen_range(0..6) as i64;
        let prod = laurent::laurent_expand(&(f.clone() * g.clone()), hi);
        let wf = laurent::laurent_expand(&f, hi + 8);
        let wg = laurent::laurent_expand(&g, hi + 8);
        let conv = laurent::convolve(&wf, &wg, hi);
        for k in prod.lo()..=prod.hi().min(hi) {
            assert_eq!(
                prod.coeff(k),
                conv.coeff(k),
                "convolution mismatch at order {k}, case {case}"
            );
        }
    }
}

/// Rank–nullity: a row basis of the row space together with the nullspace
/// basis spans the full column space.
pub fn check_rank_nullity(cases: u32, seed: u64) {
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m = random::random_mat(&mut rng, rows, cols, 4);
        let rank = m.rank();
        let null = m.nullspace();
        assert_eq!(null.len(), cols - rank, "nullity mismatch at case {case}");
        for v in &null {
            assert!(
                m.mul_vec(v).iter().all(|x| Field::is_zero(x)),
                "kernel vector fails at case {case}"
            );
        }
        let basis_rows = m.row_basis();
        let mut stacked: Vec<Vec<Rat>> = basis_rows.iter().map(|&i| m.row(i).to_vec()).collect();
        stacked.extend(null.iter().cloned());
        assert_eq!(
            Mat::from_rows(stacked).rank(),
            cols,
            "row basis + kernel does not span at case {case}"
        );
    }
}

/// Kronecker products of matrix multiplication tensors are matrix
/// multiplication tensors under the canonical index regrouping, for all
/// shapes with product dims at most 64.
pub fn check_mm_multiplicativity() {
    let small = [1usize, 2, 3, 4];
    for &n in &small {
        for &m in &small {
            for &p in &small {
                for &n2 in &small {
                    for &m2 in &small {
                        for &p2 in &small {
                            let dims_ok = n * m * n2 * m2 <= 64
                                && m * p * m2 * p2 <= 64
                                && p * n * p2 * n2 <= 64;
                            if !dims_ok {
                                continue;
                            }
                            let a = tensor::mm_tensor(n, m, p).unwrap();
                            let b = tensor::mm_tensor(n2, m2, p2).unwrap();
                            let maps = tensor::mm_kron_regroup((n, m, p), (n2, m2, p2));
                            let got = tensor::reindex(&tensor3::kron(&a, &b), &maps);
                            let want = tensor::mm_tensor(n * n2, m * m2, p * p2).unwrap();
                            assert_eq!(got, want, "⟨{n},{m},{p}⟩ ⊗ ⟨{n2},{m2},{p2}⟩");
                        }
                    }
                }
            }
        }
    }
}

/// Identity-map families over random sources satisfy the degeneration
/// contract.
pub fn check_identity_families(cases: u32, seed: u64) {
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let dims = [
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
        ];
        let s = random::random_tensor(&mut rng, dims, 4);
        let fam = degen::DegenFamily {
            a: tensor3::promote_mat(&Mat::identity(dims[0])),
            b: tensor3::promote_mat(&Mat::identity(dims[1])),
            c: tensor3::promote_mat(&Mat::identity(dims[2])),
            source: tensor3::promote_tensor(&s),
            target: s.clone(),
            blocks: tensor::BlockSpec3::single(dims),
            order_bound: 1,
        };
        let rep = degen::verify_degeneration(&fam).unwrap();
        assert!(rep.pass, "identity family failed at case {case}");
    }
}

/// Mode permutations compose to the identity on random tensors.
pub fn check_permutation_involution(cases: u32, seed: u64) {
    let perms: [([usize; 3], [usize; 3]); 6] = [
        ([0, 1, 2], [0, 1, 2]),
        ([0, 2, 1], [0, 2, 1]),
        ([1, 0, 2], [1, 0, 2]),
        ([1, 2, 0], [2, 0, 1]),
        ([2, 0, 1], [1, 2, 0]),
        ([2, 1, 0], [2, 1, 0]),
    ];
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let dims = [
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
        ];
        let t = random::random_tensor(&mut rng, dims, 4);
        for (sigma, inv) in perms {
            let round = tensor3::permute(&tensor3::permute(&t, sigma).unwrap(), inv).unwrap();
            assert_eq!(round, t, "σ = {sigma:?} at case {case}");
        }
    }
}

/// A small catalogue of verified families with an isolated, full appended
/// slice in the last block, paired with the slice's fullness index.
pub fn family_catalogue() -> Vec<(String, degen::DegenFamily, usize)> {
    let mut out = Vec::new();
    let one = speedup::one_slice_speedup(
        &speedup::cw_border_decomposition(2).unwrap(),
        &speedup::cw_minrank_scalars(2).unwrap(),
    )
    .unwrap();
    out.push(("cw2 one-slice".to_string(), one.family, one.fullness));
    let prime = speedup::one_slice_speedup(
        &speedup::cw2_prime_decomposition(),
        &speedup::cw2_prime_scalars(),
    )
    .unwrap();
    out.push(("cw2' one-slice".to_string(), prime.family, prime.fullness));
    out
}

/// Isolation of appended summands survives tensor products of families,
/// and fullness indices multiply.
pub fn check_product_isolation_and_fullness() {
    let catalogue = family_catalogue();
    for (name1, f1, q1) in &catalogue {
        for (name2, f2, q2) in &catalogue {
            let prod = speedup::kron_family(f1, f2);
            let rep = degen::verify_degeneration(&prod).unwrap();
            assert!(
                rep.pass,
                "product of {name1} and {name2} fails verification"
            );
            // the appended-by-appended product sits in the last block pair
            let b1 = f1.blocks.count(2) - 1;
            let b2 = f2.blocks.count(2) - 1;
            let prod_block = b1 * f2.blocks.count(2) + b2;
            assert!(
                degen::is_isolated(&prod, prod_block).unwrap(),
                "product slice of {name1} ⊗ {name2} not isolated"
            );
            // fullness multiplies along the product functional row
            let row1 = f1.blocks.range(2, b1).unwrap().start;
            let row2 = f2.blocks.range(2, b2).unwrap().start;
            let prod_row = row1 * f2.c.rows() + row2;
            let f: Vec<RatFunc> = prod.c.row(prod_row).to_vec();
            let q = degen::fullness_index(&prod.source, &f).unwrap();
            assert_eq!(q, q1 * q2, "fullness not multiplicative: {name1} ⊗ {name2}");
        }
    }
}

/// The one-slice pipeline width matches `(q+2)ⁿ − 2(q+1)ⁿ + qⁿ` for small
/// symbolic instances.
pub fn check_cw_pipeline_widths() {
    for q in [2u64, 3] {
        for n in [1u32, 2] {
            let dec = speedup::cw_border_decomposition(q as usize)
                .unwrap()
                .power(n);
            let sc = speedup::cw_minrank_scalars(q as usize).unwrap().power(n);
            let out = speedup::one_slice_speedup(&dec, &sc).unwrap();
            let expect = (q + 2).pow(n) + q.pow(n) - 2 * (q + 1).pow(n);
            assert_eq!(out.t as u64, expect, "width mismatch at q={q}, n={n}");
        }
    }
}

/// Monotone-bound soundness: each identity side evaluated at a box's low
/// corner bounds its value at interior sample points, which the high
/// corner bounds in turn.
pub fn check_monotone_bounds(cases: u32, seed: u64) {
    let ctx = RealCtx::new(30);
    let mut rng = random::rng(seed);
    let ids = [
        spectrum::schoenhage_identity(),
        spectrum::strassen_identity(),
    ];
    for case in 0..cases {
        let id = &ids[rng.gen_range(0..ids.len())];
        let mut lo = [ctx.zero(), ctx.zero(), ctx.zero()];
        let mut hi = lo.clone();
        let mut mid = lo.clone();
        for i in 0..3 {
            let a: f64 = rng.gen_range(0.0..1.0);
            let b: f64 = rng.gen_range(0.0..1.0);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            let t: f64 = rng.gen_range(0.0..=1.0);
            lo[i] = ctx.from_f64(a);
            hi[i] = ctx.from_f64(b);
            mid[i] = ctx.from_f64(a + t * (b - a));
        }
        for side in [&id.lhs, &id.rhs] {
            let vl = side.eval(&ctx, &lo);
            let vm = side.eval(&ctx, &mid);
            let vh = side.eval(&ctx, &hi);
            assert!(
                ctx.widen_down(&vl) <= vm && vm <= ctx.widen_up(&vh),
                "monotone bound violated at case {case} on {}",
                id.name
            );
        }
    }
}

/// Certified-max sandwich and feasibility of the returned point; the
/// certified value also dominates the diagonal solution.
pub fn check_certified_max_sandwich() {
    let ctx = RealCtx::new(40);
    let tol = ctx.from_str("1e-3").unwrap();
    for id in [
        spectrum::strassen_identity(),
        spectrum::schoenhage_identity(),
    ] {
        let out = spectrum::omega_from_identities(
            &ctx,
            std::slice::from_ref(&id),
            &spectrum::OmegaOptions::new(&ctx, &tol),
        )
        .unwrap();
        assert!(out.lower <= out.upper);
        assert!(ctx.sub(&out.upper, &out.lower) <= tol);
        for perm in spectrum::symmetrize(std::slice::from_ref(&id)) {
            let gap = spectrum::eval_gap(&ctx, &perm, out.point.coords());
            assert!(
                !ctx.widen_up(&gap).is_negative(),
                "returned point infeasible for {}",
                perm.name
            );
        }
        let p = out.point.coords();
        let s = ctx.add(&ctx.add(&p[0], &p[1]), &p[2]);
        assert!(!s.is_negative() && s <= ctx.from_i64(3));
        let diag = spectrum::diagonal_tau(&ctx, &id, &ctx.from_str("1e-6").unwrap()).unwrap();
        assert!(
            out.upper >= ctx.sub(&diag.three_tau, &tol),
            "certified max below the diagonal value on {}",
            id.name
        );
    }
}

/// `(τ*, τ*, τ*)` is feasible and stepping `2·tol` beyond it is infeasible
/// for identities with strictly decreasing diagonal gap.
pub fn check_tau_consistency() {
    let ctx = RealCtx::new(40);
    let tol = ctx.from_str("1e-6").unwrap();
    for id in [
        spectrum::strassen_identity(),
        spectrum::schoenhage_identity(),
    ] {
        let out = spectrum::diagonal_tau(&ctx, &id, &tol).unwrap();
        let at = |tau: &Real| {
            let p = [tau.clone(), tau.clone(), tau.clone()];
            spectrum::eval_gap(&ctx, &id, &p)
        };
        assert!(!at(&out.tau).is_negative(), "τ* infeasible on {}", id.name);
        let beyond = ctx.add(&out.tau, &ctx.mul(&ctx.from_i64(2), &tol));
        assert!(at(&beyond).is_negative(), "τ*+2·tol feasible on {}", id.name);
    }
}

/// `γ_{q,n}` equals the rooted three-direction bound for the pipeline
/// parameters, across the full table range.
pub fn check_gamma_cross(ctx: &RealCtx) {
    let wbar = ctx.from_str("2.371339").unwrap();
    for q in 2..=10u64 {
        for n in 1..=12u32 {
            let (r, s, t) = spectrum::bounds::cw_pipeline_params(q, n).unwrap();
            let direct = spectrum::three_direction_bound(ctx, r, s, t, &wbar).unwrap();
            let root = ctx.div(&ctx.one(), &ctx.from_u64(n as u64));
            let expect = ctx.pow(&direct.value, &root);
            let gamma = spectrum::cw_gamma(ctx, q, n, &wbar).unwrap();
            let diff = ctx.to_f64(&ctx.abs(&ctx.sub(&gamma.value, &expect)));
            assert!(diff < 1e-40, "γ mismatch at q={q}, n={n}");
        }
    }
}

/// Compression bookkeeping: retained width equals total minus codimension.
pub fn check_compression_widths(cases: u32, seed: u64) {
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let k = rng.gen_range(1..=3);
        let widths: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
        let total: usize = widths.iter().sum();
        let p = rng.gen_range(0..=total.min(3));
        let asub = random::random_full_row_rank(&mut rng, total - p, total, 3);
        let out = speedup::compress_one_slice_sum(&widths, &asub).unwrap();
        assert_eq!(
            out.retained.iter().sum::<usize>(),
            total - p,
            "retained width wrong at case {case}"
        );
        assert_eq!(out.removed.iter().sum::<usize>(), p);
    }
}

/// A tensor with seeded rational spectra round-trips through the 3×3×3
/// normal form.
pub fn check_333_round_trip(cases: u32, seed: u64) {
    for i in 0..cases as u64 {
        let t = speedup::seeded_333(seed.wrapping_add(i));
        let out = speedup::generic_333_restriction(&t).unwrap();
        assert_eq!(out.restriction.target, t, "round trip failed at seed {i}");
    }
}

pub fn sample_identity(rng: &mut rand_chacha::ChaCha8Rng) -> Identity {
    let term = |rng: &mut rand_chacha::ChaCha8Rng| MmTerm {
        n: rng.gen_range(1..=4),
        m: rng.gen_range(1..=4),
        p: rng.gen_range(1..=4),
        mult: rng.gen_range(1..=5),
    };
    let side = |rng: &mut rand_chacha::ChaCha8Rng| {
        let k = rng.gen_range(1..=3);
        MmSum::new((0..k).map(|_| term(rng)).collect()).unwrap()
    };
    Identity::new("sample", side(rng), side(rng)).unwrap()
}

pub fn sample_tensor(rng: &mut rand_chacha::ChaCha8Rng, max_dim: usize) -> Tensor3<Rat> {
    let dims = [
        rng.gen_range(1..=max_dim),
        rng.gen_range(1..=max_dim),
        rng.gen_range(1..=max_dim),
    ];
    random::random_tensor(rng, dims, 4)
}
