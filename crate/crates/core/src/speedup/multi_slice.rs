//! Shared engine that appends one-slice summands in canonical form.
//!
//! Given maps `(A, B, C)` realizing `declared + O(λ)` from `S` and a list of
//! third-mode functionals `f_α`, each annihilating `(A ⊗ B ⊗ f_α)S`, the
//! engine computes per-functional annihilator subspaces, compresses each
//! extracted slice to an exact identity matrix `⟨1, t_α, 1⟩`, and assembles
//! the verified family
//!
//!   `declared ⊕ ⊕_α ⟨1, t_α, 1⟩  ⊴  S`.
//!
//! The extracted slices must not interact: each functional's slice matrix
//! has to live on source coordinates that the other groups' annihilators do
//! not touch. That holds for all constructions in this crate (disjoint
//! groups of a partition, disjoint diagonal index classes) and is checked
//! explicitly here.

use crate::algebra::{Field, Mat, Rat, RatFunc};
use crate::error::CoreError;
use crate::tensor::block::BlockSpec3;
use crate::tensor::degen::{verify_degeneration, DegenFamily};
use crate::tensor::tensor3::{direct_sum, Tensor3};
use crate::tensor::one_slice;

use super::free_lunch::separation_exponent;

pub struct CanonicalSlices {
    pub family: DegenFamily,
    /// Width `t_α` of each appended slice, in functional order.
    pub widths: Vec<usize>,
    pub separation_exponent: i64,
    /// Row indices in `family.c` of the appended slice functionals.
    pub slice_rows: Vec<usize>,
}

struct Group {
    a2: Mat<RatFunc>,
    b2: Mat<RatFunc>,
    width: usize,
}

fn nonzero_rows<F: Field>(m: &Mat<F>) -> Vec<usize> {
    (0..m.rows())
        .filter(|&i| (0..m.cols()).any(|j| !m[(i, j)].is_zero()))
        .collect()
}

fn nonzero_cols<F: Field>(m: &Mat<F>) -> Vec<usize> {
    (0..m.cols())
        .filter(|&j| (0..m.rows()).any(|i| !m[(i, j)].is_zero()))
        .collect()
}

fn embed_rows(local: &Mat<RatFunc>, support: &[usize], width: usize) -> Mat<RatFunc> {
    let mut out = Mat::zeros(local.rows(), width);
    for i in 0..local.rows() {
        for (lj, &j) in support.iter().enumerate() {
            out[(i, j)] = local[(i, lj)].clone();
        }
    }
    out
}

pub fn append_canonical_slices(
    source: &Tensor3<RatFunc>,
    a: &Mat<RatFunc>,
    b: &Mat<RatFunc>,
    c: &Mat<RatFunc>,
    declared: &Tensor3<Rat>,
    declared_blocks: &BlockSpec3,
    functionals: &[Vec<RatFunc>],
) -> Result<CanonicalSlices, CoreError> {
    let dims = source.dims();
    let mut slice_mats = Vec::with_capacity(functionals.len());
    for f in functionals {
        slice_mats.push(source.contract_mode3(f)?);
    }

    // kernel precondition per functional
    for (alpha, m0) in slice_mats.iter().enumerate() {
        let img = a.mul(m0).mul(&b.transpose());
        if !img.is_zero() {
            let (i, j) = first_nonzero(&img);
            return Err(CoreError::KernelPrecondition(i, j, alpha));
        }
    }

    let mut groups: Vec<Group> = Vec::with_capacity(functionals.len());
    for m0 in &slice_mats {
        let rows = nonzero_rows(m0);
        let cols = nonzero_cols(m0);

        // annihilator of u ↦ uᵀ·m0·Bᵀ on the support of m0
        let g = m0.mul(&b.transpose()); // dimU × m
        let ka = g.select_rows(&rows).transpose(); // m × |rows|
        let a_local = Mat::from_rows(ka.nullspace());
        let a_prime = embed_rows(&a_local, &rows, dims[0]);

        let h = a.mul(m0); // n × dimV
        let kb = h.select_cols(&cols); // n × |cols|
        let b_local = Mat::from_rows(kb.nullspace());
        let b_prime = embed_rows(&b_local, &cols, dims[1]);

        let n_mat = a_prime.mul(m0).mul(&b_prime.transpose());
        let width = n_mat.rank();
        let (p, q) = n_mat.rank_factorization();
        let x = p.left_inverse()?;
        let y = q.right_inverse()?;
        let a2 = x.mul(&a_prime);
        let b2 = y.transpose().mul(&b_prime);
        debug_assert_eq!(a2.mul(m0).mul(&b2.transpose()), Mat::identity(width));
        groups.push(Group { a2, b2, width });
    }

    // appended slices must decouple exactly
    for (alpha, m0) in slice_mats.iter().enumerate() {
        for (beta, gb) in groups.iter().enumerate() {
            if !a.mul(m0).mul(&gb.b2.transpose()).is_zero()
                || !gb.a2.mul(m0).mul(&b.transpose()).is_zero()
            {
                return Err(CoreError::Partition(format!(
                    "slice {alpha} interacts with annihilator of slice {beta}"
                )));
            }
            for (gamma, gc) in groups.iter().enumerate() {
                let block = gb.a2.mul(m0).mul(&gc.b2.transpose());
                let want = if alpha == beta && beta == gamma {
                    Mat::identity(gb.width)
                } else {
                    Mat::zeros(gb.width, gc.width)
                };
                if block != want {
                    return Err(CoreError::Partition(format!(
                        "slices ({beta}, {gamma}) do not decouple on functional {alpha}"
                    )));
                }
            }
        }
    }

    let a2_all = groups
        .iter()
        .fold(Mat::zeros(0, dims[0]), |acc, g| acc.vstack(&g.a2));
    let b2_all = groups
        .iter()
        .fold(Mat::zeros(0, dims[1]), |acc, g| acc.vstack(&g.b2));
    let f_all = Mat::from_rows(functionals.to_vec());

    let k = separation_exponent(junk_valuation(source, a, b, c, &a2_all, &b2_all)?);
    let lk = RatFunc::lambda_pow(k);
    let fam_a = a.vstack(&a2_all.scale(&lk));
    let fam_b = b.vstack(&b2_all.scale(&lk));
    let fam_c = c.vstack(&f_all.scale(&RatFunc::lambda_pow(-2 * k)));

    let slices: Vec<Tensor3<Rat>> = groups.iter().map(|g| one_slice(g.width)).collect();
    let mut parts: Vec<&Tensor3<Rat>> = vec![declared];
    parts.extend(slices.iter());
    let target = direct_sum(&parts);
    let mut blocks = declared_blocks.clone();
    for g in &groups {
        blocks = blocks.append([g.width, g.width, 1]);
    }
    let slice_rows = (0..functionals.len()).map(|i| c.rows() + i).collect();

    let family = DegenFamily {
        a: fam_a,
        b: fam_b,
        c: fam_c,
        source: source.clone(),
        target,
        blocks,
        order_bound: 1,
    };
    let report = verify_degeneration(&family)?;
    if !report.pass {
        return Err(CoreError::VerificationFailed(report.describe()));
    }
    Ok(CanonicalSlices {
        family,
        widths: groups.iter().map(|g| g.width).collect(),
        separation_exponent: k,
        slice_rows,
    })
}

fn first_nonzero<F: Field>(m: &Mat<F>) -> (usize, usize) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                return (i, j);
            }
        }
    }
    unreachable!("called on a zero matrix")
}

fn junk_valuation(
    source: &Tensor3<RatFunc>,
    a: &Mat<RatFunc>,
    b: &Mat<RatFunc>,
    c: &Mat<RatFunc>,
    a2: &Mat<RatFunc>,
    b2: &Mat<RatFunc>,
) -> Result<Option<i64>, CoreError> {
    use crate::tensor::tensor3::apply_restriction;
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
