//! Partitioned one-slice speedup: split the terms of a border decomposition
//! into groups and append one slice per group on both sides.

use crate::algebra::{Field, Mat, RatFunc};
use crate::error::CoreError;
use crate::tensor::block::BlockSpec3;
use crate::tensor::degen::{DegenFamily, Restriction};
use crate::tensor::tensor3::{apply_restriction, direct_sum, promote_tensor};
use crate::tensor::{diagonal, one_slice};

use super::decomp::{RankOneDecomposition, SliceScalars};
use super::multi_slice::append_canonical_slices;

/// A partition of the term indices `[r]` into groups, with per-group rank
/// caps `s_α ≥ rank(M_α)`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Partition {
    pub groups: Vec<Vec<usize>>,
    pub s_caps: Vec<usize>,
}

impl Partition {
    pub fn validate(&self, r: usize) -> Result<(), CoreError> {
        if self.groups.len() != self.s_caps.len() {
            return Err(CoreError::Partition(format!(
                "{} groups but {} rank caps",
                self.groups.len(),
                self.s_caps.len()
            )));
        }
        let mut seen = vec![false; r];
        for g in &self.groups {
            for &i in g {
                if i >= r {
                    return Err(CoreError::Partition(format!("index {i} out of range {r}")));
                }
                if seen[i] {
                    return Err(CoreError::Partition(format!("index {i} in two groups")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(CoreError::Partition("groups do not cover all indices".into()));
        }
        Ok(())
    }
}

pub struct GroupParams {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

pub struct PartitionedSpeedup {
    /// Verified family `T ⊕ ⊕_α ⟨1,t_α,1⟩ ⊴ ⟨r⟩ ⊕ ⊕_α ⟨1,s_α,1⟩`.
    pub family: DegenFamily,
    pub groups: Vec<GroupParams>,
}

pub fn partitioned_speedup(
    dec: &RankOneDecomposition,
    sc: &SliceScalars,
    part: &Partition,
) -> Result<PartitionedSpeedup, CoreError> {
    dec.validate()?;
    let r = dec.border_rank();
    if sc.len() != r {
        return Err(CoreError::ShapeMismatch(format!(
            "{} scalars for a rank-{r} decomposition",
            sc.len()
        )));
    }
    part.validate(r)?;
    let [n, m, _] = dec.target.dims();

    // per-group compressed matrices and their rank factorizations
    let mut p_pads: Vec<Mat<RatFunc>> = Vec::new();
    let mut q_pads: Vec<Mat<RatFunc>> = Vec::new();
    for (g, &cap) in part.groups.iter().zip(&part.s_caps) {
        let mut mg = Mat::<RatFunc>::zeros(n, m);
        for &i in g {
            let term = &dec.terms[i];
            mg = mg.add(&Mat::outer(&term.a, &term.b).scale(&sc.weights()[i]));
        }
        let rank = mg.rank();
        if cap < rank {
            return Err(CoreError::Partition(format!(
                "rank cap {cap} below actual rank {rank}"
            )));
        }
        if g.len() + cap < n + m {
            return Err(CoreError::Partition(format!(
                "group of size {} with cap {cap} violates r_α + s_α ≥ n + m = {}",
                g.len(),
                n + m
            )));
        }
        let (p, q) = mg.rank_factorization();
        // pad to the declared cap with zero columns / rows
        p_pads.push(p.hstack(&Mat::zeros(n, cap - rank)));
        q_pads.push(q.vstack(&Mat::zeros(cap - rank, m)));
    }

    let (a0, b0, c0) = dec.maps();
    let mut a_ext = a0;
    let mut b_ext = b0;
    for (p, q) in p_pads.iter().zip(&q_pads) {
        a_ext = a_ext.hstack(p);
        b_ext = b_ext.hstack(&q.transpose());
    }
    let p_count = part.groups.len();
    let c_ext = c0.hstack(&Mat::zeros(dec.target.dims()[2], p_count));

    let slices: Vec<_> = part.s_caps.iter().map(|&s| one_slice(s)).collect();
    let diag = diagonal(r);
    let mut parts: Vec<&_> = vec![&diag];
    for s in &slices {
        parts.push(s);
    }
    let source = promote_tensor(&direct_sum(&parts));

    let w_dim = r + p_count;
    let functionals: Vec<Vec<RatFunc>> = part
        .groups
        .iter()
        .enumerate()
        .map(|(alpha, g)| {
            let mut f = vec![<RatFunc as Field>::zero(); w_dim];
            for &i in g {
                f[i] = sc.weights()[i].clone();
            }
            f[r + alpha] = -<RatFunc as Field>::one();
            f
        })
        .collect();

    // sanity: maps reproduce the border sum exactly
    let raw = apply_restriction(&source, &a_ext, &b_ext, &c_ext)?;
    let _ = Restriction::new(source.clone(), a_ext.clone(), b_ext.clone(), c_ext.clone(), raw)?;

    let out = append_canonical_slices(
        &source,
        &a_ext,
        &b_ext,
        &c_ext,
        &dec.target,
        &BlockSpec3::single(dec.target.dims()),
        &functionals,
    )?;

    let mut groups = Vec::new();
    for ((g, &cap), &t) in part.groups.iter().zip(&part.s_caps).zip(&out.widths) {
        if t + n + m < g.len() + cap {
            return Err(CoreError::VerificationFailed(format!(
                "group slice width {t} below r_α + s_α − n − m = {}",
                (g.len() + cap) as i64 - (n + m) as i64
            )));
        }
        groups.push(GroupParams {
            r: g.len(),
            s: cap,
            t,
        });
    }
    Ok(PartitionedSpeedup {
        family: out.family,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::speedup::decomp::{cw_border_decomposition, cw_minrank_scalars, RankOneTerm};
    use crate::speedup::one_slice::one_slice_speedup;
    use crate::tensor::degen::{is_isolated, verify_degeneration};
    use crate::tensor::tensor3::Tensor3;

    #[test]
    fn single_group_matches_one_slice_speedup() {
        let dec = cw_border_decomposition(2).unwrap();
        let sc = cw_minrank_scalars(2).unwrap();
        let single = one_slice_speedup(&dec, &sc).unwrap();
        let part = Partition {
            groups: vec![(0..4).collect()],
            s_caps: vec![2],
        };
        let out = partitioned_speedup(&dec, &sc, &part).unwrap();
        assert_eq!(out.groups.len(), 1);
        assert_eq!(out.groups[0].r, single.r);
        assert_eq!(out.groups[0].s, single.s);
        assert_eq!(out.groups[0].t, single.t);
    }

    #[test]
    fn two_groups_on_a_diagonal_vector() {
        // T = (1,1,1,1) as a 1×1×4 tensor, split into two groups of 2 with
        // s_α = 1: each group appends ⟨1,1,1⟩ on both sides
        let one = || RatFunc::from_int(1);
        let terms: Vec<RankOneTerm> = (0..4)
            .map(|i| {
                let mut c = vec![<RatFunc as Field>::zero(); 4];
                c[i] = one();
                RankOneTerm {
                    a: vec![one()],
                    b: vec![one()],
                    c,
                }
            })
            .collect();
        let mut target = Tensor3::zeros([1, 1, 4]);
        for k in 0..4 {
            target.set(0, 0, k, rat(1));
        }
        let dec = RankOneDecomposition { target, terms };
        assert!(dec.verify().unwrap().pass);

        let sc = SliceScalars::new(vec![one(), one(), one(), one()]).unwrap();
        let part = Partition {
            groups: vec![vec![0, 1], vec![2, 3]],
            s_caps: vec![1, 1],
        };
        let out = partitioned_speedup(&dec, &sc, &part).unwrap();
        assert_eq!(out.groups.len(), 2);
        for g in &out.groups {
            assert_eq!((g.r, g.s, g.t), (2, 1, 1));
        }
        let rep = verify_degeneration(&out.family).unwrap();
        assert!(rep.pass, "{}", rep.describe());
        assert!(is_isolated(&out.family, 1).unwrap());
        assert!(is_isolated(&out.family, 2).unwrap());
    }

    #[test]
    fn undersized_group_rejected() {
        let dec = cw_border_decomposition(2).unwrap();
        let sc = cw_minrank_scalars(2).unwrap();
        // group {0} with cap 2: 1 + 2 < 3 + 3
        let part = Partition {
            groups: vec![vec![0], vec![1, 2, 3]],
            s_caps: vec![2, 2],
        };
        assert!(matches!(
            partitioned_speedup(&dec, &sc, &part),
            Err(CoreError::Partition(_))
        ));
    }
}
