//! A direct-sum degeneration with nontrivial summands on both sides:
//!
//!   `⟨n,1,m⟩ ⊕ ⊕_{α,β} ⟨1, (n_α−1)(m_β−1), 1⟩  ⊴  ⟨nm⟩ ⊕ ⟨p,1,q⟩`
//!
//! for partitions `n = Σ_α n_α` (p parts) and `m = Σ_β m_β` (q parts). The
//! witness is built explicitly: the redundant restriction `⟨n,1,m⟩ ≤ S`
//! aggregates the partition classes into the `⟨p,1,q⟩` coordinates, the
//! kernel covectors pair each non-distinguished index with its class
//! representative, and the junk blocks die under the usual monomial
//! degeneration.

use crate::algebra::{rat, Mat, Rat, RatFunc};
use crate::error::CoreError;
use crate::tensor::block::BlockSpec3;
use crate::tensor::degen::{verify_degeneration, DegenFamily};
use crate::tensor::tensor3::{direct_sum, promote_mat, Tensor3};
use crate::tensor::{diagonal, mm_tensor, one_slice};

pub struct DirectSumIdentity {
    pub family: DegenFamily,
    /// Appended widths `(n_α−1)(m_β−1)` in `(α, β)` row-major order.
    pub widths: Vec<usize>,
}

pub fn direct_sum_identity(
    n_parts: &[usize],
    m_parts: &[usize],
) -> Result<DirectSumIdentity, CoreError> {
    if n_parts.is_empty() || m_parts.is_empty() || n_parts.contains(&0) || m_parts.contains(&0) {
        return Err(CoreError::BadParameter(
            "partition parts must be positive".into(),
        ));
    }
    let p = n_parts.len();
    let q = m_parts.len();
    let n: usize = n_parts.iter().sum();
    let m: usize = m_parts.iter().sum();

    // class and distinguished-representative lookup per index
    let class_of = |parts: &[usize], i: usize| -> (usize, bool) {
        let mut off = 0;
        for (a, &len) in parts.iter().enumerate() {
            if i < off + len {
                return (a, i == off);
            }
            off += len;
        }
        unreachable!()
    };

    // source S = ⟨nm⟩ ⊕ ⟨p,1,q⟩
    let diag = diagonal(n * m);
    let rect = mm_tensor(p, 1, q)?;
    let source_q = direct_sum(&[&diag, &rect]);
    // coordinate layout: u = [u_{ij} (i major) | u'_α], v = [v_{ij} | v'_β],
    // w = [w_{ij} | w'_{(k,a)} = k·p + a] with (a, k) = (class α, class β)
    let u_dim = n * m + p;
    let v_dim = n * m + q;
    let w_dim = n * m + p * q;

    // restriction ⟨n,1,m⟩ ≤ S
    let mut a0 = Mat::<Rat>::zeros(n, u_dim);
    for i in 0..n {
        for j in 0..m {
            a0[(i, i * m + j)] = rat(1);
        }
    }
    for alpha in 0..p {
        for i in 0..n {
            if class_of(n_parts, i).0 == alpha {
                a0[(i, n * m + alpha)] = rat(1);
            }
        }
    }
    let mut b0 = Mat::<Rat>::zeros(m, v_dim);
    for i in 0..n {
        for j in 0..m {
            b0[(j, i * m + j)] = rat(1);
        }
    }
    for beta in 0..q {
        for j in 0..m {
            if class_of(m_parts, j).0 == beta {
                b0[(j, n * m + beta)] = rat(1);
            }
        }
    }
    // ⟨n,1,m⟩ z-coordinate of the pair (i, j) is j·n + i
    let mut c0 = Mat::<Rat>::zeros(m * n, w_dim);
    for i in 0..n {
        for j in 0..m {
            c0[(j * n + i, i * m + j)] = rat(1);
        }
    }

    // kernel covectors: diagonal coordinates map to their class pair, the
    // rectangular coordinates carry the cancelling sign
    let mut cprime = Mat::<Rat>::zeros(p * q, w_dim);
    for i in 0..n {
        let alpha = class_of(n_parts, i).0;
        for j in 0..m {
            let beta = class_of(m_parts, j).0;
            cprime[(alpha * q + beta, i * m + j)] = rat(1);
        }
    }
    for alpha in 0..p {
        for beta in 0..q {
            // ⟨p,1,q⟩ z-coordinate of (x_α, y_β) is β·p + α
            cprime[(alpha * q + beta, n * m + beta * p + alpha)] = rat(-1);
        }
    }

    // annihilator rows: one per (i, j) with both indices non-distinguished,
    // pairing the coordinate with its distinguished partner
    let dist_n: Vec<usize> = {
        let mut d = Vec::new();
        let mut off = 0;
        for &len in n_parts {
            d.push(off);
            off += len;
        }
        d
    };
    let dist_m: Vec<usize> = {
        let mut d = Vec::new();
        let mut off = 0;
        for &len in m_parts {
            d.push(off);
            off += len;
        }
        d
    };

    let mut widths = Vec::with_capacity(p * q);
    let mut a_rows: Vec<Vec<Rat>> = Vec::new();
    let mut b_rows: Vec<Vec<Rat>> = Vec::new();
    for (alpha, &na) in n_parts.iter().enumerate() {
        for (beta, &mb) in m_parts.iter().enumerate() {
            widths.push((na - 1) * (mb - 1));
            for i in 0..n {
                let (ca, di) = class_of(n_parts, i);
                if ca != alpha || di {
                    continue;
                }
                for j in 0..m {
                    let (cb, dj) = class_of(m_parts, j);
                    if cb != beta || dj {
                        continue;
                    }
                    let mut ar = vec![rat(0); u_dim];
                    ar[i * m + j] = rat(1);
                    ar[dist_n[alpha] * m + j] = rat(-1);
                    a_rows.push(ar);
                    let mut br = vec![rat(0); v_dim];
                    br[i * m + j] = rat(1);
                    br[i * m + dist_m[beta]] = rat(-1);
                    b_rows.push(br);
                }
            }
        }
    }
    let d_total: usize = widths.iter().sum();
    let a_tilde = if a_rows.is_empty() {
        Mat::<Rat>::zeros(0, u_dim)
    } else {
        Mat::from_rows(a_rows)
    };
    let b_tilde = if b_rows.is_empty() {
        Mat::<Rat>::zeros(0, v_dim)
    } else {
        Mat::from_rows(b_rows)
    };
    debug_assert_eq!(a_tilde.rows(), d_total);

    // target ⟨n,1,m⟩ ⊕ ⊕ ⟨1, width, 1⟩ with matching blocks
    let main = mm_tensor(n, 1, m)?;
    let slices: Vec<Tensor3<Rat>> = widths.iter().map(|&w| one_slice(w)).collect();
    let mut parts: Vec<&Tensor3<Rat>> = vec![&main];
    parts.extend(slices.iter());
    let target = direct_sum(&parts);
    let mut blocks = BlockSpec3::single(main.dims());
    for &w in &widths {
        blocks = blocks.append([w, w, 1]);
    }

    let lam = RatFunc::lambda();
    let family = DegenFamily {
        a: promote_mat(&a0).vstack(&promote_mat(&a_tilde).scale(&lam)),
        b: promote_mat(&b0).vstack(&promote_mat(&b_tilde).scale(&lam)),
        c: promote_mat(&c0).vstack(&promote_mat(&cprime).scale(&RatFunc::lambda_pow(-2))),
        source: source_q.map(|x| RatFunc::from_rat(x.clone())),
        target,
        blocks,
        order_bound: 1,
    };
    let report = verify_degeneration(&family)?;
    if !report.pass {
        return Err(CoreError::VerificationFailed(report.describe()));
    }
    Ok(DirectSumIdentity { family, widths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::degen::is_isolated;

    #[test]
    fn single_parts_reproduce_the_classical_identity() {
        // ⟨n,1,m⟩ ⊕ ⟨1,(n−1)(m−1),1⟩ ⊴ ⟨nm⟩ ⊕ ⟨1,1,1⟩ = ⟨nm+1⟩
        let out = direct_sum_identity(&[3], &[4]).unwrap();
        assert_eq!(out.widths, vec![6]);
        assert_eq!(out.family.source.dims(), [13, 13, 13]);
        // the source really is the diagonal ⟨13⟩
        let diag13 = crate::tensor::tensor3::promote_tensor(&diagonal(13));
        assert_eq!(out.family.source, diag13);
    }

    #[test]
    fn two_by_two_partition() {
        // ⟨4,1,4⟩ ⊕ 4⊙⟨1,1,1⟩ ⊴ ⟨16⟩ ⊕ ⟨2,1,2⟩
        let out = direct_sum_identity(&[2, 2], &[2, 2]).unwrap();
        assert_eq!(out.widths, vec![1, 1, 1, 1]);
        assert_eq!(out.family.source.dims(), [18, 18, 20]);
        for b in 1..=4 {
            assert!(is_isolated(&out.family, b).unwrap());
        }
    }

    #[test]
    fn unit_part_gives_empty_summand() {
        let out = direct_sum_identity(&[1, 2], &[2]).unwrap();
        assert_eq!(out.widths, vec![0, 1]);
    }

    #[test]
    fn bad_parts_rejected() {
        assert!(direct_sum_identity(&[], &[2]).is_err());
        assert!(direct_sum_identity(&[2, 0], &[2]).is_err());
    }
}
