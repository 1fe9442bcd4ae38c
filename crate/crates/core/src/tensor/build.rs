//! Standard tensor families: diagonals, matrix multiplication tensors, and
//! the small Coppersmith–Winograd tensors.

use crate::algebra::{Field, Rat};
use crate::error::CoreError;

use super::tensor3::Tensor3;

/// `⟨r⟩`: unit coefficients on the diagonal of an `r×r×r` tensor.
pub fn diagonal(r: usize) -> Tensor3<Rat> {
    let mut t = Tensor3::zeros([r, r, r]);
    for i in 0..r {
        t.set(i, i, i, Field::one());
    }
    t
}

/// The matrix multiplication tensor `⟨n, m, p⟩` with dims `(nm, mp, pn)`;
/// x-index `(i, j)`, y-index `(j, k)`, z-index `(k, i)`, all row-major.
pub fn mm_tensor(n: usize, m: usize, p: usize) -> Result<Tensor3<Rat>, CoreError> {
    if n < 1 || m < 1 || p < 1 {
        return Err(CoreError::NonPositiveDim(format!("⟨{n}, {m}, {p}⟩")));
    }
    let mut t = Tensor3::zeros([n * m, m * p, p * n]);
    for i in 0..n {
        for j in 0..m {
            for k in 0..p {
                t.set(i * m + j, j * p + k, k * n + i, Field::one());
            }
        }
    }
    Ok(t)
}

/// The one-slice tensor `⟨1, t, 1⟩` with dims `(t, t, 1)`; width 0 yields
/// the empty tensor `(0, 0, 1)`.
pub fn one_slice(t: usize) -> Tensor3<Rat> {
    let mut out = Tensor3::zeros([t, t, 1]);
    for i in 0..t {
        out.set(i, i, 0, Field::one());
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CwVariant {
    /// `Σ_i x0 y_i z_i + x_i y0 z_i + x_i y_i z0`, dims `(q+1)³`.
    Standard,
    /// The 3×3×3 permutation variant with the six terms `x_a y_b z_c`,
    /// `{a,b,c} = {1,2,3}` and `a ≠ b ≠ c`.
    Prime2,
}

pub fn cw_tensor(q: usize, variant: CwVariant) -> Result<Tensor3<Rat>, CoreError> {
    match variant {
        CwVariant::Standard => {
            if q < 1 {
                return Err(CoreError::BadParameter("cw tensor needs q ≥ 1".into()));
            }
            let d = q + 1;
            let mut t = Tensor3::zeros([d, d, d]);
            for i in 1..=q {
                t.set(0, i, i, Field::one());
                t.set(i, 0, i, Field::one());
                t.set(i, i, 0, Field::one());
            }
            Ok(t)
        }
        CwVariant::Prime2 => {
            let mut t = Tensor3::zeros([3, 3, 3]);
            for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
                t.set(i, j, k, Field::one());
            }
            Ok(t)
        }
    }
}

/// The canonical mode-wise index bijections under which
/// `⟨n,m,p⟩ ⊗ ⟨n',m',p'⟩` equals `⟨nn', mm', pp'⟩` exactly: each returned
/// vector maps a Kronecker index to the corresponding product-tensor index.
pub fn mm_kron_regroup(
    (n, m, p): (usize, usize, usize),
    (n2, m2, p2): (usize, usize, usize),
) -> [Vec<usize>; 3] {
    let pair = |outer_a: usize,
                inner_a: usize,
                outer_b: usize,
                inner_b: usize|
     -> Vec<usize> {
        // kron index = (a_out·inner_a + a_in)·(outer_b·inner_b) + (b_out·inner_b + b_in)
        // product index = (a_out·outer_b + b_out)·(inner_a·inner_b) + (a_in·inner_b + b_in)
        let total = outer_a * inner_a * outer_b * inner_b;
        (0..total)
            .map(|idx| {
                let second = idx % (outer_b * inner_b);
                let first = idx / (outer_b * inner_b);
                let (a_out, a_in) = (first / inner_a, first % inner_a);
                let (b_out, b_in) = (second / inner_b, second % inner_b);
                (a_out * outer_b + b_out) * (inner_a * inner_b) + (a_in * inner_b + b_in)
            })
            .collect()
    };
    [
        pair(n, m, n2, m2),   // x-index (i, j)
        pair(m, p, m2, p2),   // y-index (j, k)
        pair(p, n, p2, n2),   // z-index (k, i)
    ]
}

/// Apply per-mode index bijections.
pub fn reindex<F: Field>(t: &Tensor3<F>, maps: &[Vec<usize>; 3]) -> Tensor3<F> {
    let mut out = Tensor3::zeros(t.dims());
    for ([i, j, k], v) in t.nonzero() {
        out.set(maps[0][i], maps[1][j], maps[2][k], v.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::tensor3::{kron, permute};

    #[test]
    fn mm_shapes() {
        let t = mm_tensor(1, 1, 1).unwrap();
        assert_eq!(t.dims(), [1, 1, 1]);
        assert_eq!(t.count_nonzero(), 1);

        let t = mm_tensor(2, 1, 1).unwrap();
        assert_eq!(t.dims(), [2, 1, 2]);
        assert_eq!(t.count_nonzero(), 2);

        let t = mm_tensor(2, 2, 2).unwrap();
        assert_eq!(t.dims(), [4, 4, 4]);
        assert_eq!(t.count_nonzero(), 8);

        assert!(mm_tensor(2, 0, 1).is_err());
    }

    #[test]
    fn cw_support() {
        let t = cw_tensor(2, CwVariant::Standard).unwrap();
        assert_eq!(t.dims(), [3, 3, 3]);
        assert_eq!(t.count_nonzero(), 6);
        for i in 1..=2 {
            assert!(!t.get(0, i, i).is_zero());
            assert!(!t.get(i, 0, i).is_zero());
            assert!(!t.get(i, i, 0).is_zero());
        }

        let t1 = cw_tensor(1, CwVariant::Standard).unwrap();
        assert_eq!(t1.count_nonzero(), 3);
        assert!(cw_tensor(0, CwVariant::Standard).is_err());

        let p = cw_tensor(2, CwVariant::Prime2).unwrap();
        assert_eq!(p.dims(), [3, 3, 3]);
        assert_eq!(p.count_nonzero(), 6);
    }

    #[test]
    fn cw_is_mode_symmetric() {
        // the coefficient pattern of cw_q is invariant under every mode
        // relabeling, checked directly for q ≤ 5
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for q in 1..=5 {
            let t = cw_tensor(q, CwVariant::Standard).unwrap();
            for sigma in perms {
                assert_eq!(permute(&t, sigma).unwrap(), t, "q={q} sigma={sigma:?}");
            }
        }
    }

    #[test]
    fn one_slice_zero_width() {
        let t = one_slice(0);
        assert_eq!(t.dims(), [0, 0, 1]);
        assert!(t.is_zero());
    }

    #[test]
    fn mm_kron_collapses_with_unit_dims() {
        // with unit inner dims the index regrouping is trivial and the
        // product is entrywise equal
        let a = mm_tensor(2, 1, 1).unwrap();
        let b = mm_tensor(1, 3, 1).unwrap();
        assert_eq!(kron(&a, &b), mm_tensor(2, 3, 1).unwrap());
    }

    #[test]
    fn mm_kron_is_mm_after_regrouping() {
        for (t1, t2) in [((2, 3, 2), (2, 1, 2)), ((2, 2, 2), (2, 2, 2)), ((1, 3, 2), (3, 2, 1))] {
            let a = mm_tensor(t1.0, t1.1, t1.2).unwrap();
            let b = mm_tensor(t2.0, t2.1, t2.2).unwrap();
            let maps = mm_kron_regroup(t1, t2);
            let got = reindex(&kron(&a, &b), &maps);
            assert_eq!(got, mm_tensor(t1.0 * t2.0, t1.1 * t2.1, t1.2 * t2.2).unwrap());
        }
    }
}
