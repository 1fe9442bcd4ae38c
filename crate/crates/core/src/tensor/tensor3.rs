//! Dense order-3 tensors over an exact field, with the combinators
//! (direct sum, Kronecker product, mode permutation) and exact restriction.
//!
//! Zero-length modes are allowed: the one-slice tensor of width 0 is the
//! empty tensor with dims `(0, 0, 1)`, and it arises naturally when a
//! speedup appends a slice of width 0.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{parse_rat, rat_to_string, Field, Mat, Rat, RatFunc};
use crate::error::CoreError;

#[derive(Clone, PartialEq, Debug)]
pub struct Tensor3<F> {
    dims: [usize; 3],
    data: Vec<F>,
}

impl<F: Field> Tensor3<F> {
    pub fn zeros(dims: [usize; 3]) -> Self {
        Tensor3 {
            dims,
            data: vec![F::zero(); dims[0] * dims[1] * dims[2]],
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn flat(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.dims[0] && j < self.dims[1] && k < self.dims[2]);
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &F {
        &self.data[self.flat(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: F) {
        let idx = self.flat(i, j, k);
        self.data[idx] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, k: usize, v: F) {
        let idx = self.flat(i, j, k);
        self.data[idx] = self.data[idx].clone() + v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ([usize; 3], &F)> {
        let [_, d1, d2] = self.dims;
        self.data.iter().enumerate().filter_map(move |(n, v)| {
            if v.is_zero() {
                None
            } else {
                let k = n % d2;
                let j = (n / d2) % d1;
                let i = n / (d1 * d2);
                Some(([i, j, k], v))
            }
        })
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Tensor3<G> {
        Tensor3 {
            dims: self.dims,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Tensor3<F> {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn sub(&self, other: &Tensor3<F>) -> Tensor3<F> {
        assert_eq!(self.dims, other.dims);
        Tensor3 {
            dims: self.dims,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn add(&self, other: &Tensor3<F>) -> Tensor3<F> {
        assert_eq!(self.dims, other.dims);
        Tensor3 {
            dims: self.dims,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    /// Subtensor on the given index lists (in the given order).
    pub fn select(&self, keep: [&[usize]; 3]) -> Tensor3<F> {
        let mut out = Tensor3::zeros([keep[0].len(), keep[1].len(), keep[2].len()]);
        for (i, &si) in keep[0].iter().enumerate() {
            for (j, &sj) in keep[1].iter().enumerate() {
                for (k, &sk) in keep[2].iter().enumerate() {
                    let v = self.get(si, sj, sk);
                    if !v.is_zero() {
                        out.set(i, j, k, v.clone());
                    }
                }
            }
        }
        out
    }

    /// The slice `(id ⊗ id ⊗ f)·T` as a matrix on modes 1 and 2.
    pub fn contract_mode3(&self, f: &[F]) -> Result<Mat<F>, CoreError> {
        if f.len() != self.dims[2] {
            return Err(CoreError::LengthMismatch {
                got: f.len(),
                want: self.dims[2],
            });
        }
        let mut m = Mat::<F>::zeros(self.dims[0], self.dims[1]);
        for ([i, j, k], v) in self.nonzero() {
            if f[k].is_zero() {
                continue;
            }
            m[(i, j)] = m[(i, j)].clone() + f[k].clone() * v.clone();
        }
        Ok(m)
    }
}

/// The diagonal tensor of size `r`: unit coefficients at `(i, i, i)`.
impl Tensor3<Rat> {
    pub fn rank_one(a: &[Rat], b: &[Rat], c: &[Rat]) -> Tensor3<Rat> {
        rank_one(a, b, c)
    }
}

pub fn rank_one<F: Field>(a: &[F], b: &[F], c: &[F]) -> Tensor3<F> {
    let mut t = Tensor3::zeros([a.len(), b.len(), c.len()]);
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (k, z) in c.iter().enumerate() {
                if z.is_zero() {
                    continue;
                }
                t.set(i, j, k, x.clone() * y.clone() * z.clone());
            }
        }
    }
    t
}

pub fn promote_tensor(t: &Tensor3<Rat>) -> Tensor3<RatFunc> {
    t.map(|x| RatFunc::from_rat(x.clone()))
}

pub fn promote_mat(m: &Mat<Rat>) -> Mat<RatFunc> {
    m.map(|x| RatFunc::from_rat(x.clone()))
}

/// Direct sum: dims add per mode, blocks placed along the superdiagonal.
pub fn direct_sum<F: Field>(parts: &[&Tensor3<F>]) -> Tensor3<F> {
    let dims = [
        parts.iter().map(|t| t.dims()[0]).sum(),
        parts.iter().map(|t| t.dims()[1]).sum(),
        parts.iter().map(|t| t.dims()[2]).sum(),
    ];
    let mut out = Tensor3::zeros(dims);
    let mut off = [0usize; 3];
    for t in parts {
        for ([i, j, k], v) in t.nonzero() {
            out.set(off[0] + i, off[1] + j, off[2] + k, v.clone());
        }
        for m in 0..3 {
            off[m] += t.dims()[m];
        }
    }
    out
}

/// Kronecker (tensor) product: dims multiply per mode; the first factor's
/// index is the major digit.
pub fn kron<F: Field>(a: &Tensor3<F>, b: &Tensor3<F>) -> Tensor3<F> {
    let da = a.dims();
    let db = b.dims();
    let mut out = Tensor3::zeros([da[0] * db[0], da[1] * db[1], da[2] * db[2]]);
    for ([i1, j1, k1], x) in a.nonzero() {
        for ([i2, j2, k2], y) in b.nonzero() {
            out.set(
                i1 * db[0] + i2,
                j1 * db[1] + j2,
                k1 * db[2] + k2,
                x.clone() * y.clone(),
            );
        }
    }
    out
}

/// Relabel modes: mode `m` of the input becomes mode `sigma[m]` of the output.
pub fn permute<F: Field>(t: &Tensor3<F>, sigma: [usize; 3]) -> Result<Tensor3<F>, CoreError> {
    let mut seen = [false; 3];
    for &s in &sigma {
        if s > 2 || seen[s] {
            return Err(CoreError::BadPermutation(sigma));
        }
        seen[s] = true;
    }
    let d = t.dims();
    let mut dims = [0usize; 3];
    for m in 0..3 {
        dims[sigma[m]] = d[m];
    }
    let mut out = Tensor3::zeros(dims);
    for ([i, j, k], v) in t.nonzero() {
        let idx = [i, j, k];
        let mut jdx = [0usize; 3];
        for m in 0..3 {
            jdx[sigma[m]] = idx[m];
        }
        out.set(jdx[0], jdx[1], jdx[2], v.clone());
    }
    Ok(out)
}

/// Exact contraction `(A ⊗ B ⊗ C)·S`. Map columns index the source mode,
/// rows the target mode.
pub fn apply_restriction<F: Field>(
    s: &Tensor3<F>,
    a: &Mat<F>,
    b: &Mat<F>,
    c: &Mat<F>,
) -> Result<Tensor3<F>, CoreError> {
    let d = s.dims();
    if a.cols() != d[0] || b.cols() != d[1] || c.cols() != d[2] {
        return Err(CoreError::ShapeMismatch(format!(
            "maps expect source dims ({}, {}, {}), tensor has ({}, {}, {})",
            a.cols(),
            b.cols(),
            c.cols(),
            d[0],
            d[1],
            d[2]
        )));
    }
    // Contract one mode at a time, skipping zero entries throughout.
    let mut t1 = Tensor3::<F>::zeros([a.rows(), d[1], d[2]]);
    for ([i, j, k], v) in s.nonzero() {
        for r in 0..a.rows() {
            let w = &a[(r, i)];
            if !w.is_zero() {
                t1.add_assign_at(r, j, k, w.clone() * v.clone());
            }
        }
    }
    let mut t2 = Tensor3::<F>::zeros([a.rows(), b.rows(), d[2]]);
    for ([i, j, k], v) in t1.nonzero() {
        for r in 0..b.rows() {
            let w = &b[(r, j)];
            if !w.is_zero() {
                t2.add_assign_at(i, r, k, w.clone() * v.clone());
            }
        }
    }
    let mut t3 = Tensor3::<F>::zeros([a.rows(), b.rows(), c.rows()]);
    for ([i, j, k], v) in t2.nonzero() {
        for r in 0..c.rows() {
            let w = &c[(r, k)];
            if !w.is_zero() {
                t3.add_assign_at(i, j, r, w.clone() * v.clone());
            }
        }
    }
    Ok(t3)
}

#[derive(Serialize, Deserialize)]
struct TensorRepr {
    dims: [usize; 3],
    entries: Vec<(usize, usize, usize, String)>,
}

/// Rational tensors serialize as `{"dims": [...], "entries": [[i,j,k,"p/q"], ...]}`
/// with zero entries omitted and 0-based indices.
impl Serialize for Tensor3<Rat> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .nonzero()
            .map(|([i, j, k], v)| (i, j, k, rat_to_string(v)))
            .collect();
        TensorRepr {
            dims: self.dims,
            entries,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Tensor3<Rat> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = TensorRepr::deserialize(de)?;
        let mut t = Tensor3::zeros(repr.dims);
        for (i, j, k, s) in repr.entries {
            if i >= repr.dims[0] || j >= repr.dims[1] || k >= repr.dims[2] {
                return Err(D::Error::custom(format!(
                    "entry ({i}, {j}, {k}) outside dims {:?}",
                    repr.dims
                )));
            }
            t.set(i, j, k, parse_rat(&s).map_err(D::Error::custom)?);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::tensor::build::{diagonal, mm_tensor};

    #[test]
    fn direct_sum_dims_and_support() {
        let a = diagonal(3);
        let b = mm_tensor(1, 2, 1).unwrap();
        let s = direct_sum(&[&a, &b]);
        assert_eq!(s.dims(), [5, 5, 4]);
        assert_eq!(s.count_nonzero(), 5);
    }

    #[test]
    fn kron_with_trivial_factor_is_entrywise() {
        let a = mm_tensor(2, 1, 1).unwrap();
        let b = mm_tensor(1, 3, 1).unwrap();
        assert_eq!(kron(&a, &b), mm_tensor(2, 3, 1).unwrap());
    }

    #[test]
    fn permute_round_trip() {
        let t = mm_tensor(2, 3, 4).unwrap();
        let sigma = [2, 0, 1];
        let inv = [1, 2, 0];
        let p = permute(&t, sigma).unwrap();
        assert_eq!(permute(&p, inv).unwrap(), t);
        assert!(permute(&t, [0, 0, 1]).is_err());
    }

    #[test]
    fn restriction_identity_and_zero() {
        let s = mm_tensor(2, 2, 2).unwrap();
        let id0 = Mat::identity(s.dims()[0]);
        let id1 = Mat::identity(s.dims()[1]);
        let id2 = Mat::identity(s.dims()[2]);
        assert_eq!(apply_restriction(&s, &id0, &id1, &id2).unwrap(), s);

        let z = Mat::zeros(s.dims()[2], s.dims()[2]);
        assert!(apply_restriction(&s, &id0, &id1, &z).unwrap().is_zero());

        let bad = Mat::<Rat>::identity(3);
        assert!(apply_restriction(&s, &bad, &id1, &id2).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let t = mm_tensor(2, 2, 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let u: Tensor3<Rat> = serde_json::from_str(&s).unwrap();
        assert_eq!(t, u);
    }

    #[test]
    fn rank_one_support() {
        let t = rank_one(&[rat(1), rat(0)], &[rat(2)], &[rat(1), rat(3)]);
        assert_eq!(t.count_nonzero(), 2);
        assert_eq!(t.get(0, 0, 1), &rat(6));
    }
}
