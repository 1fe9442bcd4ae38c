//! Dense exact matrices over a [`Field`], with rank, nullspace, and the
//! factorizations the speedup constructions need.
//!
//! Rank uses fraction-free (Bareiss) elimination after clearing row
//! denominators, with the pivot chosen as the first nonzero entry in column
//! order. This keeps intermediate entries as minors of the cleared matrix
//! and avoids the coefficient blowup of naive division over `ℚ(λ)`.

use super::Field;
use crate::error::CoreError;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: &[F], v: &[F]) -> Mat<F> {
        Mat::from_fn(u.len(), v.len(), |i, j| u[i].clone() * v[j].clone())
    }

    /// Kronecker product; the first factor's index is the major digit.
    pub fn kron(&self, other: &Mat<F>) -> Mat<F> {
        Mat::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let a = &self[(i / other.rows, j / other.cols)];
                if a.is_zero() {
                    F::zero()
                } else {
                    a.clone() * other[(i % other.rows, j % other.cols)].clone()
                }
            },
        )
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat<F> {
        Mat::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat<F> {
        Mat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// Fraction-free rank. Deterministic: first nonzero pivot in column order.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut a: Vec<Vec<F>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        for row in a.iter_mut() {
            F::clear_denominators(row);
        }
        let mut prev = F::one();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..self.rows {
                for j in col + 1..self.cols {
                    let t = a[r][col].clone() * a[i][j].clone()
                        - a[i][col].clone() * a[r][j].clone();
                    a[i][j] = t / prev.clone();
                }
                a[i][col] = F::zero();
            }
            prev = a[r][col].clone();
            r += 1;
        }
        r
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
            let inv = F::one() / a[(r, col)].clone();
            for j in 0..a.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..a.rows {
                if i == r || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..a.cols {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                }
            }
            pivots.push(col);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of `{v : M v = 0}`; size equals `cols − rank`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        if self.cols == 0 {
            return Vec::new();
        }
        if self.rows == 0 {
            return (0..self.cols)
                .map(|j| {
                    let mut v = vec![F::zero(); self.cols];
                    v[j] = F::one();
                    v
                })
                .collect();
        }
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, fc)].clone();
                }
                v
            })
            .collect()
    }

    /// Rank factorization `M = L · R` with `L: rows×r` (pivot columns of `M`)
    /// and `R: r×cols` (nonzero rows of the RREF).
    pub fn rank_factorization(&self) -> (Mat<F>, Mat<F>) {
        let (rr, pivots) = self.rref();
        let r = pivots.len();
        let l = self.select_cols(&pivots);
        let rmat = Mat::from_fn(r, self.cols, |i, j| rr[(i, j)].clone());
        (l, rmat)
    }

    /// Greedy maximal set of linearly independent rows, in row order.
    pub fn row_basis(&self) -> Vec<usize> {
        let mut by_lead: std::collections::BTreeMap<usize, Vec<F>> = Default::default();
        let mut idx = Vec::new();
        for i in 0..self.rows {
            let mut v = self.row(i).to_vec();
            loop {
                let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                    break; // dependent
                };
                match by_lead.get(&lead) {
                    Some(b) => {
                        let f = v[lead].clone() / b[lead].clone();
                        for (x, y) in v.iter_mut().zip(b.iter()) {
                            *x = x.clone() - f.clone() * y.clone();
                        }
                    }
                    None => {
                        by_lead.insert(lead, v);
                        idx.push(i);
                        break;
                    }
                }
            }
        }
        idx
    }

    pub fn inverse(&self) -> Result<Mat<F>, CoreError> {
        if self.rows != self.cols {
            return Err(CoreError::Singular);
        }
        let aug = self.hstack(&Mat::identity(self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(CoreError::Singular);
        }
        Ok(Mat::from_fn(self.rows, self.rows, |i, j| {
            r[(i, self.cols + j)].clone()
        }))
    }

    /// `X` with `X · M = I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Result<Mat<F>, CoreError> {
        let rows = self.row_basis();
        if rows.len() < self.cols {
            return Err(CoreError::Singular);
        }
        let square = self.select_rows(&rows[..self.cols]);
        let inv = square.inverse()?;
        // embed: X = inv composed with row selection
        let mut x = Mat::zeros(self.cols, self.rows);
        for (k, &ri) in rows[..self.cols].iter().enumerate() {
            for i in 0..self.cols {
                x[(i, ri)] = inv[(i, k)].clone();
            }
        }
        Ok(x)
    }

    /// `Y` with `M · Y = I` for a matrix of full row rank.
    pub fn right_inverse(&self) -> Result<Mat<F>, CoreError> {
        Ok(self.transpose().left_inverse()?.transpose())
    }
}

impl<F> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, Rat};
    use crate::algebra::ratfunc::RatFunc;

    fn m(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Mat::<Rat>::identity(3).rank(), 3);
        let outer = Mat::outer(&[rat(1), rat(2), rat(3)], &[rat(4), rat(5)]);
        assert_eq!(outer.rank(), 1);
        assert_eq!(Mat::<Rat>::zeros(2, 3).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4], &[3, 6]]).rank(), 1);
    }

    #[test]
    fn rank_transpose_invariant() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.transpose().rank(), 2);
    }

    #[test]
    fn nullspace_shapes() {
        assert_eq!(Mat::<Rat>::zeros(2, 3).nullspace().len(), 3);
        assert_eq!(Mat::<Rat>::identity(4).nullspace().len(), 0);
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|x| Field::is_zero(x)));
        }
    }

    #[test]
    fn nullspace_over_ratfunc() {
        // (1, λ) has kernel spanned by (−λ, 1)
        let a = Mat::from_rows(vec![vec![RatFunc::from_int(1), RatFunc::lambda()]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], -RatFunc::lambda());
        assert_eq!(ns[0][1], RatFunc::from_int(1));
    }

    #[test]
    fn rank_factorization_reconstructs() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (l, r) = a.rank_factorization();
        assert_eq!(l.cols(), 2);
        assert_eq!(l.mul(&r), a);
    }

    #[test]
    fn inverses() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());

        let tall = m(&[&[1, 0], &[1, 1], &[0, 1]]);
        let li = tall.left_inverse().unwrap();
        assert_eq!(li.mul(&tall), Mat::identity(2));

        let wide = tall.transpose();
        let ri = wide.right_inverse().unwrap();
        assert_eq!(wide.mul(&ri), Mat::identity(2));
    }
}
