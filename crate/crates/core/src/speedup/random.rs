//! Seeded random rational data for cross-checks and generic constructions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Mat, Rat};
use crate::tensor::tensor3::Tensor3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random integer entry in `[-bound, bound]`.
pub fn small_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    rat(rng.gen_range(-bound..=bound))
}

pub fn random_tensor(rng: &mut ChaCha8Rng, dims: [usize; 3], bound: i64) -> Tensor3<Rat> {
    let mut t = Tensor3::zeros(dims);
    for i in 0..dims[0] {
        for j in 0..dims[1] {
            for k in 0..dims[2] {
                t.set(i, j, k, small_rat(rng, bound));
            }
        }
    }
    t
}

pub fn random_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Mat<Rat> {
    Mat::from_fn(rows, cols, |_, _| small_rat(rng, bound))
}

/// Random invertible square matrix (resampled until nonsingular).
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Mat<Rat> {
    loop {
        let m = random_mat(rng, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random full-row-rank matrix.
pub fn random_full_row_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Mat<Rat> {
    assert!(rows <= cols);
    loop {
        let m = random_mat(rng, rows, cols, bound);
        if m.rank() == rows {
            return m;
        }
    }
}
