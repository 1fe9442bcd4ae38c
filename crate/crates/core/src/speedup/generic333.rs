//! Exact restriction of a 3×3×3 tensor with rational spectra into
//! `⟨3⟩ ⊕ ⟨1,2,1⟩`.
//!
//! The normal form needs three preconditions, each reported on failure: an
//! invertible first z-slice, a normalized second slice diagonalizable with
//! all eigenvalues rational, and a rational eigenvalue of the residual
//! third slice. Inputs outside this class are rejected, not approximated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::algebra::{rat, Field, Mat, Poly, Rat};
use crate::error::CoreError;
use crate::tensor::degen::Restriction;
use crate::tensor::tensor3::{direct_sum, Tensor3};
use crate::tensor::{diagonal, one_slice};

use super::random;

/// Characteristic polynomial `det(xI − M)` of a square rational matrix,
/// by fraction-free expansion of the minors (fine at these sizes).
pub fn char_poly(m: &Mat<Rat>) -> Poly {
    let n = m.rows();
    assert_eq!(n, m.cols());
    // Build xI − M over ℚ[x] and expand the determinant recursively.
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-m[(i, j)].clone());
                    if i == j {
                        c.add(&Poly::lambda())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&poly_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, CoreError> {
    let n = n.abs();
    let nu = n
        .to_u128()
        .ok_or_else(|| CoreError::BadParameter("coefficient too large for root search".into()))?;
    if nu == 0 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut d = 1u128;
    while d.saturating_mul(d) <= nu {
        if nu % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(nu / d));
        }
        d += 1;
        if out.len() > 100_000 {
            return Err(CoreError::BadParameter(
                "too many divisor candidates in root search".into(),
            ));
        }
    }
    Ok(out)
}

/// All rational roots of a polynomial, with multiplicity (found by repeated
/// deflation).
pub fn rational_roots(p: &Poly) -> Result<Vec<Rat>, CoreError> {
    let mut p = p.clone();
    let mut roots = Vec::new();
    'outer: loop {
        match p.degree() {
            None | Some(0) => break,
            _ => {}
        }
        // root at zero
        if Field::is_zero(&p.coeff(0)) {
            roots.push(rat(0));
            p = p.shift_down(1);
            continue;
        }
        // scale to integer coefficients
        let mut l = BigInt::one();
        for c in p.coeffs() {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let lead = ints.last().unwrap().clone();
        let cons = ints.first().unwrap().clone();
        for num in divisors(&cons)? {
            for den in divisors(&lead)? {
                for sign in [1i64, -1] {
                    let cand = Rat::new(num.clone() * BigInt::from(sign), den.clone());
                    if Field::is_zero(&p.eval(&cand)) {
                        roots.push(cand.clone());
                        let lin = Poly::new(vec![-cand, rat(1)]);
                        let (q, r) = p.div_rem(&lin);
                        debug_assert!(r.is_zero());
                        p = q;
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    Ok(roots)
}

pub struct Generic333 {
    /// Exact witness `T ≤ ⟨3⟩ ⊕ ⟨1,2,1⟩` over the rationals.
    pub restriction: Restriction<Rat>,
    /// Eigenvalues of the normalized second slice, in eigenbasis order.
    pub eigenvalues: Vec<Rat>,
    /// The rational eigenvalue split off the residual third slice.
    pub residual_eigenvalue: Rat,
}

pub fn generic_333_restriction(t: &Tensor3<Rat>) -> Result<Generic333, CoreError> {
    if t.dims() != [3, 3, 3] {
        return Err(CoreError::ShapeMismatch(format!(
            "expected a 3×3×3 tensor, got {:?}",
            t.dims()
        )));
    }
    // diagonal-supported tensors embed immediately, with the ⟨1,2,1⟩
    // component mapped to zero
    if t.nonzero().all(|([i, j, k], _)| i == j && j == k) {
        let source = direct_sum(&[&diagonal(3), &one_slice(2)]);
        let embed = Mat::<Rat>::identity(3).hstack(&Mat::zeros(3, 2));
        let mut c = Mat::<Rat>::zeros(3, 4);
        for i in 0..3 {
            c[(i, i)] = t.get(i, i, i).clone();
        }
        let restriction = Restriction::new(source, embed.clone(), embed, c, t.clone())?;
        return Ok(Generic333 {
            restriction,
            eigenvalues: vec![rat(0); 3],
            residual_eigenvalue: rat(0),
        });
    }
    let slice = |k: usize| Mat::<Rat>::from_fn(3, 3, |i, j| t.get(i, j, k).clone());
    let m1 = slice(0);
    let s1_inv = m1.inverse().map_err(|_| CoreError::SingularFirstSlice)?;

    let m2n = s1_inv.mul(&slice(1));
    let roots = rational_roots(&char_poly(&m2n))?;
    if roots.len() < 3 {
        return Err(CoreError::NotDiagonalizable);
    }
    // eigenbasis, one batch per distinct eigenvalue
    let mut distinct: Vec<Rat> = Vec::new();
    for r in &roots {
        if !distinct.contains(r) {
            distinct.push(r.clone());
        }
    }
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    let mut eigenvalues = Vec::new();
    for ev in &distinct {
        let shifted = m2n.sub(&Mat::identity(3).scale(ev));
        let mult = roots.iter().filter(|r| *r == ev).count();
        let space = shifted.nullspace();
        if space.len() != mult {
            return Err(CoreError::NotDiagonalizable);
        }
        for v in space {
            columns.push(v);
            eigenvalues.push(ev.clone());
        }
    }
    let p = Mat::from_rows(columns).transpose();
    let p_inv = p.inverse().map_err(|_| CoreError::NotDiagonalizable)?;

    let m3n = p_inv.mul(&s1_inv).mul(&slice(2)).mul(&p);
    let mu = rational_roots(&char_poly(&m3n))?
        .into_iter()
        .next()
        .ok_or(CoreError::NoRationalEigenvalue)?;
    let residual = m3n.sub(&Mat::identity(3).scale(&mu));
    let (f, g) = residual.rank_factorization();
    let rk = f.cols();
    debug_assert!(rk <= 2);
    let f = f.hstack(&Mat::zeros(3, 2 - rk));
    let g = g.vstack(&Mat::zeros(2 - rk, 3));

    // maps from ⟨3⟩ ⊕ ⟨1,2,1⟩ into the normalized tensor, then undo the
    // two changes of basis
    let source = direct_sum(&[&diagonal(3), &one_slice(2)]);
    let a_norm = Mat::identity(3).hstack(&f);
    let b_norm = Mat::identity(3).hstack(&g.transpose());
    let mut c_norm = Mat::<Rat>::zeros(3, 4);
    for i in 0..3 {
        c_norm[(0, i)] = rat(1);
        c_norm[(1, i)] = eigenvalues[i].clone();
        c_norm[(2, i)] = mu.clone();
    }
    c_norm[(2, 3)] = rat(1);

    let a_final = m1.mul(&p).mul(&a_norm);
    let b_final = p.transpose().inverse()?.mul(&b_norm);
    let restriction = Restriction::new(source, a_final, b_final, c_norm, t.clone())?;
    Ok(Generic333 {
        restriction,
        eigenvalues,
        residual_eigenvalue: mu,
    })
}

/// A seeded 3×3×3 tensor assembled from rational spectra, guaranteed to
/// satisfy the preconditions of [`generic_333_restriction`].
pub fn seeded_333(seed: u64) -> Tensor3<Rat> {
    let mut rng = random::rng(seed);
    let s1 = random::random_invertible(&mut rng, 3, 4);
    let p = random::random_invertible(&mut rng, 3, 4);
    let p_inv = p.inverse().expect("invertible by construction");
    let d = Mat::from_fn(3, 3, |i, j| if i == j { rat(i as i64 + 1) } else { rat(0) });
    let mu = random::small_rat(&mut rng, 3);
    let low = random::random_mat(&mut rng, 3, 2, 3);
    let high = random::random_mat(&mut rng, 2, 3, 3);
    let residual = low.mul(&high);
    let m3 = residual.add(&Mat::identity(3).scale(&mu));

    let m2 = s1.mul(&p).mul(&d).mul(&p_inv);
    let m3 = s1.mul(&p).mul(&m3).mul(&p_inv);
    let mut t = Tensor3::zeros([3, 3, 3]);
    for i in 0..3 {
        for j in 0..3 {
            t.set(i, j, 0, s1[(i, j)].clone());
            t.set(i, j, 1, m2[(i, j)].clone());
            t.set(i, j, 2, m3[(i, j)].clone());
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_frac;
    use crate::tensor::{cw_tensor, CwVariant};

    #[test]
    fn char_poly_of_diagonal() {
        let m = Mat::from_fn(3, 3, |i, j| if i == j { rat(i as i64) } else { rat(0) });
        let p = char_poly(&m);
        // x(x−1)(x−2) = x³ − 3x² + 2x
        assert_eq!(p.coeffs(), &[rat(0), rat(2), rat(-3), rat(1)]);
        let mut roots = rational_roots(&p).unwrap();
        roots.sort();
        assert_eq!(roots, vec![rat(0), rat(1), rat(2)]);
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2x − 1)(x + 3) = 2x² + 5x − 3
        let p = Poly::new(vec![rat(-3), rat(5), rat(2)]);
        let mut roots = rational_roots(&p).unwrap();
        roots.sort();
        assert_eq!(roots, vec![rat(-3), rat_frac(1, 2)]);
    }

    #[test]
    fn diagonal_tensor_restricts_immediately() {
        let out = generic_333_restriction(&diagonal(3)).unwrap();
        assert_eq!(out.restriction.target, diagonal(3));
    }

    #[test]
    fn seeded_tensor_round_trips() {
        for seed in [1u64, 7, 42] {
            let t = seeded_333(seed);
            let out = generic_333_restriction(&t).unwrap();
            assert_eq!(out.restriction.target, t, "seed {seed}");
        }
    }

    #[test]
    fn cw2_is_rejected_for_singular_slice() {
        let t = cw_tensor(2, CwVariant::Standard).unwrap();
        assert!(matches!(
            generic_333_restriction(&t),
            Err(CoreError::SingularFirstSlice)
        ));
    }
}
