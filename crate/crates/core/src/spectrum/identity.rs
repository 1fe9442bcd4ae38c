//! Formal nonnegative combinations of matrix multiplication symbols and
//! degeneration identities between them, with their numeric evaluation on
//! points of the `(θ1, θ2, θ3)` parameter space.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

use super::real::{Real, RealCtx};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MmTerm {
    pub n: u64,
    pub m: u64,
    pub p: u64,
    pub mult: u64,
}

impl MmTerm {
    pub fn volume(&self) -> u64 {
        self.n * self.m * self.p
    }
}

/// Canonical multiset of terms: sorted, merged, positive multiplicities.
/// The diagonal `⟨r⟩` is encoded as `⟨1,1,1⟩` with multiplicity `r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MmSum {
    terms: Vec<MmTerm>,
}

impl MmSum {
    pub fn new(terms: Vec<MmTerm>) -> Result<Self, CoreError> {
        let mut merged: Vec<MmTerm> = Vec::new();
        for t in terms {
            if t.n == 0 || t.m == 0 || t.p == 0 {
                return Err(CoreError::NonPositiveDim(format!(
                    "⟨{}, {}, {}⟩",
                    t.n, t.m, t.p
                )));
            }
            if t.mult == 0 {
                continue;
            }
            match merged
                .iter_mut()
                .find(|u| (u.n, u.m, u.p) == (t.n, t.m, t.p))
            {
                Some(u) => u.mult += t.mult,
                None => merged.push(t),
            }
        }
        merged.sort_by_key(|t| (t.n, t.m, t.p));
        Ok(MmSum { terms: merged })
    }

    pub fn diagonal(r: u64) -> Self {
        MmSum {
            terms: vec![MmTerm {
                n: 1,
                m: 1,
                p: 1,
                mult: r,
            }],
        }
    }

    pub fn terms(&self) -> &[MmTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn permuted(&self, sigma: [usize; 3]) -> MmSum {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let d = [t.n, t.m, t.p];
                let mut e = [0u64; 3];
                for i in 0..3 {
                    e[sigma[i]] = d[i];
                }
                MmTerm {
                    n: e[0],
                    m: e[1],
                    p: e[2],
                    mult: t.mult,
                }
            })
            .collect();
        MmSum::new(terms).expect("permutation preserves validity")
    }

    /// `Σ mult · n^θ1 m^θ2 p^θ3`.
    pub fn eval(&self, ctx: &RealCtx, theta: &[Real; 3]) -> Real {
        let mut acc = ctx.zero();
        for t in &self.terms {
            let mut v = ctx.from_u64(t.mult);
            for (base, th) in [(t.n, &theta[0]), (t.m, &theta[1]), (t.p, &theta[2])] {
                if base != 1 {
                    v = ctx.mul(&v, &ctx.ipow(base, th));
                }
            }
            acc = ctx.add(&acc, &v);
        }
        acc
    }
}

/// A degeneration identity `lhs ⊴ rhs` between direct sums of matrix
/// multiplication tensors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub lhs: MmSum,
    pub rhs: MmSum,
}

impl Identity {
    pub fn new(name: impl Into<String>, lhs: MmSum, rhs: MmSum) -> Result<Self, CoreError> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(CoreError::BadParameter(
                "identity sides must be nonempty".into(),
            ));
        }
        Ok(Identity {
            name: name.into(),
            lhs,
            rhs,
        })
    }

    pub fn permuted(&self, sigma: [usize; 3]) -> Identity {
        Identity {
            name: format!("{}·σ{:?}", self.name, sigma),
            lhs: self.lhs.permuted(sigma),
            rhs: self.rhs.permuted(sigma),
        }
    }
}

pub const MODE_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Close a set of identities under the six mode permutations, merging
/// duplicates by their canonical (lhs, rhs) form.
pub fn symmetrize(ids: &[Identity]) -> Vec<Identity> {
    let mut out: Vec<Identity> = Vec::new();
    for id in ids {
        for sigma in MODE_PERMUTATIONS {
            let p = id.permuted(sigma);
            if !out.iter().any(|q| q.lhs == p.lhs && q.rhs == p.rhs) {
                out.push(p);
            }
        }
    }
    out
}

/// A point of the `(θ1, θ2, θ3)` parameter space; every coordinate lies
/// in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct ThetaPoint([Real; 3]);

impl ThetaPoint {
    pub fn new(ctx: &RealCtx, coords: [Real; 3]) -> Result<Self, CoreError> {
        for (i, c) in coords.iter().enumerate() {
            if c.is_negative() || *c > ctx.one() {
                return Err(CoreError::BadParameter(format!(
                    "θ{} = {} outside [0, 1]",
                    i + 1,
                    ctx.to_decimal_string(c)
                )));
            }
        }
        Ok(ThetaPoint(coords))
    }

    pub fn diagonal(tau: &Real) -> Result<Self, CoreError> {
        if tau.is_negative() {
            return Err(CoreError::BadParameter("negative diagonal point".into()));
        }
        Ok(ThetaPoint([tau.clone(), tau.clone(), tau.clone()]))
    }

    pub fn coords(&self) -> &[Real; 3] {
        &self.0
    }
}

/// `rhs(θ) − lhs(θ)`; the point is feasible for the identity iff `≥ 0`.
pub fn eval_gap(ctx: &RealCtx, id: &Identity, theta: &[Real; 3]) -> Real {
    ctx.sub(&id.rhs.eval(ctx, theta), &id.lhs.eval(ctx, theta))
}

/// The classical seven-term bound `⟨2,2,2⟩ ⊴ ⟨7⟩`.
pub fn strassen_identity() -> Identity {
    Identity::new(
        "strassen7",
        MmSum::new(vec![MmTerm {
            n: 2,
            m: 2,
            p: 2,
            mult: 1,
        }])
        .unwrap(),
        MmSum::diagonal(7),
    )
    .unwrap()
}

/// The classical three-summand direct-sum degeneration
/// `⟨1,5,20⟩ ⊕ ⟨10,2,5⟩ ⊕ ⟨10,10,1⟩ ⊴ ⟨132⟩ ⊕ 5⊙⟨1,1,2⟩`.
pub fn schoenhage_identity() -> Identity {
    let t = |n, m, p, mult| MmTerm { n, m, p, mult };
    Identity::new(
        "schoenhage",
        MmSum::new(vec![t(1, 5, 20, 1), t(10, 2, 5, 1), t(10, 10, 1, 1)]).unwrap(),
        MmSum::new(vec![t(1, 1, 1, 132), t(1, 1, 2, 5)]).unwrap(),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> RealCtx {
        RealCtx::new(50)
    }

    fn theta(ctx: &RealCtx, v: [f64; 3]) -> [Real; 3] {
        [ctx.from_f64(v[0]), ctx.from_f64(v[1]), ctx.from_f64(v[2])]
    }

    #[test]
    fn gap_at_corners() {
        let c = ctx();
        let id = schoenhage_identity();
        // at θ = 0 every monomial is 1: 137 − 3
        let g0 = eval_gap(&c, &id, &theta(&c, [0.0, 0.0, 0.0]));
        assert_eq!(c.format_decimals(&g0, 3), "134.000");
        // at θ = 1: 142 − 300
        let g1 = eval_gap(&c, &id, &theta(&c, [1.0, 1.0, 1.0]));
        assert_eq!(c.format_decimals(&g1, 3), "-158.000");
    }

    #[test]
    fn strassen_gap_at_two_thirds() {
        let c = ctx();
        let t23 = c.div(&c.from_i64(2), &c.from_i64(3));
        let g = eval_gap(
            &c,
            &strassen_identity(),
            &[t23.clone(), t23.clone(), t23.clone()],
        );
        // 7 − 2² = 3
        assert_eq!(c.format_decimals(&g, 6), "3.000000");
    }

    #[test]
    fn symmetrization_counts() {
        // fully symmetric identity stays a single element
        let sym = symmetrize(&[strassen_identity()]);
        assert_eq!(sym.len(), 1);
        // the three-summand identity has six distinct permutations
        let sch = symmetrize(&[schoenhage_identity()]);
        assert_eq!(sch.len(), 6);
        // permutations of each other collapse to the same closure
        let p = schoenhage_identity().permuted([1, 0, 2]);
        let both = symmetrize(&[schoenhage_identity(), p]);
        assert_eq!(both.len(), 6);
    }

    #[test]
    fn canonical_merge() {
        let t = |n, m, p, mult| MmTerm { n, m, p, mult };
        let s = MmSum::new(vec![t(2, 1, 1, 1), t(2, 1, 1, 2), t(1, 1, 1, 0)]).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.terms()[0].mult, 3);
        assert!(MmSum::new(vec![t(2, 0, 1, 1)]).is_err());
    }
}
