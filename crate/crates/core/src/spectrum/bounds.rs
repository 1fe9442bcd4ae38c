//! Closed-form asymptotic-rank bound formulas, each returning a report
//! with its parameters and full-precision value.

use crate::error::CoreError;

use super::real::{Real, RealCtx};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundKind {
    Formula,
    Tau,
    CertifiedMax,
}

/// A computed bound value with provenance: the formula or certificate it
/// came from, its parameters, and (for certified maxima) the certificate.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub label: String,
    pub value: Real,
    pub params: Vec<(String, String)>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub lower_feasible: Real,
    pub upper_certified: Real,
    pub point: [Real; 3],
    pub tolerance: Real,
    pub boxes: u64,
}

impl BoundReport {
    pub fn formula(label: impl Into<String>, value: Real) -> Self {
        BoundReport {
            kind: BoundKind::Formula,
            label: label.into(),
            value,
            params: Vec::new(),
            certificate: None,
        }
    }

    pub fn with_param(mut self, k: impl Into<String>, v: impl Into<String>) -> Self {
        self.params.push((k.into(), v.into()));
        self
    }
}

impl BoundReport {
    /// Wrap a diagonal τ-solver result.
    pub fn from_tau(
        ctx: &RealCtx,
        name: &str,
        diag: &crate::spectrum::tau::DiagonalTau,
    ) -> BoundReport {
        BoundReport {
            kind: BoundKind::Tau,
            label: format!("3τ for {name}"),
            value: diag.three_tau.clone(),
            params: vec![
                ("tau".into(), ctx.to_decimal_string(&diag.tau)),
                ("capped".into(), diag.capped.to_string()),
            ],
            certificate: None,
        }
    }

    /// Wrap a certified maximum, checking the sandwich invariant.
    pub fn from_certified(
        ctx: &RealCtx,
        out: &crate::spectrum::optimize::CertifiedMax,
        tol: &Real,
    ) -> Result<BoundReport, CoreError> {
        if out.lower > out.upper || ctx.sub(&out.upper, &out.lower) > *tol {
            return Err(CoreError::VerificationFailed(
                "certificate violates the sandwich invariant".into(),
            ));
        }
        Ok(BoundReport {
            kind: BoundKind::CertifiedMax,
            label: "certified maximum of θ1 + θ2 + θ3".into(),
            value: out.upper.clone(),
            params: vec![("boxes".into(), out.boxes.to_string())],
            certificate: Some(Certificate {
                lower_feasible: out.lower.clone(),
                upper_certified: out.upper.clone(),
                point: out.point.coords().clone(),
                tolerance: tol.clone(),
                boxes: out.boxes,
            }),
        })
    }
}

fn check_omega_bar(ctx: &RealCtx, omega_bar: &Real) -> Result<(), CoreError> {
    if *omega_bar < ctx.from_i64(2) || *omega_bar > ctx.from_i64(3) {
        return Err(CoreError::BadParameter(format!(
            "ω̄ must lie in [2,3], got {}",
            ctx.to_decimal_string(omega_bar)
        )));
    }
    Ok(())
}

/// `r + s^(ω̄/3)`.
pub fn toy_bound(ctx: &RealCtx, r: u64, s: u64, omega_bar: &Real) -> Result<BoundReport, CoreError> {
    check_omega_bar(ctx, omega_bar)?;
    if s < 1 {
        return Err(CoreError::BadParameter("toy bound needs s ≥ 1".into()));
    }
    let e = ctx.div(omega_bar, &ctx.from_i64(3));
    let value = ctx.add(&ctx.from_u64(r), &ctx.ipow(s, &e));
    Ok(BoundReport::formula("r + s^(ω̄/3)", value)
        .with_param("r", r.to_string())
        .with_param("s", s.to_string())
        .with_param("omega_bar", ctx.to_decimal_string(omega_bar)))
}

/// Case split on `t` vs `s`: `r + s^(2/3) − t^(2/3)` when `t > s`, else
/// `r + s^(ω̄/3) − t^(ω̄/3)`. A width `t = 0` contributes nothing.
pub fn three_direction_bound(
    ctx: &RealCtx,
    r: u64,
    s: u64,
    t: u64,
    omega_bar: &Real,
) -> Result<BoundReport, CoreError> {
    check_omega_bar(ctx, omega_bar)?;
    if s < 1 {
        return Err(CoreError::BadParameter(
            "three-direction bound needs s ≥ 1".into(),
        ));
    }
    let two_thirds = ctx.div(&ctx.from_i64(2), &ctx.from_i64(3));
    let w3 = ctx.div(omega_bar, &ctx.from_i64(3));
    let (e, branch) = if t > s {
        (two_thirds, "t > s (exponent 2/3)")
    } else {
        (w3, "t ≤ s (exponent ω̄/3)")
    };
    let mut value = ctx.add(&ctx.from_u64(r), &ctx.ipow(s, &e));
    if t > 0 {
        value = ctx.sub(&value, &ctx.ipow(t, &e));
    }
    Ok(BoundReport::formula("r + s^e − t^e", value)
        .with_param("r", r.to_string())
        .with_param("s", s.to_string())
        .with_param("t", t.to_string())
        .with_param("branch", branch)
        .with_param("omega_bar", ctx.to_decimal_string(omega_bar)))
}

pub fn cw_pipeline_params(q: u64, n: u32) -> Result<(u64, u64, u64), CoreError> {
    let pow = |b: u64| -> Result<u64, CoreError> {
        b.checked_pow(n)
            .ok_or_else(|| CoreError::BadParameter(format!("{b}^{n} overflows")))
    };
    let r = pow(q + 2)?;
    let s = pow(q)?;
    let t = r + s - 2 * pow(q + 1)?;
    Ok((r, s, t))
}

/// `γ_{q,n}`: the three-direction bound for the CW pipeline at level `n`,
/// with the n-th root.
pub fn cw_gamma(ctx: &RealCtx, q: u64, n: u32, omega_bar: &Real) -> Result<BoundReport, CoreError> {
    if q < 2 || n < 1 {
        return Err(CoreError::BadParameter("cw gamma needs q ≥ 2, n ≥ 1".into()));
    }
    let (r, s, t) = cw_pipeline_params(q, n)?;
    let inner = three_direction_bound(ctx, r, s, t, omega_bar)?;
    let root = ctx.div(&ctx.one(), &ctx.from_u64(n as u64));
    let value = ctx.pow(&inner.value, &root);
    Ok(BoundReport::formula("γ_{q,n}", value)
        .with_param("q", q.to_string())
        .with_param("n", n.to_string())
        .with_param("r", r.to_string())
        .with_param("s", s.to_string())
        .with_param("t", t.to_string())
        .with_param("inner", ctx.to_decimal_string(&inner.value)))
}

/// Minimize `γ_{q,n}` over `1 ≤ n ≤ n_max`; ties take the smaller `n`.
/// The flag marks a minimum sitting on the search boundary.
pub fn cw_gamma_min(
    ctx: &RealCtx,
    q: u64,
    n_max: u32,
    omega_bar: &Real,
) -> Result<(BoundReport, u32, bool), CoreError> {
    if n_max < 1 {
        return Err(CoreError::BadParameter("n_max must be at least 1".into()));
    }
    let mut best: Option<(BoundReport, u32)> = None;
    for n in 1..=n_max {
        let rep = cw_gamma(ctx, q, n, omega_bar)?;
        if best.as_ref().map_or(true, |(b, _)| rep.value < b.value) {
            best = Some((rep, n));
        }
    }
    let (rep, n_star) = best.expect("n_max ≥ 1");
    let boundary = n_star == n_max;
    Ok((rep, n_star, boundary))
}

/// `F(θ) = sqrt((r + s^θ)² − (t² + 2(q+1)^{2n})^θ + t^{2θ}) − t^θ` on
/// `θ ∈ [2/3, 1]`.
fn iterated_objective(
    ctx: &RealCtx,
    r: u64,
    s: u64,
    t: u64,
    w: u128,
    theta: &Real,
) -> Real {
    let rs = ctx.add(&ctx.from_u64(r), &ctx.ipow(s, theta));
    let mut inner = ctx.mul(&rs, &rs);
    // w^θ = exp(θ ln w)
    let lw = ctx.ln(&ctx.from_u128(w));
    inner = ctx.sub(&inner, &ctx.exp(&ctx.mul(theta, &lw)));
    if t > 0 {
        let two_theta = ctx.mul(&ctx.from_i64(2), theta);
        inner = ctx.add(&inner, &ctx.ipow(t, &two_theta));
    }
    let mut v = ctx.sqrt(&inner);
    if t > 0 {
        v = ctx.sub(&v, &ctx.ipow(t, theta));
    }
    v
}

/// The iterated bound `γ'_{q,n} = (max_{θ∈[2/3,1]} F(θ))^{1/n}`, with the
/// maximizer located by a dense scan plus golden-section refinement. The
/// report carries both the maximum of `F` and its n-th root, together with
/// the maximizing θ.
pub fn cw_gamma_iterated(
    ctx: &RealCtx,
    q: u64,
    n: u32,
    _omega_bar: &Real,
) -> Result<BoundReport, CoreError> {
    if q < 2 || n < 1 {
        return Err(CoreError::BadParameter(
            "iterated cw gamma needs q ≥ 2, n ≥ 1".into(),
        ));
    }
    let (r, s, t) = cw_pipeline_params(q, n)?;
    let qn1 = (q + 1) as u128;
    let w = (t as u128) * (t as u128) + 2 * qn1.pow(2 * n);

    let lo0 = ctx.div(&ctx.from_i64(2), &ctx.from_i64(3));
    let hi0 = ctx.one();
    const SCAN: u64 = 256;
    let step = ctx.div(&ctx.sub(&hi0, &lo0), &ctx.from_u64(SCAN));
    let mut best_i = 0u64;
    let mut best_v: Option<Real> = None;
    for i in 0..=SCAN {
        let th = ctx.add(&lo0, &ctx.mul(&step, &ctx.from_u64(i)));
        let v = iterated_objective(ctx, r, s, t, w, &th);
        if best_v.as_ref().map_or(true, |b| v > *b) {
            best_v = Some(v);
            best_i = i;
        }
    }
    // golden-section refinement around the best scan cell
    let gold = ctx.div(
        &ctx.sub(&ctx.sqrt(&ctx.from_i64(5)), &ctx.one()),
        &ctx.from_i64(2),
    );
    let mut a = ctx.add(&lo0, &ctx.mul(&step, &ctx.from_u64(best_i.saturating_sub(1))));
    let mut b = ctx.add(&lo0, &ctx.mul(&step, &ctx.from_u64((best_i + 1).min(SCAN))));
    for _ in 0..120 {
        let span = ctx.sub(&b, &a);
        let x1 = ctx.sub(&b, &ctx.mul(&gold, &span));
        let x2 = ctx.add(&a, &ctx.mul(&gold, &span));
        let f1 = iterated_objective(ctx, r, s, t, w, &x1);
        let f2 = iterated_objective(ctx, r, s, t, w, &x2);
        if f1 < f2 {
            a = x1;
        } else {
            b = x2;
        }
    }
    let theta_star = ctx.div(&ctx.add(&a, &b), &ctx.from_i64(2));
    let max_f = iterated_objective(ctx, r, s, t, w, &theta_star);
    let root = ctx.div(&ctx.one(), &ctx.from_u64(n as u64));
    let value = ctx.pow(&max_f, &root);
    Ok(BoundReport::formula("γ'_{q,n}", value)
        .with_param("q", q.to_string())
        .with_param("n", n.to_string())
        .with_param("max_F", ctx.to_decimal_string(&max_f))
        .with_param("theta_star", ctx.to_decimal_string(&theta_star))
        .with_param("replaced_width", w.to_string()))
}

/// `sqrt(d^{4ω̄/3} + d^{2ω̄/3} − (d³−d²)^{ω̄/3})`, with the reference value
/// `d^{2ω̄/3}` it improves on.
pub fn generic_oneslice_bound(
    ctx: &RealCtx,
    d: u64,
    omega_bar: &Real,
) -> Result<BoundReport, CoreError> {
    check_omega_bar(ctx, omega_bar)?;
    if d < 3 {
        return Err(CoreError::BadParameter("needs d ≥ 3".into()));
    }
    let w3 = ctx.div(omega_bar, &ctx.from_i64(3));
    let four = ctx.mul(&ctx.from_i64(4), &w3);
    let two = ctx.mul(&ctx.from_i64(2), &w3);
    let inner = ctx.sub(
        &ctx.add(&ctx.ipow(d, &four), &ctx.ipow(d, &two)),
        &ctx.ipow(d * d * d - d * d, &w3),
    );
    let value = ctx.sqrt(&inner);
    let reference = ctx.ipow(d, &two);
    Ok(BoundReport::formula("one-slice d×d×d bound", value)
        .with_param("d", d.to_string())
        .with_param("reference", ctx.to_decimal_string(&reference))
        .with_param("omega_bar", ctx.to_decimal_string(omega_bar)))
}

/// `sqrt(d^{4ω̄/3} − ⌊d/3⌋(2^{ω̄/3} − 1)d^{2ω̄/3})`, with `p = ⌊d/3⌋` and
/// the implied exponent `log_d(value)`.
pub fn generic_partitioned_bound(
    ctx: &RealCtx,
    d: u64,
    omega_bar: &Real,
) -> Result<BoundReport, CoreError> {
    check_omega_bar(ctx, omega_bar)?;
    if d < 3 {
        return Err(CoreError::BadParameter("needs d ≥ 3".into()));
    }
    let p = d / 3;
    let w3 = ctx.div(omega_bar, &ctx.from_i64(3));
    let four = ctx.mul(&ctx.from_i64(4), &w3);
    let two = ctx.mul(&ctx.from_i64(2), &w3);
    let gain = ctx.mul(
        &ctx.mul(
            &ctx.from_u64(p),
            &ctx.sub(&ctx.ipow(2, &w3), &ctx.one()),
        ),
        &ctx.ipow(d, &two),
    );
    let inner = ctx.sub(&ctx.ipow(d, &four), &gain);
    let value = ctx.sqrt(&inner);
    let sigma = ctx.div(&ctx.ln(&value), &ctx.ln_u64(d));
    Ok(BoundReport::formula("partitioned d×d×d bound", value)
        .with_param("d", d.to_string())
        .with_param("p", p.to_string())
        .with_param("sigma_exponent", ctx.to_decimal_string(&sigma))
        .with_param("omega_bar", ctx.to_decimal_string(omega_bar)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> RealCtx {
        RealCtx::new(50)
    }

    fn wbar(c: &RealCtx) -> Real {
        c.from_str("2.371339").unwrap()
    }

    fn close(c: &RealCtx, x: &Real, want: f64, tol: f64) {
        let got = c.to_f64(x);
        assert!((got - want).abs() < tol, "got {got}, want {want}");
    }

    #[test]
    fn toy_values() {
        let c = ctx();
        let w = wbar(&c);
        let rep = toy_bound(&c, 3, 2, &w).unwrap();
        let v = c.to_f64(&rep.value);
        assert!(v > 4.7296 && v < 4.7297, "{v}");

        close(&c, &toy_bound(&c, 5, 1, &w).unwrap().value, 6.0, 1e-12);
        close(&c, &toy_bound(&c, 5, 4, &c.from_i64(3)).unwrap().value, 9.0, 1e-12);
        assert!(toy_bound(&c, 3, 2, &c.from_str("3.5").unwrap()).is_err());
    }

    #[test]
    fn three_direction_branches() {
        let c = ctx();
        let w = wbar(&c);
        // t > s branch, ω̄ unused
        close(
            &c,
            &three_direction_bound(&c, 256, 16, 110, &w).unwrap().value,
            239.391899961,
            1e-6,
        );
        // t = s cancels in both branches
        close(&c, &three_direction_bound(&c, 7, 4, 4, &w).unwrap().value, 7.0, 1e-12);
        // t ≤ s branch
        close(
            &c,
            &three_direction_bound(&c, 16, 4, 2, &w).unwrap().value,
            17.2619394665,
            1e-6,
        );
        assert!(three_direction_bound(&c, 1, 0, 0, &w).is_err());
    }

    #[test]
    fn gamma_table_spot_checks() {
        let c = ctx();
        let w = wbar(&c);
        close(&c, &cw_gamma(&c, 2, 4, &w).unwrap().value, 3.933484, 1e-6);

        let (rep, n, boundary) = cw_gamma_min(&c, 3, 12, &w).unwrap();
        assert_eq!(n, 4);
        assert!(!boundary);
        close(&c, &rep.value, 4.970152, 1e-6);

        let (rep, n, _) = cw_gamma_min(&c, 10, 12, &w).unwrap();
        assert_eq!(n, 9);
        close(&c, &rep.value, 11.999929, 1e-6);

        // boundary-limited search
        let (_, n, boundary) = cw_gamma_min(&c, 2, 1, &w).unwrap();
        assert_eq!(n, 1);
        assert!(boundary);
    }

    #[test]
    fn iterated_gamma_values() {
        let c = ctx();
        let w = wbar(&c);
        let rep = cw_gamma_iterated(&c, 2, 4, &w).unwrap();
        close(&c, &rep.value, 3.930872, 1e-6);
        // maximizer at the left endpoint 2/3
        let theta: f64 = rep
            .params
            .iter()
            .find(|(k, _)| k == "theta_star")
            .map(|(_, v)| c.to_f64(&c.from_str(v).unwrap()))
            .unwrap();
        assert!((theta - 2.0 / 3.0).abs() < 1e-4, "θ* = {theta}");

        close(&c, &cw_gamma_iterated(&c, 5, 6, &w).unwrap().value, 6.994516, 1e-6);
        // degenerate t = 0 instance evaluates finitely
        let rep = cw_gamma_iterated(&c, 2, 1, &w).unwrap();
        assert!(c.to_f64(&rep.value).is_finite());
    }

    #[test]
    fn generic_bounds_match_closed_forms() {
        let c = ctx();
        let w = wbar(&c);
        close(&c, &generic_oneslice_bound(&c, 3, &c.from_i64(3)).unwrap().value, 72f64.sqrt(), 1e-9);
        close(&c, &generic_oneslice_bound(&c, 3, &w).unwrap().value, 5.301732775, 1e-6);
        close(&c, &generic_partitioned_bound(&c, 3, &w).unwrap().value, 5.301732775, 1e-6);
        close(&c, &generic_partitioned_bound(&c, 4, &w).unwrap().value, 8.576805571, 1e-6);
        close(&c, &generic_partitioned_bound(&c, 3, &c.from_i64(3)).unwrap().value, 72f64.sqrt(), 1e-9);
        assert!(generic_oneslice_bound(&c, 2, &w).is_err());
    }

    #[test]
    fn strictness_over_reference() {
        let c = ctx();
        for wb in [c.from_i64(2), wbar(&c), c.from_i64(3)] {
            for d in [3u64, 10, 30, 50] {
                let rep = generic_partitioned_bound(&c, d, &wb).unwrap();
                let two = ctx().mul(&c.from_i64(2), &c.div(&wb, &c.from_i64(3)));
                let reference = c.ipow(d, &two);
                assert!(rep.value < reference, "d={d}");
            }
        }
    }
}
