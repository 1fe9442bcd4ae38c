//! Numeric monotonicity validators for the functions behind the generic
//! `d×d×d` bounds. Each validator walks a grid over the stated domain and
//! asserts strict increase between consecutive points; violations are
//! reported with their location, not raised.

use crate::error::CoreError;

use super::real::{Real, RealCtx};

#[derive(Clone, Debug)]
pub struct MonotonicityCheck {
    pub name: String,
    pub d: u64,
    /// The fixed `ϖ` for θ-domain checks; `None` for ϖ-domain checks.
    pub varpi: Option<String>,
    pub points: usize,
    pub pass: bool,
    /// On failure: the grid point and the two non-increasing values.
    pub violation: Option<(String, String, String)>,
}

#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub checks: Vec<MonotonicityCheck>,
}

impl MonotonicityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn grid_check(
    ctx: &RealCtx,
    name: &str,
    d: u64,
    varpi_label: Option<String>,
    lo: &Real,
    hi: &Real,
    step: &Real,
    f: impl Fn(&Real) -> Real,
) -> MonotonicityCheck {
    let mut points = Vec::new();
    let mut x = lo.clone();
    while x < *hi {
        points.push(x.clone());
        x = ctx.add(&x, step);
    }
    points.push(hi.clone());

    let mut prev: Option<(Real, Real)> = None;
    for x in &points {
        let v = f(x);
        if let Some((px, pv)) = &prev {
            if v <= *pv {
                return MonotonicityCheck {
                    name: name.into(),
                    d,
                    varpi: varpi_label,
                    points: points.len(),
                    pass: false,
                    violation: Some((
                        format!(
                            "{} → {}",
                            ctx.to_decimal_string(px),
                            ctx.to_decimal_string(x)
                        ),
                        ctx.to_decimal_string(pv),
                        ctx.to_decimal_string(&v),
                    )),
                };
            }
        }
        prev = Some((x.clone(), v));
    }
    MonotonicityCheck {
        name: name.into(),
        d,
        varpi: varpi_label,
        points: points.len(),
        pass: true,
        violation: None,
    }
}

/// Grid-validate the four monotonicity facts used by the generic bounds:
///
/// - `d^{ϖ+θ} + d^{2θ} − (d³−d²)^θ` increasing in `θ` on `[0, ϖ/3]`,
/// - `d^{4ϖ/3} + d^{2ϖ/3} − (d³−d²)^{ϖ/3}` increasing in `ϖ` on `[2, 3]`,
/// - `d^{ϖ+θ} − (2^θ−1)·p·d^{2θ}` increasing in `θ` on `[0, ϖ/3]` for
///   `p = ⌊d/3⌋`,
/// - `d^{4ϖ/3} − (2^{ϖ/3}−1)·p·d^{2ϖ/3}` increasing in `ϖ` on `[2, 3]`.
pub fn verify_bound_monotonicity(
    ctx: &RealCtx,
    d_values: &[u64],
    varpi_values: &[Real],
    grid_step: &Real,
) -> Result<MonotonicityReport, CoreError> {
    if grid_step.is_zero() || grid_step.is_negative() {
        return Err(CoreError::BadParameter("grid step must be positive".into()));
    }
    if d_values.iter().any(|&d| d < 3) {
        return Err(CoreError::BadParameter("d values must be at least 3".into()));
    }
    let three = ctx.from_i64(3);
    let one = ctx.one();
    let mut checks = Vec::new();

    for &d in d_values {
        let p = d / 3;
        let hole = d * d * d - d * d;
        for varpi in varpi_values {
            let theta_hi = ctx.div(varpi, &three);
            let label = Some(ctx.to_decimal_string(varpi));
            checks.push(grid_check(
                ctx,
                "one-slice objective in θ",
                d,
                label.clone(),
                &ctx.zero(),
                &theta_hi,
                grid_step,
                |th| {
                    let a = ctx.ipow(d, &ctx.add(varpi, th));
                    let b = ctx.ipow(d, &ctx.mul(&ctx.from_i64(2), th));
                    let c = ctx.ipow(hole, th);
                    ctx.sub(&ctx.add(&a, &b), &c)
                },
            ));
            checks.push(grid_check(
                ctx,
                "partitioned objective in θ",
                d,
                label,
                &ctx.zero(),
                &theta_hi,
                grid_step,
                |th| {
                    let a = ctx.ipow(d, &ctx.add(varpi, th));
                    let gain = ctx.mul(
                        &ctx.mul(&ctx.sub(&ctx.ipow(2, th), &one), &ctx.from_u64(p)),
                        &ctx.ipow(d, &ctx.mul(&ctx.from_i64(2), th)),
                    );
                    ctx.sub(&a, &gain)
                },
            ));
        }
        checks.push(grid_check(
            ctx,
            "one-slice objective in ϖ",
            d,
            None,
            &ctx.from_i64(2),
            &three,
            grid_step,
            |w| {
                let w3 = ctx.div(w, &three);
                let a = ctx.ipow(d, &ctx.mul(&ctx.from_i64(4), &w3));
                let b = ctx.ipow(d, &ctx.mul(&ctx.from_i64(2), &w3));
                let c = ctx.ipow(hole, &w3);
                ctx.sub(&ctx.add(&a, &b), &c)
            },
        ));
        checks.push(grid_check(
            ctx,
            "partitioned objective in ϖ",
            d,
            None,
            &ctx.from_i64(2),
            &three,
            grid_step,
            |w| {
                let w3 = ctx.div(w, &three);
                let a = ctx.ipow(d, &ctx.mul(&ctx.from_i64(4), &w3));
                let gain = ctx.mul(
                    &ctx.mul(&ctx.sub(&ctx.ipow(2, &w3), &one), &ctx.from_u64(p)),
                    &ctx.ipow(d, &ctx.mul(&ctx.from_i64(2), &w3)),
                );
                ctx.sub(&a, &gain)
            },
        ));
    }
    Ok(MonotonicityReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grid_passes() {
        let c = RealCtx::new(30);
        let varpis = vec![c.from_i64(2), c.from_str("2.371339").unwrap(), c.from_i64(3)];
        let rep =
            verify_bound_monotonicity(&c, &[3, 5], &varpis, &c.from_str("0.05").unwrap()).unwrap();
        assert!(rep.all_pass());
        // 2 θ-checks per (d, ϖ) plus 2 ϖ-checks per d
        assert_eq!(rep.checks.len(), 2 * (2 * 3 + 2));
    }

    #[test]
    fn violations_are_reported_not_raised() {
        let c = RealCtx::new(30);
        // a deliberately decreasing probe through the same machinery
        let check = super::grid_check(
            &c,
            "probe",
            3,
            None,
            &c.zero(),
            &c.one(),
            &c.from_str("0.25").unwrap(),
            |x| c.neg(x),
        );
        assert!(!check.pass);
        assert!(check.violation.is_some());
    }
}
