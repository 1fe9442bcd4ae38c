//! Command implementations. Each returns a [`ReportDocument`]; the caller
//! renders it and derives the process exit code from the ledger.

use std::path::{Path, PathBuf};

use arank_core::spectrum::{
    cw_gamma_iterated, BoundReport, cw_gamma_min, diagonal_tau, generic_oneslice_bound,
    generic_partitioned_bound, omega_from_identities, three_direction_bound, toy_bound,
    verify_bound_monotonicity, OmegaOptions, Real, RealCtx,
};
use arank_core::speedup::{
    self, compress_one_slice_sum, cw_border_decomposition, cw_minrank_scalars,
    direct_sum_identity, generic_333_restriction, iterate_speedup, one_slice_speedup, random,
    seeded_333, RankOneDecomposition, SliceScalars, VERIFICATION_COEFF_CAP,
};
use arank_core::tensor::degen::{is_isolated, verify_degeneration};
use arank_core::tensor::{cw_tensor, CwVariant};

use crate::cache;
use crate::identity_io::{load_identities, LoadOutcome};
use crate::report::{cell, num_cell, ReportDocument};
use crate::CliError;

pub struct Env {
    pub ctx: RealCtx,
    pub omega_bar: Real,
    pub omega_bar_text: String,
    pub tol: Option<String>,
    pub seed: u64,
    pub cache: Option<PathBuf>,
}

impl Env {
    fn tol_or(&self, default: &str) -> Result<Real, CliError> {
        let text = self.tol.as_deref().unwrap_or(default);
        let v = self
            .ctx
            .from_str(text)
            .map_err(|e| CliError::Input(e.to_string()))?;
        if v.is_zero() || v.is_negative() {
            return Err(CliError::Input("tolerance must be positive".into()));
        }
        Ok(v)
    }

    fn config_into(&self, doc: &mut ReportDocument) {
        doc.config("precision_digits", self.ctx.digits().to_string());
        doc.config("omega_bar", self.omega_bar_text.clone());
        if let Some(t) = &self.tol {
            doc.config("tol", t.clone());
        }
        doc.config("seed", self.seed.to_string());
    }
}

/// Inclusive ranges like `2..10`, single values, or comma lists.
pub fn parse_range(text: &str) -> Result<Vec<u64>, CliError> {
    let text = text.trim();
    let bad = || CliError::Input(format!("cannot parse range {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

pub fn cmd_cw_table(
    env: &Env,
    q_range: &str,
    n_max: u32,
    iterated: bool,
) -> Result<ReportDocument, CliError> {
    let qs = parse_range(q_range)?;
    if qs.iter().any(|&q| q < 2) {
        return Err(CliError::Input("cw table needs q ≥ 2".into()));
    }
    let mut doc = ReportDocument::new("cw-table");
    env.config_into(&mut doc);
    doc.config("n_max", n_max.to_string());
    let c = &env.ctx;
    for q in qs {
        let (gamma, n_star, boundary) =
            cw_gamma_min(c, q, n_max, &env.omega_bar).map_err(CliError::core)?;
        let mut cells = vec![
            cell("BR", (q + 2).to_string()),
            num_cell("gamma", c.format_decimals(&gamma.value, 6), 6),
            cell("n_star", n_star.to_string()),
        ];
        if iterated {
            let it = cw_gamma_iterated(c, q, n_star, &env.omega_bar).map_err(CliError::core)?;
            cells.push(num_cell("gamma_iterated", c.format_decimals(&it.value, 6), 6));
            if let Some((_, mf)) = it.params.iter().find(|(k, _)| k == "max_F") {
                cells.push(num_cell("max_F", mf.clone(), env.ctx.digits()));
            }
        }
        if boundary {
            cells.push(cell("note", "minimum limited by n_max"));
        }
        doc.row(format!("q={q}"), cells);
    }
    Ok(doc)
}

pub fn cmd_omega(
    env: &Env,
    path: &Path,
    diagonal_only: bool,
    no_symmetrize: bool,
    assume_sum_ge_2: bool,
) -> Result<ReportDocument, CliError> {
    let LoadOutcome {
        identities,
        warnings,
    } = load_identities(path)?;
    let c = &env.ctx;
    let tau_tol = env.tol_or("1e-5")?;

    let mut doc = ReportDocument::new("omega");
    env.config_into(&mut doc);
    doc.config("input", path.display().to_string());
    for w in &warnings {
        doc.ledger("input warning", true, w.clone());
    }

    for loaded in &identities {
        let id = &loaded.identity;
        match diagonal_tau(c, id, &tau_tol) {
            Ok(diag) => {
                let rep = BoundReport::from_tau(c, &id.name, &diag);
                let mut cells = vec![num_cell(
                    "three_tau",
                    c.to_decimal_string(&rep.value),
                    c.digits(),
                )];
                if diag.capped {
                    cells.push(cell("note", "capped at 3"));
                }
                doc.row(format!("diagonal {}", id.name), cells);
                if let Some(bound_text) = &loaded.assert_3tau_below {
                    let bound = c
                        .from_str(bound_text)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let pass = diag.three_tau < bound;
                    doc.ledger(
                        format!("{}: 3τ < {bound_text}", id.name),
                        pass,
                        format!("3τ = {}", c.to_decimal_string(&diag.three_tau)),
                    );
                }
            }
            Err(e) => doc.ledger(format!("diagonal {}", id.name), false, e.to_string()),
        }
    }

    if !diagonal_only {
        let opt_tol = env.tol_or("1e-3")?;
        let ids: Vec<_> = identities.iter().map(|l| l.identity.clone()).collect();
        let mut opts = OmegaOptions::new(c, &opt_tol);
        opts.symmetrize = !no_symmetrize;
        opts.require_sum_ge_two = assume_sum_ge_2;

        // cache key over command, canonical inputs, and every
        // precision-relevant parameter
        let canonical = serde_json::to_string(&ids).expect("serializable");
        let key = cache::content_hash(&[
            "omega",
            &canonical,
            &format!("{no_symmetrize}{assume_sum_ge_2}"),
            &env.omega_bar_text,
            &c.to_decimal_string(&opt_tol),
            &c.digits().to_string(),
            env!("CARGO_PKG_VERSION"),
        ]);
        if let Some(cache_path) = &env.cache {
            if let Some(mut hit) = cache::lookup(cache_path, &key) {
                hit.ledger("cache", true, format!("reused record {key}"));
                return Ok(hit);
            }
        }

        let out = omega_from_identities(c, &ids, &opts).map_err(CliError::core)?;
        // wrapping validates the sandwich invariant of the certificate
        let rep = BoundReport::from_certified(c, &out, &opt_tol).map_err(CliError::core)?;
        let cert = rep.certificate.as_ref().expect("certified kind");
        let mut cells = vec![
            num_cell("certified_upper", c.to_decimal_string(&cert.upper_certified), c.digits()),
            num_cell("feasible_lower", c.to_decimal_string(&cert.lower_feasible), c.digits()),
            cell("boxes", cert.boxes.to_string()),
            cell("tol", c.to_decimal_string(&cert.tolerance)),
        ];
        for (i, p) in cert.point.iter().enumerate() {
            cells.push(num_cell(
                format!("theta{}", i + 1),
                c.to_decimal_string(p),
                c.digits(),
            ));
        }
        if out.vacuous {
            cells.push(cell("note", "empty identity set; bound is vacuous"));
        }
        doc.row("certified_max", cells);
        doc.ledger(
            "certificate sandwich",
            true,
            "lower ≤ upper and gap within tol",
        );

        if let Some(cache_path) = &env.cache {
            cache::append(cache_path, &key, &doc)
                .map_err(|e| CliError::Input(format!("cache write failed: {e}")))?;
        }
    }
    Ok(doc)
}

pub fn cmd_tau(env: &Env, path: &Path) -> Result<ReportDocument, CliError> {
    let mut doc = cmd_omega(env, path, true, false, false)?;
    doc.command = "tau".into();
    Ok(doc)
}

pub fn cmd_generic_bounds(env: &Env, d_range: &str) -> Result<ReportDocument, CliError> {
    let ds = parse_range(d_range)?;
    if ds.iter().any(|&d| d < 3) {
        return Err(CliError::Input("generic bounds need d ≥ 3".into()));
    }
    let c = &env.ctx;
    let mut doc = ReportDocument::new("generic-bounds");
    env.config_into(&mut doc);

    let toy = toy_bound(c, 3, 2, &env.omega_bar).map_err(CliError::core)?;
    doc.row(
        "3x3x3 corollary",
        vec![num_cell(
            "3 + 2^(omega_bar/3)",
            c.format_decimals(&toy.value, 6),
            6,
        )],
    );

    for d in ds {
        let one = generic_oneslice_bound(c, d, &env.omega_bar).map_err(CliError::core)?;
        let part = generic_partitioned_bound(c, d, &env.omega_bar).map_err(CliError::core)?;
        let two_thirds_w = c.mul(
            &c.from_i64(2),
            &c.div(&env.omega_bar, &c.from_i64(3)),
        );
        let reference = c.ipow(d, &two_thirds_w);
        let sigma = part
            .params
            .iter()
            .find(|(k, _)| k == "sigma_exponent")
            .map(|(_, v)| v.clone())
            .unwrap_or_default();
        let strict = part.value < reference;
        doc.row(
            format!("d={d}"),
            vec![
                num_cell("one_slice", c.format_decimals(&one.value, 6), 6),
                num_cell("partitioned", c.format_decimals(&part.value, 6), 6),
                num_cell("reference", c.format_decimals(&reference, 6), 6),
                num_cell("sigma_exponent", {
                    let v = c.from_str(&sigma).map_err(|e| CliError::Input(e.to_string()))?;
                    c.format_decimals(&v, 6)
                }, 6),
                cell("strict", if strict { "yes" } else { "no" }),
            ],
        );
        doc.ledger(
            format!("d={d}: partitioned < d^(2ω̄/3)"),
            strict,
            format!(
                "{} < {}",
                c.format_decimals(&part.value, 6),
                c.format_decimals(&reference, 6)
            ),
        );
    }
    Ok(doc)
}

pub fn cmd_bound_toy(env: &Env, r: u64, s: u64) -> Result<ReportDocument, CliError> {
    let c = &env.ctx;
    let rep = toy_bound(c, r, s, &env.omega_bar).map_err(CliError::core)?;
    let mut doc = ReportDocument::new("bound toy");
    env.config_into(&mut doc);
    let mut cells = vec![num_cell("value", c.to_decimal_string(&rep.value), c.digits())];
    for (k, v) in &rep.params {
        cells.push(cell(k.clone(), v.clone()));
    }
    doc.row("bound", cells);
    Ok(doc)
}

pub fn cmd_bound_three_dir(env: &Env, r: u64, s: u64, t: u64) -> Result<ReportDocument, CliError> {
    let c = &env.ctx;
    let rep = three_direction_bound(c, r, s, t, &env.omega_bar).map_err(CliError::core)?;
    let mut doc = ReportDocument::new("bound three-dir");
    env.config_into(&mut doc);
    let mut cells = vec![num_cell("value", c.to_decimal_string(&rep.value), c.digits())];
    for (k, v) in &rep.params {
        cells.push(cell(k.clone(), v.clone()));
    }
    doc.row("bound", cells);
    Ok(doc)
}

fn load_decomposition(path: &Path) -> Result<RankOneDecomposition, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_weights(path: &Path) -> Result<SliceScalars, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub enum VerifyTarget {
    CwIdentity {
        q: usize,
        power: u32,
    },
    Minrank {
        q: usize,
    },
    OneSlice {
        q: Option<usize>,
        power: u32,
        decomposition: Option<PathBuf>,
        weights: Option<PathBuf>,
    },
    Iterate {
        q: u64,
        n: u32,
    },
    DirectSum {
        n_parts: Vec<usize>,
        m_parts: Vec<usize>,
    },
    Compression {
        widths: Vec<usize>,
        codim: usize,
    },
    Generic333 {
        count: u32,
    },
    Monotonicity {
        d: Vec<u64>,
        grid_step: String,
        varpi: Vec<String>,
    },
}

pub fn cmd_verify(env: &Env, target: VerifyTarget) -> Result<ReportDocument, CliError> {
    let mut doc = ReportDocument::new("verify");
    env.config_into(&mut doc);
    match target {
        VerifyTarget::CwIdentity { q, power } => {
            doc.config("target", format!("cw-identity q={q} power={power}"));
            let dec = cw_border_decomposition(q).map_err(CliError::core)?;
            let dec = if power > 1 { dec.power(power) } else { dec };
            let size = dec.target.len() * dec.border_rank();
            if size > VERIFICATION_COEFF_CAP {
                doc.ledger(
                    "symbolic verification",
                    true,
                    format!("skipped: {size} coefficients beyond cap (unverified-at-scale)"),
                );
            } else {
                let rep = dec.verify().map_err(CliError::core)?;
                doc.ledger("border identity", rep.pass, rep.describe());
            }
        }
        VerifyTarget::Minrank { q } => {
            doc.config("target", format!("minrank q={q}"));
            let dec = cw_border_decomposition(q).map_err(CliError::core)?;
            let sc = cw_minrank_scalars(q).map_err(CliError::core)?;
            let m = speedup::slice_matrix(&dec, &sc).map_err(CliError::core)?;
            let rank = m.rank();
            doc.ledger(
                format!("rank over ℚ(λ) equals {q}"),
                rank == q,
                format!("computed rank {rank}"),
            );
        }
        VerifyTarget::OneSlice {
            q,
            power,
            decomposition,
            weights,
        } => {
            let (dec, sc, label) = match (&decomposition, &weights) {
                (Some(dp), Some(wp)) => {
                    let dec = load_decomposition(dp)?;
                    let sc = load_weights(wp)?;
                    (dec, sc, format!("files {} + {}", dp.display(), wp.display()))
                }
                (None, None) => {
                    let q = q.unwrap_or(2);
                    let dec = cw_border_decomposition(q).map_err(CliError::core)?;
                    let sc = cw_minrank_scalars(q).map_err(CliError::core)?;
                    let dec = if power > 1 { dec.power(power) } else { dec };
                    let sc = if power > 1 { sc.power(power) } else { sc };
                    (dec, sc, format!("cw q={q} power={power}"))
                }
                _ => {
                    return Err(CliError::Input(
                        "--decomposition and --weights must be given together".into(),
                    ))
                }
            };
            doc.config("target", format!("one-slice {label}"));
            match dec.verify() {
                Ok(rep) if rep.pass => {
                    doc.ledger("input decomposition", true, rep.describe());
                    let out = one_slice_speedup(&dec, &sc).map_err(CliError::core)?;
                    let fam_rep = verify_degeneration(&out.family).map_err(CliError::core)?;
                    doc.row(
                        "parameters",
                        vec![
                            cell("r", out.r.to_string()),
                            cell("s", out.s.to_string()),
                            cell("t", out.t.to_string()),
                            cell("fullness", out.fullness.to_string()),
                        ],
                    );
                    doc.ledger("speedup family", fam_rep.pass, fam_rep.describe());
                    let iso = is_isolated(&out.family, 1).map_err(CliError::core)?;
                    doc.ledger("appended slice isolated", iso, format!("isolated = {iso}"));
                }
                Ok(rep) => {
                    doc.ledger("input decomposition", false, rep.describe());
                }
                Err(e) => doc.ledger("input decomposition", false, e.to_string()),
            }
        }
        VerifyTarget::Iterate { q, n } => {
            doc.config("target", format!("iterate q={q} n={n}"));
            let rec = iterate_speedup(q, n, VERIFICATION_COEFF_CAP).map_err(CliError::core)?;
            doc.row(
                "bookkeeping",
                vec![
                    cell("r", rec.r.to_string()),
                    cell("s", rec.s.to_string()),
                    cell("t", rec.t.to_string()),
                    cell("t_prime", rec.t_prime.to_string()),
                    cell("lhs", rec.lhs.clone()),
                    cell("rhs", rec.rhs.clone()),
                ],
            );
            match rec.symbolic {
                Some(sym) => {
                    doc.ledger(
                        "symbolic replacement",
                        sym.verified_t_prime as u128 == rec.t_prime,
                        format!("verified width {}", sym.verified_t_prime),
                    );
                }
                None => doc.ledger(
                    "symbolic replacement",
                    true,
                    "skipped beyond coefficient cap (unverified-at-scale)",
                ),
            }
        }
        VerifyTarget::DirectSum { n_parts, m_parts } => {
            doc.config(
                "target",
                format!("direct-sum n_parts={n_parts:?} m_parts={m_parts:?}"),
            );
            let out = direct_sum_identity(&n_parts, &m_parts).map_err(CliError::core)?;
            let rep = verify_degeneration(&out.family).map_err(CliError::core)?;
            doc.row(
                "widths",
                vec![cell(
                    "appended",
                    format!("{:?}", out.widths),
                )],
            );
            doc.ledger("direct-sum identity", rep.pass, rep.describe());
        }
        VerifyTarget::Compression { widths, codim } => {
            doc.config("target", format!("compression widths={widths:?} codim={codim}"));
            let total: usize = widths.iter().sum();
            if codim > total {
                return Err(CliError::Input(format!(
                    "codimension {codim} exceeds total width {total}"
                )));
            }
            let mut rng = random::rng(env.seed);
            let asub = random::random_full_row_rank(&mut rng, total - codim, total, 3);
            let out = compress_one_slice_sum(&widths, &asub).map_err(CliError::core)?;
            doc.row(
                "result",
                vec![
                    cell("retained", format!("{:?}", out.retained)),
                    cell("removed", format!("{:?}", out.removed)),
                ],
            );
            doc.ledger(
                "total retained",
                out.retained.iter().sum::<usize>() == total - codim,
                format!("{} of {total}", total - codim),
            );
        }
        VerifyTarget::Generic333 { count } => {
            doc.config("target", format!("generic-333 count={count} seed={}", env.seed));
            let mut all = true;
            for i in 0..count as u64 {
                let t = seeded_333(env.seed.wrapping_add(i));
                match generic_333_restriction(&t) {
                    Ok(out) => {
                        let ok = out.restriction.target == t;
                        all &= ok;
                        doc.ledger(format!("seeded tensor {i}"), ok, "reconstructed exactly");
                    }
                    Err(e) => {
                        all = false;
                        doc.ledger(format!("seeded tensor {i}"), false, e.to_string());
                    }
                }
            }
            // singular-slice inputs must be rejected, not approximated
            let cw = cw_tensor(2, CwVariant::Standard).map_err(CliError::core)?;
            let rejected = matches!(
                generic_333_restriction(&cw),
                Err(arank_core::CoreError::SingularFirstSlice)
            );
            doc.ledger(
                "singular first slice rejected",
                rejected,
                "cw tensor reported as singular",
            );
            let _ = all;
        }
        VerifyTarget::Monotonicity {
            d,
            grid_step,
            varpi,
        } => {
            doc.config(
                "target",
                format!("monotonicity d={d:?} grid={grid_step} varpi={varpi:?}"),
            );
            let c = &env.ctx;
            let step = c
                .from_str(&grid_step)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let varpis: Vec<Real> = varpi
                .iter()
                .map(|s| c.from_str(s).map_err(|e| CliError::Input(e.to_string())))
                .collect::<Result<_, _>>()?;
            let rep =
                verify_bound_monotonicity(c, &d, &varpis, &step).map_err(CliError::core)?;
            for chk in &rep.checks {
                let name = match &chk.varpi {
                    Some(w) => format!("{} (d={}, ϖ={})", chk.name, chk.d, w),
                    None => format!("{} (d={})", chk.name, chk.d),
                };
                let detail = match &chk.violation {
                    None => format!("strictly increasing over {} grid points", chk.points),
                    Some((loc, a, b)) => format!("violation at {loc}: {a} → {b}"),
                };
                doc.ledger(name, chk.pass, detail);
            }
        }
    }
    Ok(doc)
}
