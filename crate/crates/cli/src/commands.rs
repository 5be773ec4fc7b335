use anyhow::{bail, Result};
use d4_core::analytic::{ev_split_count, ingest_class_groups, thresholds, AnalyticConfig};
use d4_core::arith::SquarefreeInt;
use d4_core::bigjson::to_value;
use d4_core::context::BiquadraticContext;
use d4_core::family::{count_squarefree_coprime, enumerate_context, verify_lower_bound};
use d4_core::frobenius::scan_primes;
use d4_core::lseries::{chebotarev_report, rho_coefficients, zeta_check, SCHEMA};
use d4_core::normcond::{check_condition_1234, phi, GeneratorTriple};
use d4_core::quartic::{build_field, D4Field};
use d4_core::{selftest, Error};
use serde_json::{json, Value};

use crate::args::{Command, ContextArgs, FieldArgs};
use crate::output::{Artifact, Table};

/// A finished command: its artifact and the exit status it calls for.
pub struct Outcome {
    pub artifact: Artifact,
    pub status: u8,
}

impl From<Artifact> for Outcome {
    fn from(artifact: Artifact) -> Self {
        Outcome { artifact, status: 0 }
    }
}

fn context(c: ContextArgs) -> Result<BiquadraticContext> {
    Ok(BiquadraticContext::new(c.a, c.b)?)
}

fn field(f: FieldArgs) -> Result<D4Field> {
    let ctx = context(f.ctx)?;
    let triple = phi(&ctx)?;
    Ok(build_field(&ctx, &triple, f.m)?)
}

fn triple_json(ctx: &BiquadraticContext, t: &GeneratorTriple) -> Value {
    json!({
        "g0": to_value(&t.g0),
        "h0": to_value(&t.h0),
        "n0": to_value(&t.n0),
        "subfamily": t.subfamily,
        "base": ctx.value(t.subfamily.base()).get(),
        "target": ctx.value(t.subfamily.target()).get(),
    })
}

fn positive_bound(name: &str, x: f64, min: f64) -> Result<()> {
    if !(x.is_finite() && x >= min) {
        bail!(Error::InvalidInput(format!("{name} must be a finite real >= {min}, got {x}")));
    }
    Ok(())
}

pub fn run(command: &Command, seed: u64) -> Result<Outcome> {
    match *command {
        Command::NormTest { ctx } => norm_test(ctx),
        Command::Enumerate { ctx, x } => enumerate(ctx, x),
        Command::Count { a, b, ref x_grid, q, ref z_grid } => count(a.zip(b), x_grid, q, z_grid),
        Command::Frobenius { field: f, x } => frobenius(f, x),
        Command::Chebotarev { field: f, x } => {
            positive_bound("x", x, 10.0)?;
            Ok(Artifact::json(&chebotarev_report(&field(f)?, x)?)?.into())
        }
        Command::ZetaCheck { field: f, x } => {
            positive_bound("x", x, 2.0)?;
            let report = zeta_check(&field(f)?, x)?;
            let status = if report.failures.is_empty() { 0 } else { 1 };
            Ok(Outcome { artifact: Artifact::json(&report)?, status })
        }
        Command::RhoCoeffs { field: f, x } => rho_coeffs(f, x),
        Command::Thresholds { ctx, eps0, c0, c1, c5, beta_max, ref ln_d, ref t } => {
            let cfg = AnalyticConfig { eps0, c0, c1, c5, beta_max };
            let report = thresholds(&cfg, &context(ctx)?)?;
            let mut v = serde_json::to_value(&report)?;
            v["ln_x_threshold"] = ln_d
                .iter()
                .map(|&l| json!({ "ln_d": l, "value": report.ln_x_threshold(l) }))
                .collect();
            v["zero_free_boundary"] = t
                .iter()
                .map(|&h| json!({ "t": h, "value": report.zero_free_boundary(h) }))
                .collect();
            Ok(Artifact { json: v, table: None }.into())
        }
        Command::Ev { field: f, ell, eta } => Ok(Artifact::json(&ev_split_count(&field(f)?, ell, eta)?)?.into()),
        Command::IngestCl { ref file, ell } => Ok(Artifact::json(&ingest_class_groups(file, ell)?)?.into()),
        Command::Selftest => {
            let report = selftest::run(seed);
            let status = if report.passed { 0 } else { 1 };
            Ok(Outcome { artifact: Artifact::json(&report)?, status })
        }
    }
}

fn norm_test(c: ContextArgs) -> Result<Outcome> {
    let ctx = context(c)?;
    let crit = check_condition_1234(ctx.a, ctx.b)?;
    let triple = match phi(&ctx) {
        Ok(t) => Some(t),
        Err(Error::EmptyFamily { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let json = json!({
        "schema": SCHEMA,
        "a": ctx.a,
        "b": ctx.b,
        "co1": crit.co1,
        "co2": crit.co2,
        "co3": crit.co3,
        "condition1234": crit.condition1234,
        "triple": triple.as_ref().map(|t| triple_json(&ctx, t)),
    });
    let status = if crit.condition1234 { 0 } else { 3 };
    Ok(Outcome { artifact: Artifact { json, table: None }, status })
}

fn enumerate(c: ContextArgs, x: f64) -> Result<Outcome> {
    positive_bound("X", x, 1.0)?;
    let ctx = context(c)?;
    let slice = enumerate_context(&ctx, x)?;
    let rows = slice
        .members
        .iter()
        .map(|k| {
            let poly = k.poly();
            vec![
                k.m.map(|m| m.to_string()).unwrap_or_default(),
                k.g.to_string(),
                k.h.to_string(),
                k.n.to_string(),
                poly[0].to_string(),
                poly[2].to_string(),
                k.disc_bound.to_string(),
            ]
        })
        .collect();
    let json = json!({
        "schema": SCHEMA,
        "a": ctx.a,
        "b": ctx.b,
        "X": x,
        "triple": triple_json(&ctx, &slice.triple),
        "m_bound": slice.m_bound,
        "members": slice.members,
    });
    Ok(Artifact {
        json,
        table: Some(Table {
            header: vec!["m", "g", "h", "n", "poly_c0", "poly_c2", "disc_bound"],
            rows,
        }),
    }
    .into())
}

fn count(ab: Option<(i64, i64)>, x_grid: &[f64], q: Option<u64>, z_grid: &[f64]) -> Result<Outcome> {
    match (ab, q) {
        (Some((a, b)), None) => {
            if x_grid.is_empty() {
                bail!(Error::InvalidInput("--X-grid is required with --a and --b".into()));
            }
            for &x in x_grid {
                positive_bound("X", x, 1.0)?;
            }
            let ctx = BiquadraticContext::new(a, b)?;
            let report = verify_lower_bound(&ctx, x_grid)?;
            let limit = report.limit.map(|l| l.to_string()).unwrap_or_default();
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.x.to_string(),
                        r.m_bound.to_string(),
                        r.members.to_string(),
                        r.ratio.to_string(),
                        limit.clone(),
                    ]
                })
                .collect();
            let mut json = serde_json::to_value(&report)?;
            json["schema"] = SCHEMA.into();
            Ok(Artifact {
                json,
                table: Some(Table {
                    header: vec!["X", "m_bound", "members", "ratio", "limit"],
                    rows,
                }),
            }
            .into())
        }
        (None, Some(q)) => {
            let counts = z_grid
                .iter()
                .map(|&z| count_squarefree_coprime(z, q))
                .collect::<d4_core::Result<Vec<_>>>()?;
            let rows = counts
                .iter()
                .map(|c| {
                    vec![
                        c.z.to_string(),
                        c.q.to_string(),
                        c.count.to_string(),
                        c.main_term.to_string(),
                        c.residual.to_string(),
                        (c.residual.abs() <= 3.0 * c.z.sqrt()).to_string(),
                    ]
                })
                .collect();
            Ok(Artifact {
                json: json!({ "schema": SCHEMA, "q": q, "counts": counts }),
                table: Some(Table {
                    header: vec!["Z", "q", "count", "main_term", "residual", "within_3_sqrt_z"],
                    rows,
                }),
            }
            .into())
        }
        _ => bail!(Error::InvalidInput(
            "count needs either --a, --b and --X-grid, or --q and --Z-grid".into()
        )),
    }
}

fn frobenius(f: FieldArgs, x: f64) -> Result<Outcome> {
    positive_bound("x", x, 2.0)?;
    let k = field(f)?;
    let records = scan_primes(&k, x)?;
    let rows = records
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.chi1.to_string(),
                r.chi2.to_string(),
                r.chi3.to_string(),
                r.root_count.to_string(),
                r.class.map(|c| c.to_string()).unwrap_or_default(),
                r.admissible.to_string(),
            ]
        })
        .collect();
    Ok(Artifact {
        json: json!({ "schema": SCHEMA, "field": k, "x": x, "records": records }),
        table: Some(Table {
            header: vec!["p", "chi1", "chi2", "chi3", "root_count", "class", "admissible"],
            rows,
        }),
    }
    .into())
}

fn rho_coeffs(f: FieldArgs, x: f64) -> Result<Outcome> {
    positive_bound("x", x, 2.0)?;
    let k = field(f)?;
    let coeffs = rho_coefficients(&k, x)?;
    let partial_sum: i64 = coeffs.iter().map(|&(_, a)| a).sum();
    let rows = coeffs.iter().map(|(p, a)| vec![p.to_string(), a.to_string()]).collect();
    let list: Vec<Value> = coeffs.iter().map(|&(p, a)| json!({ "p": p, "a_p": a })).collect();
    Ok(Artifact {
        json: json!({
            "schema": SCHEMA,
            "field": k,
            "x": x,
            "partial_sum": partial_sum,
            "coefficients": list,
        }),
        table: Some(Table { header: vec!["p", "a_p"], rows }),
    }
    .into())
}

/// Validates `a` and `b` before any module call.
pub fn validate_context(command: &Command) -> Result<()> {
    let pair = match *command {
        Command::NormTest { ctx } | Command::Enumerate { ctx, .. } | Command::Thresholds { ctx, .. } => {
            Some((ctx.a, ctx.b))
        }
        Command::Frobenius { field, .. }
        | Command::Chebotarev { field, .. }
        | Command::ZetaCheck { field, .. }
        | Command::RhoCoeffs { field, .. }
        | Command::Ev { field, .. } => Some((field.ctx.a, field.ctx.b)),
        Command::Count { a, b, .. } => a.zip(b),
        Command::IngestCl { .. } | Command::Selftest => None,
    };
    if let Some((a, b)) = pair {
        SquarefreeInt::new(a)?;
        SquarefreeInt::new(b)?;
        if a == b {
            bail!(Error::InvalidInput(format!("a and b must be distinct (both are {a})")));
        }
    }
    Ok(())
}
