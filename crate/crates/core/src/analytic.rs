//! Effective-threshold parameters, the split-prime counter behind the
//! Ellenberg-Venkatesh torsion bound, and validation of externally computed
//! class groups.
//!
//! The absolute constants `C0`, `C1`, `C5` have no known numeric values; they
//! default to `1.0` and are placeholders, not normative. Threshold quantities
//! are astronomically large and are reported on a natural-log scale.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::Budget;
use crate::context::BiquadraticContext;
use crate::error::{Error, Result};
use crate::frobenius::scan_primes_with;
use crate::group::ConjugacyClass;
use crate::lseries::SCHEMA;
use crate::normcond::phi;
use crate::quartic::{build_field, D4Field};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticConfig {
    pub eps0: f64,
    pub c0: f64,
    pub c1: f64,
    pub c5: f64,
    pub beta_max: f64,
}

impl Default for AnalyticConfig {
    fn default() -> Self {
        AnalyticConfig {
            eps0: 0.1,
            c0: 1.0,
            c1: 1.0,
            c5: 1.0,
            beta_max: 0.75,
        }
    }
}

/// `delta = eps0 / (42 + 4 eps0)`
pub fn delta(eps0: f64) -> f64 {
    eps0 / (42.0 + 4.0 * eps0)
}

impl AnalyticConfig {
    pub fn delta(&self) -> f64 {
        delta(self.eps0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.eps0 > 0.0 && self.eps0 < 0.25) {
            return bad(format!("eps0 must lie in (0, 1/4), got {}", self.eps0));
        }
        for (name, v) in [("C0", self.c0), ("C1", self.c1), ("C5", self.c5)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be a positive real, got {v}"));
            }
        }
        if !(self.beta_max > 0.0 && self.beta_max < 1.0) {
            return bad(format!("beta_max must lie in (0, 1), got {}", self.beta_max));
        }
        if self.delta() >= 1.0 - self.beta_max {
            return bad(format!(
                "delta = {} is not below 1 - beta_max = {}",
                self.delta(),
                1.0 - self.beta_max
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub schema: &'static str,
    pub config: AnalyticConfig,
    pub delta: f64,
    pub q_max: u64,
    /// `21760 / C5`
    pub c6: f64,
    /// `log(T0 + 3) = C0 / delta - log(q_max)`
    pub ln_t0_plus_3: f64,
    /// `T0` when it fits in a double.
    pub t0: Option<f64>,
    /// `log kappa1 = log 40 + (log C6 - 2 log delta) / delta`
    pub ln_kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
}

impl ThresholdReport {
    /// `log x_thr(D) = log kappa1 + kappa2 (log(kappa3 log D))^2`, the log of
    /// the Chebotarev threshold for a closure of discriminant `D`.
    pub fn ln_x_threshold(&self, ln_d: f64) -> f64 {
        let inner = (self.kappa3 * ln_d).ln();
        self.ln_kappa1 + self.kappa2 * inner * inner
    }

    /// Real-part boundary of the zero-free region at height `t`.
    pub fn zero_free_boundary(&self, t: f64) -> f64 {
        let classical = 1.0 - self.config.c0 / (self.q_max as f64 * (t.abs() + 3.0)).ln();
        classical.max(1.0 - self.delta)
    }
}

pub fn thresholds(cfg: &AnalyticConfig, ctx: &BiquadraticContext) -> Result<ThresholdReport> {
    cfg.validate()?;
    let d = cfg.delta();
    let q = ctx.q_max as f64;
    let c6 = 21760.0 / cfg.c5;
    let ln_t0_plus_3 = cfg.c0 / d - q.ln();
    let t0 = ln_t0_plus_3.exp() - 3.0;
    Ok(ThresholdReport {
        schema: SCHEMA,
        config: *cfg,
        delta: d,
        q_max: ctx.q_max,
        c6,
        ln_t0_plus_3,
        t0: t0.is_finite().then_some(t0),
        ln_kappa1: 40f64.ln() + (c6.ln() - 2.0 * d.ln()) / d,
        kappa2: (4.0 / d).max(8.0 / (cfg.c0 * d)) + 4.0,
        kappa3: (480.0 * cfg.c1).powf(0.2) * (2.0 * q).max(c6.powf(0.25) / d.sqrt()),
    })
}

/// `1/2 - 1/(6 ell)` as a reduced fraction.
pub fn torsion_exponent(ell: u64) -> (u64, u64) {
    let (num, den) = (3 * ell - 1, 6 * ell);
    let g = num.gcd(&den);
    (num / g, den / g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvReport {
    pub schema: &'static str,
    pub field: D4Field,
    pub ell: u64,
    pub eta: f64,
    /// Stands in for the field discriminant, which it bounds from above.
    #[serde(serialize_with = "crate::bigjson::serialize")]
    pub disc_bound: BigInt,
    /// `floor(disc_bound^eta)`
    pub cutoff: u64,
    /// Admissible primes up to the cutoff that split completely.
    pub split_count: u64,
    pub split_primes: Vec<u64>,
    /// `log(disc_bound^(1/2) / M) / log(disc_bound)`, absent when `M = 0`.
    pub implied_exponent: Option<f64>,
    pub target_exponent: String,
    pub target_exponent_value: f64,
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ev_split_count(k: &D4Field, ell: u64, eta: f64) -> Result<EvReport> {
    ev_split_count_with(k, ell, eta, &Budget::default())
}

pub fn ev_split_count_with(k: &D4Field, ell: u64, eta: f64, budget: &Budget) -> Result<EvReport> {
    if ell == 0 {
        return Err(Error::InvalidInput("ell must be a positive integer".into()));
    }
    if !(eta > 0.0 && eta < 1.0 / (6.0 * ell as f64)) {
        return Err(Error::InvalidInput(format!(
            "eta must lie in (0, 1/(6 ell)) = (0, {}), got {eta}",
            1.0 / (6.0 * ell as f64)
        )));
    }
    let ln_d = ln_big(&k.disc_bound);
    let raw = (eta * ln_d).exp();
    if raw > budget.max_prime_bound as f64 {
        return Err(Error::ResourceBudget {
            requested: raw.min(u64::MAX as f64) as u64,
            limit: budget.max_prime_bound,
        });
    }
    let cutoff = raw.floor() as u64;
    let split_primes: Vec<u64> = if cutoff >= 3 {
        scan_primes_with(k, cutoff as f64, budget)?
            .into_iter()
            .filter(|r| r.class == Some(ConjugacyClass::Id))
            .map(|r| r.p)
            .collect()
    } else {
        Vec::new()
    };
    let m = split_primes.len() as u64;
    let (num, den) = torsion_exponent(ell);
    Ok(EvReport {
        schema: SCHEMA,
        field: k.clone(),
        ell,
        eta,
        disc_bound: k.disc_bound.clone(),
        cutoff,
        split_count: m,
        split_primes,
        implied_exponent: (m > 0).then(|| 0.5 - (m as f64).ln() / ln_d),
        target_exponent: format!("{num}/{den}"),
        target_exponent_value: num as f64 / den as f64,
    })
}

/// One row of an externally computed class-group table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupRecord {
    pub a: i64,
    pub b: i64,
    pub g: BigInt,
    pub h: BigInt,
    pub disc_exact: BigInt,
    pub invariant_factors: Vec<u64>,
    pub provenance: String,
}

pub const CLASS_GROUP_HEADER: [&str; 7] =
    ["a", "b", "g", "h", "disc_exact", "invariant_factors", "provenance"];

impl ClassGroupRecord {
    fn parse(record: usize, row: &csv::StringRecord) -> Result<Self> {
        let schema = |detail: String| Error::Schema { record, detail };
        if row.len() != CLASS_GROUP_HEADER.len() {
            return Err(schema(format!("expected 7 columns, found {}", row.len())));
        }
        let int = |i: usize| -> Result<BigInt> {
            row[i]
                .trim()
                .parse::<BigInt>()
                .map_err(|_| schema(format!("{} = {:?} is not an integer", CLASS_GROUP_HEADER[i], &row[i])))
        };
        let small = |i: usize| -> Result<i64> {
            int(i)?
                .to_i64()
                .ok_or_else(|| schema(format!("{} out of range", CLASS_GROUP_HEADER[i])))
        };
        let disc_exact = int(4)?;
        if !disc_exact.is_positive() {
            return Err(schema("disc_exact must be positive".into()));
        }
        let factors_field = row[5].trim();
        let invariant_factors = if factors_field.is_empty() {
            Vec::new()
        } else {
            factors_field
                .split(';')
                .map(|s| match s.trim().parse::<u64>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(schema(format!("invariant factor {s:?} is not a positive integer"))),
                })
                .collect::<Result<Vec<u64>>>()?
        };
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(schema(format!(
                    "invariant factors must divide successively, {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let provenance = row[6].trim().to_string();
        if provenance.is_empty() {
            return Err(schema("provenance is mandatory".into()));
        }
        Ok(ClassGroupRecord {
            a: small(0)?,
            b: small(1)?,
            g: int(2)?,
            h: int(3)?,
            disc_exact,
            invariant_factors,
            provenance,
        })
    }

    /// `|Cl[ell]| = prod gcd(f, ell)` over the invariant factors.
    pub fn torsion(&self, ell: u64) -> u128 {
        self.invariant_factors.iter().map(|&f| f.gcd(&ell) as u128).product()
    }

    pub fn class_number(&self) -> BigInt {
        self.invariant_factors.iter().map(|&f| BigInt::from(f)).product()
    }

    fn unmatched(&self, record: usize) -> Error {
        Error::UnmatchedField {
            record,
            a: self.a,
            b: self.b,
            g: self.g.to_string(),
            h: self.h.to_string(),
        }
    }

    /// The family member with this generator, if any.
    pub fn matching_field(&self, record: usize) -> Result<D4Field> {
        let ctx = BiquadraticContext::new(self.a, self.b).map_err(|_| self.unmatched(record))?;
        let triple = phi(&ctx).map_err(|_| self.unmatched(record))?;
        let h = self.h.abs();
        let (m, rem) = h.div_rem(&triple.h0);
        if !rem.is_zero() || !m.is_positive() {
            return Err(self.unmatched(record));
        }
        let m = m.to_u64().ok_or_else(|| self.unmatched(record))?;
        let k = build_field(&ctx, &triple, m).map_err(|_| self.unmatched(record))?;
        let k = if self.h.is_negative() { k.conjugate() } else { k };
        if k.g != self.g || k.h != self.h {
            return Err(self.unmatched(record));
        }
        Ok(k)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassGroupRow {
    pub record: usize,
    pub field: D4Field,
    #[serde(serialize_with = "crate::bigjson::serialize")]
    pub disc_exact: BigInt,
    #[serde(serialize_with = "crate::bigjson::serialize")]
    pub class_number: BigInt,
    pub torsion: u128,
    /// `log |Cl[ell]| / log disc_exact`
    pub ratio: f64,
    pub trivial_bound_violated: bool,
    pub exceeds_disc_bound: bool,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassGroupReport {
    pub schema: &'static str,
    pub ell: u64,
    pub target_exponent: String,
    pub rows: Vec<ClassGroupRow>,
    pub flagged: Vec<usize>,
}

pub fn ingest_class_groups(path: &Path, ell: u64) -> Result<ClassGroupReport> {
    ingest_class_groups_from(File::open(path)?, ell)
}

/// Records are numbered from 1, the header excluded.
pub fn ingest_class_groups_from<R: Read>(reader: R, ell: u64) -> Result<ClassGroupReport> {
    if ell == 0 {
        return Err(Error::InvalidInput("ell must be a positive integer".into()));
    }
    let (num, den) = torsion_exponent(ell);
    let mut report = ClassGroupReport {
        schema: SCHEMA,
        ell,
        target_exponent: format!("{num}/{den}"),
        rows: Vec::new(),
        flagged: Vec::new(),
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut rows = rdr.records();
    match rows.next() {
        None => return Ok(report),
        Some(header) => {
            let header = header?;
            let names: Vec<&str> = header.iter().map(str::trim).collect();
            if names != CLASS_GROUP_HEADER {
                return Err(Error::Schema {
                    record: 0,
                    detail: format!("header must be {}", CLASS_GROUP_HEADER.join(",")),
                });
            }
        }
    }
    for (i, row) in rows.enumerate() {
        let record = i + 1;
        let rec = ClassGroupRecord::parse(record, &row?)?;
        let field = rec.matching_field(record)?;
        let torsion = rec.torsion(ell);
        let class_number = rec.class_number();
        let trivial_bound_violated = BigInt::from(torsion) > class_number;
        let exceeds_disc_bound = rec.disc_exact > field.disc_bound;
        let ln_d = ln_big(&rec.disc_exact);
        let ratio = if ln_d > 0.0 { (torsion as f64).ln() / ln_d } else { 0.0 };
        if trivial_bound_violated || exceeds_disc_bound {
            report.flagged.push(record);
        }
        report.rows.push(ClassGroupRow {
            record,
            field,
            disc_exact: rec.disc_exact,
            class_number,
            torsion,
            ratio,
            trivial_bound_violated,
            exceeds_disc_bound,
            provenance: rec.provenance,
        });
    }
    Ok(report)
}
