//! Quick invariant checks across all modules, run by `d4 selftest`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{delta, thresholds, AnalyticConfig};
use crate::arith::{is_squarefree, SquarefreeInt};
use crate::context::BiquadraticContext;
use crate::error::Result;
use crate::family::{count_squarefree_coprime, distinctness_violations, enumerate_context};
use crate::frobenius::scan_primes;
use crate::group::{elements, ConjugacyClass, Perm};
use crate::lseries::{zeta_check, D4CharacterTable};
use crate::normcond::phi;
use crate::quartic::{build_field, classify_galois, D4Field};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfTestReport {
    pub schema: &'static str,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn k1() -> Result<D4Field> {
    let ctx = BiquadraticContext::new(2, 7)?;
    build_field(&ctx, &phi(&ctx)?, 1)
}

fn generator_triple() -> Result<(bool, String)> {
    let t = phi(&BiquadraticContext::new(2, 7)?)?;
    let ok = (t.g0.clone(), t.h0.clone(), t.n0.clone()) == (3.into(), 1.into(), 1.into());
    Ok((ok, format!("({}, {}, {})", t.g0, t.h0, t.n0)))
}

fn group_presentation() -> Result<(bool, String)> {
    let (r, s) = (Perm::R, Perm::S);
    let ok = r.order() == 4
        && s.order() == 2
        && s.compose(r).compose(s) == r.inverse()
        && ConjugacyClass::ALL.iter().map(|c| c.size()).sum::<usize>() == elements().len();
    Ok((ok, "r^4 = s^2 = 1, srs = r^-1, classes partition D4".into()))
}

fn character_table() -> Result<(bool, String)> {
    Ok((D4CharacterTable::new().orthogonality_holds(), "row and column orthogonality".into()))
}

fn galois_trichotomy(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut tally = [0usize; 4];
    for _ in 0..2000 {
        let base = loop {
            let v: i64 = rng.gen_range(-50..=50);
            if v != 0 && v != 1 && is_squarefree(v)? {
                break SquarefreeInt::new(v)?;
            }
        };
        let g = BigInt::from(rng.gen_range(-200i64..=200));
        let h = BigInt::from(rng.gen_range(1i64..=200));
        let i = match classify_galois(base, &g, &h) {
            Ok(t) => t as usize,
            Err(_) => 3,
        };
        tally[i] += 1;
    }
    Ok((tally.iter().sum::<usize>() == 2000, format!("K4/C4/D4/reducible = {tally:?}")))
}

fn frobenius_cycle_types() -> Result<(bool, String)> {
    let k = k1()?;
    let recs = scan_primes(&k, 1e4)?;
    let classified = recs.iter().filter(|r| r.class.is_some()).count();
    Ok((classified + 1 == recs.len(), format!("{classified} admissible primes up to 1e4")))
}

fn euler_identity() -> Result<(bool, String)> {
    let rep = zeta_check(&k1()?, 1e4)?;
    Ok((rep.failures.is_empty(), format!("{} primes, {} failures", rep.checked, rep.failures.len())))
}

fn distinctness() -> Result<(bool, String)> {
    let slice = enumerate_context(&BiquadraticContext::new(2, 7)?, 1e13)?;
    let bad = distinctness_violations(&slice)?;
    Ok((bad.is_empty(), format!("{} members, {} violations", slice.members.len(), bad.len())))
}

fn squarefree_density() -> Result<(bool, String)> {
    let c = count_squarefree_coprime(1e5, 14)?;
    let ok = c.residual.abs() <= 3.0 * c.z.sqrt();
    Ok((ok, format!("count {} vs main term {:.1}", c.count, c.main_term)))
}

fn threshold_formulas() -> Result<(bool, String)> {
    let r = thresholds(&AnalyticConfig::default(), &BiquadraticContext::new(2, 7)?)?;
    let ok = (delta(0.1) - 0.1 / 42.4).abs() < 1e-15 && r.q_max == 56;
    Ok((ok, format!("delta = {:.7}, log kappa1 = {:.6e}", r.delta, r.ln_kappa1)))
}

pub fn run(seed: u64) -> SelfTestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut push = |name: &'static str, outcome: Result<(bool, String)>| {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, e.to_string()));
        checks.push(CheckResult { name, passed, detail });
    };
    push("generator-triple", generator_triple());
    push("group-presentation", group_presentation());
    push("character-table", character_table());
    push("galois-trichotomy", galois_trichotomy(&mut rng));
    push("frobenius-cycle-types", frobenius_cycle_types());
    push("euler-identity", euler_identity());
    push("distinctness", distinctness());
    push("squarefree-density", squarefree_density());
    push("threshold-formulas", threshold_formulas());
    let passed = checks.iter().all(|c| c.passed);
    SelfTestReport {
        schema: crate::lseries::SCHEMA,
        seed,
        checks,
        passed,
    }
}
