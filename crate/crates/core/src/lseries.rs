//! Chebotarev statistics for the Frobenius classes of a D4 field, the
//! character table of D4, and the local form of the factorization of the
//! Dedekind zeta function of the closure into Artin L-functions.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor_mod_p, log_integral};
use crate::error::{Error, Result};
use crate::frobenius::{artin_symbol, scan_primes, FrobeniusRecord};
use crate::group::{elements, ConjugacyClass, Perm};
use crate::quartic::D4Field;

pub const SCHEMA: &str = "d4/v1";

#[derive(Debug, Clone, Serialize)]
pub struct ChebotarevReport {
    pub schema: &'static str,
    pub field: D4Field,
    pub x: f64,
    /// Odd primes up to `x`.
    pub odd_primes: u64,
    pub excluded: u64,
    pub excluded_primes: Vec<u64>,
    /// `pi_C(x)`
    pub counts: BTreeMap<ConjugacyClass, u64>,
    /// `psi_C(x)`: `log p` summed over prime powers `p^m <= x` whose
    /// Frobenius `Frob_p^m` lies in `C`.
    pub weighted: BTreeMap<ConjugacyClass, f64>,
    /// `(|C| / 8) Li(x)`
    pub expected: BTreeMap<ConjugacyClass, f64>,
    /// `|pi_C - expected| / ((|C| / 8) x / log(x)^2)`
    pub normalized_error: BTreeMap<ConjugacyClass, f64>,
    /// `pi_C / (odd_primes - excluded)`
    pub proportions: BTreeMap<ConjugacyClass, f64>,
    /// `max_C |proportion_C - |C| / 8|`
    pub max_proportion_deviation: f64,
}

impl ChebotarevReport {
    /// Folds a complete scan of the odd primes up to `x`.
    pub fn from_records(field: &D4Field, x: f64, records: &[FrobeniusRecord]) -> Result<Self> {
        if !(x.is_finite() && x >= 10.0) {
            return Err(Error::InvalidInput(format!("x must be >= 10, got {x}")));
        }
        let mut counts: BTreeMap<ConjugacyClass, u64> =
            ConjugacyClass::ALL.iter().map(|&c| (c, 0)).collect();
        let mut weighted: BTreeMap<ConjugacyClass, f64> =
            ConjugacyClass::ALL.iter().map(|&c| (c, 0.0)).collect();
        let mut excluded_primes = Vec::new();
        for r in records {
            let Some(c) = r.class else {
                excluded_primes.push(r.p);
                continue;
            };
            *counts.get_mut(&c).expect("all classes present") += 1;
            let logp = (r.p as f64).ln();
            let mut pm = r.p as f64;
            let mut m = 1u64;
            while pm <= x {
                *weighted.get_mut(&c.pow(m)).expect("all classes present") += logp;
                m += 1;
                pm *= r.p as f64;
            }
        }
        let li = log_integral(x)?;
        let lx = x.ln();
        let admissible = (records.len() - excluded_primes.len()) as f64;
        let frac = |c: ConjugacyClass| c.size() as f64 / 8.0;
        let expected: BTreeMap<_, _> = ConjugacyClass::ALL.iter().map(|&c| (c, frac(c) * li)).collect();
        let normalized_error = ConjugacyClass::ALL
            .iter()
            .map(|&c| {
                let err = (counts[&c] as f64 - expected[&c]).abs();
                (c, err / (frac(c) * x / (lx * lx)))
            })
            .collect();
        let proportions: BTreeMap<_, _> = ConjugacyClass::ALL
            .iter()
            .map(|&c| (c, if admissible > 0.0 { counts[&c] as f64 / admissible } else { 0.0 }))
            .collect();
        let max_proportion_deviation = ConjugacyClass::ALL
            .iter()
            .map(|&c| (proportions[&c] - frac(c)).abs())
            .fold(0.0, f64::max);
        Ok(ChebotarevReport {
            schema: SCHEMA,
            field: field.clone(),
            x,
            odd_primes: records.len() as u64,
            excluded: excluded_primes.len() as u64,
            excluded_primes,
            counts,
            weighted,
            expected,
            normalized_error,
            proportions,
            max_proportion_deviation,
        })
    }
}

pub fn chebotarev_report(k: &D4Field, x: f64) -> Result<ChebotarevReport> {
    if !(x.is_finite() && x >= 10.0) {
        return Err(Error::InvalidInput(format!("x must be >= 10, got {x}")));
    }
    let records = scan_primes(k, x)?;
    ChebotarevReport::from_records(k, x, &records)
}

/// Integer 2x2 matrix, row-major.
type Mat2 = [[i64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

const RHO_R: Mat2 = [[0, -1], [1, 0]];
const RHO_S: Mat2 = [[1, 0], [0, -1]];
const IDENTITY: Mat2 = [[1, 0], [0, 1]];

/// The faithful two-dimensional representation, on `r^k s^e`.
pub fn rho_matrix(g: Perm) -> Mat2 {
    for k in 0..4u64 {
        for e in [false, true] {
            if Perm::rotation_reflection(k, e) == g {
                let rk = (0..k).fold(IDENTITY, |acc, _| mat_mul(&acc, &RHO_R));
                return if e { mat_mul(&rk, &RHO_S) } else { rk };
            }
        }
    }
    panic!("{g} is not in D4")
}

/// Irreducible characters of D4 on the classes `ID, R2, R, S, RS`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct D4CharacterTable {
    pub names: [&'static str; 5],
    pub dims: [i64; 5],
    /// `values[i][j]`: character `i` on class `ConjugacyClass::ALL[j]`.
    pub values: [[i64; 5]; 5],
}

impl D4CharacterTable {
    pub fn new() -> Self {
        let mut values = [[0i64; 5]; 5];
        for (j, c) in ConjugacyClass::ALL.iter().enumerate() {
            let pattern = c.symbol_pattern();
            values[0][j] = 1;
            for i in 0..3 {
                values[i + 1][j] = pattern[i] as i64;
            }
            let m = rho_matrix(c.representative());
            values[4][j] = m[0][0] + m[1][1];
        }
        D4CharacterTable {
            names: ["1", "chi1", "chi2", "chi3", "rho"],
            dims: [1, 1, 1, 1, 2],
            values,
        }
    }

    pub fn value(&self, character: usize, c: ConjugacyClass) -> i64 {
        let j = ConjugacyClass::ALL.iter().position(|&x| x == c).expect("class");
        self.values[character][j]
    }

    /// Row orthogonality `sum_C |C| chi(C) psi(C) = 8 [chi = psi]` and
    /// `sum_chi dim(chi) chi(g) = 8 [g = 1]`.
    pub fn orthogonality_holds(&self) -> bool {
        let sizes = ConjugacyClass::ALL.map(|c| c.size() as i64);
        let rows = (0..5).all(|i| {
            (0..5).all(|k| {
                let s: i64 = (0..5).map(|j| sizes[j] * self.values[i][j] * self.values[k][j]).sum();
                s == if i == k { 8 } else { 0 }
            })
        });
        let columns = (0..5).all(|j| {
            let s: i64 = (0..5).map(|i| self.dims[i] * self.values[i][j]).sum();
            s == if j == 0 { 8 } else { 0 }
        });
        rows && columns
    }
}

impl Default for D4CharacterTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Integer polynomials, constant term first, trailing zeros trimmed.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub p: u64,
    pub class: ConjugacyClass,
    /// Residue degree of the primes of the closure above `p`.
    pub f: usize,
    /// `(1 - T^f)^(8/f)`, the inverse local factor of the zeta function of
    /// the closure.
    pub field_side: Vec<i64>,
    /// Product of `det(1 - rho(Frob_p) T)^dim(rho)` over the irreducible
    /// representations.
    pub artin_side: Vec<i64>,
    pub equal: bool,
}

/// Compares both sides of the local Euler factor identity at an admissible
/// prime, as exact integer polynomials in `T = p^-s`.
pub fn local_euler_check(k: &D4Field, p: u64) -> Result<EulerCheck> {
    let record = artin_symbol(k, p)?;
    let class = record.class.expect("admissible records carry a class");
    let pattern = factor_mod_p(&k.poly_mod(p)?)?;
    let f = pattern.degrees().iter().fold(1usize, |acc, &d| acc.lcm(&d));
    let mut one_minus_tf = vec![0i64; f + 1];
    one_minus_tf[0] = 1;
    one_minus_tf[f] = -1;
    let field_side = (0..8 / f).fold(vec![1i64], |acc, _| poly_mul(&acc, &one_minus_tf));

    let table = D4CharacterTable::new();
    let mut artin_side = vec![1i64];
    for i in 0..4 {
        artin_side = poly_mul(&artin_side, &[1, -table.value(i, class)]);
    }
    let m = rho_matrix(class.representative());
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let rho_factor = [1, -(m[0][0] + m[1][1]), det];
    for _ in 0..2 {
        artin_side = poly_mul(&artin_side, &rho_factor);
    }
    let equal = field_side == artin_side;
    Ok(EulerCheck {
        p,
        class,
        f,
        field_side,
        artin_side,
        equal,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaCheckReport {
    pub schema: &'static str,
    pub field: D4Field,
    pub x: f64,
    pub checked: u64,
    pub skipped: Vec<u64>,
    pub failures: Vec<u64>,
}

/// `local_euler_check` at every admissible prime up to `x`.
pub fn zeta_check(k: &D4Field, x: f64) -> Result<ZetaCheckReport> {
    let records = scan_primes(k, x)?;
    let skipped: Vec<u64> = records.iter().filter(|r| !r.admissible).map(|r| r.p).collect();
    let results: Vec<EulerCheck> = records
        .par_iter()
        .filter(|r| r.admissible)
        .map(|r| local_euler_check(k, r.p))
        .collect::<Result<_>>()?;
    Ok(ZetaCheckReport {
        schema: SCHEMA,
        field: k.clone(),
        x,
        checked: results.len() as u64,
        skipped,
        failures: results.iter().filter(|c| !c.equal).map(|c| c.p).collect(),
    })
}

/// `(p, trace rho(Frob_p))` for admissible primes `p <= x`.
pub fn rho_coefficients(k: &D4Field, x: f64) -> Result<Vec<(u64, i64)>> {
    let table = D4CharacterTable::new();
    Ok(scan_primes(k, x)?
        .into_iter()
        .filter_map(|r| r.class.map(|c| (r.p, table.value(4, c))))
        .collect())
}

/// All eight matrices of the representation, for checking the relations.
pub fn rho_image() -> Vec<Mat2> {
    elements().iter().map(|&g| rho_matrix(g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::BiquadraticContext;
    use crate::normcond::phi;
    use crate::quartic::build_field;

    fn k1() -> D4Field {
        let ctx = BiquadraticContext::new(2, 7).unwrap();
        build_field(&ctx, &phi(&ctx).unwrap(), 1).unwrap()
    }

    #[test]
    fn representation_is_a_homomorphism() {
        for g in elements() {
            for h in elements() {
                assert_eq!(rho_matrix(g.compose(h)), mat_mul(&rho_matrix(g), &rho_matrix(h)));
            }
        }
        let mut image = rho_image();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 8);
    }

    #[test]
    fn character_table() {
        let t = D4CharacterTable::new();
        assert!(t.orthogonality_holds());
        assert_eq!(t.values[4], [2, -2, 0, 0, 0]);
        assert_eq!(t.values[1], [1, 1, 1, -1, -1]);
        // characters are class functions
        for g in elements() {
            let c = ConjugacyClass::of(g).unwrap();
            let m = rho_matrix(g);
            assert_eq!(m[0][0] + m[1][1], t.value(4, c));
        }
    }

    #[test]
    fn euler_factor_examples() {
        let k = k1();
        let id = local_euler_check(&k, 103).unwrap();
        assert_eq!(id.class, ConjugacyClass::Id);
        assert_eq!(id.field_side, vec![1, -8, 28, -56, 70, -56, 28, -8, 1]);
        assert!(id.equal);
        let r = local_euler_check(&k, 5).unwrap();
        assert_eq!(r.class, ConjugacyClass::R);
        assert_eq!(r.f, 4);
        assert_eq!(r.field_side, vec![1, 0, 0, 0, -2, 0, 0, 0, 1]);
        assert!(r.equal);
        let r2 = local_euler_check(&k, 31).unwrap();
        assert_eq!(r2.class, ConjugacyClass::R2);
        assert_eq!(r2.field_side, vec![1, 0, -4, 0, 6, 0, -4, 0, 1]);
        assert!(r2.equal);
        assert!(matches!(local_euler_check(&k, 7), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn euler_identity_over_sample_fields() {
        let mut n = 0;
        for (a, b) in [(2, 7), (3, 11), (-1, 2), (5, -1), (2, -7)] {
            let ctx = BiquadraticContext::new(a, b).unwrap();
            let triple = phi(&ctx).unwrap();
            for m in [1u64, 13, 37, 101] {
                let Ok(k) = build_field(&ctx, &triple, m) else { continue };
                let rep = zeta_check(&k, 3000.0).unwrap();
                assert!(rep.failures.is_empty());
                assert!(rep.checked > 400);
                n += 1;
            }
        }
        assert!(n >= 15);
    }

    #[test]
    fn chebotarev_partition() {
        let k = k1();
        let rep = chebotarev_report(&k, 1e5).unwrap();
        let total: u64 = rep.counts.values().sum();
        assert_eq!(total + rep.excluded, 9592 - 1);
        assert_eq!(rep.excluded_primes, vec![7]);
        assert!(rep.max_proportion_deviation < 0.02);
        let lx = (1e5f64).ln();
        let prime_powers: f64 = 9592.0 + 65.0 + 20.0 + 10.0;
        for c in ConjugacyClass::ALL {
            assert!(rep.weighted[&c] <= rep.counts[&c] as f64 * lx + prime_powers * lx);
        }
        // psi over all classes is the Chebyshev function minus excluded primes
        let psi: f64 = rep.weighted.values().sum();
        let mut theta = 0.0;
        for p in crate::arith::prime_sieve(100_000).unwrap().into_iter().skip(1) {
            if p == 7 {
                continue;
            }
            let mut q = p as f64;
            while q <= 1e5 {
                theta += (p as f64).ln();
                q *= p as f64;
            }
        }
        assert!((psi - theta).abs() < 1e-6 * theta);
        assert!(chebotarev_report(&k, 5.0).is_err());
    }

    #[test]
    fn rho_traces() {
        let k = k1();
        let coeffs = rho_coefficients(&k, 2000.0).unwrap();
        for (p, ap) in coeffs {
            let c = artin_symbol(&k, p).unwrap().class.unwrap();
            let expect = match c {
                ConjugacyClass::Id => 2,
                ConjugacyClass::R2 => -2,
                _ => 0,
            };
            assert_eq!(ap, expect);
        }
    }
}
