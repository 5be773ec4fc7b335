//! Frobenius classes in the Galois closure of a D4 field at unramified odd
//! primes, read off from three Kronecker symbols and the root count of the
//! defining quartic, then cross-checked against its factorization pattern.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, kronecker, prime_sieve_with, quartic_pattern, Budget};
use crate::error::{Error, Result};
use crate::group::ConjugacyClass;
use crate::quartic::D4Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusRecord {
    pub p: u64,
    /// Kronecker symbol of the discriminant of `Q(sqrt(base target))`.
    pub chi1: i8,
    /// Of `Q(sqrt(base))`.
    pub chi2: i8,
    /// Of `Q(sqrt(target))`.
    pub chi3: i8,
    /// Distinct roots of the quartic modulo `p`.
    pub root_count: usize,
    /// `None` for inadmissible primes.
    pub class: Option<ConjugacyClass>,
    pub admissible: bool,
}

/// Per-field data reused across primes.
struct Prepared<'a> {
    field: &'a D4Field,
    discs: [i64; 3],
    poly: [BigInt; 5],
}

impl<'a> Prepared<'a> {
    fn new(field: &'a D4Field) -> Self {
        let ctx = &field.context;
        Prepared {
            field,
            discs: [
                ctx.disc(field.excluded()).d,
                ctx.disc(field.base).d,
                ctx.disc(field.target).d,
            ],
            poly: field.poly(),
        }
    }

    fn residue(&self, i: usize, p: u64) -> u64 {
        let r = &self.poly[i] % p;
        let r = if r < BigInt::from(0) { r + p } else { r };
        r.to_u64().expect("residue below p")
    }

    fn record(&self, p: u64) -> Result<FrobeniusRecord> {
        let pi = p as i64;
        let [chi1, chi2, chi3] = self.discs.map(|d| kronecker(d, pi));
        let admissible = self.field.is_admissible(p);
        if !admissible {
            return Ok(FrobeniusRecord {
                p,
                chi1,
                chi2,
                chi3,
                root_count: self.field.poly_mod(p)?.root_count(),
                class: None,
                admissible,
            });
        }
        let f = [0, 1, 2, 3].map(|i| self.residue(i, p));
        let pattern = quartic_pattern(p, f).ok_or_else(|| Error::Inconsistent {
            p,
            detail: "quartic is not square-free at an admissible prime".into(),
        })?;
        let root_count = pattern.linear_factors();
        let class = ConjugacyClass::from_symbols([chi1, chi2, chi3], root_count > 0).ok_or_else(|| {
            Error::Inconsistent {
                p,
                detail: format!("symbol pattern {:?} matches no class", [chi1, chi2, chi3]),
            }
        })?;
        if root_count != class.fixed_points() || pattern.degrees() != class.cycle_type() {
            return Err(Error::Inconsistent {
                p,
                detail: format!(
                    "class {class} has cycle type {:?}, quartic factors as {pattern}",
                    class.cycle_type()
                ),
            });
        }
        Ok(FrobeniusRecord {
            p,
            chi1,
            chi2,
            chi3,
            root_count,
            class: Some(class),
            admissible,
        })
    }
}

/// Frobenius class of `p` in the closure of `k`; `p` must be an admissible
/// prime.
pub fn artin_symbol(k: &D4Field, p: u64) -> Result<FrobeniusRecord> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if !k.is_admissible(p) {
        return Err(Error::Inadmissible { p });
    }
    Prepared::new(k).record(p)
}

/// One record per odd prime `p <= x`, ascending.
pub fn scan_primes(k: &D4Field, x: f64) -> Result<Vec<FrobeniusRecord>> {
    scan_primes_with(k, x, &Budget::default())
}

pub fn scan_primes_with(k: &D4Field, x: f64, budget: &Budget) -> Result<Vec<FrobeniusRecord>> {
    if !(x.is_finite() && x >= 2.0) {
        return Err(Error::InvalidInput(format!("scan bound must be >= 2, got {x}")));
    }
    let primes = prime_sieve_with(x.floor() as u64, budget)?;
    let prep = Prepared::new(k);
    primes[1..]
        .par_iter()
        .map(|&p| prep.record(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::BiquadraticContext;
    use crate::normcond::phi;
    use crate::arith::factor_mod_p;
    use crate::quartic::build_field;

    fn k1() -> D4Field {
        let ctx = BiquadraticContext::new(2, 7).unwrap();
        build_field(&ctx, &phi(&ctx).unwrap(), 1).unwrap()
    }

    /// Legendre symbol by listing the squares modulo p.
    fn legendre_oracle(a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as u64;
        if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn p5_is_class_r() {
        let r = artin_symbol(&k1(), 5).unwrap();
        assert_eq!((r.chi1, r.chi2, r.chi3), (1, -1, -1));
        assert_eq!((legendre_oracle(56, 5), legendre_oracle(8, 5), legendre_oracle(28, 5)), (1, -1, -1));
        assert_eq!(r.class, Some(ConjugacyClass::R));
        assert_eq!(r.root_count, 0);
    }

    #[test]
    fn p31_and_p103() {
        let r = artin_symbol(&k1(), 31).unwrap();
        assert_eq!((r.chi1, r.chi2, r.chi3), (1, 1, 1));
        assert_eq!(r.root_count, 0);
        assert_eq!(r.class, Some(ConjugacyClass::R2));
        let r = artin_symbol(&k1(), 103).unwrap();
        assert_eq!(r.root_count, 4);
        assert_eq!(r.class, Some(ConjugacyClass::Id));
    }

    #[test]
    fn inadmissible_and_invalid_primes() {
        assert!(matches!(artin_symbol(&k1(), 7), Err(Error::Inadmissible { p: 7 })));
        assert!(matches!(artin_symbol(&k1(), 2), Err(Error::Inadmissible { p: 2 })));
        assert!(matches!(artin_symbol(&k1(), 9), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn scan_to_ten() {
        let recs = scan_primes(&k1(), 10.0).unwrap();
        let ps: Vec<u64> = recs.iter().map(|r| r.p).collect();
        assert_eq!(ps, [3, 5, 7]);
        assert!(recs[0].admissible && recs[1].admissible);
        assert!(!recs[2].admissible && recs[2].class.is_none());
        assert_eq!(recs[0].class, Some(ConjugacyClass::RS));
    }

    #[test]
    fn scan_partition_and_characters() {
        let k = k1();
        let recs = scan_primes(&k, 1e5).unwrap();
        assert_eq!(recs.len(), 9592 - 1);
        let mut counts = [0usize; 5];
        let mut excluded = 0;
        for r in &recs {
            match r.class {
                Some(c) => {
                    counts[c as usize] += 1;
                    assert_eq!(r.chi1 * r.chi2 * r.chi3, 1);
                    assert_eq!(r.root_count, c.fixed_points());
                }
                None => excluded += 1,
            }
        }
        assert_eq!(counts.iter().sum::<usize>() + excluded, recs.len());
        assert_eq!(excluded, 1);
        // quadratic splitting: chi2 = +1 iff x^2 - 2 has a root
        for r in recs.iter().filter(|r| r.admissible).take(10_000) {
            let has_root = legendre_oracle(2, r.p) == 1;
            assert_eq!(r.chi2 == 1, has_root, "p = {}", r.p);
        }
    }

    #[test]
    fn sampled_fields_are_consistent() {
        let mut fields = Vec::new();
        for (a, b) in [(2, 7), (3, 11), (-1, 2), (5, -1), (2, -7), (6, 7), (-3, 7)] {
            let ctx = BiquadraticContext::new(a, b).unwrap();
            let triple = phi(&ctx).unwrap();
            for m in [1u64, 5, 17, 31] {
                if let Ok(k) = build_field(&ctx, &triple, m) {
                    fields.push(k);
                }
            }
        }
        assert!(fields.len() >= 20);
        for k in fields.iter().take(20) {
            // classification errors would surface as Inconsistent
            let recs = scan_primes(k, 2e4).unwrap();
            for r in recs.iter().filter(|r| r.admissible) {
                let f = k.poly_mod(r.p).unwrap();
                let pat = factor_mod_p(&f).unwrap();
                assert_eq!(pat.degrees(), r.class.unwrap().cycle_type());
                assert_eq!(f.root_count(), r.root_count);
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let k = k1();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| scan_primes(&k, 3e4).unwrap());
        let b = four.install(|| scan_primes(&k, 3e4).unwrap());
        assert_eq!(a, b);
    }
}
