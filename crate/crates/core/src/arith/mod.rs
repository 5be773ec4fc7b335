//! Exact integer and elementary analytic primitives.
//!
//! Everything here is pure. Tables produced by the sieves are plain owned
//! vectors and can be shared read-only across threads.

mod fastquartic;
mod li;
mod poly;
mod sieve;

pub(crate) use fastquartic::quartic_pattern;
pub use li::{li_offset, log_integral, LI_2};
pub use poly::{factor_mod_p, DegreePattern, PolyModP};
pub use sieve::{
    moebius_sieve, moebius_sieve_with, prime_sieve, prime_sieve_with, squarefree_table,
    squarefree_table_with, Budget,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// True iff no prime square divides `|n|`. Zero is rejected.
pub fn is_squarefree(n: i64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("is_squarefree(0) is undefined".into()));
    }
    Ok(factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1))
}

/// Trial-division factorization; `n = 0` and `n = 1` give an empty list.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    // 6k +- 1 wheel
    let mut p = 5u64;
    let mut step = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient by trial division.
pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// The Kronecker symbol `(d / n)`, extended to all integers `n`.
pub fn kronecker(d: i64, n: i64) -> i8 {
    let d = d as i128;
    let mut n = n as i128;
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut result = 1i8;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (d / n) for odd n > 0
    let mut a = d.rem_euclid(n);
    let mut m = n;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

/// A square-free integer other than 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SquarefreeInt(i64);

impl SquarefreeInt {
    pub fn new(value: i64) -> Result<Self> {
        if value == 0 || value == 1 {
            return Err(Error::InvalidInput(format!(
                "{value} is excluded (must not be 0 or 1)"
            )));
        }
        if !is_squarefree(value)? {
            return Err(Error::NotSquarefree(value));
        }
        Ok(SquarefreeInt(value))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn fundamental_discriminant(self) -> FundamentalDiscriminant {
        fundamental_discriminant(self)
    }
}

impl TryFrom<i64> for SquarefreeInt {
    type Error = Error;
    fn try_from(value: i64) -> Result<Self> {
        SquarefreeInt::new(value)
    }
}

impl fmt::Display for SquarefreeInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Discriminant of `Q(sqrt(c))` for square-free `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FundamentalDiscriminant {
    pub d: i64,
    pub source: SquarefreeInt,
}

impl FundamentalDiscriminant {
    /// The quadratic character `p -> (d / p)`.
    pub fn chi(&self, n: i64) -> i8 {
        kronecker(self.d, n)
    }
}

pub fn fundamental_discriminant(c: SquarefreeInt) -> FundamentalDiscriminant {
    let v = c.get();
    let d = if v.rem_euclid(4) == 1 { v } else { 4 * v };
    FundamentalDiscriminant { d, source: c }
}

/// Floor square root of a nonnegative big integer, or `None` if negative.
pub fn isqrt_big(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        None
    } else {
        Some(n.sqrt())
    }
}

/// `Some(k)` with `k >= 0` and `k^2 = n` when `n` is a perfect square.
pub fn exact_sqrt_big(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    // quadratic residues mod 64 reject most non-squares cheaply
    let low = (n % 64u32).to_u32_digits().1.first().copied().unwrap_or(0);
    if !SQUARE_MOD_64[low as usize] {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    if !SQUARE_MOD_64[(n & 63) as usize] {
        return None;
    }
    let r = (n as u128).sqrt() as i128;
    (r * r == n).then_some(r)
}

pub fn exact_sqrt_u64(n: u64) -> Option<u64> {
    if !SQUARE_MOD_64[(n & 63) as usize] {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

const SQUARE_MOD_64: [bool; 64] = {
    let mut t = [false; 64];
    let mut i = 0;
    while i < 64 {
        t[(i * i) % 64] = true;
        i += 1;
    }
    t
};

/// `gcd(|a|, |b|)` for machine integers.
pub fn gcd_i64(a: i64, b: i64) -> u64 {
    a.unsigned_abs().gcd(&b.unsigned_abs())
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers (first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squarefree_by_trial(n: u64) -> bool {
        let mut d = 2u64;
        while d * d <= n {
            if n % (d * d) == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    fn legendre_by_squares(a: i64, p: i64) -> i8 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(1).unwrap());
        assert!(!is_squarefree(12).unwrap());
        assert!(is_squarefree(105).unwrap());
        assert!(is_squarefree(-30).unwrap());
        assert!(!is_squarefree(-18).unwrap());
        assert!(is_squarefree(0).is_err());
    }

    #[test]
    fn squarefree_matches_trial_division() {
        for n in 1..=100_000u64 {
            assert_eq!(is_squarefree(n as i64).unwrap(), squarefree_by_trial(n), "n = {n}");
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(legendre_by_squares(8, 7), 1);
        assert_eq!(kronecker(28, 7), 0);
        for d in [-7, -4, -3, 5, 8, 12, 28, 56, 1, -1, 0, 2] {
            assert_eq!(kronecker(d, 1), 1);
        }
        assert_eq!(kronecker(0, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(12, 2), 0);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(5, -1), 1);
    }

    #[test]
    fn kronecker_matches_residue_oracle_at_odd_primes() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97] {
            for d in -60..=60 {
                assert_eq!(kronecker(d, p), legendre_by_squares(d, p), "d={d} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_periodic_in_n_for_positive_fundamental() {
        for d in [8i64, 28, 56] {
            for n in 0..2000i64 {
                assert_eq!(kronecker(d, n), kronecker(d, n + d), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn fundamental_discriminant_rule() {
        let fd = |c: i64| SquarefreeInt::new(c).unwrap().fundamental_discriminant().d;
        assert_eq!(fd(2), 8);
        assert_eq!(fd(7), 28);
        assert_eq!(fd(-3), -3);
        assert_eq!(fd(-1), -4);
        assert_eq!(fd(5), 5);
        assert_eq!(fd(14), 56);
        for c in -200i64..=200 {
            if let Ok(s) = SquarefreeInt::new(c) {
                let d = s.fundamental_discriminant().d;
                assert!(matches!(d.rem_euclid(4), 0 | 1));
            }
        }
    }

    #[test]
    fn squarefree_int_rejects_excluded_values() {
        assert!(SquarefreeInt::new(0).is_err());
        assert!(SquarefreeInt::new(1).is_err());
        assert!(matches!(SquarefreeInt::new(8), Err(Error::NotSquarefree(8))));
        assert_eq!(SquarefreeInt::new(-1).unwrap().get(), -1);
    }

    #[test]
    fn exact_square_roots() {
        for k in 0..2000i64 {
            assert_eq!(exact_sqrt_i128((k * k) as i128), Some(k as i128));
            assert_eq!(exact_sqrt_big(&BigInt::from(k * k)), Some(BigInt::from(k)));
            if k > 1 {
                assert_eq!(exact_sqrt_i128((k * k + 1) as i128), None);
                assert_eq!(exact_sqrt_big(&BigInt::from(k * k - 1)), None);
            }
        }
        assert_eq!(exact_sqrt_i128(-4), None);
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(14), 6);
        assert_eq!(euler_phi(30), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(97), 96);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(10_000))]
            #[test]
            fn kronecker_is_multiplicative(
                d_idx in 0usize..8,
                m in -100_000i64..100_000,
                n in -100_000i64..100_000,
            ) {
                let d = [-4i64, -3, 5, 8, -8, 12, 28, 56][d_idx];
                prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
            }
        }
    }

    #[test]
    fn miller_rabin_matches_sieve() {
        let primes = prime_sieve(200_000).unwrap();
        let mut it = primes.iter().peekable();
        for n in 0..=200_000u64 {
            let expected = it.peek() == Some(&&n);
            if expected {
                it.next();
            }
            assert_eq!(is_prime_u64(n), expected, "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(4_294_967_297));
    }
}
