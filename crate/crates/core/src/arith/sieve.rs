use num_integer::Roots;

use crate::error::{Error, Result};

/// Size limits for table-producing sieves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest bound accepted by the segmented prime sieve.
    pub max_prime_bound: u64,
    /// Largest number of entries in a dense per-integer table.
    pub max_table_len: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_prime_bound: 100_000_000_000,
            max_table_len: 1_000_000_000,
        }
    }
}

const SEGMENT_ODDS: usize = 1 << 17;

fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes `<= x`, ascending.
pub fn prime_sieve(x: u64) -> Result<Vec<u64>> {
    prime_sieve_with(x, &Budget::default())
}

/// Segmented odd-only sieve of Eratosthenes.
pub fn prime_sieve_with(x: u64, budget: &Budget) -> Result<Vec<u64>> {
    if x < 2 {
        return Err(Error::InvalidInput(format!("prime sieve bound {x} < 2")));
    }
    if x > budget.max_prime_bound {
        return Err(Error::ResourceBudget {
            requested: x,
            limit: budget.max_prime_bound,
        });
    }
    let base = small_primes(x.sqrt());
    let mut primes = Vec::with_capacity(estimate_pi(x));
    primes.push(2);
    let mut segment = vec![true; SEGMENT_ODDS];
    let mut lo = 3u64;
    while lo <= x {
        // segment covers lo, lo + 2, ..., hi (all odd)
        let span = SEGMENT_ODDS as u64;
        let hi = (lo + 2 * (span - 1)).min(if x % 2 == 0 { x - 1 } else { x });
        let len = ((hi - lo) / 2 + 1) as usize;
        segment[..len].fill(true);
        for &q in base.iter().skip(1) {
            if q * q > hi {
                break;
            }
            let mut start = (q * q).max(lo.div_ceil(q) * q);
            if start % 2 == 0 {
                start += q;
            }
            let mut j = start;
            while j <= hi {
                segment[((j - lo) / 2) as usize] = false;
                j += 2 * q;
            }
        }
        primes.extend(
            segment[..len]
                .iter()
                .enumerate()
                .filter(|(_, &is_p)| is_p)
                .map(|(i, _)| lo + 2 * i as u64),
        );
        lo = hi + 2;
    }
    Ok(primes)
}

fn estimate_pi(x: u64) -> usize {
    if x < 17 {
        return 8;
    }
    let xf = x as f64;
    (1.26 * xf / xf.ln()) as usize
}

fn check_table(z: u64, budget: &Budget) -> Result<usize> {
    if z < 1 {
        return Err(Error::InvalidInput("table bound must be >= 1".into()));
    }
    if z > budget.max_table_len {
        return Err(Error::ResourceBudget {
            requested: z,
            limit: budget.max_table_len,
        });
    }
    Ok(z as usize)
}

/// `mu[m]` for `0 <= m <= z`; `mu[0]` is set to 0.
pub fn moebius_sieve(z: u64) -> Result<Vec<i8>> {
    moebius_sieve_with(z, &Budget::default())
}

pub fn moebius_sieve_with(z: u64, budget: &Budget) -> Result<Vec<i8>> {
    let n = check_table(z, budget)?;
    let mut mu = vec![1i8; n + 1];
    mu[0] = 0;
    if n >= 2 {
        for p in prime_sieve_with(z, budget)? {
            let p = p as usize;
            for j in (p..=n).step_by(p) {
                mu[j] = -mu[j];
            }
            if let Some(pp) = p.checked_mul(p) {
                for j in (pp..=n).step_by(pp) {
                    mu[j] = 0;
                }
            }
        }
    }
    Ok(mu)
}

/// `table[m]` is true iff `m` is square-free, for `1 <= m <= z`.
pub fn squarefree_table(z: u64) -> Result<Vec<bool>> {
    squarefree_table_with(z, &Budget::default())
}

pub fn squarefree_table_with(z: u64, budget: &Budget) -> Result<Vec<bool>> {
    let n = check_table(z, budget)?;
    let mut table = vec![true; n + 1];
    table[0] = false;
    let root = z.sqrt();
    if root >= 2 {
        for p in prime_sieve_with(root, budget)? {
            let pp = (p * p) as usize;
            for j in (pp..=n).step_by(pp) {
                table[j] = false;
            }
        }
    }
    Ok(table)
}
