//! Dense univariate polynomials over a prime field `F_p`, just enough for
//! distinct-degree factorization of small-degree polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    p: u64,
    /// Coefficients from the constant term upward; never has trailing zeros.
    coeffs: Vec<u64>,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl PolyModP {
    /// Reduces signed coefficients (constant term first) modulo `p`.
    /// `p` must be an odd prime; only oddness is checked here.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Result<Self> {
        Self::check_modulus(p)?;
        let pi = p as i128;
        let c = coeffs
            .iter()
            .map(|&v| (v as i128).rem_euclid(pi) as u64)
            .collect();
        Ok(Self::normalized(p, c))
    }

    pub fn from_bigint(p: u64, coeffs: &[BigInt]) -> Result<Self> {
        Self::check_modulus(p)?;
        let pb = BigInt::from(p);
        let c = coeffs
            .iter()
            .map(|v| {
                let r = ((v % &pb) + &pb) % &pb;
                r.to_u64().expect("residue fits in u64")
            })
            .collect();
        Ok(Self::normalized(p, c))
    }

    fn check_modulus(p: u64) -> Result<()> {
        if p < 3 || p % 2 == 0 || p > (1 << 62) {
            return Err(Error::InvalidInput(format!(
                "modulus {p} must be an odd prime below 2^62"
            )));
        }
        Ok(())
    }

    fn normalized(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn x(p: u64) -> Self {
        PolyModP {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let li = inv(lead, self.p);
                let c = self.coeffs.iter().map(|&v| mulmod(v, li, self.p)).collect();
                PolyModP { p: self.p, coeffs: c }
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| mulmod(v, i as u64 % self.p, self.p))
            .collect();
        Self::normalized(self.p, c)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::normalized(self.p, c)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::normalized(self.p, Vec::new());
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::normalized(self.p, c)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = inv(divisor.coeffs[dd], self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::normalized(self.p, Vec::new()), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let coef = mulmod(rem[i], lead_inv, self.p);
            if coef == 0 {
                continue;
            }
            quot[i - dd] = coef;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = (rem[k] + self.p - mulmod(coef, dc, self.p)) % self.p;
            }
        }
        rem.truncate(dd);
        (Self::normalized(self.p, quot), Self::normalized(self.p, rem))
    }

    fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut acc = Self::normalized(self.p, vec![1]).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Number of distinct roots in `F_p`.
    pub fn root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(_) => {
                let f = self.monic();
                let xp = Self::x(self.p).pow_mod(self.p, &f);
                let g = xp.sub(&Self::x(self.p)).gcd(&f);
                g.degree().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

/// Degrees of the irreducible factors of a square-free polynomial, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreePattern(Vec<usize>);

impl DegreePattern {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        DegreePattern(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    /// `(degree, number of factors of that degree)`, ascending by degree.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &d in &self.0 {
            match out.last_mut() {
                Some((deg, n)) if *deg == d => *n += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn linear_factors(&self) -> usize {
        self.0.iter().filter(|&&d| d == 1).count()
    }

    /// Least common multiple of the factor degrees.
    pub fn lcm(&self) -> usize {
        use num_integer::Integer;
        self.0.iter().fold(1, |acc, &d| acc.lcm(&d))
    }
}

impl fmt::Display for DegreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Distinct-degree factorization. Rejects polynomials that are zero,
/// constant or not square-free modulo `p`.
pub fn factor_mod_p(f: &PolyModP) -> Result<DegreePattern> {
    let deg = f
        .degree()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::InvalidInput("cannot factor a constant polynomial".into()))?;
    if !f.is_squarefree() {
        return Err(Error::InvalidInput(format!("{f} is not square-free")));
    }
    let p = f.p;
    let x = PolyModP::x(p);
    let mut rest = f.monic();
    let mut frob = x.clone();
    let mut degrees = Vec::with_capacity(deg);
    let mut d = 1usize;
    while let Some(rd) = rest.degree() {
        if rd == 0 {
            break;
        }
        if rd < 2 * d {
            degrees.push(rd);
            break;
        }
        frob = frob.pow_mod(p, &rest);
        let g = frob.sub(&x).gcd(&rest);
        if let Some(gd) = g.degree().filter(|&gd| gd > 0) {
            degrees.extend(std::iter::repeat_n(d, gd / d));
            rest = rest.div_rem(&g).0;
            frob = frob.rem(&rest);
        }
        d += 1;
    }
    Ok(DegreePattern::new(degrees))
}
