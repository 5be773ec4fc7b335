//! Norm criteria for the existence of D4 fields over a biquadratic field, and
//! the canonical least generator triple `(g0, h0, n0)`.
//!
//! Rational solvability of `x^2 - a y^2 = c` is decided with Hilbert symbols
//! at the real place and at every prime dividing `2ac`. The integer search
//! for the least triple walks `n = 1, 2, ...` and, for each `n`, the bounded
//! range of `h` that must contain the least positive solution of
//! `g^2 - a h^2 = n^2 c`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{exact_sqrt_i128, factor_u64, kronecker, SquarefreeInt};
use crate::context::{BiquadraticContext, QuadraticSlot};
use crate::error::{Error, Result};

/// Limits on the least-triple search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest `n` tried before giving up.
    pub max_n: u64,
    /// Total number of candidate `h` values examined per call.
    pub max_h_steps: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_n: 10_000,
            max_h_steps: 200_000_000,
        }
    }
}

/// Hilbert symbol `(a, b)_p` for nonzero integers and a prime `p`.
pub fn hilbert_symbol(a: i64, b: i64, p: u64) -> i8 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    let split = |x: i64| {
        let mut u = x as i128;
        let mut e = 0u32;
        while u % p as i128 == 0 {
            u /= p as i128;
            e += 1;
        }
        (e, u)
    };
    let (alpha, u) = split(a);
    let (beta, v) = split(b);
    if p == 2 {
        let eps = |x: i128| (x.rem_euclid(4) == 3) as u32;
        let omega = |x: i128| matches!(x.rem_euclid(8), 3 | 5) as u32;
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let pi = p as i64;
        let mut s: i8 = if alpha * beta % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
        if beta % 2 == 1 {
            s *= kronecker(u.rem_euclid(p as i128) as i64, pi);
        }
        if alpha % 2 == 1 {
            s *= kronecker(v.rem_euclid(p as i128) as i64, pi);
        }
        s
    }
}

/// Whether `x^2 - a y^2 = c` has a rational solution, for any nonzero `c`.
pub(crate) fn norm_form_solvable(c: i64, a: i64) -> bool {
    if a < 0 && c < 0 {
        return false;
    }
    let mut primes: Vec<u64> = vec![2];
    for n in [a, c] {
        primes.extend(factor_u64(n.unsigned_abs()).into_iter().map(|(p, _)| p));
    }
    primes.sort_unstable();
    primes.dedup();
    primes.into_iter().all(|p| hilbert_symbol(a, c, p) == 1)
}

/// True iff `b` is the norm of an element of `Q(sqrt(a))`.
pub fn is_norm(b: i64, a: SquarefreeInt) -> Result<bool> {
    if b == 0 {
        return Err(Error::InvalidInput("0 is not a candidate norm".into()));
    }
    if b == a.get() {
        return Err(Error::InvalidInput(format!(
            "a = b = {b} does not describe a biquadratic field"
        )));
    }
    Ok(norm_form_solvable(b, a.get()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormCriterionResult {
    /// `b` is a norm from `Q(sqrt(a))`.
    pub co1: bool,
    /// `-b` is a norm from `Q(sqrt(a))`.
    pub co2: bool,
    /// `-a` is a norm from `Q(sqrt(b))`.
    pub co3: bool,
    pub condition1234: bool,
}

pub fn check_condition_1234(a: SquarefreeInt, b: SquarefreeInt) -> Result<NormCriterionResult> {
    if a == b {
        return Err(Error::InvalidInput(format!("a = b = {a}")));
    }
    let co1 = norm_form_solvable(b.get(), a.get());
    let co2 = norm_form_solvable(-b.get(), a.get());
    let co3 = norm_form_solvable(-a.get(), b.get());
    Ok(NormCriterionResult {
        co1,
        co2,
        co3,
        condition1234: co1 || co2 || co3,
    })
}

/// Which of the three generator equations a triple solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Subfamily {
    /// `g^2 - h^2 a = n^2 b`
    Ghnn,
    /// `g^2 - h^2 a = n^2 ab/xi^2`
    Sub1,
    /// `g^2 - h^2 b = n^2 ab/xi^2`
    Sub2,
}

impl Subfamily {
    pub fn base(self) -> QuadraticSlot {
        match self {
            Subfamily::Ghnn | Subfamily::Sub1 => QuadraticSlot::A,
            Subfamily::Sub2 => QuadraticSlot::B,
        }
    }

    pub fn target(self) -> QuadraticSlot {
        match self {
            Subfamily::Ghnn => QuadraticSlot::B,
            Subfamily::Sub1 | Subfamily::Sub2 => QuadraticSlot::C3,
        }
    }
}

/// Least solution of `g^2 - base h^2 = n^2 target`: `n` least, then `h`
/// least, then `g >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormSolution {
    pub g: BigInt,
    pub h: BigInt,
    pub n: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTriple {
    pub g0: BigInt,
    pub h0: BigInt,
    pub n0: BigInt,
    pub subfamily: Subfamily,
}

impl GeneratorTriple {
    /// Checks `g0^2 - h0^2 base = n0^2 target` exactly.
    pub fn satisfies(&self, ctx: &BiquadraticContext) -> bool {
        let base = BigInt::from(ctx.value(self.subfamily.base()).get());
        let target = BigInt::from(ctx.value(self.subfamily.target()).get());
        &self.g0 * &self.g0 - &self.h0 * &self.h0 * base == &self.n0 * &self.n0 * target
    }
}

/// Fundamental solution `(x1, y1)` of `x^2 - d y^2 = 1` from the continued
/// fraction of `sqrt(d)`; `d > 0` must not be a square.
pub fn pell_fundamental(d: u64) -> (BigInt, BigInt) {
    let a0 = d.sqrt();
    assert!(a0 * a0 != d, "d = {d} is a perfect square");
    let dd = BigInt::from(d);
    let (mut m, mut q, mut a) = (0u64, 1u64, a0);
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::from(0), BigInt::one());
    while &h * &h - &dd * &k * &k != BigInt::one() {
        m = q * a - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        let h_next = BigInt::from(a) * &h + &h_prev;
        let k_next = BigInt::from(a) * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    (h, k)
}

/// Upper bound on the least positive `y` with `x^2 - d y^2 = nn` solvable,
/// valid whenever some solution with `y != 0` exists (`d > 0` non-square,
/// `pell` its fundamental unit).
fn positive_y_bound(nn: i128, pell: &(BigInt, BigInt)) -> BigInt {
    let (x1, y1) = pell;
    let n_abs = BigInt::from(nn.unsigned_abs());
    // Each class of solutions has a member with
    //   y <= y1 sqrt(N / (2(x1 + 1)))   for N > 0,
    //   y <= y1 sqrt(|N| / (2(x1 - 1))) for N < 0.
    let denom: BigInt = if nn > 0 { x1 + 1 } else { x1 - 1 } * 2;
    let radicand: BigInt = y1 * y1 * &n_abs / denom;
    let mut bound = radicand.sqrt();
    // A class whose least member has y = 0 next reaches y = sqrt(N) y1.
    if nn > 0 {
        if let Some(k) = exact_sqrt_i128(nn) {
            bound = bound.max(BigInt::from(k) * y1);
        }
    }
    bound
}

/// Least triple for `g^2 - base h^2 = n^2 target`, with the default budget.
pub fn minimal_triple(base: SquarefreeInt, target: i64) -> Result<NormSolution> {
    minimal_triple_with(base, target, &SearchBudget::default())
}

pub fn minimal_triple_with(
    base: SquarefreeInt,
    target: i64,
    budget: &SearchBudget,
) -> Result<NormSolution> {
    if !is_norm(target, base)? {
        return Err(Error::Unsolvable {
            base: base.get(),
            target,
        });
    }
    let a = base.get() as i128;
    let t = target as i128;
    let pell = (a > 0).then(|| pell_fundamental(a as u64));
    let mut steps = 0u64;
    for n in 1..=budget.max_n {
        let nn = (n as i128)
            .checked_mul(n as i128)
            .and_then(|v| v.checked_mul(t))
            .ok_or_else(|| Error::SearchBudget("n^2 * target overflows 128 bits".into()))?;
        let h_max: u128 = if a < 0 {
            if nn <= 0 {
                continue;
            }
            (nn / -a).unsigned_abs().sqrt()
        } else {
            let bound = positive_y_bound(nn, pell.as_ref().expect("a > 0"));
            match bound.to_u128() {
                Some(v) => v,
                None => {
                    return Err(Error::SearchBudget(format!(
                        "h range at n = {n} exceeds 128 bits"
                    )))
                }
            }
        };
        for h in 1..=h_max {
            steps += 1;
            if steps > budget.max_h_steps {
                return Err(Error::SearchBudget(format!(
                    "more than {} candidate h values examined (reached n = {n})",
                    budget.max_h_steps
                )));
            }
            let h = h as i128;
            let gg = h
                .checked_mul(h)
                .and_then(|v| v.checked_mul(a))
                .and_then(|v| v.checked_add(nn))
                .ok_or_else(|| Error::SearchBudget("g^2 overflows 128 bits".into()))?;
            if let Some(g) = exact_sqrt_i128(gg) {
                return Ok(NormSolution {
                    g: BigInt::from(g),
                    h: BigInt::from(h),
                    n: BigInt::from(n),
                });
            }
        }
    }
    Err(Error::SearchBudget(format!(
        "no solution with n <= {}",
        budget.max_n
    )))
}

/// The canonical triple attached to the ordered pair `(a, b)`.
pub fn phi(ctx: &BiquadraticContext) -> Result<GeneratorTriple> {
    phi_with(ctx, &SearchBudget::default())
}

pub fn phi_with(ctx: &BiquadraticContext, budget: &SearchBudget) -> Result<GeneratorTriple> {
    let (a, b, c3) = (ctx.a, ctx.b, ctx.c3);
    let subfamily = if norm_form_solvable(b.get(), a.get()) {
        Subfamily::Ghnn
    } else if norm_form_solvable(c3.get(), a.get()) {
        Subfamily::Sub1
    } else if norm_form_solvable(c3.get(), b.get()) {
        Subfamily::Sub2
    } else {
        return Err(Error::EmptyFamily {
            a: a.get(),
            b: b.get(),
        });
    };
    let base = ctx.value(subfamily.base());
    let target = ctx.value(subfamily.target()).get();
    let sol = minimal_triple_with(base, target, budget)?;
    Ok(GeneratorTriple {
        g0: sol.g,
        h0: sol.h,
        n0: sol.n,
        subfamily,
    })
}
