use std::fmt;

use serde::Serialize;

use crate::arith::{gcd_i64, FundamentalDiscriminant, SquarefreeInt};
use crate::error::{Error, Result};

/// One of the three quadratic subfields of `Q(sqrt(a), sqrt(b))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum QuadraticSlot {
    /// `Q(sqrt(a))`
    A,
    /// `Q(sqrt(b))`
    B,
    /// `Q(sqrt(ab) / xi)`, i.e. `Q(sqrt(ab / xi^2))`
    C3,
}

impl QuadraticSlot {
    pub const ALL: [QuadraticSlot; 3] = [QuadraticSlot::A, QuadraticSlot::B, QuadraticSlot::C3];

    /// The slot that is neither `self` nor `other`.
    pub fn third(self, other: QuadraticSlot) -> QuadraticSlot {
        assert_ne!(self, other, "slots must differ");
        Self::ALL
            .into_iter()
            .find(|&s| s != self && s != other)
            .expect("three slots")
    }
}

impl fmt::Display for QuadraticSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadraticSlot::A => "a",
            QuadraticSlot::B => "b",
            QuadraticSlot::C3 => "ab/xi^2",
        })
    }
}

/// The fixed biquadratic field `Q(sqrt(a), sqrt(b))` and its three quadratic
/// subfields with their discriminants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BiquadraticContext {
    pub a: SquarefreeInt,
    pub b: SquarefreeInt,
    /// `gcd(|a|, |b|)`
    pub xi: u64,
    /// `ab / xi^2`
    pub c3: SquarefreeInt,
    pub disc_a: FundamentalDiscriminant,
    pub disc_b: FundamentalDiscriminant,
    pub disc_c3: FundamentalDiscriminant,
    /// Largest absolute discriminant of the three quadratic subfields.
    pub q_max: u64,
}

impl BiquadraticContext {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let a = SquarefreeInt::new(a)?;
        let b = SquarefreeInt::new(b)?;
        if a == b {
            return Err(Error::InvalidInput(format!(
                "a and b must be distinct (both are {a})"
            )));
        }
        let xi = gcd_i64(a.get(), b.get());
        let prod = (a.get() as i128) * (b.get() as i128) / (xi as i128 * xi as i128);
        let c3 = i64::try_from(prod)
            .map_err(|_| Error::InvalidInput("ab/xi^2 overflows 64 bits".into()))
            .and_then(SquarefreeInt::new)?;
        let disc_a = a.fundamental_discriminant();
        let disc_b = b.fundamental_discriminant();
        let disc_c3 = c3.fundamental_discriminant();
        let q_max = [disc_a.d, disc_b.d, disc_c3.d]
            .iter()
            .map(|d| d.unsigned_abs())
            .max()
            .unwrap_or(0);
        Ok(BiquadraticContext {
            a,
            b,
            xi,
            c3,
            disc_a,
            disc_b,
            disc_c3,
            q_max,
        })
    }

    pub fn value(&self, slot: QuadraticSlot) -> SquarefreeInt {
        match slot {
            QuadraticSlot::A => self.a,
            QuadraticSlot::B => self.b,
            QuadraticSlot::C3 => self.c3,
        }
    }

    pub fn disc(&self, slot: QuadraticSlot) -> FundamentalDiscriminant {
        match slot {
            QuadraticSlot::A => self.disc_a,
            QuadraticSlot::B => self.disc_b,
            QuadraticSlot::C3 => self.disc_c3,
        }
    }

    /// `|ab|`, the modulus of the coprimality condition on family parameters.
    pub fn abs_ab(&self) -> u64 {
        self.a.get().unsigned_abs() * self.b.get().unsigned_abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_2_7() {
        let ctx = BiquadraticContext::new(2, 7).unwrap();
        assert_eq!(ctx.xi, 1);
        assert_eq!(ctx.c3.get(), 14);
        assert_eq!((ctx.disc_a.d, ctx.disc_b.d, ctx.disc_c3.d), (8, 28, 56));
        assert_eq!(ctx.q_max, 56);
    }

    #[test]
    fn context_with_common_factor() {
        let ctx = BiquadraticContext::new(6, 10).unwrap();
        assert_eq!(ctx.xi, 2);
        assert_eq!(ctx.c3.get(), 15);
        let ctx = BiquadraticContext::new(-3, 6).unwrap();
        assert_eq!(ctx.c3.get(), -2);
        assert_eq!(ctx.q_max, 24);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(BiquadraticContext::new(2, 2).is_err());
        assert!(BiquadraticContext::new(1, 2).is_err());
        assert!(BiquadraticContext::new(4, 3).is_err());
        assert!(BiquadraticContext::new(0, 3).is_err());
    }

    #[test]
    fn third_slot() {
        use QuadraticSlot::*;
        assert_eq!(A.third(B), C3);
        assert_eq!(C3.third(A), B);
        assert_eq!(B.third(C3), A);
    }
}
