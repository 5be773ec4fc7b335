//! Single quartic fields `K = Q(sqrt(g + h sqrt(d)))` inside a fixed
//! biquadratic context: Galois type, invariants, comparison and the subfield
//! lattice of the Galois closure.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{exact_sqrt_big, exact_sqrt_i128, PolyModP, SquarefreeInt};
use crate::bigjson;
use crate::context::{BiquadraticContext, QuadraticSlot};
use crate::error::{Error, Result};
use crate::group::{quadratic_fixers, ConjugacyClass, Perm, Subgroup};
use crate::normcond::GeneratorTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GaloisType {
    K4,
    C4,
    D4,
}

impl fmt::Display for GaloisType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaloisType::K4 => "K4",
            GaloisType::C4 => "C4",
            GaloisType::D4 => "D4",
        })
    }
}

/// `x^4 - 2g x^2 + (g^2 - h^2 d)` factors over `Q`.
fn is_reducible(g: &BigInt, c0: &BigInt) -> bool {
    // d is never a square, so there is no factorization (x^2 - u)(x^2 - v);
    // the remaining shape is (x^2 + t x + k)(x^2 - t x + k) with k^2 = c0.
    let Some(k) = exact_sqrt_big(c0) else {
        return false;
    };
    [g + &k, g - &k]
        .iter()
        .any(|s| exact_sqrt_big(&(s * 2)).is_some())
}

/// Galois group of the closure of `Q(sqrt(g + h sqrt(base)))`, decided by
/// whether `g^2 - h^2 base` is a square, `base` times a square, or neither.
pub fn classify_galois(base: SquarefreeInt, g: &BigInt, h: &BigInt) -> Result<GaloisType> {
    if h.is_zero() {
        return Err(Error::InvalidInput("h must be nonzero".into()));
    }
    let d = BigInt::from(base.get());
    let c0 = g * g - h * h * &d;
    if is_reducible(g, &c0) {
        return Err(Error::Reducible {
            base: base.get(),
            g: g.to_string(),
            h: h.to_string(),
        });
    }
    if exact_sqrt_big(&c0).is_some() {
        return Ok(GaloisType::K4);
    }
    let (q, r) = c0.div_rem(&d);
    if r.is_zero() && exact_sqrt_big(&q).is_some() {
        return Ok(GaloisType::C4);
    }
    Ok(GaloisType::D4)
}

/// A D4 quartic field `Q(sqrt(g + h sqrt(base)))` whose closure contains the
/// context's biquadratic field, with `g^2 - h^2 base = n^2 target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D4Field {
    pub context: BiquadraticContext,
    pub base: QuadraticSlot,
    pub target: QuadraticSlot,
    pub g: BigInt,
    /// Nonzero; a negative value denotes the conjugate field.
    pub h: BigInt,
    pub n: BigInt,
    /// Family parameter, when the field was built from a generator triple.
    pub m: Option<u64>,
    /// `256 base^2 |target| n^2`
    pub disc_bound: BigInt,
    pub galois_type: GaloisType,
}

impl D4Field {
    /// The field `Q(sqrt(g + h sqrt(base)))`; `g^2 - h^2 base` must be `n^2`
    /// times one of the two other quadratic values of the context.
    pub fn from_generator(
        ctx: &BiquadraticContext,
        base: QuadraticSlot,
        g: BigInt,
        h: BigInt,
    ) -> Result<D4Field> {
        let d = ctx.value(base);
        let galois_type = classify_galois(d, &g, &h)?;
        let c0 = &g * &g - &h * &h * BigInt::from(d.get());
        let found = QuadraticSlot::ALL
            .into_iter()
            .filter(|&s| s != base)
            .find_map(|s| {
                let t = BigInt::from(ctx.value(s).get());
                let (q, r) = c0.div_rem(&t);
                if r.is_zero() {
                    exact_sqrt_big(&q).map(|n| (s, n))
                } else {
                    None
                }
            });
        let Some((target, n)) = found else {
            return Err(Error::InvalidInput(format!(
                "g^2 - h^2 ({d}) = {c0} is not n^2 times a quadratic value of the context ({}, {})",
                ctx.a, ctx.b
            )));
        };
        let disc_bound =
            BigInt::from(256) * BigInt::from(d.get()).pow(2) * ctx.value(target).get().abs() * &n * &n;
        Ok(D4Field {
            context: ctx.clone(),
            base,
            target,
            g,
            h,
            n,
            m: None,
            disc_bound,
            galois_type,
        })
    }

    pub fn base_value(&self) -> SquarefreeInt {
        self.context.value(self.base)
    }

    pub fn target_value(&self) -> SquarefreeInt {
        self.context.value(self.target)
    }

    /// Slot of the quadratic subfield of the closure that is not an extended
    /// quadratic field of `K`.
    pub fn excluded(&self) -> QuadraticSlot {
        self.base.third(self.target)
    }

    /// Coefficients `[c0, c1, c2, c3, c4]` of `x^4 - 2g x^2 + (g^2 - h^2 base)`.
    pub fn poly(&self) -> [BigInt; 5] {
        let d = BigInt::from(self.base_value().get());
        [
            &self.g * &self.g - &self.h * &self.h * d,
            BigInt::zero(),
            -(&self.g * BigInt::from(2)),
            BigInt::zero(),
            BigInt::one(),
        ]
    }

    pub fn poly_mod(&self, p: u64) -> Result<PolyModP> {
        PolyModP::from_bigint(p, &self.poly())
    }

    /// `p` is odd and divides none of `base`, `target`, `h`, `n`.
    pub fn is_admissible(&self, p: u64) -> bool {
        if p % 2 == 0 {
            return false;
        }
        let divides_small = |v: i64| v.unsigned_abs() % p == 0;
        let divides_big = |v: &BigInt| (v % p).is_zero();
        !(divides_small(self.base_value().get())
            || divides_small(self.target_value().get())
            || divides_big(&self.h)
            || divides_big(&self.n))
    }

    /// The same field with `h > 0`.
    pub fn canonical(&self) -> D4Field {
        let mut out = self.clone();
        out.h = out.h.abs();
        out
    }

    /// The field generated by the other square root, `Q(sqrt(g - h sqrt(base)))`.
    pub fn conjugate(&self) -> D4Field {
        let mut out = self.clone();
        out.h = -out.h.clone();
        out
    }

    pub fn generator(&self) -> String {
        let sign = if self.h.is_negative() { '-' } else { '+' };
        format!("sqrt({} {sign} {}*sqrt({}))", self.g, self.h.abs(), self.base_value())
    }

    /// `Q(sqrt(base))` and `Q(sqrt(target))`.
    pub fn extended_quadratics(&self) -> Result<[SquarefreeInt; 2]> {
        extended_quadratics(self)
    }
}

impl fmt::Display for D4Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.generator())
    }
}

impl Serialize for D4Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let poly: Vec<serde_json::Value> = self.poly().iter().map(bigjson::to_value).collect();
        let mut st = s.serialize_struct("D4Field", 11)?;
        st.serialize_field("a", &self.context.a.get())?;
        st.serialize_field("b", &self.context.b.get())?;
        st.serialize_field("base", &self.base_value().get())?;
        st.serialize_field("target", &self.target_value().get())?;
        st.serialize_field("g", &bigjson::to_value(&self.g))?;
        st.serialize_field("h", &bigjson::to_value(&self.h))?;
        st.serialize_field("n", &bigjson::to_value(&self.n))?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("poly", &poly)?;
        st.serialize_field("disc_bound", &bigjson::to_value(&self.disc_bound))?;
        st.serialize_field("galois_type", &self.galois_type)?;
        st.end()
    }
}

/// `K_[m] = Q(sqrt(g0 m + h0 m sqrt(base)))` for square-free `m` prime to `ab`.
pub fn build_field(ctx: &BiquadraticContext, triple: &GeneratorTriple, m: u64) -> Result<D4Field> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let mi = i64::try_from(m).map_err(|_| Error::InvalidInput(format!("m = {m} too large")))?;
    if !crate::arith::is_squarefree(mi)? {
        return Err(Error::InvalidInput(format!("m = {m} is not square-free")));
    }
    if m.gcd(&ctx.abs_ab()) != 1 {
        return Err(Error::InvalidInput(format!(
            "gcd(m, |ab|) = gcd({m}, {}) != 1",
            ctx.abs_ab()
        )));
    }
    if !triple.satisfies(ctx) {
        return Err(Error::InvalidInput(
            "generator triple does not satisfy its equation in this context".into(),
        ));
    }
    let mb = BigInt::from(m);
    let g = &triple.g0 * &mb;
    let h = &triple.h0 * &mb;
    let n = &triple.n0 * &mb;
    let base = triple.subfamily.base();
    let target = triple.subfamily.target();
    let d = ctx.value(base).get();
    let disc_bound =
        BigInt::from(256) * BigInt::from(d).pow(2) * ctx.value(target).get().abs() * &n * &n;
    let galois_type = classify_galois(ctx.value(base), &g, &h)?;
    Ok(D4Field {
        context: ctx.clone(),
        base,
        target,
        g,
        h,
        n,
        m: Some(m),
        disc_bound,
        galois_type,
    })
}

/// The two quadratic fields that occur as quadratic subfields of quartic
/// fields in the closure of `K`: `Q(sqrt(base))` and `Q(sqrt(target))`.
pub fn extended_quadratics(k: &D4Field) -> Result<[SquarefreeInt; 2]> {
    if k.galois_type != GaloisType::D4 {
        return Err(Error::InvalidInput(format!(
            "extended quadratic fields are defined for D4 fields, not {}",
            k.galois_type
        )));
    }
    Ok([k.base_value(), k.target_value()])
}

/// Both comparison predicates between two quartic fields over the same
/// quadratic subfield.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldComparison {
    /// Equal as subfields of an algebraic closure.
    pub same_subfield: bool,
    /// Isomorphic over `Q`.
    pub isomorphic: bool,
}

fn square_in_quadratic_small(u: i128, v: i128, d: i128) -> Option<bool> {
    let norm = u.checked_mul(u)?.checked_sub(d.checked_mul(v)?.checked_mul(v)?)?;
    let Some(k) = exact_sqrt_i128(norm) else {
        return Some(false);
    };
    for s in [k, -k] {
        let x2 = u.checked_add(s)?.checked_mul(2)?;
        let y2 = u.checked_sub(s)?.checked_mul(2)?.checked_mul(d)?;
        if exact_sqrt_i128(x2).is_some() && exact_sqrt_i128(y2).is_some() {
            return Some(true);
        }
    }
    Some(false)
}

fn square_in_quadratic_big(u: &BigInt, v: &BigInt, d: &BigInt) -> bool {
    let norm = u * u - d * v * v;
    let Some(k) = exact_sqrt_big(&norm) else {
        return false;
    };
    [k.clone(), -k].iter().any(|s| {
        exact_sqrt_big(&((u + s) * 2)).is_some() && exact_sqrt_big(&((u - s) * 2 * d)).is_some()
    })
}

/// `u + v sqrt(d)` is a square in `Q(sqrt(d))`.
pub fn is_square_in_quadratic(u: &BigInt, v: &BigInt, d: i64) -> bool {
    if let (Some(us), Some(vs)) = (u.to_i128(), v.to_i128()) {
        if let Some(ans) = square_in_quadratic_small(us, vs, d as i128) {
            return ans;
        }
    }
    square_in_quadratic_big(u, v, &BigInt::from(d))
}

/// Compares `Q(sqrt(a1))` and `Q(sqrt(a2))` for `a_i = g_i + h_i sqrt(d)`:
/// equal iff `a1 a2` is a square in `Q(sqrt(d))`, isomorphic iff `a1 a2` or
/// `a1 a2'` is, where `'` is the nontrivial automorphism.
pub fn is_same_field(k1: &D4Field, k2: &D4Field) -> Result<FieldComparison> {
    if k1.context != k2.context || k1.base_value() != k2.base_value() {
        return Err(Error::Incomparable);
    }
    let d = k1.base_value().get();
    let db = BigInt::from(d);
    let (g1, h1, g2, h2) = (&k1.g, &k1.h, &k2.g, &k2.h);
    let same = is_square_in_quadratic(&(g1 * g2 + h1 * h2 * &db), &(g1 * h2 + g2 * h1), d);
    let twisted = same
        || is_square_in_quadratic(&(g1 * g2 - h1 * h2 * &db), &(g2 * h1 - g1 * h2), d);
    Ok(FieldComparison {
        same_subfield: same,
        isomorphic: twisted,
    })
}

/// A subfield of the closure with the subgroup of D4 fixing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEntry {
    pub generator: String,
    pub fixer: Subgroup,
}

/// The quartic and quadratic subfields of the Galois closure of a D4 field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldLattice {
    /// `sqrt(g + h sqrt(base))`, `sqrt(g - h sqrt(base))`,
    /// `sqrt(2g + 2n sqrt(target))`, `sqrt(2g - 2n sqrt(target))`.
    pub quartics: [LatticeEntry; 4],
    /// `F1 = Q(sqrt(base target))`, `F2 = Q(sqrt(base))`, `F3 = Q(sqrt(target))`.
    pub quadratics: [LatticeEntry; 3],
    pub f_values: [SquarefreeInt; 3],
}

impl FieldLattice {
    pub fn new(k: &D4Field) -> FieldLattice {
        let (r, s) = (Perm::R, Perm::S);
        let (d, t) = (k.base_value(), k.target_value());
        let (g, h, n) = (&k.g, k.h.abs(), &k.n);
        let entry = |generator: String, fixer: Subgroup| LatticeEntry { generator, fixer };
        let [f1, f2, f3] = quadratic_fixers();
        let c = k.context.value(k.excluded());
        FieldLattice {
            quartics: [
                entry(
                    format!("sqrt({g} + {h}*sqrt({d}))"),
                    Subgroup::generated_by("<r^2 s>", &[r.pow(2).compose(s)]),
                ),
                entry(format!("sqrt({g} - {h}*sqrt({d}))"), Subgroup::generated_by("<s>", &[s])),
                entry(
                    format!("sqrt({} + {}*sqrt({t}))", g * 2, n * 2),
                    Subgroup::generated_by("<r^3 s>", &[r.pow(3).compose(s)]),
                ),
                entry(
                    format!("sqrt({} - {}*sqrt({t}))", g * 2, n * 2),
                    Subgroup::generated_by("<rs>", &[r.compose(s)]),
                ),
            ],
            quadratics: [
                entry(format!("sqrt({c})"), f1),
                entry(format!("sqrt({d})"), f2),
                entry(format!("sqrt({t})"), f3),
            ],
            f_values: [c, d, t],
        }
    }
}

/// Predicted `p`-exponents of the discriminants of `F1, F2, F3` for an odd
/// prime whose inertia group is generated by a member of `cls`.
pub fn tame_profile(cls: ConjugacyClass) -> [u8; 3] {
    let g = cls.representative();
    quadratic_fixers().map(|h| u8::from(!h.contains(g)))
}
