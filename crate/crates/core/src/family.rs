//! The families `T(a, b; X) = { K_[m] : m <= m_bound, m square-free,
//! gcd(m, |ab|) = 1 }`, their counts, and the six-way split of all D4 fields
//! with a given biquadratic resolvent.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor_u64, squarefree_table, SquarefreeInt};
use crate::context::BiquadraticContext;
use crate::error::{Error, Result};
use crate::normcond::{norm_form_solvable, phi, GeneratorTriple};
use crate::quartic::{build_field, is_same_field, D4Field};

/// Largest family parameter an enumeration will materialize.
pub const MAX_M_BOUND: u64 = 100_000_000;

/// The members of one subfamily with `disc_bound <= X`.
#[derive(Debug, Clone)]
pub struct FamilySlice {
    pub ctx: BiquadraticContext,
    pub triple: GeneratorTriple,
    pub x: f64,
    pub m_bound: u64,
    /// Ascending in `m`.
    pub members: Vec<D4Field>,
}

fn check_x(x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 1.0) {
        return Err(Error::InvalidInput(format!("X must be a finite real >= 1, got {x}")));
    }
    Ok(())
}

/// `floor(X^(1/2) / (16 n0 sqrt(|a|^3 |b|^3)))`, computed exactly as the
/// largest `m` with `256 n0^2 |ab|^3 m^2 <= X`.
pub fn m_bound(ctx: &BiquadraticContext, triple: &GeneratorTriple, x: f64) -> Result<u64> {
    check_x(x)?;
    let xi = BigInt::from(x.floor() as u128);
    let ab = BigInt::from(ctx.abs_ab());
    let scale = BigInt::from(256) * &triple.n0 * &triple.n0 * &ab * &ab * &ab;
    let q = xi / scale;
    q.sqrt()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("m bound for X = {x} exceeds 64 bits")))
}

/// The admissible parameters `m <= z`: square-free and prime to `q`.
pub fn admissible_parameters(z: u64, q: u64) -> Result<Vec<u64>> {
    if z == 0 {
        return Ok(Vec::new());
    }
    let table = squarefree_table(z)?;
    Ok((1..=z)
        .filter(|&m| table[m as usize] && m.gcd(&q) == 1)
        .collect())
}

pub fn enumerate_family(
    ctx: &BiquadraticContext,
    triple: &GeneratorTriple,
    x: f64,
) -> Result<FamilySlice> {
    if !triple.satisfies(ctx) {
        return Err(Error::InvalidInput(
            "generator triple does not satisfy its equation in this context".into(),
        ));
    }
    let m_bound = m_bound(ctx, triple, x)?;
    if m_bound > MAX_M_BOUND {
        return Err(Error::ResourceBudget {
            requested: m_bound,
            limit: MAX_M_BOUND,
        });
    }
    let members = admissible_parameters(m_bound, ctx.abs_ab())?
        .into_par_iter()
        .map(|m| build_field(ctx, triple, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilySlice {
        ctx: ctx.clone(),
        triple: triple.clone(),
        x,
        m_bound,
        members,
    })
}

/// `enumerate_family` with the canonical triple of the context.
pub fn enumerate_context(ctx: &BiquadraticContext, x: f64) -> Result<FamilySlice> {
    let triple = phi(ctx)?;
    enumerate_family(ctx, &triple, x)
}

/// Pairs `(m1, m2)` of members that fail to be distinct, either as subfields
/// or up to isomorphism, or with `m1 m2` a perfect square.
pub fn distinctness_violations(slice: &FamilySlice) -> Result<Vec<(u64, u64)>> {
    let members = &slice.members;
    let per_row: Vec<Vec<(u64, u64)>> = (0..members.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for j in i + 1..members.len() {
                let (k1, k2) = (&members[i], &members[j]);
                let cmp = is_same_field(k1, k2)?;
                let (m1, m2) = (k1.m.unwrap_or(0), k2.m.unwrap_or(0));
                let square = crate::arith::exact_sqrt_i128(m1 as i128 * m2 as i128).is_some();
                if cmp.same_subfield || cmp.isomorphic || square {
                    bad.push((m1, m2));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(per_row.into_iter().flatten().collect())
}

/// `phi(q) / (q zeta(2)) * prod_{p | q} (1 - p^-2)^-1`, the density of
/// square-free integers prime to `q`.
pub fn squarefree_coprime_density(q: u64) -> f64 {
    let zeta2 = PI * PI / 6.0;
    factor_u64(q).iter().fold(1.0 / zeta2, |acc, &(p, _)| {
        let p = p as f64;
        acc * (1.0 - 1.0 / p) / (1.0 - 1.0 / (p * p))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquarefreeCount {
    pub z: f64,
    pub q: u64,
    /// `#{ m <= z : m square-free, gcd(m, q) = 1 }`
    pub count: u64,
    pub main_term: f64,
    /// `count - main_term`
    pub residual: f64,
}

pub fn count_squarefree_coprime(z: f64, q: u64) -> Result<SquarefreeCount> {
    check_x(z)?;
    if q < 1 {
        return Err(Error::InvalidInput("q must be positive".into()));
    }
    let zi = z.floor() as u64;
    let count = admissible_parameters(zi, q)?.len() as u64;
    let main_term = squarefree_coprime_density(q) * z;
    Ok(SquarefreeCount {
        z,
        q,
        count,
        main_term,
        residual: count as f64 - main_term,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundRow {
    pub x: f64,
    pub m_bound: u64,
    pub members: u64,
    /// `members / X^(1/2)`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub a: i64,
    pub b: i64,
    pub family_empty: bool,
    pub n0: Option<u64>,
    /// `density(|ab|) / (16 n0 sqrt(|a|^3 |b|^3))`
    pub limit: Option<f64>,
    pub rows: Vec<LowerBoundRow>,
    /// Every ratio from the first nonempty slice on is positive.
    pub bounded_below: bool,
    pub nondecreasing: bool,
    /// `|ratio / limit - 1|` for the largest `X`.
    pub last_relative_error: Option<f64>,
}

pub fn verify_lower_bound(ctx: &BiquadraticContext, xs: &[f64]) -> Result<LowerBoundReport> {
    let mut report = LowerBoundReport {
        a: ctx.a.get(),
        b: ctx.b.get(),
        family_empty: false,
        n0: None,
        limit: None,
        rows: Vec::new(),
        bounded_below: true,
        nondecreasing: true,
        last_relative_error: None,
    };
    let triple = match phi(ctx) {
        Ok(t) => t,
        Err(Error::EmptyFamily { .. }) => {
            report.family_empty = true;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let n0 = triple.n0.to_u64().ok_or_else(|| {
        Error::InvalidInput(format!("n0 = {} exceeds 64 bits", triple.n0))
    })?;
    let ab3 = (ctx.abs_ab() as f64).powi(3);
    let limit = squarefree_coprime_density(ctx.abs_ab()) / (16.0 * n0 as f64 * ab3.sqrt());
    report.n0 = Some(n0);
    report.limit = Some(limit);
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    for &x in &sorted {
        let slice = enumerate_family(ctx, &triple, x)?;
        let members = slice.members.len() as u64;
        report.rows.push(LowerBoundRow {
            x,
            m_bound: slice.m_bound,
            members,
            ratio: members as f64 / x.sqrt(),
        });
    }
    let first_nonempty = report.rows.iter().position(|r| r.members > 0);
    if let Some(i) = first_nonempty {
        report.bounded_below = report.rows[i..].iter().all(|r| r.ratio > 0.0);
        report.nondecreasing = report.rows[i..].windows(2).all(|w| w[1].ratio >= w[0].ratio);
    }
    report.last_relative_error = report.rows.last().map(|r| (r.ratio / limit - 1.0).abs());
    Ok(report)
}

/// One of the six subfamilies `F(x; y, z)`: fields `Q(sqrt(g + h sqrt(x)))`
/// with extended quadratic fields `Q(sqrt(y))`, `Q(sqrt(z))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubfamilyFlag {
    pub label: String,
    /// `x`, the quadratic subfield of the members.
    pub base: i64,
    /// The other extended quadratic field.
    pub target: i64,
    pub nonempty: bool,
}

/// The six subfamilies of D4 fields with resolvent `Q(sqrt a, sqrt b)`,
/// each flagged by the norm condition governing its nonemptiness.
pub fn six_decomposition(ctx: &BiquadraticContext) -> [SubfamilyFlag; 6] {
    let (a, b, c) = (ctx.a, ctx.b, ctx.c3);
    let name = |v: SquarefreeInt| {
        if v == a {
            "a"
        } else if v == b {
            "b"
        } else {
            "ab/xi^2"
        }
    };
    let flag = |x: SquarefreeInt, other: SquarefreeInt, first: SquarefreeInt| SubfamilyFlag {
        label: format!("F_{}({}, {})", name(x), name(first), name(if first == x { other } else { x })),
        base: x.get(),
        target: other.get(),
        nonempty: norm_form_solvable(other.get(), x.get()),
    };
    [
        flag(a, b, a),
        flag(b, a, a),
        flag(a, c, a),
        flag(c, a, a),
        flag(b, c, b),
        flag(c, b, b),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normcond::check_condition_1234;
    use crate::quartic::GaloisType;

    fn ctx27() -> BiquadraticContext {
        BiquadraticContext::new(2, 7).unwrap()
    }

    fn brute_count(z: u64, q: u64) -> u64 {
        (1..=z)
            .filter(|&m| {
                m.gcd(&q) == 1 && (2..).take_while(|d| d * d <= m).all(|d| m % (d * d) != 0)
            })
            .count() as u64
    }

    #[test]
    fn slice_examples() {
        let ctx = ctx27();
        let s = enumerate_context(&ctx, 1e6).unwrap();
        assert_eq!(s.m_bound, 1);
        assert_eq!(s.members.len(), 1);
        let s = enumerate_context(&ctx, 1e10).unwrap();
        assert_eq!(s.m_bound, 119);
        assert_eq!(s.members.len() as u64, brute_count(119, 14));
        let s = enumerate_context(&ctx, 700_000.0).unwrap();
        assert_eq!(s.m_bound, 0);
        assert!(s.members.is_empty());
    }

    #[test]
    fn m_bound_agrees_with_float_formula() {
        let ctx = ctx27();
        let triple = phi(&ctx).unwrap();
        for x in [1e6f64, 1e7, 1e8, 1e9, 1e10, 3.3e11, 1e12] {
            let f = x.sqrt() / (16.0 * 2744f64.sqrt());
            assert_eq!(m_bound(&ctx, &triple, x).unwrap(), f.floor() as u64, "X = {x}");
        }
    }

    #[test]
    fn slice_invariants() {
        for (a, b) in [(2, 7), (3, 11), (-1, 2), (5, -1), (2, -7)] {
            let ctx = BiquadraticContext::new(a, b).unwrap();
            let triple = phi(&ctx).unwrap();
            // m_bound = 1500
            let x = BigInt::from(256u64 * ctx.abs_ab().pow(3) * 1500 * 1500) * &triple.n0 * &triple.n0;
            let s = enumerate_family(&ctx, &triple, x.to_f64().unwrap()).unwrap();
            assert_eq!(s.m_bound, 1500);
            for k in &s.members {
                assert!(k.disc_bound <= x);
                assert_eq!(k.galois_type, GaloisType::D4);
            }
            let ms: Vec<u64> = s.members.iter().map(|k| k.m.unwrap()).collect();
            assert!(ms.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(ms.len() as u64, brute_count(s.m_bound, ctx.abs_ab()));
            assert_eq!(
                ms.len() as u64,
                count_squarefree_coprime(s.m_bound.max(1) as f64, ctx.abs_ab()).unwrap().count
                    * u64::from(s.m_bound > 0)
            );
            assert!(distinctness_violations(&s).unwrap().is_empty());
        }
    }

    #[test]
    fn count_examples() {
        let c = count_squarefree_coprime(10.0, 14).unwrap();
        assert_eq!(c.count, brute_count(10, 14));
        assert_eq!(c.count, 3);
        assert_eq!(count_squarefree_coprime(1.0, 2).unwrap().count, 1);
        assert!(count_squarefree_coprime(0.5, 2).is_err());
    }

    #[test]
    fn density_closed_form() {
        let zeta2 = PI * PI / 6.0;
        let d14 = 6.0 / (14.0 * zeta2) / (0.75 * (48.0 / 49.0));
        assert!((squarefree_coprime_density(14) - d14).abs() < 1e-15);
        assert!((squarefree_coprime_density(1) - 1.0 / zeta2).abs() < 1e-15);
    }

    #[test]
    fn residuals_are_small() {
        for q in [6u64, 14, 30] {
            for z in [1e4, 1e5, 1e6] {
                let c = count_squarefree_coprime(z, q).unwrap();
                assert!(c.residual.abs() <= 3.0 * z.sqrt(), "q={q} z={z}: {c:?}");
            }
        }
        let c = count_squarefree_coprime(2000.0, 30).unwrap();
        assert_eq!(c.count, brute_count(2000, 30));
    }

    #[test]
    fn lower_bound_report() {
        let r = verify_lower_bound(&ctx27(), &[1e8, 1e9, 1e10]).unwrap();
        assert!(!r.family_empty);
        let counts: Vec<u64> = r.rows.iter().map(|r| r.members).collect();
        assert_eq!(counts, [4, 13, brute_count(119, 14)]);
        assert!(r.bounded_below && r.nondecreasing);
        let limit = r.limit.unwrap();
        let closed = (6.0 / (14.0 * PI * PI / 6.0)) / (0.75 * 48.0 / 49.0) / (16.0 * 2744f64.sqrt());
        assert!((limit - closed).abs() < 1e-15);
        assert!(r.last_relative_error.unwrap() < 0.1);
    }

    #[test]
    fn empty_family_is_flagged() {
        let ctx = (2..40)
            .flat_map(|a| (-40..40).map(move |b| (a, b)))
            .filter_map(|(a, b)| BiquadraticContext::new(a, b).ok())
            .find(|c| !check_condition_1234(c.a, c.b).unwrap().condition1234)
            .unwrap();
        let r = verify_lower_bound(&ctx, &[1e8]).unwrap();
        assert!(r.family_empty && r.rows.is_empty());
        assert!(matches!(enumerate_context(&ctx, 1e8), Err(Error::EmptyFamily { .. })));
        assert!(six_decomposition(&ctx).iter().all(|f| !f.nonempty));
    }

    #[test]
    fn six_way_pairing() {
        let flags = six_decomposition(&ctx27());
        assert!(flags[0].nonempty && flags[1].nonempty);
        assert_eq!(flags[0].label, "F_a(a, b)");
        assert_eq!(flags[1].label, "F_b(a, b)");
        assert_eq!(flags[3].label, "F_ab/xi^2(a, ab/xi^2)");
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let Ok(ctx) = BiquadraticContext::new(a, b) else { continue };
                let f = six_decomposition(&ctx);
                let c = check_condition_1234(ctx.a, ctx.b).unwrap();
                assert_eq!(f[0].nonempty, f[1].nonempty);
                assert_eq!(f[2].nonempty, f[3].nonempty);
                assert_eq!(f[4].nonempty, f[5].nonempty);
                assert_eq!([f[0].nonempty, f[2].nonempty, f[4].nonempty], [c.co1, c.co2, c.co3]);
                assert_eq!(f.iter().any(|x| x.nonempty), c.condition1234);
            }
        }
    }
}
