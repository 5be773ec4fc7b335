//! The dihedral group of order 8 acting on the four roots
//! `1 = A, 2 = B, 3 = -A, 4 = -B` of `x^4 - 2g x^2 + (g^2 - h^2 d)`, where
//! `A = sqrt(g + h sqrt(d))` and `B = sqrt(g - h sqrt(d))`.
//!
//! Generators are `r = (1 2 3 4)` and `s = (1 3)`; products compose right to
//! left, so `rs = (1 4)(2 3)` and `r^3 s = (1 2)(3 4)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A permutation of the four roots, stored 0-based as the image of each index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);
    /// `(1 2 3 4)`
    pub const R: Perm = Perm([1, 2, 3, 0]);
    /// `(1 3)`
    pub const S: Perm = Perm([2, 1, 0, 3]);

    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` after `other`.
    pub fn compose(self, other: Perm) -> Perm {
        let mut out = [0u8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[other.0[i] as usize];
        }
        Perm(out)
    }

    pub fn inverse(self) -> Perm {
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[self.0[i] as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn pow(self, m: u64) -> Perm {
        (0..m % 4).fold(Perm::IDENTITY, |acc, _| acc.compose(self))
    }

    pub fn fixed_points(self) -> usize {
        (0..4).filter(|&i| self.apply(i) == i).count()
    }

    /// Cycle lengths, ascending.
    pub fn cycle_type(self) -> Vec<usize> {
        let mut seen = [false; 4];
        let mut out = Vec::new();
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn order(self) -> usize {
        (1..=4)
            .find(|&k| self.pow(k as u64) == Perm::IDENTITY)
            .expect("every element of S4 has order dividing 12; D4 elements divide 4")
    }

    /// `r^k s^e`.
    pub fn rotation_reflection(k: u64, e: bool) -> Perm {
        let rk = Perm::R.pow(k);
        if e {
            rk.compose(Perm::S)
        } else {
            rk
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 4];
        let mut wrote = false;
        for start in 0..4 {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            f.write_str("(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.apply(i);
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// The eight elements `r^k s^e`, `k = 0..4`, `e = 0, 1`.
pub fn elements() -> [Perm; 8] {
    let mut out = [Perm::IDENTITY; 8];
    for k in 0..4u64 {
        out[k as usize] = Perm::rotation_reflection(k, false);
        out[4 + k as usize] = Perm::rotation_reflection(k, true);
    }
    out
}

/// A subgroup given by generators; membership is by closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub label: &'static str,
    pub elements: Vec<Perm>,
}

impl Subgroup {
    pub fn generated_by(label: &'static str, gens: &[Perm]) -> Subgroup {
        let mut elements = vec![Perm::IDENTITY];
        let mut frontier = vec![Perm::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = g.compose(x);
                if !elements.contains(&y) {
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        elements.sort();
        Subgroup { label, elements }
    }

    pub fn contains(&self, g: Perm) -> bool {
        self.elements.contains(&g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Fixing subgroups of `Q(sqrt(base * target))`, `Q(sqrt(base))` and
/// `Q(sqrt(target))`, in that order.
pub fn quadratic_fixers() -> [Subgroup; 3] {
    let (r, s) = (Perm::R, Perm::S);
    [
        Subgroup::generated_by("<r>", &[r]),
        Subgroup::generated_by("<r^2, s>", &[r.pow(2), s]),
        Subgroup::generated_by("<r^2, rs>", &[r.pow(2), r.compose(s)]),
    ]
}

/// Conjugacy classes of D4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConjugacyClass {
    #[serde(rename = "ID")]
    Id,
    R2,
    R,
    S,
    RS,
}

impl ConjugacyClass {
    pub const ALL: [ConjugacyClass; 5] = [
        ConjugacyClass::Id,
        ConjugacyClass::R2,
        ConjugacyClass::R,
        ConjugacyClass::S,
        ConjugacyClass::RS,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ConjugacyClass::Id => "ID",
            ConjugacyClass::R2 => "R2",
            ConjugacyClass::R => "R",
            ConjugacyClass::S => "S",
            ConjugacyClass::RS => "RS",
        }
    }

    pub fn size(self) -> usize {
        match self {
            ConjugacyClass::Id | ConjugacyClass::R2 => 1,
            _ => 2,
        }
    }

    pub fn representative(self) -> Perm {
        match self {
            ConjugacyClass::Id => Perm::IDENTITY,
            ConjugacyClass::R2 => Perm::rotation_reflection(2, false),
            ConjugacyClass::R => Perm::R,
            ConjugacyClass::S => Perm::S,
            ConjugacyClass::RS => Perm::rotation_reflection(1, true),
        }
    }

    pub fn of(g: Perm) -> Option<ConjugacyClass> {
        let k = (0..4u64).find(|&k| {
            Perm::rotation_reflection(k, false) == g || Perm::rotation_reflection(k, true) == g
        })?;
        let reflection = Perm::rotation_reflection(k, true) == g;
        Some(match (reflection, k) {
            (false, 0) => ConjugacyClass::Id,
            (false, 2) => ConjugacyClass::R2,
            (false, _) => ConjugacyClass::R,
            (true, 0) | (true, 2) => ConjugacyClass::S,
            (true, _) => ConjugacyClass::RS,
        })
    }

    /// Fixed roots of a class member.
    pub fn fixed_points(self) -> usize {
        match self {
            ConjugacyClass::Id => 4,
            ConjugacyClass::S => 2,
            _ => 0,
        }
    }

    /// Expected Kronecker values at the three quadratic subfields
    /// `(base * target, base, target)`.
    pub fn symbol_pattern(self) -> [i8; 3] {
        match self {
            ConjugacyClass::Id | ConjugacyClass::R2 => [1, 1, 1],
            ConjugacyClass::R => [1, -1, -1],
            ConjugacyClass::S => [-1, 1, -1],
            ConjugacyClass::RS => [-1, -1, 1],
        }
    }

    /// Cycle lengths on the roots, ascending; equals the degree pattern of
    /// the quartic modulo an unramified prime in this class.
    pub fn cycle_type(self) -> &'static [usize] {
        match self {
            ConjugacyClass::Id => &[1, 1, 1, 1],
            ConjugacyClass::R2 | ConjugacyClass::RS => &[2, 2],
            ConjugacyClass::R => &[4],
            ConjugacyClass::S => &[1, 1, 2],
        }
    }

    pub fn order(self) -> usize {
        match self {
            ConjugacyClass::Id => 1,
            ConjugacyClass::R => 4,
            _ => 2,
        }
    }

    /// Class of `g^m` for any `g` in `self`.
    pub fn pow(self, m: u64) -> ConjugacyClass {
        match self {
            ConjugacyClass::R => match m % 4 {
                0 => ConjugacyClass::Id,
                2 => ConjugacyClass::R2,
                _ => ConjugacyClass::R,
            },
            _ if m % 2 == 0 => ConjugacyClass::Id,
            c => c,
        }
    }

    /// Decide the class from the three Kronecker values and whether the
    /// quartic has a root. `None` for patterns that no class produces.
    pub fn from_symbols(chi: [i8; 3], has_root: bool) -> Option<ConjugacyClass> {
        match chi {
            [1, 1, 1] if has_root => Some(ConjugacyClass::Id),
            [1, 1, 1] => Some(ConjugacyClass::R2),
            [1, -1, -1] => Some(ConjugacyClass::R),
            [-1, 1, -1] => Some(ConjugacyClass::S),
            [-1, -1, 1] => Some(ConjugacyClass::RS),
            _ => None,
        }
    }
}

impl fmt::Display for ConjugacyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ConjugacyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ConjugacyClass::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown conjugacy class {s:?}")))
    }
}
