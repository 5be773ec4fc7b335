//! Distinct-degree factorization specialized to monic quartics over `F_p`,
//! with fixed-size residue arithmetic in `F_p[x]/(f)`.

use super::poly::DegreePattern;

/// `F_p[x]/(f)` for `f = x^4 + f[3] x^3 + f[2] x^2 + f[1] x + f[0]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuarticRing {
    p: u64,
    /// `p - f[i]`, the coefficients of `x^4` rewritten in lower degrees.
    neg_f: [u64; 4],
}

type Residue = [u64; 4];

impl QuarticRing {
    /// `f` constant term first, monic of degree 4, entries reduced mod `p`.
    pub(crate) fn new(p: u64, f: [u64; 4]) -> Self {
        QuarticRing {
            p,
            neg_f: f.map(|c| (p - c) % p),
        }
    }

    fn fold(&self, mut c: [u64; 7]) -> Residue {
        let p = self.p as u128;
        for k in (4..7).rev() {
            let top = c[k] as u128;
            if top != 0 {
                for i in 0..4 {
                    c[k - 4 + i] = ((c[k - 4 + i] as u128 + self.neg_f[i] as u128 * top) % p) as u64;
                }
            }
        }
        [c[0], c[1], c[2], c[3]]
    }

    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        let mut t = [0u128; 7];
        for i in 0..4 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..4 {
                t[i + j] += a[i] as u128 * b[j] as u128;
            }
        }
        let p = self.p as u128;
        self.fold(t.map(|v| (v % p) as u64))
    }

    fn times_x(&self, a: &Residue) -> Residue {
        self.fold([0, a[0], a[1], a[2], a[3], 0, 0])
    }

    /// `x^e mod f`.
    fn x_pow(&self, e: u64) -> Residue {
        let mut acc: Residue = [1 % self.p, 0, 0, 0];
        for bit in (0..64 - e.leading_zeros()).rev() {
            acc = self.mul(&acc, &acc);
            if (e >> bit) & 1 == 1 {
                acc = self.times_x(&acc);
            }
        }
        acc
    }

    /// `a(b) mod f`.
    fn compose(&self, a: &Residue, b: &Residue) -> Residue {
        let mut acc: Residue = [a[3], 0, 0, 0];
        for i in (0..3).rev() {
            acc = self.mul(&acc, b);
            acc[0] = (acc[0] + a[i]) % self.p;
        }
        acc
    }

    fn minus_x(&self, a: &Residue) -> Residue {
        let mut out = *a;
        out[1] = (out[1] + self.p - 1) % self.p;
        out
    }

    /// Degree of `gcd(a, f)` for a residue `a`.
    fn gcd_degree_with_modulus(&self, a: &Residue) -> usize {
        let f = [
            (self.p - self.neg_f[0]) % self.p,
            (self.p - self.neg_f[1]) % self.p,
            (self.p - self.neg_f[2]) % self.p,
            (self.p - self.neg_f[3]) % self.p,
            1,
        ];
        let a5 = [a[0], a[1], a[2], a[3], 0];
        gcd_degree(f, a5, self.p)
    }
}

fn degree(a: &[u64; 5]) -> Option<usize> {
    (0..5).rev().find(|&i| a[i] != 0)
}

/// Degree of `gcd(a, b)` over `F_p`, by Euclid with pseudo-remainders (no
/// inversions needed). A zero polynomial has gcd equal to the other input.
fn gcd_degree(mut a: [u64; 5], mut b: [u64; 5], p: u64) -> usize {
    let pm = p as u128;
    loop {
        let Some(db) = degree(&b) else {
            return degree(&a).unwrap_or(0);
        };
        if db == 0 {
            return 0;
        }
        // a <- lc(b) * a - lc(a) x^k b until deg a < deg b
        while let Some(da) = degree(&a) {
            if da < db {
                break;
            }
            let (la, lb) = (a[da] as u128, b[db] as u128);
            let shift = da - db;
            for i in 0..5 {
                let mut v = a[i] as u128 * lb % pm;
                if i >= shift && i - shift <= db {
                    v = (v + pm - b[i - shift] as u128 * la % pm) % pm;
                }
                a[i] = v as u64;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Factor degrees of a monic quartic that is square-free modulo `p`; `None`
/// when the degree counts are impossible for a square-free quartic.
pub(crate) fn quartic_pattern(p: u64, f: [u64; 4]) -> Option<DegreePattern> {
    let ring = QuarticRing::new(p, f);
    let xp = ring.x_pow(p);
    let linear = ring.gcd_degree_with_modulus(&ring.minus_x(&xp));
    let degrees = match linear {
        4 => vec![1, 1, 1, 1],
        2 => vec![1, 1, 2],
        1 => vec![1, 3],
        0 => {
            let xp2 = ring.compose(&xp, &xp);
            match ring.gcd_degree_with_modulus(&ring.minus_x(&xp2)) {
                4 => vec![2, 2],
                0 => vec![4],
                _ => return None,
            }
        }
        _ => return None,
    };
    Some(DegreePattern::new(degrees))
}
