//! Binary quadratic forms of negative discriminant.
//!
//! A form f(x,y) = ax² + bxy + cy² with discriminant D = b² − 4ac < 0 and
//! a > 0 is positive definite.  GL₂(ℤ)-changes of variable with determinant 1
//! preserve D, and every proper equivalence class contains exactly one
//! *reduced* representative with |b| ≤ a ≤ c and b ≥ 0 whenever |b| = a or
//! a = c.  The reduced representatives of primitive forms of discriminant D
//! are the elements of the form class group; see [`ClassGroup`].

mod class_group;
mod kronecker;

pub use class_group::{compose_forms, ClassGroup, ClassIndex, ClassSubgroup, PrimeSplitting};
pub use kronecker::{chi_d, kronecker};

pub(crate) use class_group::make_leading_coprime;

use crate::primes::{gcd, isqrt, squarefree_kernel};
use crate::{Error, Result};
use serde::Serialize;

/// A negative discriminant D ≡ 0 or 1 (mod 4), split into its fundamental
/// part and conductor: D = D₀·f² with D₀ fundamental.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Discriminant {
    value: i64,
    fundamental: i64,
    conductor: i64,
}

impl Discriminant {
    /// Validates D < 0 and D ≡ 0, 1 (mod 4) and factors out the conductor.
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(Error::BadDiscriminant(d));
        }
        let k = squarefree_kernel(d);
        let fundamental = if k.rem_euclid(4) == 1 { k } else { 4 * k };
        let ratio = d / fundamental;
        debug_assert!(d % fundamental == 0 && ratio > 0);
        let conductor = isqrt(ratio);
        debug_assert_eq!(conductor * conductor, ratio);
        Ok(Discriminant {
            value: d,
            fundamental,
            conductor,
        })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn fundamental(&self) -> i64 {
        self.fundamental
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn is_fundamental(&self) -> bool {
        self.conductor == 1
    }

    /// |D| as u64, convenient for sieve bounds.
    pub fn abs(&self) -> u64 {
        self.value.unsigned_abs()
    }

    /// The principal form (1, 0, |D|/4) or (1, 1, (1+|D|)/4).
    pub fn principal_form(&self) -> QuadForm {
        let b = self.value.rem_euclid(2);
        QuadForm {
            a: 1,
            b,
            c: (b * b - self.value) / 4,
        }
    }
}

/// f(x,y) = ax² + bxy + cy², positive definite (a > 0, b² − 4ac < 0) and
/// primitive (gcd(a,b,c) = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl QuadForm {
    /// Validates positive definiteness and primitivity.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        if a <= 0 || disc >= 0 {
            return Err(Error::NotPositiveDefinite(a, b, c));
        }
        if gcd(gcd(a, b), c) != 1 {
            return Err(Error::ImprimitiveForm(a, b, c));
        }
        Ok(QuadForm { a, b, c })
    }

    pub fn disc(&self) -> i64 {
        let d = (self.b as i128) * (self.b as i128)
            - 4 * (self.a as i128) * (self.c as i128);
        i64::try_from(d).expect("discriminant fits i64")
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (x, y) = (x as i128, y as i128);
        i64::try_from(a * x * x + b * x * y + c * y * y).expect("value fits i64")
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    /// The reduction conditions |b| ≤ a ≤ c with b ≥ 0 on the boundary.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a
            && a <= c
            && (b.abs() < a || b >= 0)
            && (a < c || b >= 0)
            && a > 0
    }

    /// The opposite class representative (a, −b, c); reduces to the inverse
    /// class in the class group.
    pub fn conjugate(&self) -> QuadForm {
        QuadForm {
            a: self.a,
            b: -self.b,
            c: self.c,
        }
    }

    /// Applies the determinant-1 substitution (x,y) ↦ (px+qy, rx+sy).
    pub fn transform(&self, p: i64, q: i64, r: i64, s: i64) -> QuadForm {
        debug_assert_eq!(p * s - q * r, 1, "substitution must have determinant 1");
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        let na = a * p * p + b * p * r + c * r * r;
        let nb = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        let nc = a * q * q + b * q * s + c * s * s;
        QuadForm {
            a: i64::try_from(na).expect("coefficient fits i64"),
            b: i64::try_from(nb).expect("coefficient fits i64"),
            c: i64::try_from(nc).expect("coefficient fits i64"),
        }
    }

    /// Whether f represents m: some (x, y) ∈ ℤ² with f(x,y) = m.
    ///
    /// Completing the square gives (2ax+by)² + |D|y² = 4am, so |y| ≤
    /// √(4am/|D|) and for each y the remaining condition is that
    /// 4am − |D|y² be a square compatible with x = (±u − by)/(2a).
    pub fn represents(&self, m: i64) -> bool {
        if m < 0 {
            return false;
        }
        if m == 0 {
            return true;
        }
        let (a, b) = (self.a as i128, self.b as i128);
        let abs_d = -(self.disc() as i128);
        let rhs = 4 * a * m as i128;
        let mut y: i128 = 0;
        while abs_d * y * y <= rhs {
            let t = rhs - abs_d * y * y;
            let u = isqrt(i64::try_from(t).expect("4am fits i64")) as i128;
            if u * u == t {
                for s in [u, -u] {
                    let num = s - b * y;
                    if num.rem_euclid(2 * a) == 0 {
                        return true;
                    }
                    // f(x, −y) = m needs (±u + by) divisible by 2a instead.
                    if (s + b * y).rem_euclid(2 * a) == 0 {
                        return true;
                    }
                }
            }
            y += 1;
        }
        false
    }

    /// Gauss reduction: the unique reduced form properly equivalent to f.
    pub fn reduce(&self) -> Result<ReducedForm> {
        if self.a <= 0 || self.disc() >= 0 {
            return Err(Error::NotPositiveDefinite(self.a, self.b, self.c));
        }
        if !self.is_primitive() {
            return Err(Error::ImprimitiveForm(self.a, self.b, self.c));
        }
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            // Normalize b into (−a, a]; c tracks the fixed discriminant.
            if b > a || b <= -a {
                let k = (b + a).div_euclid(2 * a);
                let nb = b - 2 * a * k;
                c -= k * (b + nb) / 2;
                b = nb;
                if b == -a {
                    b = a;
                }
            }
            if a > c {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        let form = QuadForm {
            a: i64::try_from(a).expect("reduced a fits i64"),
            b: i64::try_from(b).expect("reduced b fits i64"),
            c: i64::try_from(c).expect("reduced c fits i64"),
        };
        debug_assert!(form.is_reduced());
        debug_assert_eq!(form.disc(), self.disc());
        Ok(ReducedForm(form))
    }
}

/// A form satisfying the reduction conditions; the canonical representative
/// of its proper equivalence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedForm(QuadForm);

impl ReducedForm {
    pub fn form(&self) -> QuadForm {
        self.0
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.0.a, self.0.b, self.0.c)
    }

    /// Whether the class equals its own inverse, i.e. (a,−b,c) reduces back
    /// to (a,b,c): exactly when b = 0, a = b, or a = c.
    pub fn is_ambiguous(&self) -> bool {
        let (a, b, c) = self.triple();
        b == 0 || a == b || a == c
    }
}

impl std::fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::ops::Deref for ReducedForm {
    type Target = QuadForm;
    fn deref(&self) -> &QuadForm {
        &self.0
    }
}
