//! Brute-force representation bitmaps.
//!
//! For each reduced form f of a discriminant, one bit per integer n marks
//! whether f(x, y) = n has a solution; a parallel bitmap restricts to
//! primitive solutions gcd(x, y) = 1.  The fill enumerates the lattice
//! points of the ellipse f ≤ X via (2ax + by)² + |D|y² ≤ 4aX, so the cost
//! is the ellipse area 2πX/√|D| per form, and a window [lo, hi] costs only
//! the annulus plus the y-range.  These bitmaps are the ground truth that
//! every class-set and genus computation is tested against.

use rayon::prelude::*;

use super::tables::charge_memory;
use crate::primes::{gcd, isqrt};
use crate::{ClassGroup, ClassIndex, Error, QuadForm, Result};

#[derive(Debug, Clone)]
pub(crate) struct Bitmap {
    lo: u64,
    hi: u64,
    bits: Vec<u64>,
}

impl Bitmap {
    fn new(lo: u64, hi: u64) -> Self {
        let words = ((hi - lo + 1) as usize).div_ceil(64);
        Bitmap { lo, hi, bits: vec![0; words] }
    }

    fn set(&mut self, n: u64) {
        let i = (n - self.lo) as usize;
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, n: u64) -> bool {
        if n < self.lo || n > self.hi {
            return false;
        }
        let i = (n - self.lo) as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }
}

// ceil/floor of a/b for b > 0.
fn div_ceil_i64(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

fn div_floor_i64(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Marks every n ∈ [lo, hi] represented by f in `any`, and those with a
/// primitive representation in `primitive`.
fn fill_window(f: &QuadForm, any: &mut Bitmap, primitive: &mut Bitmap) {
    let (lo, hi) = (any.lo as i64, any.hi as i64);
    let (a, b) = (f.a, f.b);
    let abs_d = -f.disc();
    let cap = 4 * a * hi;
    let ymax = isqrt(cap / abs_d);
    for y in -ymax..=ymax {
        let t = cap - abs_d * y * y;
        let s = isqrt(t);
        for x in div_ceil_i64(-b * y - s, 2 * a)..=div_floor_i64(-b * y + s, 2 * a) {
            let n = f.eval(x, y);
            if n >= lo && n <= hi {
                any.set(n as u64);
                if gcd(x, y) == 1 {
                    primitive.set(n as u64);
                }
            }
        }
    }
}

/// Window bitmaps (any, primitive) for one form that need not belong to a
/// class group — the shifted-prime census runs on a bare form.
pub(crate) fn single_form_window(f: &QuadForm, lo: u64, hi: u64) -> Result<(Bitmap, Bitmap)> {
    if f.a <= 0 || f.disc() >= 0 {
        return Err(Error::NotPositiveDefinite(f.a, f.b, f.c));
    }
    if lo < 1 || hi < lo {
        return Err(Error::InvalidArgument(format!("bad bitmap window [{lo}, {hi}]")));
    }
    charge_memory(2 * (hi - lo + 1).div_ceil(8))?;
    let mut any = Bitmap::new(lo, hi);
    let mut primitive = Bitmap::new(lo, hi);
    fill_window(f, &mut any, &mut primitive);
    Ok((any, primitive))
}

/// Per-class representability bitmaps over a window [lo, hi].
pub struct RepresentationBitmaps {
    d: i64,
    lo: u64,
    hi: u64,
    forms: Vec<QuadForm>,
    any: Vec<Bitmap>,
    primitive: Vec<Bitmap>,
}

impl RepresentationBitmaps {
    /// Bitmaps over [1, x] for every reduced form of the class group.
    pub fn build(group: &ClassGroup, x: u64) -> Result<Self> {
        Self::build_window(group, 1, x)
    }

    /// Bitmaps over [lo, hi]; the segmented path rebuilds these per window.
    pub fn build_window(group: &ClassGroup, lo: u64, hi: u64) -> Result<Self> {
        if lo < 1 || hi < lo {
            return Err(Error::InvalidArgument(format!("bad bitmap window [{lo}, {hi}]")));
        }
        let h = group.h() as u64;
        charge_memory(2 * h * (hi - lo + 1).div_ceil(8))?;
        let forms: Vec<QuadForm> = (0..group.h()).map(|c| group.form(c).form()).collect();
        let filled: Vec<(Bitmap, Bitmap)> = forms
            .par_iter()
            .map(|f| {
                let mut any = Bitmap::new(lo, hi);
                let mut primitive = Bitmap::new(lo, hi);
                fill_window(f, &mut any, &mut primitive);
                (any, primitive)
            })
            .collect();
        let (any, primitive) = filled.into_iter().unzip();
        Ok(RepresentationBitmaps { d: group.disc().value(), lo, hi, forms, any, primitive })
    }

    pub fn disc(&self) -> i64 {
        self.d
    }

    /// The covered window (lo, hi), inclusive.
    pub fn window(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    /// Does the form of this class represent n?  False outside the window.
    pub fn represents(&self, class: ClassIndex, n: u64) -> bool {
        self.any[class].get(n)
    }

    /// Primitive variant: some representation with gcd(x, y) = 1.
    pub fn represents_primitively(&self, class: ClassIndex, n: u64) -> bool {
        self.primitive[class].get(n)
    }

    pub fn represented_by_any(&self, n: u64) -> bool {
        (0..self.forms.len()).any(|c| self.represents(c, n))
    }

    /// Sorted classes whose forms represent n.
    pub fn representing_classes(&self, n: u64) -> Vec<ClassIndex> {
        (0..self.forms.len()).filter(|&c| self.represents(c, n)).collect()
    }

    /// #{n in the window represented by this class} — U_f of the window.
    pub fn represented_count(&self, class: ClassIndex) -> u64 {
        self.any[class].count()
    }
}

/// U_f(X): the number of 1 ≤ n ≤ X represented by f, by exhaustive lattice
/// enumeration.
pub fn u_f(f: &QuadForm, x: u64) -> Result<u64> {
    if f.a <= 0 || f.disc() >= 0 {
        return Err(Error::NotPositiveDefinite(f.a, f.b, f.c));
    }
    if x == 0 {
        return Ok(0);
    }
    charge_memory(x.div_ceil(8))?;
    let mut any = Bitmap::new(1, x);
    let mut primitive = Bitmap::new(1, x);
    fill_window(f, &mut any, &mut primitive);
    Ok(any.count())
}

/// U_f(X) computed in windows of the given size: same count, bounded memory.
pub fn u_f_segmented(f: &QuadForm, x: u64, window: u64) -> Result<u64> {
    if f.a <= 0 || f.disc() >= 0 {
        return Err(Error::NotPositiveDefinite(f.a, f.b, f.c));
    }
    if window == 0 {
        return Err(Error::InvalidArgument("window size 0".into()));
    }
    charge_memory(window.div_ceil(8))?;
    let mut total = 0;
    let mut lo = 1;
    while lo <= x {
        let hi = (lo + window - 1).min(x);
        let mut any = Bitmap::new(lo, hi);
        let mut primitive = Bitmap::new(lo, hi);
        fill_window(f, &mut any, &mut primitive);
        total += any.count();
        lo = hi + 1;
    }
    Ok(total)
}
