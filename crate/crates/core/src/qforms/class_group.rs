//! The form class group of a negative discriminant.
//!
//! Classes are indexed by their reduced representatives, sorted by (a, b, c).
//! The group law is Dirichlet composition: given f₁ = (a₁,b₁,c₁) and
//! f₂ = (a₂,b₂,c₂) with gcd(a₁,a₂) = 1, solve B ≡ b₁ (2a₁), B ≡ b₂ (2a₂);
//! the composite is (a₁a₂, B, (B²−D)/(4a₁a₂)).  When the leading
//! coefficients share a factor, f₂ is first replaced by an equivalent form
//! whose leading coefficient is coprime to a₁ (a concordance step): choose
//! (x,y) with f₂(x,y) coprime to a₁ prime-by-prime, divide out gcd(x,y), and
//! extend to a determinant-1 substitution.
//!
//! The cyclic decomposition d₁ | d₂ | … | d_k is extracted Sylow prime by
//! Sylow prime: a cyclic subgroup of maximal order in an abelian p-group is
//! a direct summand, so recursing on the quotient and lifting its generators
//! (dividing out the ⟨x⟩-component of yᵖᵗ) yields a basis.  Construction
//! verifies the decomposition by checking that the mixed-radix enumeration
//! of generator products is a bijection onto the classes.

use std::collections::HashMap;

use super::kronecker::kronecker;
use super::{Discriminant, QuadForm, ReducedForm};
use crate::grouptheory::{subgroups_up_to_index, FiniteAbelianGroup};
use crate::primes::{ext_gcd, factorize, gcd, is_prime, isqrt, sqrt_mod_prime};
use crate::{Error, Result};

/// Position of a class in the sorted reduced-form table.
pub type ClassIndex = usize;

/// Largest supported class number; the Cayley table is h×h.
const MAX_CLASS_NUMBER: usize = 4096;

/// The classes representing a prime: a class and its inverse, which coincide
/// (ambiguous) exactly in the ramified case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: i64,
    pub class: ClassIndex,
    pub inverse_class: ClassIndex,
    pub ramified: bool,
}

/// A subgroup of the class group, listed by member classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSubgroup {
    pub classes: Vec<ClassIndex>,
    pub order: usize,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct ClassGroup {
    disc: Discriminant,
    forms: Vec<ReducedForm>,
    lookup: HashMap<(i64, i64, i64), ClassIndex>,
    identity: ClassIndex,
    cayley: Vec<u32>,
    inverse: Vec<ClassIndex>,
    orders: Vec<u64>,
    cyclic_orders: Vec<u64>,
    generators: Vec<ClassIndex>,
    class_of_code: Vec<ClassIndex>,
    code_of_class: Vec<usize>,
    squares: Vec<ClassIndex>,
    ambiguous: Vec<ClassIndex>,
}

/// All primitive reduced triples of discriminant d, sorted by (a, b, c).
fn enumerate_reduced(d: i64) -> Vec<ReducedForm> {
    let mut out = Vec::new();
    let amax = isqrt(-d / 3);
    for a in 1..=amax.max(1) {
        for b in -a..=a {
            if (b & 1) != (d & 1) {
                continue;
            }
            let num = (b as i128) * (b as i128) - d as i128;
            if num % (4 * a as i128) != 0 {
                continue;
            }
            let c = (num / (4 * a as i128)) as i64;
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            if gcd(gcd(a, b), c) != 1 {
                continue;
            }
            out.push(ReducedForm(QuadForm { a, b, c }));
        }
    }
    out.sort_by_key(|f| f.triple());
    out
}

/// Replace g by a properly equivalent form whose leading coefficient is
/// coprime to m.  Exists because g is primitive: for each prime q | m one of
/// g(1,0), g(0,1), g(1,1) is a unit mod q.
pub(crate) fn make_leading_coprime(g: &QuadForm, m: i64) -> QuadForm {
    if gcd(g.a, m) == 1 {
        return *g;
    }
    let mut x: i64 = 0;
    let mut y: i64 = 0;
    let mut modulus: i64 = 1;
    for (q, _) in factorize(m.unsigned_abs()) {
        let q = q as i64;
        let (xq, yq) = [(1i64, 0i64), (0, 1), (1, 1)]
            .into_iter()
            .find(|&(xq, yq)| g.eval(xq, yq) % q != 0)
            .expect("primitive form is a unit at one of (1,0),(0,1),(1,1)");
        // CRT-extend (x, y) from `modulus` to `modulus·q`.
        let (_, u, v) = ext_gcd(modulus, q);
        // u·modulus ≡ 1 (mod q), v·q ≡ 1 (mod modulus)
        let lift = |old: i64, target: i64| -> i64 {
            let m128 = modulus as i128 * q as i128;
            let t = (old as i128 * v as i128 * q as i128
                + target as i128 * u as i128 * modulus as i128)
                .rem_euclid(m128);
            t as i64
        };
        x = lift(x, xq);
        y = lift(y, yq);
        modulus *= q;
    }
    let g0 = gcd(x, y);
    if g0 > 1 {
        // f(x/g, y/g) = f(x,y)/g² still a unit modulo every q | m.
        x /= g0;
        y /= g0;
    }
    let (one, u, v) = ext_gcd(x, y);
    debug_assert_eq!(one, 1);
    let out = g.transform(x, -v, y, u);
    debug_assert_eq!(gcd(out.a, m), 1);
    out
}

/// Dirichlet composition of two primitive forms of the same discriminant;
/// the result is primitive of that discriminant but not reduced.
pub fn compose_forms(f: &QuadForm, g: &QuadForm) -> Result<QuadForm> {
    let d = f.disc();
    if g.disc() != d {
        return Err(Error::InvalidArgument(format!(
            "cannot compose forms of discriminants {} and {}",
            d,
            g.disc()
        )));
    }
    let g = make_leading_coprime(g, f.a);
    let (a1, b1) = (f.a, f.b);
    let (a2, b2) = (g.a, g.b);
    // B ≡ b₁ (2a₁) and B ≡ b₂ (2a₂): write B = b₁ + 2a₁t and solve
    // a₁t ≡ (b₂−b₁)/2 (mod a₂).
    debug_assert_eq!((b2 - b1) % 2, 0);
    let (one, inv_a1, _) = ext_gcd(a1.rem_euclid(a2), a2);
    debug_assert_eq!(one, 1);
    let t = (((b2 - b1) / 2).rem_euclid(a2) as i128 * inv_a1.rem_euclid(a2) as i128)
        .rem_euclid(a2 as i128);
    let a = a1 as i128 * a2 as i128;
    let b = (b1 as i128 + 2 * a1 as i128 * t).rem_euclid(2 * a);
    let num = b * b - d as i128;
    debug_assert_eq!(num.rem_euclid(4 * a), 0);
    let c = num / (4 * a);
    Ok(QuadForm {
        a: i64::try_from(a).expect("composite a fits i64"),
        b: i64::try_from(b).expect("composite b fits i64"),
        c: i64::try_from(c).expect("composite c fits i64"),
    })
}

/// x^e under the table operation `op` with identity `id`.
fn table_pow(op: &dyn Fn(usize, usize) -> usize, id: usize, x: usize, e: u64) -> usize {
    let mut r = id;
    let mut base = x;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = op(r, base);
        }
        base = op(base, base);
        e >>= 1;
    }
    r
}

/// Invariant factors and generators of an abelian p-group given by an
/// element list under `op`; returns (p-power order, generator) pairs in
/// descending order.
fn decompose_p_group(
    elems: &[usize],
    p: u64,
    op: &dyn Fn(usize, usize) -> usize,
    id: usize,
) -> Vec<(u64, usize)> {
    if elems.len() <= 1 {
        return Vec::new();
    }
    // Order of x is the least p^t killing it.
    let order_of = |x: usize| -> u64 {
        let mut o = 1u64;
        let mut y = x;
        while y != id {
            y = table_pow(op, id, y, p);
            o *= p;
        }
        o
    };
    let (x, m) = elems
        .iter()
        .map(|&e| (e, order_of(e)))
        .max_by_key(|&(e, o)| (o, std::cmp::Reverse(e)))
        .map(|(e, o)| (e, o))
        .unwrap();
    if m as usize == elems.len() {
        return vec![(m, x)];
    }
    // Powers of x and their discrete logs.
    let mut xpow = Vec::with_capacity(m as usize);
    let mut dlog = HashMap::new();
    let mut cur = id;
    for j in 0..m {
        xpow.push(cur);
        dlog.insert(cur, j);
        cur = op(cur, x);
    }
    // Cosets of ⟨x⟩: canonical representative = least member.
    let mut rep = HashMap::with_capacity(elems.len());
    let mut reps = Vec::new();
    for &e in elems {
        if rep.contains_key(&e) {
            continue;
        }
        let members: Vec<usize> = xpow.iter().map(|&xp| op(e, xp)).collect();
        let r = *members.iter().min().unwrap();
        for mb in members {
            rep.insert(mb, r);
        }
        reps.push(r);
    }
    reps.sort_unstable();
    reps.dedup();
    let qop = |i: usize, j: usize| -> usize { rep[&op(i, j)] };
    let sub = decompose_p_group(&reps, p, &qop, rep[&id]);
    let mut out = vec![(m, x)];
    for (q, ybar) in sub {
        // Lift: yᵠ lands in ⟨x⟩ at an exponent divisible by q (maximality of
        // m); subtract the ⟨x⟩-component to get an order-q complement element.
        let z = table_pow(op, id, ybar, q);
        let j = dlog[&z];
        debug_assert_eq!(j % q, 0);
        let fix = table_pow(op, id, x, (m - j / q) % m);
        out.push((q, op(ybar, fix)));
    }
    out
}

/// Invariant factors d₁ | … | d_k (ascending, each ≥ 2) with generators.
fn decompose_abelian(
    h: usize,
    op: &dyn Fn(usize, usize) -> usize,
    id: usize,
) -> (Vec<u64>, Vec<usize>) {
    if h <= 1 {
        return (Vec::new(), Vec::new());
    }
    let mut per_prime = Vec::new();
    for (p, e) in factorize(h as u64) {
        let pe = p.pow(e);
        let sylow: Vec<usize> = (0..h)
            .filter(|&x| table_pow(op, id, x, pe) == id)
            .collect();
        per_prime.push(decompose_p_group(&sylow, p, op, id));
    }
    let cols = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut orders = Vec::new();
    let mut gens = Vec::new();
    for col in 0..cols {
        let mut d = 1u64;
        let mut g = id;
        for part in &per_prime {
            if let Some(&(o, x)) = part.get(col) {
                d *= o;
                g = op(g, x);
            }
        }
        orders.push(d);
        gens.push(g);
    }
    orders.reverse();
    gens.reverse();
    debug_assert_eq!(orders.iter().product::<u64>(), h as u64);
    (orders, gens)
}

impl ClassGroup {
    /// Enumerates the class group of discriminant d and builds its Cayley
    /// table, inverse map, and cyclic decomposition.
    pub fn new(d: i64) -> Result<Self> {
        let disc = Discriminant::new(d)?;
        let forms = enumerate_reduced(d);
        let h = forms.len();
        if h > MAX_CLASS_NUMBER {
            return Err(Error::GroupTooLarge {
                order: h,
                limit: MAX_CLASS_NUMBER,
            });
        }
        let lookup: HashMap<(i64, i64, i64), ClassIndex> = forms
            .iter()
            .enumerate()
            .map(|(i, f)| (f.triple(), i))
            .collect();
        let identity = lookup[&disc.principal_form().reduce()?.triple()];

        let mut cayley = vec![0u32; h * h];
        for i in 0..h {
            for j in i..h {
                let prod = compose_forms(&forms[i].form(), &forms[j].form())?
                    .reduce()?
                    .triple();
                let k = lookup[&prod] as u32;
                cayley[i * h + j] = k;
                cayley[j * h + i] = k;
            }
        }

        let inverse: Vec<ClassIndex> = forms
            .iter()
            .map(|f| lookup[&f.form().conjugate().reduce().unwrap().triple()])
            .collect();

        let op = |i: usize, j: usize| -> usize { cayley[i * h + j] as usize };
        let mut orders = vec![0u64; h];
        for i in 0..h {
            let mut o = 1u64;
            let mut y = i;
            while y != identity {
                y = op(y, i);
                o += 1;
            }
            orders[i] = o;
        }

        let (cyclic_orders, generators) = decompose_abelian(h, &op, identity);

        // Mixed-radix code ↦ class, and the inverse permutation; the
        // bijection check certifies the decomposition.
        let mut class_of_code = vec![usize::MAX; h];
        let mut code_of_class = vec![usize::MAX; h];
        for code in 0..h {
            let mut rest = code;
            let mut cls = identity;
            for (t, &dt) in cyclic_orders.iter().enumerate() {
                let digit = (rest % dt as usize) as u64;
                rest /= dt as usize;
                cls = op(cls, table_pow(&op, identity, generators[t], digit));
            }
            class_of_code[code] = cls;
            assert_eq!(
                code_of_class[cls],
                usize::MAX,
                "cyclic decomposition failed to enumerate distinct classes"
            );
            code_of_class[cls] = code;
        }

        let mut squares: Vec<ClassIndex> = (0..h).map(|i| op(i, i)).collect();
        squares.sort_unstable();
        squares.dedup();
        let ambiguous: Vec<ClassIndex> = (0..h).filter(|&i| inverse[i] == i).collect();

        Ok(ClassGroup {
            disc,
            forms,
            lookup,
            identity,
            cayley,
            inverse,
            orders,
            cyclic_orders,
            generators,
            class_of_code,
            code_of_class,
            squares,
            ambiguous,
        })
    }

    pub fn disc(&self) -> &Discriminant {
        &self.disc
    }

    /// Class number h.
    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[ReducedForm] {
        &self.forms
    }

    pub fn form(&self, i: ClassIndex) -> &ReducedForm {
        &self.forms[i]
    }

    pub fn identity(&self) -> ClassIndex {
        self.identity
    }

    /// Class of an arbitrary primitive form of the same discriminant.
    pub fn class_of(&self, f: &QuadForm) -> Result<ClassIndex> {
        if f.disc() != self.disc.value() {
            return Err(Error::InvalidArgument(format!(
                "form {f} has discriminant {}, group has {}",
                f.disc(),
                self.disc.value()
            )));
        }
        Ok(self.lookup[&f.reduce()?.triple()])
    }

    pub fn compose(&self, i: ClassIndex, j: ClassIndex) -> ClassIndex {
        self.cayley[i * self.forms.len() + j] as usize
    }

    pub fn inverse(&self, i: ClassIndex) -> ClassIndex {
        self.inverse[i]
    }

    /// i^e, with negative e through the inverse.
    pub fn pow(&self, i: ClassIndex, e: i64) -> ClassIndex {
        let (base, exp) = if e < 0 {
            (self.inverse[i], e.unsigned_abs())
        } else {
            (i, e as u64)
        };
        let op = |x: usize, y: usize| self.compose(x, y);
        table_pow(&op, self.identity, base, exp)
    }

    pub fn order_of(&self, i: ClassIndex) -> u64 {
        self.orders[i]
    }

    /// Invariant factors d₁ | d₂ | … (ascending, each ≥ 2; empty for h = 1).
    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn generators(&self) -> &[ClassIndex] {
        &self.generators
    }

    /// The classes C = C⁻¹; their count is the number of genera.
    pub fn ambiguous_classes(&self) -> &[ClassIndex] {
        &self.ambiguous
    }

    /// Number of genera g = [𝒞 : 𝒞²] = #ambiguous classes.
    pub fn genera_count(&self) -> usize {
        self.ambiguous.len()
    }

    /// The subgroup 𝒞² of squares, sorted.
    pub fn squares(&self) -> &[ClassIndex] {
        &self.squares
    }

    /// The abstract group ∏ ℤ/dᵢ matching the cyclic decomposition; element
    /// codes translate through `class_of_code`/`code_of_class`.
    pub fn abstract_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(&self.cyclic_orders).expect("valid invariant factors")
    }

    pub fn class_of_code(&self, code: usize) -> ClassIndex {
        self.class_of_code[code]
    }

    pub fn code_of_class(&self, class: ClassIndex) -> usize {
        self.code_of_class[class]
    }

    /// The square subgroup 𝒞² as an abstract group, with the class realizing
    /// each mixed-radix code.  Genera are the cosets of 𝒞², so subset-sum
    /// growth inside this group decides whether a squarefree integer is
    /// represented by every class of its genus.
    pub fn squares_group(&self) -> (FiniteAbelianGroup, Vec<ClassIndex>) {
        let k = self.squares.len();
        let pos: HashMap<ClassIndex, usize> = self
            .squares
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let op =
            |i: usize, j: usize| -> usize { pos[&self.compose(self.squares[i], self.squares[j])] };
        let id = pos[&self.identity];
        let (orders, gens) = decompose_abelian(k, &op, id);
        let group = FiniteAbelianGroup::new(&orders).expect("valid invariant factors");
        let mut class_of_code = vec![usize::MAX; k];
        for code in 0..k {
            let mut rest = code;
            let mut cls = id;
            for (t, &dt) in orders.iter().enumerate() {
                let digit = (rest % dt as usize) as u64;
                rest /= dt as usize;
                cls = op(cls, table_pow(&op, id, gens[t], digit));
            }
            class_of_code[code] = self.squares[cls];
        }
        (group, class_of_code)
    }

    /// All subgroups of index ≤ bound, sorted by (index, members).
    pub fn subgroups_up_to_index(&self, bound: usize) -> Result<Vec<ClassSubgroup>> {
        let g = self.abstract_group();
        let mut out: Vec<ClassSubgroup> = subgroups_up_to_index(&g, bound)?
            .into_iter()
            .map(|s| {
                let mut classes: Vec<ClassIndex> =
                    s.elements.iter().map(|&e| self.class_of_code[e]).collect();
                classes.sort_unstable();
                ClassSubgroup {
                    order: classes.len(),
                    index: self.h() / classes.len(),
                    classes,
                }
            })
            .collect();
        out.sort_by(|a, b| (a.index, &a.classes).cmp(&(b.index, &b.classes)));
        Ok(out)
    }

    /// The class pair {C, C⁻¹} representing a non-inert prime p.
    ///
    /// Solves b² ≡ D (mod 4p) and reduces (p, b, (b²−D)/4p).  Ramified
    /// primes (p | D) yield a single ambiguous class, flagged.  Primes
    /// dividing the conductor make (p, b, ·) imprimitive — no primitive
    /// class represents them — reported as `ImprimitiveForm`.
    pub fn prime_to_class(&self, p: i64) -> Result<PrimeSplitting> {
        if p < 2 || !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        let d = self.disc.value();
        let chi = kronecker(d, p);
        if chi == -1 {
            return Err(Error::InertPrime { p, d });
        }
        let b = if p == 2 {
            match d.rem_euclid(8) {
                0 => 0,
                4 => 2,
                1 => 1,
                _ => unreachable!("χ_D(2) ≠ −1 leaves D ≡ 0,1,4 (mod 8)"),
            }
        } else if chi == 0 {
            // p | D: b ∈ {0, p} by parity of D.
            if d % 2 == 0 {
                0
            } else {
                p
            }
        } else {
            let r = sqrt_mod_prime(d.rem_euclid(p) as u64, p as u64).expect("split prime") as i64;
            if (r & 1) == (d & 1) {
                r
            } else {
                p - r
            }
        };
        let num = (b as i128) * (b as i128) - d as i128;
        debug_assert_eq!(num.rem_euclid(4 * p as i128), 0);
        let c = i64::try_from(num / (4 * p as i128)).expect("c fits i64");
        if gcd(gcd(p, b), c) != 1 {
            return Err(Error::ImprimitiveForm(p, b, c));
        }
        let class = self.lookup[&QuadForm { a: p, b, c }.reduce()?.triple()];
        Ok(PrimeSplitting {
            p,
            class,
            inverse_class: self.inverse[class],
            ramified: chi == 0,
        })
    }
}
