//! Finite abelian groups in the abstract, dense element sets, subset sums,
//! the density-greedy growth algorithm, the three-alternative classifier,
//! and additive-combinatorics diagnostics.
//!
//! A group is ∏ᵢ ℤ/dᵢ with invariant factors d₁ | d₂ | … | d_k; elements are
//! mixed-radix codes in [0, h′) with digit t running modulo d_t.  Sets of
//! elements are bit-vectors over the code space, which makes the core
//! identity s(A ∪ {x}) = s(A) ∪ (s(A) + x) a word-parallel operation.

mod classify;
mod diagnostics;
mod subgroups;
mod subset_sums;

pub use classify::{classify_subset_sums, verify_classification, Alternative, ClassifierParams, Classification};
pub use diagnostics::{
    additive_energy, kneser_check, near_coset_witness, sym1, CosetFit, KneserReport,
    NearCosetOutcome,
};
pub use subgroups::{all_subgroups, is_subgroup, subgroups_up_to_index, Subgroup};
pub use subset_sums::{greedy_grow, omega_set, subset_sums, GreedyStop, GreedyTranscript};

use crate::{Error, Result};

/// ∏ᵢ ℤ/dᵢ with d₁ | d₂ | … | d_k, all dᵢ ≥ 2; the trivial group is k = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    n: usize,
    exponent: u64,
}

impl FiniteAbelianGroup {
    /// Validates the divisibility chain d₁ | d₂ | … and builds the group.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::NotInvariantFactors(orders.to_vec()));
        }
        for w in orders.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::NotInvariantFactors(orders.to_vec()));
            }
        }
        let mut n = 1usize;
        let mut strides = Vec::with_capacity(orders.len());
        for &d in orders {
            strides.push(n);
            n = n.checked_mul(d as usize).ok_or(Error::GroupTooLarge {
                order: usize::MAX,
                limit: usize::MAX,
            })?;
        }
        let exponent = orders.last().copied().unwrap_or(1);
        Ok(FiniteAbelianGroup {
            orders: orders.to_vec(),
            strides,
            n,
            exponent,
        })
    }

    /// ℤ/m as a convenience.
    pub fn cyclic(m: u64) -> Result<Self> {
        if m == 1 {
            FiniteAbelianGroup::new(&[])
        } else {
            FiniteAbelianGroup::new(&[m])
        }
    }

    /// Group order h′.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponent L = d_k (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn decode(&self, x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| (x / s) as u64 % d)
            .collect()
    }

    pub fn encode(&self, digits: &[u64]) -> usize {
        debug_assert_eq!(digits.len(), self.orders.len());
        digits
            .iter()
            .zip(self.orders.iter().zip(&self.strides))
            .map(|(&v, (&d, &s))| (v % d) as usize * s)
            .sum()
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let mut out = 0usize;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let a = (x / s) % d as usize;
            let b = (y / s) % d as usize;
            let mut c = a + b;
            if c >= d as usize {
                c -= d as usize;
            }
            out += c * s;
        }
        out
    }

    pub fn neg(&self, x: usize) -> usize {
        let mut out = 0usize;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let a = (x / s) % d as usize;
            if a != 0 {
                out += (d as usize - a) * s;
            }
        }
        out
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// k·x (k ≥ 0) digitwise.
    pub fn scalar(&self, x: usize, k: u64) -> usize {
        let mut out = 0usize;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let a = ((x / s) as u64) % d;
            out += ((a as u128 * k as u128) % d as u128) as usize * s;
        }
        out
    }

    pub fn order_of(&self, x: usize) -> u64 {
        let mut o = 1u64;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let a = ((x / s) as u64) % d;
            let g = crate::primes::gcd(a as i64, d as i64) as u64;
            o = lcm(o, d / g);
        }
        o
    }

    /// The self-duality pairing ⟨x, y⟩ = Σ_t x_t·y_t·(L/d_t) mod L, valued in
    /// ℤ/L; a perfect pairing identifying the group with its dual.
    pub fn pairing(&self, x: usize, y: usize) -> u64 {
        let l = self.exponent;
        let mut acc = 0u64;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let a = ((x / s) as u64) % d;
            let b = ((y / s) as u64) % d;
            let term = ((a as u128 * b as u128 % d as u128) * (l / d) as u128) % l as u128;
            acc = ((acc as u128 + term) % l as u128) as u64;
        }
        acc
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::primes::gcd(a as i64, b as i64) as u64 * b
}

/// A dense subset of a group's code space: bit-vector plus cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    words: Vec<u64>,
    n: usize,
    count: usize,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet {
            words: vec![0; n.div_ceil(64)],
            n,
            count: 0,
        }
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(x);
        s
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        if n % 64 != 0 {
            *s.words.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        s.count = n;
        s
    }

    pub fn from_elements(n: usize, elems: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &e in elems {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.n
    }

    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Inserts x; returns whether it was new.
    pub fn insert(&mut self, x: usize) -> bool {
        let w = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// |S ∪ (S + x)| without materializing the union.
    pub fn grown_len(&self, g: &FiniteAbelianGroup, x: usize) -> usize {
        let mut extra = 0;
        for e in self.iter() {
            if !self.contains(g.add(e, x)) {
                extra += 1;
            }
        }
        self.count + extra
    }

    /// S ← S ∪ (S + x).
    pub fn grow_by(&mut self, g: &FiniteAbelianGroup, x: usize) {
        let shifted: Vec<usize> = self.iter().map(|e| g.add(e, x)).collect();
        for e in shifted {
            self.insert(e);
        }
    }

    /// The translate S + x.
    pub fn translate(&self, g: &FiniteAbelianGroup, x: usize) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        for e in self.iter() {
            out.insert(g.add(e, x));
        }
        out
    }

    pub fn union_in_place(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.n, other.n);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}
