//! Genus theory over the class group.
//!
//! The squares 𝒞² form a subgroup of the class group 𝒞 and its cosets are
//! the *genera*: classes in one genus represent the same residues mod D and
//! are indistinguishable by any congruence test.  There are g = [𝒞:𝒞²]
//! genera, equal to the number of ambiguous classes (C = C⁻¹), and the
//! classical assigned characters — Legendre symbols at the odd primes of D
//! plus at most two mod-8 characters — separate exactly the genera.
//!
//! A squarefree n whose primes all split or ramify is represented by the
//! classes (∏_j C_j⁻¹)·s({C_j²}): each split prime p_j | n offers the choice
//! C_j or C_j⁻¹ = C_j⁻¹·C_j², so expanding the product of the pairs walks a
//! subset-sum set of squares inside one fixed genus coset.  When those
//! squares generate all of 𝒞², every class of the genus represents n; the
//! gap between "some class" and "the whole genus" is what the counting
//! experiments measure.
//!
//! [`local`] holds the residue-level criteria deciding which m a *genus*
//! represents; [`constants`] evaluates the half-dimensional sieve constants
//! C₀, Ψ, θ, Ω that turn those criteria into shifted-prime predictions.

mod constants;
mod local;

pub use constants::{
    c0_constant, half_dim_check, omega_d, phi_rel, sieve_constants, theta_constant, C0Report,
    OmegaReport, OmegaTerm, ResidualRow, SieveConstants, EULER_GAMMA,
};
pub use local::{build_l_set, genus_represents_local, LocalConditions, LocalDiscriminant};

use crate::grouptheory::ElementSet;
use crate::primes::{factorize, gcd, is_squarefree};
use crate::qforms::kronecker;
use crate::{ClassGroup, ClassIndex, Error, QuadForm, Result};

/// The partition of classes into genera: cosets of the square subgroup 𝒞².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusPartition {
    genus_ids: Vec<usize>,
    genera: Vec<Vec<ClassIndex>>,
}

impl GenusPartition {
    /// Number of genera g = [𝒞 : 𝒞²].
    pub fn count(&self) -> usize {
        self.genera.len()
    }

    /// Genus id of a class; ids are assigned in order of each genus's
    /// smallest class index, so the principal genus is id 0.
    pub fn genus_of(&self, class: ClassIndex) -> usize {
        self.genus_ids[class]
    }

    /// Member classes of one genus, ascending.
    pub fn members(&self, id: usize) -> &[ClassIndex] {
        &self.genera[id]
    }

    /// All genera, each sorted, ordered by smallest member.
    pub fn genera(&self) -> &[Vec<ClassIndex>] {
        &self.genera
    }
}

/// Partitions the class group into genera by walking cosets of 𝒞².
pub fn genus_partition(g: &ClassGroup) -> GenusPartition {
    let h = g.h();
    let squares = g.squares();
    let mut genus_ids = vec![usize::MAX; h];
    let mut genera = Vec::new();
    for c in 0..h {
        if genus_ids[c] != usize::MAX {
            continue;
        }
        let id = genera.len();
        let mut members: Vec<ClassIndex> = squares.iter().map(|&s| g.compose(c, s)).collect();
        members.sort_unstable();
        for &m in &members {
            genus_ids[m] = id;
        }
        genera.push(members);
    }
    debug_assert_eq!(genera.len(), g.genera_count());
    debug_assert!(genera.iter().all(|c| c.len() == squares.len()));
    GenusPartition { genus_ids, genera }
}

/// A value of f coprime to 2D, scanned in a deterministic expanding box;
/// exists for every primitive form.
fn represented_unit(f: &QuadForm, two_d: i64) -> i64 {
    for bound in 1..=64i64 {
        for x in -bound..=bound {
            for y in -bound..=bound {
                if x.abs().max(y.abs()) < bound {
                    continue;
                }
                let v = f.eval(x, y);
                if v > 0 && gcd(v, two_d) == 1 {
                    return v;
                }
            }
        }
    }
    unreachable!("primitive forms represent units modulo 2D in a small box")
}

/// The assigned character vector of a form: (r|p) for each odd p | D at a
/// represented r coprime to 2D, then the mod-8 characters that D's 2-adic
/// type assigns (δ(r) = (−1)^((r−1)/2), ε(r) = (−1)^((r²−1)/8)).
///
/// Two forms of the same discriminant get equal vectors iff they lie in the
/// same genus.
pub fn genus_characters(f: &QuadForm) -> Result<Vec<i8>> {
    if f.a <= 0 || f.disc() >= 0 {
        return Err(Error::NotPositiveDefinite(f.a, f.b, f.c));
    }
    if !f.is_primitive() {
        return Err(Error::ImprimitiveForm(f.a, f.b, f.c));
    }
    let d = f.disc();
    let abs_d = -d;
    let r = represented_unit(f, 2 * abs_d);
    let mut chars: Vec<i8> = factorize(abs_d as u64)
        .into_iter()
        .filter(|&(p, _)| p != 2)
        .map(|(p, _)| kronecker(r, p as i64) as i8)
        .collect();
    if abs_d % 4 == 0 {
        let delta: i8 = if r % 4 == 1 { 1 } else { -1 };
        let eps: i8 = if r % 8 == 1 || r % 8 == 7 { 1 } else { -1 };
        match (abs_d / 4).rem_euclid(8) {
            1 | 5 | 4 => chars.push(delta),
            3 | 7 => {}
            2 => chars.push(delta * eps),
            6 => chars.push(eps),
            0 => {
                chars.push(delta);
                chars.push(eps);
            }
            _ => unreachable!(),
        }
    }
    Ok(chars)
}

/// The set of classes representing a squarefree n > 0.
///
/// Expanding ∏_j {C_j, C_j⁻¹} over the split primes p_j | n gives
/// (∏_j C_j⁻¹)·s({C_j²}) with the squares folded as a multiset — repeated
/// square values still contribute independent choices.  Ramified primes
/// contribute their single ambiguous class; an inert prime factor (or one
/// dividing the conductor) makes n unrepresentable: empty set.
pub fn classes_representing(g: &ClassGroup, n: i64) -> Result<Vec<ClassIndex>> {
    if n < 1 {
        return Err(Error::NotPositive(n));
    }
    if !is_squarefree(n as u64) {
        return Err(Error::NotSquarefree(n));
    }
    let mut acc = g.identity();
    let mut square_codes = Vec::new();
    for (p, _) in factorize(n as u64) {
        match g.prime_to_class(p as i64) {
            Ok(sp) if sp.ramified => acc = g.compose(acc, sp.class),
            Ok(sp) => {
                acc = g.compose(acc, g.inverse(sp.class));
                square_codes.push(g.code_of_class(g.compose(sp.class, sp.class)));
            }
            Err(Error::InertPrime { .. }) | Err(Error::ImprimitiveForm(..)) => {
                return Ok(Vec::new())
            }
            Err(e) => return Err(e),
        }
    }
    let ag = g.abstract_group();
    let mut sums = ElementSet::singleton(ag.n(), g.code_of_class(acc));
    for code in square_codes {
        sums.grow_by(&ag, code);
    }
    let mut classes: Vec<ClassIndex> = sums.iter().map(|code| g.class_of_code(code)).collect();
    classes.sort_unstable();
    Ok(classes)
}
