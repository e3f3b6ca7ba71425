//! Local (congruence-level) representation criteria for even-middle forms.
//!
//! For f = Ax² + 2Bxy + Cy² of discriminant −D (so D > 0 and 4 | D) and a
//! squarefree m = 2^{ε₂}·n with ε₂ ≤ 1 and (n, 2D) = 1, whether the *genus*
//! of f represents m depends on m only through congruences:
//!
//!   - for each odd prime p | D:  (n|p) = (A·2^{ε₂}|p), i.e. n mod p lies in
//!     the half-sized residue set 𝓛′_p;
//!   - a 2-adic condition n ≡ l (mod τ₂) for l in a set 𝓛₂ determined by ε₂,
//!     θ₂ = v₂(D), and the odd quotient of the discriminant;
//!   - every prime q | n must satisfy (−D|q) = 1.
//!
//! The prime-by-prime conditions glue by CRT into a single residue list 𝓛
//! modulo Q = τ₂·∏_{p|D odd} p, and every L ∈ 𝓛 satisfies (k(−D)|L) = 1,
//! where k(−D) is the signed squarefree kernel of the discriminant — so the
//! admissible residues all look split to the kernel character, which is what
//! the half-dimensional sieve needs.
//!
//! The coefficient A enters only through Legendre symbols and residues
//! mod 8, which are constant on the genus, so A may be replaced by the
//! leading coefficient of any properly equivalent form; we normalize to one
//! coprime to 2D (hence odd).

use crate::primes::{factorize, gcd, is_squarefree, squarefree_kernel};
use crate::qforms::{kronecker, make_leading_coprime, QuadForm};
use crate::{Error, Result};

/// Discriminant data feeding the local criteria: −D = disc f with D > 0,
/// the 2-adic valuation θ₂ ≥ 2, the odd prime factorization, and the signed
/// quotients left after dividing out one prime's full power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDiscriminant {
    /// Leading coefficient of an equivalent form, coprime to 2D (odd > 0).
    pub lead: i64,
    /// D > 0 with −D the discriminant; 4 | D because the middle is even.
    pub d_pos: i64,
    /// θ₂ = v₂(D) ≥ 2.
    pub theta2: u32,
    /// Odd primes p | D with their exponents θ_p ≥ 1, ascending.
    pub odd_primes: Vec<(i64, u32)>,
    /// Signed 2-adic quotient −D/2^{θ₂} (odd, negative).  The quotient
    /// enters the residue tables with its sign: the classical mod-4/mod-8
    /// behaviour of x²+y² and x²+2y² pins this convention, and the
    /// brute-force representation oracle confirms it on every tested
    /// discriminant.
    pub d2: i64,
    /// Signed quotients −D/p^{θ_p} per odd prime, parallel to `odd_primes`.
    pub dp: Vec<i64>,
    /// Signed squarefree kernel k(−D) < 0.
    pub kernel: i64,
}

impl LocalDiscriminant {
    pub fn new(f: &QuadForm) -> Result<Self> {
        if f.a <= 0 || f.disc() >= 0 {
            return Err(Error::NotPositiveDefinite(f.a, f.b, f.c));
        }
        if !f.is_primitive() {
            return Err(Error::ImprimitiveForm(f.a, f.b, f.c));
        }
        if f.b % 2 != 0 {
            return Err(Error::OddMiddleCoefficient(f.a, f.b, f.c));
        }
        let disc = f.disc();
        let d_pos = -disc;
        let mut theta2 = 0u32;
        let mut odd_primes = Vec::new();
        for (p, e) in factorize(d_pos as u64) {
            if p == 2 {
                theta2 = e;
            } else {
                odd_primes.push((p as i64, e));
            }
        }
        debug_assert!(theta2 >= 2, "even middle coefficient forces 4 | D");
        let dp = odd_primes.iter().map(|&(p, e)| disc / p.pow(e)).collect();
        Ok(LocalDiscriminant {
            lead: make_leading_coprime(f, 2 * d_pos).a,
            d_pos,
            theta2,
            odd_primes,
            d2: disc >> theta2,
            dp,
            kernel: squarefree_kernel(disc),
        })
    }
}

/// The residue-level representation conditions at 2-adic level ε₂ ∈ {0, 1}:
/// m = 2^{ε₂}·n is represented by the genus iff n mod Q ∈ 𝓛 and every prime
/// of n passes `admits_prime`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalConditions {
    /// Which 2-adic case applies: 4–7 for ε₂ = 0 and θ₂ = 2, 3, 4, ≥5;
    /// 9–10 for ε₂ = 1 and θ₂ = 2, 3; 0 when no case exists (θ₂ ≥ 4 forms
    /// never represent 2·odd, so the level is empty).
    pub case_id: u8,
    /// 2-adic level: m = 2^{ε₂}·n with n odd.
    pub eps2: u32,
    /// D > 0 with −D the discriminant.
    pub d_pos: i64,
    /// Normalized leading coefficient (odd, coprime to 2D).
    pub lead: i64,
    /// Admissible residues of n mod τ₂, sorted; empty when the level is.
    pub l2: Vec<u64>,
    /// 2-adic modulus τ₂ ∈ {4, 8}.
    pub tau2: u64,
    /// κ = |𝓛₂|.
    pub kappa: usize,
    /// Per odd p | D: 𝓛′_p = {l : 0 < l < p, (l|p) = (A·2^{ε₂}|p)}, sorted.
    pub l_prime: Vec<(i64, Vec<u64>)>,
    /// Per odd p | D: 𝓛″_p = {l : (l|p) = (−A·2^{ε₂}·k(−D_p)|p)}, sorted.
    pub l_dprime: Vec<(i64, Vec<u64>)>,
    /// Q = τ₂·∏_{p|D odd} p.
    pub q: u64,
    /// 𝓛: all 0 < L < Q with L mod τ₂ ∈ 𝓛₂ and L mod p ∈ 𝓛′_p, sorted.
    pub l_set: Vec<u64>,
    /// Signed squarefree kernel k(−D); primes of n need (k(−D)|q) = 1.
    pub kernel: i64,
}

impl LocalConditions {
    /// Whether an odd prime q ∤ 2D may divide n: (k(−D)|q) = 1, which for
    /// such q equals (−D|q) = 1.
    pub fn admits_prime(&self, q: i64) -> bool {
        kronecker(self.kernel, q) == 1
    }

    /// Whether the genus represents m = 2^{ε₂}·n; m must be squarefree,
    /// positive, share at most a factor 2 with D, and match this level.
    pub fn admits(&self, m: i64) -> Result<bool> {
        if m < 1 {
            return Err(Error::NotPositive(m));
        }
        if !is_squarefree(m as u64) {
            return Err(Error::NotSquarefree(m));
        }
        let g = gcd(m, self.d_pos);
        if g > 2 {
            return Err(Error::NotCoprimeEnough {
                m,
                d: self.d_pos,
                g,
            });
        }
        let eps2 = (m % 2 == 0) as u32;
        if eps2 != self.eps2 {
            return Err(Error::InvalidArgument(format!(
                "m = {m} sits at 2-adic level {eps2}, conditions were built for level {}",
                self.eps2
            )));
        }
        let n = m >> eps2;
        if self.l_set.binary_search(&(n as u64 % self.q)).is_err() {
            return Ok(false);
        }
        Ok(factorize(n as u64)
            .iter()
            .all(|&(p, _)| self.admits_prime(p as i64)))
    }
}

/// Builds the residue conditions of level ε₂ for the genus of f.
///
/// Asserts the structural identities at build time: |𝓛′_p| = |𝓛″_p| =
/// (p−1)/2, |𝓛| = κ·∏(p−1)/2, and (k(−D)|L) = 1 for every L ∈ 𝓛.
pub fn build_l_set(f: &QuadForm, eps2: u32) -> Result<LocalConditions> {
    if eps2 > 1 {
        return Err(Error::InvalidArgument(format!(
            "2-adic level eps2 = {eps2} is out of range; squarefree m forces eps2 <= 1"
        )));
    }
    let ld = LocalDiscriminant::new(f)?;
    let a = ld.lead;
    let d2 = ld.d2;
    let (case_id, tau2, raw): (u8, u64, Vec<i64>) = match (eps2, ld.theta2) {
        (0, 2) => (4, 4, vec![a, -a * d2]),
        (0, 3) => (5, 8, vec![a, a * (1 - 2 * d2)]),
        (0, 4) => (6, 4, vec![a]),
        (0, _) => (7, 8, vec![a]),
        (1, 2) if d2.rem_euclid(4) == 3 => (9, 4, vec![a * (1 - d2) / 2]),
        (1, 2) => (9, 4, vec![]),
        (1, 3) => (10, 8, vec![-a * d2, a * (2 - d2)]),
        // θ₂ ≥ 4 with A odd forces v₂(f(x,y)) ≠ 1, so no residue admits 2n.
        (1, _) => (0, 8, vec![]),
        _ => unreachable!("eps2 validated above"),
    };
    let mut l2: Vec<u64> = raw
        .into_iter()
        .map(|v| v.rem_euclid(tau2 as i64) as u64)
        .collect();
    l2.sort_unstable();
    l2.dedup();
    let kappa = l2.len();
    debug_assert!(l2.iter().all(|&l| l % 2 == 1), "2-adic residues are odd");

    let two_pow = 1i64 << eps2;
    let mut l_prime = Vec::with_capacity(ld.odd_primes.len());
    let mut l_dprime = Vec::with_capacity(ld.odd_primes.len());
    for (i, &(p, _)) in ld.odd_primes.iter().enumerate() {
        let t1 = kronecker(a * two_pow, p);
        let t2 = kronecker(-a * two_pow * squarefree_kernel(ld.dp[i]), p);
        debug_assert!(t1 != 0 && t2 != 0, "targets are units mod p");
        let set = |target: i32| -> Vec<u64> {
            (1..p as u64)
                .filter(|&l| kronecker(l as i64, p) == target)
                .collect()
        };
        let (s1, s2) = (set(t1), set(t2));
        assert_eq!(s1.len(), (p as usize - 1) / 2);
        assert_eq!(s2.len(), (p as usize - 1) / 2);
        l_prime.push((p, s1));
        l_dprime.push((p, s2));
    }

    let q = tau2 * ld.odd_primes.iter().map(|&(p, _)| p as u64).product::<u64>();
    let l_set: Vec<u64> = (1..q)
        .filter(|&l| {
            l2.binary_search(&(l % tau2)).is_ok()
                && l_prime
                    .iter()
                    .all(|(p, lp)| lp.binary_search(&(l % *p as u64)).is_ok())
        })
        .collect();
    let expected: usize = kappa
        * ld.odd_primes
            .iter()
            .map(|&(p, _)| (p as usize - 1) / 2)
            .product::<usize>();
    assert_eq!(l_set.len(), expected, "CRT count of admissible residues");
    for &l in &l_set {
        assert_eq!(kronecker(ld.kernel, l as i64), 1, "kernel symbol at L = {l}");
    }

    Ok(LocalConditions {
        case_id,
        eps2,
        d_pos: ld.d_pos,
        lead: ld.lead,
        l2,
        tau2,
        kappa,
        l_prime,
        l_dprime,
        q,
        l_set,
        kernel: ld.kernel,
    })
}

/// Whether the genus of f represents the squarefree m, by residue tests
/// alone (no lattice search).
pub fn genus_represents_local(f: &QuadForm, m: i64) -> Result<bool> {
    if m < 1 {
        return Err(Error::NotPositive(m));
    }
    build_l_set(f, (m % 2 == 0) as u32)?.admits(m)
}
