//! Three-alternative classifier for subset sums of a set A in a finite
//! abelian group G of order h′: either s(A) is all of G, or a low-index
//! subgroup H contains all but boundedly many elements of A, or a short
//! prefix x₁..x_k determines a small stalled set Ω ⊇ A.
//!
//! The search runs the greedy growth with the stall threshold
//! |s(A₁ ∪ {x})| < (1−ε₁)|s(A₁)| + ε₁h′; on stall it measures the global
//! stalled set and certifies whichever alternative its size permits.

use super::subgroups::{is_subgroup, subgroups_up_to_index, Subgroup};
use super::subset_sums::subset_sums;
use super::{ElementSet, FiniteAbelianGroup};
use crate::{Error, Result};

/// Tunable constants.  The defaults follow the schedule κ₁ = ε²,
/// κ = 2^{−100/ε}, ε₁ = 10⁻³ε³, the last two clipped up to 2⁻³⁰ so they
/// stay representable at desk scale; the witness-size constants are
/// c(ε) = ⌈20/ε²⌉ and a log log coefficient of 3.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierParams {
    pub eps: f64,
    /// Stall-threshold mixing weight ε₁.
    pub eps1: f64,
    /// Reported near-coset tolerance κ (not consumed by the search).
    pub kappa: f64,
    /// Reported density-increment tolerance κ₁ (not consumed by the search).
    pub kappa1: f64,
    /// Cap on |A∖H| for the subgroup alternative.
    pub c_eps: usize,
    /// Coefficient of log log h′ in the k bound.
    pub c_loglog: f64,
}

impl ClassifierParams {
    /// Default schedule at quality parameter ε ∈ (0, ½).
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.5) || !eps.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "classifier needs 0 < eps < 1/2, got {eps}"
            )));
        }
        let clip = 2f64.powi(-30);
        Ok(ClassifierParams {
            eps,
            eps1: (1e-3 * eps.powi(3)).max(clip),
            kappa: 2f64.powf(-100.0 / eps).max(clip),
            kappa1: eps * eps,
            c_eps: (20.0 / (eps * eps)).ceil() as usize,
            c_loglog: 3.0,
        })
    }

    /// Largest admissible subgroup index, the integers < 2/ε.
    pub fn subgroup_index_bound(&self) -> usize {
        (2.0 / self.eps).ceil() as usize - 1
    }

    /// Growth requirement on |s(A₁ ∪ {x})| below which x counts as stalled.
    pub fn stall_threshold(&self, s_len: usize, h: usize) -> f64 {
        (1.0 - self.eps1) * s_len as f64 + self.eps1 * h as f64
    }

    /// Bound (1 + ε)·log₂h′ + c·log log h′ + c(ε) on the prefix length k.
    pub fn k_bound(&self, h: usize) -> f64 {
        let loglog = if h >= 3 { (h as f64).ln().ln().max(0.0) } else { 0.0 };
        (1.0 + self.eps) * (h as f64).log2() + self.c_loglog * loglog + self.c_eps as f64
    }

    /// Bound ε·h′ + k on the stalled-set size.
    pub fn omega_bound(&self, h: usize, k: usize) -> f64 {
        self.eps * h as f64 + k as f64
    }
}

/// Which alternative was certified, with its witness.
#[derive(Debug, Clone)]
pub enum Alternative {
    /// s(A) = G.
    SumsAll,
    /// A proper subgroup H of index < 2/ε with |A∖H| ≤ c(ε).
    Subgroup {
        subgroup: Subgroup,
        outside: Vec<usize>,
    },
    /// A prefix x₁..x_k whose stalled set Ω ⊇ A has |Ω| ≤ εh′ + k.
    SmallOmega {
        chosen: Vec<usize>,
        omega: ElementSet,
    },
}

impl Alternative {
    pub fn label(&self) -> &'static str {
        match self {
            Alternative::SumsAll => "SUMS_ALL",
            Alternative::Subgroup { .. } => "SUBGROUP",
            Alternative::SmallOmega { .. } => "SMALL_OMEGA",
        }
    }
}

/// Classifier report: the alternative, the subset sums of the chosen prefix
/// (of all of A for `SumsAll`), the greedy density transcript, and the
/// parameters used.
#[derive(Debug, Clone)]
pub struct Classification {
    pub alternative: Alternative,
    pub sums: ElementSet,
    pub densities: Vec<f64>,
    pub params: ClassifierParams,
}

fn dedup_sorted(a: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// The stalled set of the prefix with sums s: all x ∈ G below the growth
/// threshold, plus the prefix itself.
fn stalled_set(
    g: &FiniteAbelianGroup,
    s: &ElementSet,
    chosen: &[usize],
    params: &ClassifierParams,
) -> ElementSet {
    let threshold = params.stall_threshold(s.len(), g.n());
    let mut omega = ElementSet::empty(g.n());
    for x in 0..g.n() {
        if (s.grown_len(g, x) as f64) < threshold {
            omega.insert(x);
        }
    }
    for &x in chosen {
        omega.insert(x);
    }
    omega
}

/// Runs the alternative search.  Order: s(A) = G; otherwise greedy growth to
/// a stall; a stalled set within ε h′ + k certifies the small-Ω alternative;
/// otherwise the subgroups of index < 2/ε are searched for one containing
/// all of A but ≤ c(ε) elements; if none qualifies (or the lattice exceeds
/// desk scale) the small-Ω witness is emitted as measured.
pub fn classify_subset_sums(
    g: &FiniteAbelianGroup,
    a: &[usize],
    params: &ClassifierParams,
) -> Classification {
    let h = g.n();
    let a = dedup_sorted(a);

    let full = subset_sums(g, &a);
    if full.is_full() {
        return Classification {
            alternative: Alternative::SumsAll,
            sums: full,
            densities: Vec::new(),
            params: params.clone(),
        };
    }

    let mut s = ElementSet::singleton(h, 0);
    let mut pool = a.clone();
    let mut chosen = Vec::new();
    let mut densities = Vec::new();
    while !pool.is_empty() {
        // strict > over the ascending pool keeps ties at the lowest code
        let mut best_idx = 0usize;
        let mut best_len = s.grown_len(g, pool[0]);
        for (i, &x) in pool.iter().enumerate().skip(1) {
            let l = s.grown_len(g, x);
            if l > best_len {
                best_len = l;
                best_idx = i;
            }
        }
        if (best_len as f64) < params.stall_threshold(s.len(), h) {
            break;
        }
        let x = pool.remove(best_idx);
        s.grow_by(g, x);
        chosen.push(x);
        densities.push(s.len() as f64 / h as f64);
    }

    let omega = stalled_set(g, &s, &chosen, params);
    let small_omega_ok = omega.len() as f64 <= params.omega_bound(h, chosen.len());

    if !small_omega_ok {
        if let Ok(subs) = subgroups_up_to_index(g, params.subgroup_index_bound()) {
            let mut best: Option<(Vec<usize>, &Subgroup)> = None;
            for sub in &subs {
                if sub.index < 2 {
                    continue;
                }
                let members = ElementSet::from_elements(h, &sub.elements);
                let outside: Vec<usize> =
                    a.iter().copied().filter(|&x| !members.contains(x)).collect();
                // subs is (index, members)-sorted, so strict < keeps the
                // lowest-index, lexicographically-first minimizer
                if best.as_ref().map_or(true, |(o, _)| outside.len() < o.len()) {
                    best = Some((outside, sub));
                }
            }
            if let Some((outside, sub)) = best {
                if outside.len() <= params.c_eps {
                    return Classification {
                        alternative: Alternative::Subgroup {
                            subgroup: sub.clone(),
                            outside,
                        },
                        sums: s,
                        densities,
                        params: params.clone(),
                    };
                }
            }
        }
    }

    Classification {
        alternative: Alternative::SmallOmega { chosen, omega },
        sums: s,
        densities,
        params: params.clone(),
    }
}

/// Re-verifies a report by independent recomputation: the full bitset test
/// for `SumsAll`; membership scan, index, and |A∖H| for `Subgroup`; and for
/// `SmallOmega` the stalled set rebuilt from the prefix, coverage of A, and
/// both size bounds.
pub fn verify_classification(
    g: &FiniteAbelianGroup,
    a: &[usize],
    report: &Classification,
) -> bool {
    let h = g.n();
    let a = dedup_sorted(a);
    let params = &report.params;
    match &report.alternative {
        Alternative::SumsAll => subset_sums(g, &a).is_full(),
        Alternative::Subgroup { subgroup, outside } => {
            let members = ElementSet::from_elements(h, &subgroup.elements);
            let recomputed: Vec<usize> =
                a.iter().copied().filter(|&x| !members.contains(x)).collect();
            is_subgroup(g, &subgroup.elements)
                && subgroup.order == subgroup.elements.len()
                && subgroup.order * subgroup.index == h
                && subgroup.index >= 2
                && (subgroup.index as f64) < 2.0 / params.eps
                && recomputed == *outside
                && outside.len() <= params.c_eps
        }
        Alternative::SmallOmega { chosen, omega } => {
            let k = chosen.len();
            let s = subset_sums(g, chosen);
            let recomputed = stalled_set(g, &s, chosen, params);
            chosen.iter().all(|x| a.binary_search(x).is_ok())
                && recomputed == *omega
                && a.iter().all(|&x| omega.contains(x))
                && omega.len() as f64 <= params.omega_bound(h, k)
                && (k as f64) < params.k_bound(h)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(eps: f64) -> ClassifierParams {
        ClassifierParams::new(eps).unwrap()
    }

    #[test]
    fn parameter_schedule_defaults() {
        let p = params(0.1);
        assert_eq!(p.c_eps, 2000);
        assert!((p.eps1 - 1e-6).abs() < 1e-18);
        assert_eq!(p.kappa, 2f64.powi(-30)); // 2^{-1000} clips up
        assert!((p.kappa1 - 0.01).abs() < 1e-15);
        assert_eq!(p.subgroup_index_bound(), 19); // strictly below 2/ε = 20
        assert!(ClassifierParams::new(0.0).is_err());
        assert!(ClassifierParams::new(0.5).is_err());
    }

    #[test]
    fn full_set_sums_all() {
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let a: Vec<usize> = (0..8).collect();
        let c = classify_subset_sums(&g, &a, &params(0.1));
        assert!(matches!(c.alternative, Alternative::SumsAll));
        assert!(verify_classification(&g, &a, &c));

        // ℤ/2 with A = {1}: s = {0,1} = G already
        let g2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let c2 = classify_subset_sums(&g2, &[1], &params(0.1));
        assert!(matches!(c2.alternative, Alternative::SumsAll));
        assert!(verify_classification(&g2, &[1], &c2));
    }

    #[test]
    fn set_inside_index_two_subgroup() {
        // G = ℤ/2 × ℤ/16, A = {0} × ℤ/16 (codes 2t): growth stalls with
        // s = H, the stalled set is all of H — too big for small-Ω — and the
        // subgroup search returns H at index 2 with nothing outside.
        let g = FiniteAbelianGroup::new(&[2, 16]).unwrap();
        let a: Vec<usize> = (0..16).map(|t| g.encode(&[0, t])).collect();
        let c = classify_subset_sums(&g, &a, &params(0.1));
        match &c.alternative {
            Alternative::Subgroup { subgroup, outside } => {
                assert_eq!(subgroup.index, 2);
                assert_eq!(subgroup.elements, a);
                assert!(outside.is_empty());
            }
            other => panic!("expected SUBGROUP, got {}", other.label()),
        }
        assert!(verify_classification(&g, &a, &c));
    }

    #[test]
    fn mostly_inside_subgroup_with_one_straggler() {
        // A = {0, 1} in ℤ/8 stalls at s = {0,1}; Ω = {0,1} has size 2 over
        // the ε h′ + k = 1.8 allowance, and the evens contain all of A but 1.
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let a = [0usize, 1];
        let c = classify_subset_sums(&g, &a, &params(0.1));
        match &c.alternative {
            Alternative::Subgroup { subgroup, outside } => {
                assert_eq!(subgroup.elements, vec![0, 2, 4, 6]);
                assert_eq!(outside, &[1]);
            }
            other => panic!("expected SUBGROUP, got {}", other.label()),
        }
        assert!(verify_classification(&g, &a, &c));
    }

    #[test]
    fn sparse_generator_yields_small_omega() {
        // ⟨A⟩ = {0, 8} has index 8 ≥ 2/ε for ε = 0.45, but Ω = {0, 8} is
        // within the ε h′ + k = 8.2 allowance.
        let g = FiniteAbelianGroup::cyclic(16).unwrap();
        let a = [8usize];
        let c = classify_subset_sums(&g, &a, &params(0.45));
        match &c.alternative {
            Alternative::SmallOmega { chosen, omega } => {
                assert_eq!(chosen, &[8]);
                assert_eq!(omega.to_vec(), vec![0, 8]);
            }
            other => panic!("expected SMALL_OMEGA, got {}", other.label()),
        }
        assert!(verify_classification(&g, &a, &c));
    }

    #[test]
    fn absorbed_zero_is_small_omega() {
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let c = classify_subset_sums(&g, &[0], &params(0.25));
        match &c.alternative {
            Alternative::SmallOmega { chosen, omega } => {
                assert!(chosen.is_empty());
                assert_eq!(omega.to_vec(), vec![0]);
            }
            other => panic!("expected SMALL_OMEGA, got {}", other.label()),
        }
        assert!(verify_classification(&g, &[0], &c));
    }

    #[test]
    fn random_prime_order_instances_verify() {
        // k = ⌊½ log₂ p⌋ random elements of ℤ/p: s(A) ≤ 2^k ≪ p, so the
        // report is SMALL_OMEGA (Ω = {0} ∪ A) and always re-verifies.
        let p = 1009;
        let g = FiniteAbelianGroup::cyclic(p as u64).unwrap();
        let k = ((p as f64).log2() / 2.0).floor() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..25 {
            let a: Vec<usize> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            let c = classify_subset_sums(&g, &a, &params(0.1));
            assert!(
                verify_classification(&g, &a, &c),
                "witness failed for A = {a:?}"
            );
            if let Alternative::SmallOmega { chosen, .. } = &c.alternative {
                assert!((chosen.len() as f64) < c.params.k_bound(p));
            }
        }
    }

    #[test]
    fn verification_rejects_tampered_witnesses() {
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let a = [8usize % 8, 1]; // {0, 1}
        let good = classify_subset_sums(&g, &a, &params(0.1));
        assert!(verify_classification(&g, &a, &good));

        // claim SUMS_ALL falsely
        let mut bad = good.clone();
        bad.alternative = Alternative::SumsAll;
        assert!(!verify_classification(&g, &a, &bad));

        // tamper with the subgroup witness
        if let Alternative::Subgroup { subgroup, outside } = &good.alternative {
            let mut sub = subgroup.clone();
            sub.elements = vec![0, 1, 2, 3]; // not a subgroup of ℤ/8
            let mut bad = good.clone();
            bad.alternative = Alternative::Subgroup {
                subgroup: sub,
                outside: outside.clone(),
            };
            assert!(!verify_classification(&g, &a, &bad));
        }

        // an omega that misses part of A
        let mut bad = good.clone();
        bad.alternative = Alternative::SmallOmega {
            chosen: vec![],
            omega: ElementSet::singleton(8, 0),
        };
        assert!(!verify_classification(&g, &a, &bad));
    }

    #[test]
    fn randomized_alternatives_always_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let orders: Vec<u64> = match rng.gen_range(0..3) {
                0 => vec![rng.gen_range(2..200u64)],
                1 => vec![2, 2 * rng.gen_range(1..40u64)],
                _ => vec![4, rng.gen_range(1..12u64) * 4],
            };
            let g = FiniteAbelianGroup::new(&orders).unwrap();
            let m = rng.gen_range(0..=g.n().min(24));
            let a: Vec<usize> = (0..m).map(|_| rng.gen_range(0..g.n())).collect();
            let eps = *[0.05, 0.1, 0.25, 0.4].iter().nth(rng.gen_range(0..4)).unwrap();
            let c = classify_subset_sums(&g, &a, &params(eps));
            assert!(
                verify_classification(&g, &a, &c),
                "witness failed: orders {orders:?}, A = {a:?}, eps = {eps}, alt = {}",
                c.alternative.label()
            );
        }
    }
}
