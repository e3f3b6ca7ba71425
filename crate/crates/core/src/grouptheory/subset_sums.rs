//! Subset sums s(A) = {Σ_{x∈B} x : B ⊆ A}, the density-greedy growth
//! procedure that adds the element maximizing |s(A₁ ∪ {x})| at each step,
//! and the stalled-growth set Ω of elements whose marginal gain falls below
//! the doubling thresholds.

use super::{ElementSet, FiniteAbelianGroup};

/// s(A) as a dense set.  The empty sum puts 0 in s(A) always; A is treated
/// as a set (repeated elements contribute once).
pub fn subset_sums(g: &FiniteAbelianGroup, a: &[usize]) -> ElementSet {
    let mut s = ElementSet::singleton(g.n(), 0);
    let mut seen = ElementSet::empty(g.n());
    for &x in a {
        if seen.insert(x) {
            s.grow_by(g, x);
        }
    }
    s
}

/// Why the greedy loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreedyStop {
    /// s reached the whole group.
    FilledGroup,
    /// s reached the requested density target.
    ReachedTarget,
    /// Every remaining element of A is already absorbed: s ∪ (s+x) = s.
    NoGain,
    /// A was exhausted.
    Exhausted,
}

/// Trace of one greedy run: the elements chosen in order, the density
/// δ_j = |s(A_j)|/h′ after each choice, and the subset-sum set at the end.
#[derive(Debug, Clone)]
pub struct GreedyTranscript {
    pub chosen: Vec<usize>,
    pub densities: Vec<f64>,
    pub sums: ElementSet,
    pub stop: GreedyStop,
}

/// Grows A₁ ⊆ A greedily: at each step adds the unused x ∈ A maximizing
/// |s(A₁ ∪ {x})| = |s ∪ (s + x)|, breaking ties toward the smallest element
/// code.  Stops when the density target is met (if given), the group fills,
/// or no element adds anything.
pub fn greedy_grow(
    g: &FiniteAbelianGroup,
    a: &[usize],
    target: Option<f64>,
) -> GreedyTranscript {
    let h = g.n();
    let mut pool: Vec<usize> = {
        let mut seen = ElementSet::empty(h);
        let mut v: Vec<usize> = a.iter().copied().filter(|&x| seen.insert(x)).collect();
        v.sort_unstable();
        v
    };
    let mut s = ElementSet::singleton(h, 0);
    let mut chosen = Vec::new();
    let mut densities = Vec::new();

    let met = |s: &ElementSet| {
        target.map(|t| s.len() as f64 >= t * h as f64).unwrap_or(false)
    };

    let stop = loop {
        if s.is_full() {
            break GreedyStop::FilledGroup;
        }
        if met(&s) {
            break GreedyStop::ReachedTarget;
        }
        if pool.is_empty() {
            break GreedyStop::Exhausted;
        }
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
        if best_len == s.len() {
            break GreedyStop::NoGain;
        }
        let x = pool.remove(best_idx);
        s.grow_by(g, x);
        chosen.push(x);
        densities.push(s.len() as f64 / h as f64);
    };

    GreedyTranscript {
        chosen,
        densities,
        sums: s,
        stop,
    }
}

/// The stalled set Ω ⊆ xs for the current sum set s with density δ = |s|/h′:
///
///   δ ≤ ½:  Ω = { x : |s ∪ (s+x)| < (2−ε)·δ·h′ }
///   δ > ½:  Ω = { x : |s ∪ (s+x)| < (1 − (1−δ)^{3/2})·h′ }
pub fn omega_set(
    g: &FiniteAbelianGroup,
    s: &ElementSet,
    xs: &[usize],
    eps: f64,
) -> Vec<usize> {
    let h = g.n() as f64;
    let delta = s.len() as f64 / h;
    let threshold = if delta <= 0.5 {
        (2.0 - eps) * delta * h
    } else {
        (1.0 - (1.0 - delta).powf(1.5)) * h
    };
    let mut out: Vec<usize> = xs
        .iter()
        .copied()
        .filter(|&x| (s.grown_len(g, x) as f64) < threshold)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_sums_known_small_cases() {
        let g5 = FiniteAbelianGroup::cyclic(5).unwrap();
        assert_eq!(subset_sums(&g5, &[1, 2]).to_vec(), vec![0, 1, 2, 3]);

        let g6 = FiniteAbelianGroup::cyclic(6).unwrap();
        assert_eq!(subset_sums(&g6, &[2, 4]).to_vec(), vec![0, 2, 4]);

        // empty input: just the empty sum
        assert_eq!(subset_sums(&g6, &[]).to_vec(), vec![0]);
        // repeats count once
        assert_eq!(subset_sums(&g6, &[2, 2, 2]).to_vec(), vec![0, 2]);
    }

    #[test]
    fn subset_sums_matches_exhaustive_enumeration() {
        let g = FiniteAbelianGroup::new(&[2, 8]).unwrap();
        let a = [3usize, 5, 10, 11];
        let fast = subset_sums(&g, &a);
        let mut slow = std::collections::BTreeSet::new();
        for mask in 0u32..1 << a.len() {
            let mut acc = 0usize;
            for (i, &x) in a.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = g.add(acc, x);
                }
            }
            slow.insert(acc);
        }
        assert_eq!(fast.to_vec(), slow.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn greedy_fills_z8_quickly() {
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let all: Vec<usize> = (0..8).collect();
        let t = greedy_grow(&g, &all, None);
        assert_eq!(t.stop, GreedyStop::FilledGroup);
        // after the first productive pick, doubling fills ℤ/8 in ≤ 4 picks
        assert!(t.chosen.len() <= 4, "chosen: {:?}", t.chosen);
        assert!(t.sums.is_full());
        // densities are non-decreasing
        for w in t.densities.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn greedy_on_absorbed_elements_stops_without_gain() {
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let t = greedy_grow(&g, &[0], None);
        assert_eq!(t.stop, GreedyStop::NoGain);
        assert!(t.chosen.is_empty());
        assert_eq!(t.sums.to_vec(), vec![0]);
    }

    #[test]
    fn greedy_single_generator_transcript() {
        let g = FiniteAbelianGroup::cyclic(64).unwrap();
        let t = greedy_grow(&g, &[1], None);
        assert_eq!(t.chosen, vec![1]);
        assert_eq!(t.densities, vec![2.0 / 64.0]);
        assert_eq!(t.stop, GreedyStop::Exhausted);
    }

    #[test]
    fn greedy_ties_break_to_lowest_code() {
        // in ℤ/9, both 1 and 2 double {0}; the tie goes to 1
        let g = FiniteAbelianGroup::cyclic(9).unwrap();
        let t = greedy_grow(&g, &[2, 1], None);
        assert_eq!(t.chosen[0], 1);
    }

    #[test]
    fn greedy_respects_density_target() {
        let g = FiniteAbelianGroup::cyclic(32).unwrap();
        let all: Vec<usize> = (1..32).collect();
        let t = greedy_grow(&g, &all, Some(0.5));
        assert_eq!(t.stop, GreedyStop::ReachedTarget);
        assert!(t.sums.len() as f64 >= 16.0);
    }

    #[test]
    fn omega_set_degenerate_and_small_cases() {
        // s = {0}: adding 0 gains nothing, so 0 stalls below any threshold
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let s = ElementSet::singleton(8, 0);
        assert_eq!(omega_set(&g, &s, &[0, 1, 2, 3], 0.25), vec![0]);

        // ℤ/5, s = {0,1}, ε = 0.1: threshold (2−ε)·(2/5)·5 = 3.8;
        // x = 0 keeps size 2, x = 1 reaches {0,1,2}, x = 4 reaches {0,1,4}
        // (both size 3 < 3.8); x ∈ {2,3} reach size 4 ≥ 3.8
        let g5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let s5 = ElementSet::from_elements(5, &[0, 1]);
        assert_eq!(omega_set(&g5, &s5, &[0, 1, 2, 3, 4], 0.1), vec![0, 1, 4]);
    }

    #[test]
    fn omega_high_density_branch() {
        // δ > ½ branch: s of size 6 in ℤ/8, threshold (1−(1/4)^{3/2})·8 = 7
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        let s = ElementSet::from_elements(8, &[0, 1, 2, 3, 4, 5]);
        // x = 0: |s∪(s+0)| = 6 < 7 stalls; x = 1: 7 ≥ 7 does not
        let om = omega_set(&g, &s, &[0, 1, 4], 0.25);
        assert!(om.contains(&0));
        assert!(!om.contains(&1));
        // x = 4: s+4 = {4,5,6,7,0,1}, union has 8 ≥ 7
        assert!(!om.contains(&4));
    }
}
