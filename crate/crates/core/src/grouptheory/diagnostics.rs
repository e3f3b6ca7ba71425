//! Additive-combinatorics diagnostics: additive energy, symmetry groups,
//! the Kneser lower bound for difference sets, and the near-coset witness
//! for measures whose self-convolution almost preserves the L² norm.

use super::subgroups::{all_subgroups, SUBGROUP_LATTICE_CAP};
use super::{ElementSet, FiniteAbelianGroup};
use crate::{Error, Result};

/// Desk-scale limit for the witness search.
const MAX_WITNESS_GROUP: usize = 1 << 12;

/// E₊(U, V) = Σ_z r(z)² with r(z) = #{(u, v) ∈ U×V : u + v = z}; for U = V
/// this is #{(a,b,c,d) ∈ U⁴ : a + b = c + d} = ‖1_U ∗ 1_U‖₂².
pub fn additive_energy(g: &FiniteAbelianGroup, u: &ElementSet, v: &ElementSet) -> u64 {
    let mut r = vec![0u64; g.n()];
    for a in u.iter() {
        for b in v.iter() {
            r[g.add(a, b)] += 1;
        }
    }
    r.iter().map(|&c| c * c).sum()
}

/// Sym₁(T) = {x : T + x = T}; a subgroup, equal to T when T is a subgroup.
pub fn sym1(g: &FiniteAbelianGroup, t: &ElementSet) -> ElementSet {
    debug_assert!(!t.is_empty());
    let mut out = ElementSet::empty(g.n());
    // |T + x| = |T|, so T + x ⊆ T suffices
    for x in 0..g.n() {
        if t.iter().all(|e| t.contains(g.add(e, x))) {
            out.insert(x);
        }
    }
    out
}

/// The three quantities in Kneser's bound |T−T| ≥ 2|T| − |Sym₁(T−T)|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KneserReport {
    pub t_len: usize,
    pub diff_len: usize,
    pub sym_len: usize,
    pub holds: bool,
}

/// Checks |T−T| ≥ 2|T| − |Sym₁(T−T)| by direct computation of T−T and its
/// symmetry group.
pub fn kneser_check(g: &FiniteAbelianGroup, t: &ElementSet) -> KneserReport {
    debug_assert!(!t.is_empty());
    let mut diff = ElementSet::empty(g.n());
    for a in t.iter() {
        for b in t.iter() {
            diff.insert(g.sub(a, b));
        }
    }
    let sym = sym1(g, &diff);
    KneserReport {
        t_len: t.len(),
        diff_len: diff.len(),
        sym_len: sym.len(),
        holds: diff.len() + sym.len() >= 2 * t.len(),
    }
}

/// Best coset approximation found for a near-flat measure.
#[derive(Debug, Clone)]
pub struct CosetFit {
    /// Members of the subgroup H.
    pub subgroup: Vec<usize>,
    /// Shift z; the approximating coset is H − z.
    pub shift: usize,
    /// ‖μ − 1_{H−z}/|H|‖₁ at the best (H, z).
    pub l1_distance: f64,
    /// Measured κ = 1 − ‖μ∗μ‖₂/‖μ‖₂.
    pub kappa: f64,
    /// The reference bound c·κ^{1/12}.
    pub bound: f64,
    /// Whether the distance meets the bound (up to float tolerance).
    pub meets_bound: bool,
}

/// Outcome of the witness search: either a best-fit coset, or the measured
/// κ exceeded the allowance and no search ran.
#[derive(Debug, Clone)]
pub enum NearCosetOutcome {
    Witness(CosetFit),
    HypothesisFails { kappa: f64 },
}

/// For a probability measure μ with ‖μ∗μ‖₂ > (1−κ)‖μ‖₂, searches every
/// subgroup H in the window ½‖μ‖₂⁻² < |H| < 2‖μ‖₂⁻² and every shift z for
/// the minimizer of ‖μ − 1_{H−z}/|H|‖₁, reporting the distance against
/// c·κ^{1/12}.  Ties prefer smaller |H|, then smaller z.
pub fn near_coset_witness(
    g: &FiniteAbelianGroup,
    mu: &[f64],
    kappa_max: f64,
    c: f64,
) -> Result<NearCosetOutcome> {
    let n = g.n();
    if mu.len() != n {
        return Err(Error::InvalidArgument(format!(
            "measure has {} entries for a group of order {n}",
            mu.len()
        )));
    }
    if mu.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
        return Err(Error::InvalidArgument(
            "measure entries must be finite and nonnegative".into(),
        ));
    }
    let total: f64 = mu.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "measure sums to {total}, expected 1"
        )));
    }
    if n > MAX_WITNESS_GROUP {
        return Err(Error::GroupTooLarge {
            order: n,
            limit: MAX_WITNESS_GROUP,
        });
    }

    let l2sq: f64 = mu.iter().map(|p| p * p).sum();
    let mut conv = vec![0.0f64; n];
    for x in 0..n {
        if mu[x] == 0.0 {
            continue;
        }
        for y in 0..n {
            conv[g.add(x, y)] += mu[x] * mu[y];
        }
    }
    let conv_l2 = conv.iter().map(|p| p * p).sum::<f64>().sqrt();
    let kappa = (1.0 - conv_l2 / l2sq.sqrt()).clamp(0.0, 1.0);
    if kappa > kappa_max {
        return Ok(NearCosetOutcome::HypothesisFails { kappa });
    }

    let lo = 0.5 / l2sq;
    let hi = 2.0 / l2sq;
    let subs = all_subgroups(g, SUBGROUP_LATTICE_CAP)?;
    let mut best: Option<(f64, &[usize], usize)> = None;
    for sub in &subs {
        let order = sub.order as f64;
        if !(order > lo && order < hi) {
            continue;
        }
        let uniform = 1.0 / order;
        for z in 0..n {
            // ‖μ − 1_{H−z}/|H|‖₁ = 1 + Σ_{x ∈ H−z} (|μ(x) − 1/|H|| − μ(x))
            let mut dist = 1.0;
            for &e in &sub.elements {
                let x = g.sub(e, z);
                dist += (mu[x] - uniform).abs() - mu[x];
            }
            let dist = dist.max(0.0);
            // subs is (order, members)-sorted, so strict < fixes the tie
            // order: distance, then |H|, then z
            if best.map_or(true, |(d, _, _)| dist < d) {
                best = Some((dist, &sub.elements, z));
            }
        }
    }
    let Some((l1_distance, elements, shift)) = best else {
        return Err(Error::NoSubgroupInWindow { lo, hi });
    };
    let bound = c * kappa.powf(1.0 / 12.0);
    Ok(NearCosetOutcome::Witness(CosetFit {
        subgroup: elements.to_vec(),
        shift,
        l1_distance,
        kappa,
        bound,
        meets_bound: l1_distance <= bound + 1e-9,
    }))
}
