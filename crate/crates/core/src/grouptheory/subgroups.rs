//! Subgroup enumeration.  Joins of cyclic subgroups reach every subgroup of
//! a finite abelian group, so a breadth-first closure over H ∨ ⟨x⟩ lists the
//! whole lattice.  Low-index subgroups are found dually: under the perfect
//! pairing ⟨·,·⟩ the annihilator map is an order-reversing bijection, so
//! subgroups of index ≤ B are exactly the annihilators of subgroups of
//! order ≤ B.

use std::collections::{HashSet, VecDeque};

use super::{ElementSet, FiniteAbelianGroup};
use crate::{Error, Result};

/// Hard cap on enumerated subgroups; (ℤ/2)^k lattices explode well before
/// the group itself leaves desk scale.
pub const SUBGROUP_LATTICE_CAP: usize = 20_000;

/// A subgroup as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub order: usize,
    pub index: usize,
}

/// H ∨ ⟨x⟩ = H + ⟨x⟩.  The partial union stays a union of H-cosets, so each
/// multiple of x either lies inside it already or contributes a whole new
/// coset; cost is O(ord(x) + |join|).  Returns None once the join exceeds
/// `order_cap`.
fn join_cyclic(
    g: &FiniteAbelianGroup,
    h: &ElementSet,
    x: usize,
    order_cap: usize,
) -> Option<ElementSet> {
    let mut j = h.clone();
    let mut c = g.add(0, x);
    while c != 0 {
        if !j.contains(c) {
            for e in h.iter() {
                j.insert(g.add(e, c));
            }
            if j.len() > order_cap {
                return None;
            }
        }
        c = g.add(c, x);
    }
    Some(j)
}

/// All subgroups of order ≤ order_cap, as element sets, via join BFS from
/// the trivial subgroup.  Every subgroup of admissible order is reachable:
/// adjoining its own generators one at a time stays inside it.
fn subgroup_sets(
    g: &FiniteAbelianGroup,
    order_cap: usize,
    count_cap: usize,
) -> Result<Vec<ElementSet>> {
    let n = g.n();
    let mut out = vec![ElementSet::singleton(n, 0)];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(out[0].words.clone());
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for x in 1..n {
            if out[i].contains(x) {
                continue;
            }
            let Some(j) = join_cyclic(g, &out[i], x, order_cap) else {
                continue;
            };
            if seen.insert(j.words.clone()) {
                if out.len() >= count_cap {
                    return Err(Error::SubgroupLatticeTooLarge(count_cap));
                }
                out.push(j);
                queue.push_back(out.len() - 1);
            }
        }
    }
    Ok(out)
}

fn into_subgroup(n: usize, s: &ElementSet) -> Subgroup {
    let elements = s.to_vec();
    Subgroup {
        order: elements.len(),
        index: n / elements.len(),
        elements,
    }
}

/// The full subgroup lattice, sorted by (order, members).
pub fn all_subgroups(g: &FiniteAbelianGroup, count_cap: usize) -> Result<Vec<Subgroup>> {
    let n = g.n();
    let mut out: Vec<Subgroup> = subgroup_sets(g, n, count_cap)?
        .iter()
        .map(|s| into_subgroup(n, s))
        .collect();
    out.sort_by(|a, b| (a.order, &a.elements).cmp(&(b.order, &b.elements)));
    Ok(out)
}

/// All subgroups H with [G : H] ≤ bound (the whole group included), sorted
/// by (index, members).  Dual enumeration: H runs over annihilators
/// Ann(T) = {x : ⟨x, t⟩ = 0 ∀t ∈ T} of the subgroups T with |T| ≤ bound,
/// and [G : Ann(T)] = |T|.
pub fn subgroups_up_to_index(g: &FiniteAbelianGroup, bound: usize) -> Result<Vec<Subgroup>> {
    let n = g.n();
    let small = subgroup_sets(g, bound.min(n).max(1), SUBGROUP_LATTICE_CAP)?;
    let mut out = Vec::with_capacity(small.len());
    for t in &small {
        let t_elems = t.to_vec();
        let elements: Vec<usize> = (0..n)
            .filter(|&x| t_elems.iter().all(|&y| g.pairing(x, y) == 0))
            .collect();
        // perfect pairing: annihilator order times |T| is exactly n
        debug_assert_eq!(elements.len() * t_elems.len(), n);
        out.push(Subgroup {
            order: elements.len(),
            index: t_elems.len(),
            elements,
        });
    }
    out.sort_by(|a, b| (a.index, &a.elements).cmp(&(b.index, &b.elements)));
    Ok(out)
}

/// Membership scan: closure under subtraction plus containing 0.
pub fn is_subgroup(g: &FiniteAbelianGroup, elements: &[usize]) -> bool {
    let set = ElementSet::from_elements(g.n(), elements);
    if !set.contains(0) {
        return false;
    }
    let closed = set
        .iter()
        .all(|a| set.iter().all(|b| set.contains(g.sub(a, b))));
    closed
}
