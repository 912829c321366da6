use std::collections::HashMap;
use std::hash::Hash;

use super::{FiniteGroup, GroupMap, Subgroup};

/// `Z/n` with element `i` at index `i`.
pub fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    FiniteGroup::assemble(table, n)
}

/// `G x H` with `(g, h)` at index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    let size = m * n;
    let mut table = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            table.push(g.mul(a / n, b / n) * n + h.mul(a % n, b % n));
        }
    }
    FiniteGroup::assemble(table, size)
}

/// The group generated by `gens` under `mul`, with `identity` at index 0
/// and the remaining elements in increasing `Ord` order.
pub fn closure_group<T, F>(identity: T, gens: &[T], mul: F) -> FiniteGroup
where
    T: Clone + Eq + Hash + Ord,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity.clone()];
    let mut seen: HashMap<T, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = mul(&elems[i], g);
            if seen.insert(p.clone(), ()).is_none() {
                elems.push(p);
            }
        }
        i += 1;
    }
    elems[1..].sort();
    let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            table.push(index[&mul(a, b)]);
        }
    }
    FiniteGroup::assemble(table, n)
}

/// `G / N` for a normal subgroup `N`, with cosets ordered by their least
/// member, together with the projection `G -> G/N`.
pub fn quotient(g: &FiniteGroup, normal: &Subgroup) -> (FiniteGroup, GroupMap) {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(a);
        for &n in normal.members() {
            coset_of[g.mul(a, n)] = idx;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)]);
        }
    }
    (FiniteGroup::assemble(table, k), GroupMap::new(coset_of))
}
