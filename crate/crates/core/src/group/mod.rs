//! Finite groups stored as Cayley tables.
//!
//! Every group keeps its identity at index 0. Elements are plain `usize`
//! indices into the table, and maps between groups are full image arrays.

mod build;
mod search;

pub use build::{closure_group, cyclic, direct_product, quotient};
pub use search::{
    brute_force_isomorphism, enumerate_automorphisms, enumerate_homs, enumerate_isomorphisms,
    generators, order_profile, Limits,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: Option<String>,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a square table and builds the group.
    ///
    /// Checks run in a fixed order (shape, range, identity at 0, Latin
    /// square, associativity) and the first violated axiom is reported with
    /// a witness.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), expected: n });
            }
        }
        for (row, r) in rows.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(Error::EntryOutOfRange { row, col, value });
                }
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        Self::from_flat(table, n)
    }

    pub(crate) fn from_flat(table: Vec<usize>, n: usize) -> Result<Self> {
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(Error::NoIdentityAtZero { element: a });
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = table[a * n + b];
                if seen[v] == a {
                    return Err(Error::NotLatinSquare { line: "row", index: a, value: v });
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = table[a * n + b];
                if seen[v] == b {
                    return Err(Error::NotLatinSquare { line: "column", index: b, value: v });
                }
                seen[v] = b;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NonAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self::assemble(table, n))
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn assemble(table: Vec<usize>, n: usize) -> Self {
        let mut inverses = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverses[a] = b;
                    break;
                }
            }
        }
        let mut orders = vec![1; n];
        for (a, ord) in orders.iter_mut().enumerate().skip(1) {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a];
                k += 1;
            }
            *ord = k;
        }
        FiniteGroup { name: None, order: n, table, inverses, orders }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a * b^-1`, the form that keeps recurring in coboundary formulas.
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.first_noncommuting_pair().is_none()
    }

    pub(crate) fn first_noncommuting_pair(&self) -> Option<(usize, usize)> {
        for a in 0..self.order {
            for b in a + 1..self.order {
                if !self.commute(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn require_abelian(&self) -> Result<()> {
        match self.first_noncommuting_pair() {
            Some((a, b)) => Err(Error::NotAbelian { a, b }),
            None => Ok(()),
        }
    }

    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !inside[b] {
                    inside[b] = true;
                    members.push(b);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.elements().collect::<Vec<_>>())
    }

    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        let members = self
            .elements()
            .filter(|&g| set.iter().all(|&s| self.commute(g, s)))
            .collect();
        Subgroup { members }
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let commutators: BTreeSet<usize> = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.generated(&commutators.into_iter().collect::<Vec<_>>())
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in self.elements() {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|g| self.conjugate(g, a)).collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// All normal subgroups, sorted by size then members.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let closures: Vec<Subgroup> =
            self.conjugacy_classes().iter().map(|c| self.generated(c)).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut frontier = vec![vec![0usize]];
        while let Some(n) = frontier.pop() {
            for c in &closures {
                let mut gens = n.clone();
                gens.extend_from_slice(&c.members);
                let joined = self.generated(&gens).members;
                if found.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        all
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.members
            .iter()
            .all(|&a| self.elements().all(|g| h.contains(self.conjugate(g, a))))
    }

    /// No proper nontrivial normal subgroup. The trivial group is not simple.
    pub fn is_simple(&self) -> bool {
        if self.order == 1 {
            return false;
        }
        self.conjugacy_classes()
            .iter()
            .filter(|c| c[0] != 0)
            .all(|c| self.generated(c).order() == self.order)
    }

    /// Non-abelian with no nontrivial abelian direct factor. Abelian groups
    /// (including the trivial group) return false.
    pub fn is_purely_nonabelian(&self) -> bool {
        if self.is_abelian() {
            return false;
        }
        self.abelian_direct_factor().is_none()
    }

    /// An internal decomposition `G = A x B` with `A` abelian and nontrivial.
    pub fn abelian_direct_factor(&self) -> Option<(Subgroup, Subgroup)> {
        let normals = self.normal_subgroups();
        for a in normals.iter().filter(|a| a.order() > 1) {
            let abelian = a.members.iter().all(|&x| a.members.iter().all(|&y| self.commute(x, y)));
            if !abelian {
                continue;
            }
            for b in &normals {
                if a.order() * b.order() != self.order {
                    continue;
                }
                let meet_trivial = a.members.iter().all(|&x| x == 0 || !b.contains(x));
                let commuting =
                    a.members.iter().all(|&x| b.members.iter().all(|&y| self.commute(x, y)));
                if meet_trivial && commuting {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }
}

/// A subgroup, identified by its sorted member set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps a member list; the caller guarantees closure.
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self.members.iter().all(|&a| a < g.order() && self.contains(g.inv(a)))
            && self
                .members
                .iter()
                .all(|&a| self.members.iter().all(|&b| self.contains(g.mul(a, b))))
    }
}

/// A map between two groups, stored as the image of every element.
///
/// The same type carries homomorphisms and the plain set maps
/// (coboundary witnesses, matrix components) used elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupMap {
    images: Vec<usize>,
}

impl GroupMap {
    pub fn new(images: Vec<usize>) -> Self {
        GroupMap { images }
    }

    pub fn identity(n: usize) -> Self {
        GroupMap { images: (0..n).collect() }
    }

    /// The map sending everything to the identity.
    pub fn trivial(n: usize) -> Self {
        GroupMap { images: vec![0; n] }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.images.first() == Some(&0)
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn fits(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> bool {
        self.images.len() == dom.order() && self.images.iter().all(|&v| v < cod.order())
    }

    /// First pair `(a, b)` with `f(ab) != f(a) f(b)`.
    pub fn hom_failure(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> Option<(usize, usize)> {
        for a in dom.elements() {
            for b in dom.elements() {
                if self.apply(dom.mul(a, b)) != cod.mul(self.apply(a), self.apply(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> bool {
        self.fits(dom, cod) && self.hom_failure(dom, cod).is_none()
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<usize> = self.images.iter().copied().collect();
        set.len() == self.images.len()
    }

    pub fn is_surjective(&self, cod_order: usize) -> bool {
        let set: BTreeSet<usize> = self.images.iter().copied().collect();
        set.len() == cod_order
    }

    pub fn is_bijective(&self, cod_order: usize) -> bool {
        self.images.len() == cod_order && self.is_injective()
    }

    pub fn is_isomorphism(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> bool {
        self.is_bijective(cod.order()) && self.is_homomorphism(dom, cod)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &GroupMap) -> GroupMap {
        GroupMap { images: first.images.iter().map(|&a| self.apply(a)).collect() }
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        let mut inv = vec![usize::MAX; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            if b >= inv.len() || inv[b] != usize::MAX {
                return None;
            }
            inv[b] = a;
        }
        Some(GroupMap { images: inv })
    }

    /// Pointwise product `x ↦ f(x) g(x)` in `cod`.
    pub fn pointwise(&self, other: &GroupMap, cod: &FiniteGroup) -> GroupMap {
        GroupMap {
            images: self.images.iter().zip(&other.images).map(|(&a, &b)| cod.mul(a, b)).collect(),
        }
    }

    pub fn image_set(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.images.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&a| self.images[a] == 0).collect()
    }

    /// Whether the map sends every member of `h` into `k` (as sets).
    pub fn maps_into(&self, h: &[usize], k: &Subgroup) -> bool {
        h.iter().all(|&a| k.contains(self.apply(a)))
    }
}
