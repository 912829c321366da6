//! Backtracking over generator images.
//!
//! A homomorphism out of a finite group is fixed by the images of a
//! generating set. The search assigns images one generator at a time and
//! closes the partial map over the generated subgroup, rejecting the branch
//! as soon as two words disagree.

use crate::error::{Error, Result};

use super::{FiniteGroup, GroupMap};

/// Bounds on the brute-force searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order the isomorphism oracle accepts.
    pub max_order: usize,
    /// Largest number of backtracking nodes before giving up.
    pub max_nodes: u64,
    /// Largest number of unknowns in a cocycle linear system.
    pub max_unknowns: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 128, max_nodes: 50_000_000, max_unknowns: 1024 }
    }
}

impl Limits {
    pub fn with_max_order(max_order: usize) -> Self {
        Limits { max_order, ..Limits::default() }
    }

    pub(crate) fn check_order(&self, g: &FiniteGroup) -> Result<()> {
        if g.order() > self.max_order {
            return Err(Error::SizeLimitExceeded {
                what: "group order",
                size: g.order() as u128,
                bound: self.max_order as u128,
            });
        }
        Ok(())
    }
}

/// A generating set picked greedily: repeatedly take the element of largest
/// order (smallest index on ties) outside the subgroup generated so far.
pub fn generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    while current.order() < g.order() {
        let next = g
            .elements()
            .filter(|&a| !current.contains(a))
            .max_by(|&a, &b| g.element_order(a).cmp(&g.element_order(b)).then(b.cmp(&a)))
            .expect("proper subgroup has a complement element");
        gens.push(next);
        current = g.generated(&gens);
    }
    gens
}

/// Sorted multiset of element orders.
pub fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut p: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    p.sort_unstable();
    p
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Hom,
    Iso,
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    dom: &'a FiniteGroup,
    cod: &'a FiniteGroup,
    gens: Vec<usize>,
    mode: Mode,
    nodes: u64,
    max_nodes: u64,
    found: Vec<GroupMap>,
}

impl Search<'_> {
    fn candidates(&self, gen: usize) -> Vec<usize> {
        let ord = self.dom.element_order(gen);
        self.cod
            .elements()
            .filter(|&c| {
                let oc = self.cod.element_order(c);
                match self.mode {
                    Mode::Hom => ord.is_multiple_of(oc),
                    Mode::Iso => ord == oc,
                }
            })
            .collect()
    }

    /// Closes the map over the subgroup generated by the assigned
    /// generators; `None` if the assignment is inconsistent.
    fn close(&self, assigned: &[usize]) -> Option<Vec<usize>> {
        let n = self.dom.order();
        let mut images = vec![UNSET; n];
        let mut used = vec![false; if self.mode == Mode::Iso { self.cod.order() } else { 0 }];
        images[0] = 0;
        if self.mode == Mode::Iso {
            used[0] = true;
        }
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for (j, &img) in assigned.iter().enumerate() {
                let b = self.dom.mul(a, self.gens[j]);
                let ib = self.cod.mul(images[a], img);
                if images[b] == UNSET {
                    if self.mode == Mode::Iso {
                        if used[ib] {
                            return None;
                        }
                        used[ib] = true;
                    }
                    images[b] = ib;
                    members.push(b);
                } else if images[b] != ib {
                    return None;
                }
            }
            i += 1;
        }
        Some(images)
    }

    fn run(&mut self, assigned: &mut Vec<usize>) -> Result<()> {
        let level = assigned.len();
        for c in self.candidates(self.gens[level]) {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::SizeLimitExceeded {
                    what: "backtracking nodes",
                    size: self.nodes as u128,
                    bound: self.max_nodes as u128,
                });
            }
            assigned.push(c);
            if let Some(images) = self.close(assigned) {
                if assigned.len() == self.gens.len() {
                    self.found.push(GroupMap::new(images));
                } else {
                    self.run(assigned)?;
                }
            }
            assigned.pop();
        }
        Ok(())
    }
}

fn search(dom: &FiniteGroup, cod: &FiniteGroup, mode: Mode, limits: &Limits) -> Result<Vec<GroupMap>> {
    let gens = generators(dom);
    if gens.is_empty() {
        return Ok(vec![GroupMap::trivial(1)]);
    }
    let mut s = Search { dom, cod, gens, mode, nodes: 0, max_nodes: limits.max_nodes, found: Vec::new() };
    s.run(&mut Vec::new())?;
    let mut found = s.found;
    found.sort();
    Ok(found)
}

/// All homomorphisms `h -> k`, sorted lexicographically by image array.
pub fn enumerate_homs(h: &FiniteGroup, k: &FiniteGroup, limits: &Limits) -> Result<Vec<GroupMap>> {
    search(h, k, Mode::Hom, limits)
}

/// All isomorphisms `g -> h`, sorted lexicographically by image array.
pub fn enumerate_isomorphisms(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<Vec<GroupMap>> {
    limits.check_order(g)?;
    limits.check_order(h)?;
    if g.order() != h.order()
        || g.is_abelian() != h.is_abelian()
        || order_profile(g) != order_profile(h)
    {
        return Ok(Vec::new());
    }
    search(g, h, Mode::Iso, limits)
}

pub fn enumerate_automorphisms(g: &FiniteGroup, limits: &Limits) -> Result<Vec<GroupMap>> {
    enumerate_isomorphisms(g, g, limits)
}

/// The lexicographically least isomorphism `g -> h` accepted by
/// `constraint`, if any. The constraint is applied after enumeration.
pub fn brute_force_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    constraint: Option<&dyn Fn(&GroupMap) -> bool>,
    limits: &Limits,
) -> Result<Option<GroupMap>> {
    let all = enumerate_isomorphisms(g, h, limits)?;
    Ok(all.into_iter().find(|m| constraint.is_none_or(|c| c(m))))
}
