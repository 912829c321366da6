//! Built-in small groups.

use crate::error::{Error, Result};
use crate::group::{closure_group, cyclic, direct_product, enumerate_isomorphisms, FiniteGroup, Limits};

pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    /// Large enough that the exhaustive checks on it belong to the slow tier.
    pub slow: bool,
    build: fn() -> FiniteGroup,
}

impl CatalogEntry {
    pub fn group(&self) -> FiniteGroup {
        (self.build)().with_name(self.name)
    }
}

macro_rules! entry {
    ($name:expr, [$($alias:expr),*], $slow:expr, $build:expr) => {
        CatalogEntry { name: $name, aliases: &[$($alias),*], slow: $slow, build: $build }
    };
}

static ENTRIES: &[CatalogEntry] = &[
    entry!("Z1", ["1"], false, || cyclic(1)),
    entry!("Z2", [], false, || cyclic(2)),
    entry!("Z3", [], false, || cyclic(3)),
    entry!("Z4", [], false, || cyclic(4)),
    entry!("Z5", [], false, || cyclic(5)),
    entry!("Z6", [], false, || cyclic(6)),
    entry!("Z7", [], false, || cyclic(7)),
    entry!("Z8", [], false, || cyclic(8)),
    entry!("Z2xZ2", ["K4", "V4"], false, || direct_product(&cyclic(2), &cyclic(2))),
    entry!("Z2xZ4", ["Z4xZ2"], false, || direct_product(&cyclic(2), &cyclic(4))),
    entry!("Z2xZ2xZ2", ["Z2^3"], false, || {
        direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2)))
    }),
    entry!("S3", ["D3"], false, || permutations(3, &[&[1, 0, 2], &[1, 2, 0]])),
    entry!("D4", ["D8"], false, || permutations(4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]])),
    entry!("Q8", [], false, quaternion),
    entry!("D5", ["D10"], false, || permutations(5, &[&[1, 2, 3, 4, 0], &[0, 4, 3, 2, 1]])),
    entry!("A4", [], false, || permutations(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]])),
    entry!("S4", [], false, || permutations(4, &[&[1, 0, 2, 3], &[1, 2, 3, 0]])),
    entry!("A5", [], true, || permutations(5, &[&[1, 2, 0, 3, 4], &[1, 2, 3, 4, 0]])),
    entry!("SL(2,5)", ["SL25", "2.A5"], true, || {
        matrices_mod(5, &[[1, 1, 0, 1], [0, 4, 1, 0]])
    }),
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| {
        e.name.eq_ignore_ascii_case(name) || e.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    })
}

pub fn group(name: &str) -> Result<FiniteGroup> {
    entry(name).map(CatalogEntry::group).ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

/// Name of the first catalog group isomorphic to `g`.
pub fn identify(g: &FiniteGroup, limits: &Limits) -> Result<Option<&'static str>> {
    limits.check_order(g)?;
    for e in ENTRIES {
        let candidate = e.group();
        if candidate.order() != g.order() {
            continue;
        }
        if !enumerate_isomorphisms(g, &candidate, limits)?.is_empty() {
            return Ok(Some(e.name));
        }
    }
    Ok(None)
}

/// Permutation group on `degree` points; `(a*b)(i) = a(b(i))`.
fn permutations(degree: usize, gens: &[&[u8]]) -> FiniteGroup {
    let id: Vec<u8> = (0..degree as u8).collect();
    let gens: Vec<Vec<u8>> = gens.iter().map(|g| g.to_vec()).collect();
    closure_group(id, &gens, |a, b| b.iter().map(|&i| a[i as usize]).collect())
}

/// 2x2 matrices `[a, b, c, d]` over `Z/p` under multiplication.
fn matrices_mod(p: u16, gens: &[[u16; 4]]) -> FiniteGroup {
    closure_group([1, 0, 0, 1], gens, |x, y| {
        [
            (x[0] * y[0] + x[1] * y[2]) % p,
            (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p,
        ]
    })
}

/// Q8 inside SL(2,3), generated by two anticommuting elements of order 4.
fn quaternion() -> FiniteGroup {
    matrices_mod(3, &[[0, 1, 2, 0], [1, 1, 1, 2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::order_profile;

    #[test]
    fn every_entry_is_a_valid_group() {
        let mut names = std::collections::BTreeSet::new();
        for e in entries() {
            let g = e.group();
            assert!(FiniteGroup::from_table(&g.rows()).is_ok(), "{}", e.name);
            assert!(names.insert(e.name));
        }
    }

    #[test]
    fn orders_and_shapes() {
        let expect = [
            ("Z1", 1), ("Z8", 8), ("K4", 4), ("Z2xZ4", 8), ("Z2xZ2xZ2", 8), ("S3", 6), ("D4", 8),
            ("Q8", 8), ("D5", 10), ("A4", 12), ("S4", 24), ("A5", 60), ("SL(2,5)", 120),
        ];
        for (name, order) in expect {
            assert_eq!(group(name).unwrap().order(), order, "{name}");
        }
        let q8 = group("Q8").unwrap();
        assert_eq!(order_profile(&q8), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        let d4 = group("D4").unwrap();
        assert_eq!(order_profile(&d4), vec![1, 2, 2, 2, 2, 2, 4, 4]);
        let sl = group("SL25").unwrap();
        assert_eq!(sl.center().order(), 2);
        assert_eq!(sl.elements().filter(|&a| sl.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(group("k4").unwrap(), group("Z2xZ2").unwrap());
        assert!(matches!(group("nope"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn identify_finds_catalog_names() {
        let l = Limits::default();
        let z2z3 = direct_product(&cyclic(2), &cyclic(3));
        assert_eq!(identify(&z2z3, &l).unwrap(), Some("Z6"));
        assert_eq!(identify(&group("D4").unwrap(), &l).unwrap(), Some("D4"));
        let z3z3 = direct_product(&cyclic(3), &cyclic(3));
        assert_eq!(identify(&z3z3, &l).unwrap(), None);
    }
}
