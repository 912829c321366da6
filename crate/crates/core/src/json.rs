//! JSON interchange for groups, cocycles, extensions and cohomology reports.
//!
//! Field order is fixed by the struct definitions, so
//! parse → validate → serialize is byte-stable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::cocycle::{CocycleSpace, Cocycle2};
use crate::error::{Error, Result};
use crate::extension::{build_extension, ExtensionGroup};
use crate::group::FiniteGroup;

/// `{"name": string?, "order": n, "table": [[int; n]; n]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson { name: g.name().map(str::to_string), order: g.order(), table: g.rows() }
    }

    /// Validates the table; `order` must match it.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::DimensionMismatch { expected: self.order, found: self.table.len() });
        }
        let g = FiniteGroup::from_table(&self.table)?;
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }
}

/// A catalog name or an inline group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupJson),
}

impl GroupRef {
    /// Catalog groups are referenced by name, others inline.
    pub fn from_group(g: &FiniteGroup) -> Self {
        match g.name().and_then(catalog::entry) {
            Some(e) if e.group() == *g => GroupRef::Name(e.name.to_string()),
            _ => GroupRef::Inline(GroupJson::from_group(g)),
        }
    }

    pub fn resolve(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Name(n) => catalog::group(n),
            GroupRef::Inline(j) => j.to_group(),
        }
    }
}

/// `{"g1": group or name, "g2": group or name, "table": [[int]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub g1: GroupRef,
    pub g2: GroupRef,
    pub table: Vec<Vec<usize>>,
}

impl CocycleJson {
    pub fn from_cocycle(e: &Cocycle2) -> Self {
        CocycleJson { g1: GroupRef::from_group(e.g1()), g2: GroupRef::from_group(e.g2()), table: e.rows() }
    }

    pub fn to_cocycle(&self) -> Result<Cocycle2> {
        let g1 = Arc::new(self.g1.resolve()?);
        let g2 = Arc::new(self.g2.resolve()?);
        Cocycle2::new(g1, g2, &self.table)
    }
}

/// The carrier together with the cocycle it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub group: GroupJson,
    /// Always `"g1-major"`: element `(x, y)` has index `x * |G2| + y`.
    pub pairing: String,
    pub cocycle: CocycleJson,
}

pub const PAIRING: &str = "g1-major";

impl ExtensionJson {
    pub fn from_extension(ext: &ExtensionGroup) -> Self {
        ExtensionJson {
            group: GroupJson::from_group(ext.group()),
            pairing: PAIRING.to_string(),
            cocycle: CocycleJson::from_cocycle(ext.epsilon()),
        }
    }

    /// Rebuilds from the cocycle and checks the stored table agrees.
    pub fn to_extension(&self) -> Result<ExtensionGroup> {
        if self.pairing != PAIRING {
            return Err(Error::PreconditionViolated(format!("unsupported pairing {:?}", self.pairing)));
        }
        let ext = build_extension(&self.cocycle.to_cocycle()?)?;
        if self.group.table != ext.group().rows() {
            return Err(Error::NotACocycle("group table does not match the cocycle".into()));
        }
        Ok(ext)
    }
}

/// Either an extension or a bare cocycle; the CLI accepts both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtensionOrCocycle {
    Extension(ExtensionJson),
    Cocycle(CocycleJson),
}

impl ExtensionOrCocycle {
    pub fn to_extension(&self) -> Result<ExtensionGroup> {
        match self {
            ExtensionOrCocycle::Extension(e) => e.to_extension(),
            ExtensionOrCocycle::Cocycle(c) => build_extension(&c.to_cocycle()?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSpaceJson {
    pub g1: GroupRef,
    pub g2: GroupRef,
    pub h2_invariant_factors: Vec<u64>,
    pub h2_order: u128,
    pub z2_order: u128,
    pub b2_order: u128,
    pub z2_generators: Vec<Vec<Vec<usize>>>,
    pub b2_generators: Vec<Vec<Vec<usize>>>,
    pub class_representatives: Vec<Vec<Vec<usize>>>,
}

impl CocycleSpaceJson {
    pub fn from_space(s: &CocycleSpace) -> Self {
        CocycleSpaceJson {
            g1: GroupRef::from_group(&s.g1),
            g2: GroupRef::from_group(&s.g2),
            h2_invariant_factors: s.h2_invariant_factors.clone(),
            h2_order: s.h2_order(),
            z2_order: s.z2_order,
            b2_order: s.b2_order,
            z2_generators: s.z2_generators.iter().map(Cocycle2::rows).collect(),
            b2_generators: s.b2_generators.iter().map(|b| b.cocycle.rows()).collect(),
            class_representatives: s.class_representatives.iter().map(Cocycle2::rows).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::compute_cocycle_space;
    use crate::group::Limits;

    #[test]
    fn group_round_trip_is_byte_stable() {
        for name in ["Z1", "Z4", "S3", "Q8"] {
            let g = catalog::group(name).unwrap();
            let text = serde_json::to_string(&GroupJson::from_group(&g)).unwrap();
            let back: GroupJson = serde_json::from_str(&text).unwrap();
            let again = serde_json::to_string(&GroupJson::from_group(&back.to_group().unwrap())).unwrap();
            assert_eq!(text, again);
        }
        let z2 = catalog::group("Z2").unwrap();
        assert_eq!(
            serde_json::to_string(&GroupJson::from_group(&z2)).unwrap(),
            r#"{"name":"Z2","order":2,"table":[[0,1],[1,0]]}"#
        );
    }

    #[test]
    fn bad_groups_are_rejected() {
        let j: GroupJson = serde_json::from_str(r#"{"order":2,"table":[[0,1],[1,1]]}"#).unwrap();
        assert!(j.to_group().unwrap_err().is_validation());
        let j: GroupJson = serde_json::from_str(r#"{"order":3,"table":[[0,1],[1,0]]}"#).unwrap();
        assert!(matches!(j.to_group(), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn cocycle_and_extension_round_trip() {
        let c: CocycleJson = serde_json::from_str(r#"{"g1":"Z2","g2":"K4","table":[[0,0,0,0],[0,1,0,1],[0,0,0,0],[0,1,0,1]]}"#).unwrap();
        let e = c.to_cocycle().unwrap();
        let ext = build_extension(&e).unwrap();
        let j = ExtensionJson::from_extension(&ext);
        let text = serde_json::to_string(&j).unwrap();
        let parsed: ExtensionOrCocycle = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_extension().unwrap(), ext);
        assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
        let bare: ExtensionOrCocycle = serde_json::to_value(&c).and_then(serde_json::from_value).unwrap();
        assert_eq!(bare.to_extension().unwrap(), ext);
    }

    #[test]
    fn inline_groups_in_cocycles() {
        let g = crate::group::direct_product(&catalog::group("Z2").unwrap(), &catalog::group("Z3").unwrap());
        let e = Cocycle2::trivial(Arc::new(catalog::group("Z2").unwrap()), Arc::new(g));
        let j = CocycleJson::from_cocycle(&e);
        assert!(matches!(j.g2, GroupRef::Inline(_)));
        assert_eq!(j.to_cocycle().unwrap(), e);
    }

    #[test]
    fn space_report() {
        let z2 = Arc::new(catalog::group("Z2").unwrap());
        let s = compute_cocycle_space(&z2, &z2, &Limits::default()).unwrap();
        let j = CocycleSpaceJson::from_space(&s);
        assert_eq!(j.h2_invariant_factors, vec![2]);
        assert_eq!(j.class_representatives.len(), 2);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(serde_json::from_str::<CocycleSpaceJson>(&text).unwrap(), j);
    }
}
