//! Central extensions of finite groups by abelian kernels.
//!
//! Groups are Cayley tables with the identity at index 0. On top of that the
//! crate builds integer linear algebra over finite abelian groups, the
//! second cohomology `H^2(G2, G1)` with trivial action, twisted products
//! `G1 x_e G2`, and decision procedures for the structured isomorphism
//! notions between twisted products (upper, lower, (G1), (G2), (G1,G2)),
//! each producing a certificate that can be checked against a brute-force
//! oracle.

pub mod catalog;
pub mod cocycle;
pub mod error;
pub mod extension;
pub mod group;
pub mod isotest;
pub mod json;
pub mod linalg;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupMap, Limits, Subgroup};
