//! Finite p-group computations and exhaustive checkers for statements about
//! isolated and minimal nonabelian subgroups.
//!
//! Groups are explicit multiplication tables ([`GroupTable`]) built from
//! polycyclic presentations or permutations; subgroups are bitsets over a
//! parent table ([`Subgroup`]). The [`catalog`] ships every group of order
//! `p³` and `p⁴` for `p ∈ {2, 3, 5}`, and the [`verifier`] scans each one.

pub mod algebra;
pub mod bitset;
pub mod catalog;
pub mod error;
pub mod predicates;
pub mod presentation;
pub mod verifier;

pub use algebra::{Elem, GroupTable, Subgroup};
pub use error::{Error, Result};
