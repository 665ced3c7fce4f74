//! Finite-group kernel over explicit multiplication tables.
//!
//! Conventions used everywhere: `[x, y] = x⁻¹y⁻¹xy`, `a^x = x⁻¹ax`, and
//! longer commutators are left-normed, `[x, y, z] = [[x, y], z]`.

mod subgroup;
mod table;

pub use subgroup::{SeriesKind, SeriesReport, Subgroup, DEFAULT_BOUND_EXPONENT};
pub use table::{prime_power, Elem, GroupTable, MAX_TABLE_ORDER};

/// Default lattice-enumeration bound for a group: `p^5`, or the order itself
/// for groups that are not p-groups.
pub fn default_bound(group: &GroupTable) -> usize {
    match group.prime() {
        Some(p) => (p as usize).pow(DEFAULT_BOUND_EXPONENT),
        None => group.order(),
    }
}
