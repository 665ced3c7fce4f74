//! Building validated [`GroupTable`](crate::algebra::GroupTable)s from
//! polycyclic presentations, permutation generators and semidirect products.

mod collect;
mod parse;
mod perm;
mod semidirect;
mod validate;

pub use collect::{build_from_presentation, normal_form, Collector, DEFAULT_STEP_BUDGET};
pub use parse::{parse_pcp, Presentation, Word};
pub use perm::build_from_permutations;
pub use semidirect::semidirect_product;
pub use validate::{validate_axioms, AxiomReport, FULL_SCAN_LIMIT};
