use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{prime_power, GroupTable};

/// Orders up to this size get the full `n³` associativity scan; larger
/// tables use Light's test over a generating set.
pub const FULL_SCAN_LIMIT: usize = 729;

/// Outcome of checking the group axioms on a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub order_ok: bool,
    pub identity_ok: bool,
    pub inverses_ok: bool,
    pub associativity_ok: bool,
    /// First `(a, b, c)` in lexicographic order with `(ab)c ≠ a(bc)`.
    pub failing_triple: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.order_ok && self.identity_ok && self.inverses_ok && self.associativity_ok
    }
}

pub fn validate_axioms(t: &GroupTable) -> AxiomReport {
    let n = t.order();
    let identity_ok = (0..n).all(|g| t.mul(0, g) == g && t.mul(g, 0) == g);
    let inverses_ok = (0..n).all(|g| t.mul(g, t.inv(g)) == 0 && t.mul(t.inv(g), g) == 0);
    let orders_ok = t
        .element_orders()
        .iter()
        .all(|&o| o > 0 && n.is_multiple_of(o as usize));
    let order_ok = (n == 1 || prime_power(n).is_some()) && orders_ok;
    let failing_triple = if n <= FULL_SCAN_LIMIT {
        full_scan(t)
    } else {
        light_scan(t)
    };
    AxiomReport {
        order_ok,
        identity_ok,
        inverses_ok,
        associativity_ok: failing_triple.is_none(),
        failing_triple,
    }
}

fn full_scan(t: &GroupTable) -> Option<(usize, usize, usize)> {
    let n = t.order();
    (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            let ab = t.mul(a, b);
            for c in 0..n {
                if t.mul(ab, c) != t.mul(a, t.mul(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
        None
    })
}

/// Light's test: associativity for all `(x, s, y)` with `s` in a generating
/// set implies associativity everywhere.
fn light_scan(t: &GroupTable) -> Option<(usize, usize, usize)> {
    let n = t.order();
    let gens = t.whole().generators();
    (0..n).into_par_iter().find_map_first(|x| {
        for &s in &gens {
            let xs = t.mul(x, s);
            for y in 0..n {
                if t.mul(xs, y) != t.mul(x, t.mul(s, y)) {
                    return Some((x, s, y));
                }
            }
        }
        None
    })
}
