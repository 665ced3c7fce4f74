use crate::algebra::subgroup::Subgroup;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Index of an element in its group table. Index `0` is always the identity.
pub type Elem = usize;

/// Largest order a table can hold (indices are stored as `u16`).
pub const MAX_TABLE_ORDER: usize = u16::MAX as usize;

/// A finite group given by its full multiplication table.
///
/// Invariants established by the constructors: every entry lies in
/// `0..order`, element `0` is a two-sided identity and every element has a
/// right inverse. Associativity is *not* assumed here; it is checked by
/// [`crate::presentation::validate_axioms`], which every builder runs.
#[derive(Clone)]
pub struct GroupTable {
    name: String,
    order: usize,
    prime: Option<u32>,
    log_order: u32,
    table: Vec<u16>,
    inverse: Vec<u16>,
    /// Cached element orders; `0` marks an element whose powers never reach
    /// the identity (only possible for tables that fail axiom validation).
    element_orders: Vec<u32>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("prime", &self.prime)
            .finish_non_exhaustive()
    }
}

/// Returns `(p, k)` with `n = p^k` when `n > 1` is a prime power.
pub fn prime_power(n: usize) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p as u32, k))
}

impl GroupTable {
    /// Builds a table from a row-major product array (`flat[a * n + b] = a·b`).
    pub fn from_table(name: impl Into<String>, order: usize, flat: Vec<usize>) -> Result<Self> {
        if order == 0 || order > MAX_TABLE_ORDER {
            return Err(Error::MalformedTable(format!("unsupported order {order}")));
        }
        if flat.len() != order * order {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, got {}",
                order * order,
                flat.len()
            )));
        }
        if let Some(bad) = flat.iter().find(|&&v| v >= order) {
            return Err(Error::MalformedTable(format!("entry {bad} out of range")));
        }
        for g in 0..order {
            if flat[g] != g || flat[g * order] != g {
                return Err(Error::MalformedTable(format!(
                    "element 0 does not act as identity on {g}"
                )));
            }
        }
        let table: Vec<u16> = flat.into_iter().map(|v| v as u16).collect();
        let mut inverse = Vec::with_capacity(order);
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            match row.iter().position(|&v| v == 0) {
                Some(h) => inverse.push(h as u16),
                None => {
                    return Err(Error::MalformedTable(format!("element {g} has no inverse")))
                }
            }
        }
        let (prime, log_order) = match prime_power(order) {
            Some((p, k)) => (Some(p), k),
            None => (None, 0),
        };
        let mut group = Self {
            name: name.into(),
            order,
            prime,
            log_order,
            table,
            inverse,
            element_orders: Vec::new(),
        };
        group.element_orders = (0..order).map(|g| group.compute_order(g)).collect();
        Ok(group)
    }

    fn compute_order(&self, g: Elem) -> u32 {
        let mut x = g;
        for k in 1..=self.order {
            if x == 0 {
                return k as u32;
            }
            x = self.mul(x, g);
        }
        0
    }

    /// Cyclic group of order `n` (element `i` is the `i`-th power of the generator).
    pub fn cyclic(n: usize) -> Result<Self> {
        let flat = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(format!("C{n}"), n, flat)
    }

    /// Direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<Self> {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut flat = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                flat[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        Self::from_table(format!("{}x{}", a.name, b.name), n, flat)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// The prime dividing the order, if the order is a prime power.
    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    /// `k` with `|G| = p^k` (0 for the trivial group or non-p-groups).
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn require_prime(&self) -> Result<u32> {
        self.prime.ok_or(Error::NotPGroup(self.order))
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as usize
    }

    /// Cached order of `g` (unchecked index).
    #[inline]
    pub fn order_of(&self, g: Elem) -> usize {
        self.element_orders[g] as usize
    }

    pub fn element_order(&self, g: Elem) -> Result<usize> {
        self.check_elem(g)?;
        Ok(self.order_of(g))
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    pub fn check_elem(&self, g: Elem) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: g,
                order: self.order,
            })
        }
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut e = k.unsigned_abs();
        let o = self.order_of(g) as u64;
        if o > 0 {
            e %= o;
        }
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `[x, y] = x⁻¹y⁻¹xy`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    /// Left-normed triple commutator `[x, y, z] = [[x, y], z]`.
    pub fn commutator3(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        self.commutator(self.commutator(x, y), z)
    }

    /// `a^x = x⁻¹ax`.
    #[inline]
    pub fn conjugate(&self, a: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn raw_table(&self) -> &[u16] {
        &self.table
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup::from_set_unchecked(self, ElementSet::full(self.order))
    }

    pub fn trivial(&self) -> Subgroup<'_> {
        Subgroup::from_set_unchecked(self, ElementSet::from_indices(self.order, [0]))
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Result<Subgroup<'_>> {
        for &g in gens {
            self.check_elem(g)?;
        }
        Ok(Subgroup::from_set_unchecked(self, self.generate(gens)))
    }

    /// Closure of `gens` under right multiplication, starting from the
    /// identity; in a finite group this is the generated subgroup.
    pub(crate) fn generate(&self, gens: &[Elem]) -> ElementSet {
        self.generate_from(ElementSet::from_indices(self.order, [0]), gens)
    }

    /// Same as [`Self::generate`] but seeded with `start`, which must contain
    /// the identity and lie inside the subgroup generated by `gens`.
    pub(crate) fn generate_from(&self, start: ElementSet, gens: &[Elem]) -> ElementSet {
        let mut set = start;
        let mut list: Vec<Elem> = set.iter().collect();
        let mut i = 0;
        while i < list.len() {
            let e = list[i];
            for &g in gens {
                let f = self.mul(e, g);
                if set.insert(f) {
                    list.push(f);
                }
            }
            i += 1;
        }
        set
    }

    pub fn is_abelian(&self) -> bool {
        self.whole().is_abelian()
    }

    pub fn exponent(&self) -> usize {
        self.whole().exponent()
    }

    /// Number of elements of each order, as `(order, count)` ascending.
    pub fn order_histogram(&self) -> Vec<(usize, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for &o in &self.element_orders {
            *h.entry(o as usize).or_insert(0usize) += 1;
        }
        h.into_iter().collect()
    }

    /// Relabels elements by `perm` (new index of old element `i` is `perm[i]`).
    /// `perm[0]` must be `0`.
    pub fn relabel(&self, perm: &[Elem]) -> Result<Self> {
        let n = self.order;
        let mut flat = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_table(self.name.clone(), n, flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(625), Some((5, 4)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn cyclic_orders() {
        let c4 = GroupTable::cyclic(4).unwrap();
        assert_eq!(c4.element_order(0).unwrap(), 1);
        assert_eq!(c4.element_order(1).unwrap(), 4);
        assert_eq!(c4.element_order(2).unwrap(), 2);
        assert!(c4.element_order(4).is_err());
        assert_eq!(c4.pow(1, -1), 3);
        assert_eq!(c4.commutator(1, 3), 0);
    }

    #[test]
    fn identity_must_be_index_zero() {
        // Z/2 with the identity stored at index 1.
        let err = GroupTable::from_table("bad", 2, vec![1, 0, 0, 1]).unwrap_err();
        assert!(matches!(err, Error::MalformedTable(_)));
    }

    #[test]
    fn direct_product_layout() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let c3 = GroupTable::cyclic(3).unwrap();
        let c6 = GroupTable::direct_product(&c2, &c3).unwrap();
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.prime(), None);
        assert_eq!(c6.element_order(4).unwrap(), 6);
    }
}
