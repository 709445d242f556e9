//! Finite groups as multiplication tables over element indices `0..n`.
//!
//! Every [`GroupTable`] has its identity at index 0; tables whose identity
//! sits elsewhere are relabeled by swapping that index with 0.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scan::{self, Coverage};

pub mod catalog;
mod hom;
mod subgroup;

pub use hom::{find_isomorphism, find_surjection, normal_subgroups, GroupHom, ISO_NODE_BUDGET};
pub use subgroup::Subgroup;

/// Element indices are stored as `u16`.
pub const MAX_ORDER: usize = u16::MAX as usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    sampled: bool,
}

/// Finds the identity of a raw table: the index whose row and column are
/// both the identity permutation.
pub fn find_identity(rows: &[Vec<usize>]) -> Option<usize> {
    let n = rows.len();
    (0..n).find(|&e| (0..n).all(|x| rows[e].get(x) == Some(&x) && rows[x].get(e) == Some(&x)))
}

/// Swaps the labels `0` and `e` throughout a raw table.
pub fn swap_labels(rows: &[Vec<usize>], e: usize) -> Vec<Vec<usize>> {
    let relabel = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let n = rows.len();
    let mut out = vec![vec![0; n]; n];
    for (a, row) in rows.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            out[relabel(a)][relabel(b)] = relabel(c);
        }
    }
    out
}

/// Validates a raw multiplication table and normalizes its identity to 0.
///
/// Row/column permutation and identity checks are always exhaustive;
/// associativity follows the [`Coverage::Auto`] policy.
pub fn validate_group_table(rows: &[Vec<usize>]) -> Result<GroupTable> {
    validate_with(rows, Coverage::Auto)
}

pub fn validate_with(rows: &[Vec<usize>], coverage: Coverage) -> Result<GroupTable> {
    let n = rows.len();
    let mut report = VerificationReport::new("group-table");
    if n == 0 {
        report.record("empty", vec![]);
        return Err(Error::NotAGroup(report));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n || row.iter().any(|&x| x >= n) {
            report.record("row-shape", vec![i]);
        }
    }
    if !report.passed() {
        return Err(Error::NotAGroup(report));
    }
    for (i, row) in rows.iter().enumerate() {
        if !is_permutation(row.iter().copied(), n) {
            report.record("row-permutation", vec![i]);
        }
    }
    for j in 0..n {
        if !is_permutation(rows.iter().map(|r| r[j]), n) {
            report.record("column-permutation", vec![j]);
        }
    }
    report.checked += 2 * n as u64;
    if !report.passed() {
        return Err(Error::NotAGroup(report));
    }
    let Some(e) = find_identity(rows) else {
        report.record("identity", vec![]);
        return Err(Error::NotAGroup(report));
    };
    let rows = if e == 0 { rows.to_vec() } else { swap_labels(rows, e) };
    let mul: Vec<u16> = rows.iter().flatten().map(|&x| x as u16).collect();
    let assoc = scan::triples(n, coverage, |a, b, c| {
        let ab = mul[a * n + b] as usize;
        let bc = mul[b * n + c] as usize;
        mul[ab * n + c] == mul[a * n + bc]
    });
    report.absorb("associativity", assoc.clone());
    if !report.passed() {
        return Err(Error::NotAGroup(report));
    }
    Ok(GroupTable::from_flat_unchecked(n, mul, assoc.sampled))
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in it {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    true
}

impl GroupTable {
    /// Builds a table from `op`, validating it.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        validate_group_table(&rows)
    }

    /// Builds a table known to be a group with identity 0 (no associativity check).
    pub(crate) fn from_flat_unchecked(n: usize, mul: Vec<u16>, sampled: bool) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        GroupTable { order: n, mul, inv, sampled }
    }

    /// Builds a table from an operation already known to define a group with
    /// identity 0, such as one derived from matrix or permutation products.
    pub(crate) fn from_fn_trusted(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(op(a, b) as u16);
            }
        }
        GroupTable::from_flat_unchecked(n, mul, false)
    }

    pub fn trivial() -> Self {
        GroupTable::from_flat_unchecked(1, vec![0], false)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Whether associativity was only checked on a sample.
    pub fn sampled(&self) -> bool {
        self.sampled
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// The opposite group, `a ·op b = b · a`.
    pub fn opposite(&self) -> GroupTable {
        let n = self.order;
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul[b * n + a];
            }
        }
        GroupTable { order: n, mul, inv: self.inv.clone(), sampled: self.sampled }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    /// Number of elements of each order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for k in self.element_orders() {
            *profile.entry(k).or_insert(0) += 1;
        }
        profile
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().fold(1, lcm)
    }

    /// Relabels elements through a permutation `perm` with `perm[0] == 0`:
    /// the result satisfies `new.mul(perm[a], perm[b]) == perm[self.mul(a, b)]`.
    pub fn relabel(&self, perm: &[usize]) -> GroupTable {
        assert_eq!(perm.len(), self.order);
        assert_eq!(perm[0], 0, "relabeling must fix the identity");
        let n = self.order;
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u16;
            }
        }
        GroupTable::from_flat_unchecked(n, mul, self.sampled)
    }

    /// Direct product; the pair `(g, h)` has index `g + |G|·h`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (m, k) = (self.order, other.order);
        GroupTable::from_fn_trusted(m * k, |a, b| {
            self.mul(a % m, b % m) + m * other.mul(a / m, b / m)
        })
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn order_one_table_is_a_group() {
        let g = validate_group_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn s3_from_permutations_validates() {
        let s3 = catalog::symmetric(3);
        let again = validate_group_table(&s3.rows()).unwrap();
        assert_eq!(again, s3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // Z3 with identity stored at index 2.
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = validate_group_table(&rows).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 2);
        assert_eq!(g.mul(1, 2), 0);
    }

    #[test]
    fn swapped_entry_breaks_associativity_or_latin_property() {
        // Swap two entries within one row so that rows stay permutations
        // but columns do not: the report names a column.
        let mut rows = catalog::symmetric(3).rows();
        rows[1].swap(2, 3);
        match validate_group_table(&rows) {
            Err(Error::NotAGroup(r)) => {
                assert!(!r.witnesses.is_empty());
                assert_eq!(r.witnesses[0].rule, "column-permutation");
            }
            other => panic!("expected NotAGroup, got {other:?}"),
        }
    }

    #[test]
    fn relabeled_latin_square_reports_associativity_triple() {
        // Transposing two labels in the output only keeps the Latin property;
        // find a perturbation that is still Latin but not associative.
        let s3 = catalog::symmetric(3);
        let n = 6;
        let mut found = false;
        'outer: for x in 1..n {
            for y in (x + 1)..n {
                // swap the roles of x and y in products from row 1 and row 2 only
                let mut rows = s3.rows();
                for r in [1usize, 2] {
                    for v in rows[r].iter_mut() {
                        if *v == x {
                            *v = y;
                        } else if *v == y {
                            *v = x;
                        }
                    }
                }
                if let Err(Error::NotAGroup(rep)) = validate_group_table(&rows) {
                    if let Some(w) = rep.witnesses.iter().find(|w| w.rule == "associativity") {
                        let (a, b, c) = (w.elements[0], w.elements[1], w.elements[2]);
                        assert_ne!(rows[rows[a][b]][c], rows[a][rows[b][c]]);
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn non_group_tables_are_rejected() {
        assert!(validate_group_table(&[]).is_err());
        assert!(validate_group_table(&[vec![0, 1], vec![1]]).is_err());
        assert!(validate_group_table(&[vec![0, 2], vec![1, 0]]).is_err());
        // identity at index 1
        assert!(validate_group_table(&[vec![1, 0], vec![0, 1]]).is_ok());
        assert!(validate_group_table(&[vec![2, 0, 1], vec![0, 1, 2], vec![1, 2, 0]]).is_ok());
        // latin square without an identity
        let no_identity = vec![vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]];
        assert!(matches!(validate_group_table(&no_identity), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn opposite_and_exponent() {
        let s3 = catalog::symmetric(3);
        let op = s3.opposite();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(op.mul(a, b), s3.mul(b, a));
            }
        }
        assert_eq!(s3.exponent(), 6);
        assert_eq!(catalog::cyclic(12).exponent(), 12);
    }
}
