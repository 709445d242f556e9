//! The skew brace type.
//!
//! Both group structures live on the index set `0..n` with identity 0. The
//! λ-map `λ_a(x) = a⁻¹·(a∘x)` and the star operation `a*b = a⁻¹·(a∘b)·b⁻¹`
//! are tabulated once at construction.

use crate::error::{Error, Result};
use crate::group::{self, GroupTable};
use crate::scan::{self, Coverage, Scan};

mod ideal;

pub use ideal::BraceIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    /// `∘ = ·`
    Trivial,
    /// `a∘b = b·a`
    AlmostTrivial,
}

#[derive(Clone, Debug)]
pub struct SkewBrace {
    dot: GroupTable,
    circ: GroupTable,
    lambda: Vec<u16>,
    star: Vec<u16>,
    sampled: bool,
}

impl PartialEq for SkewBrace {
    fn eq(&self, other: &Self) -> bool {
        self.dot == other.dot && self.circ == other.circ
    }
}

impl Eq for SkewBrace {}

impl SkewBrace {
    /// Validates the left brace relation, exhaustively up to order 512 and on
    /// a fixed-seed sample above.
    pub fn new(dot: GroupTable, circ: GroupTable) -> Result<Self> {
        Self::with_coverage(dot, circ, Coverage::Auto)
    }

    pub fn with_coverage(dot: GroupTable, circ: GroupTable, coverage: Coverage) -> Result<Self> {
        if dot.order() != circ.order() {
            return Err(Error::OrderMismatch { dot: dot.order(), circ: circ.order() });
        }
        let brace = Self::from_tables_unchecked(dot, circ);
        let scan = brace.left_relation_scan(coverage);
        if let Some(w) = scan.first() {
            return Err(Error::LeftBraceViolation(w[0], w[1], w[2]));
        }
        Ok(SkewBrace { sampled: scan.sampled || brace.dot.sampled() || brace.circ.sampled(), ..brace })
    }

    /// Pairs two tables without checking the brace relation. Intended for
    /// constructions that are braces by design and for diagnosing corrupted
    /// tables with the identity suite.
    pub fn from_tables_unchecked(dot: GroupTable, circ: GroupTable) -> Self {
        assert_eq!(dot.order(), circ.order());
        let n = dot.order();
        let mut lambda = vec![0u16; n * n];
        let mut star = vec![0u16; n * n];
        for a in 0..n {
            let ai = dot.inv(a);
            for x in 0..n {
                let l = dot.mul(ai, circ.mul(a, x));
                lambda[a * n + x] = l as u16;
                star[a * n + x] = dot.mul(l, dot.inv(x)) as u16;
            }
        }
        SkewBrace { dot, circ, lambda, star, sampled: false }
    }

    pub fn lift(g: &GroupTable, mode: LiftMode) -> SkewBrace {
        let circ = match mode {
            LiftMode::Trivial => g.clone(),
            LiftMode::AlmostTrivial => g.opposite(),
        };
        SkewBrace { sampled: g.sampled(), ..Self::from_tables_unchecked(g.clone(), circ) }
    }

    pub fn order(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &GroupTable {
        &self.dot
    }

    pub fn circ(&self) -> &GroupTable {
        &self.circ
    }

    /// Whether any defining check ran on a sample only.
    pub fn sampled(&self) -> bool {
        self.sampled
    }

    /// `a · b`
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.dot.mul(a, b)
    }

    /// `a ∘ b`
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.circ.mul(a, b)
    }

    /// `a⁻¹`, the inverse for `·`.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.dot.inv(a)
    }

    /// `ā`, the inverse for `∘`.
    #[inline]
    pub fn circ_inv(&self, a: usize) -> usize {
        self.circ.inv(a)
    }

    #[inline]
    pub fn lambda(&self, a: usize, x: usize) -> usize {
        self.lambda[a * self.order() + x] as usize
    }

    /// `λ_a` as a permutation of `0..n`.
    pub fn lambda_perm(&self, a: usize) -> Vec<usize> {
        let n = self.order();
        self.lambda[a * n..(a + 1) * n].iter().map(|&x| x as usize).collect()
    }

    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.star[a * self.order() + b] as usize
    }

    /// `[a, b] = a·b·a⁻¹·b⁻¹`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.dot.commutator(a, b)
    }

    /// Product of a word in `·`.
    pub fn dot_word(&self, word: &[usize]) -> usize {
        self.dot.product(word)
    }

    pub fn is_trivial(&self) -> bool {
        self.dot == self.circ
    }

    pub(crate) fn left_relation_scan(&self, coverage: Coverage) -> Scan {
        scan::triples(self.order(), coverage, |a, b, c| {
            self.compose(a, self.mul(b, c))
                == self.mul(self.mul(self.compose(a, b), self.inv(a)), self.compose(a, c))
        })
    }

    /// Scan of the right brace relation `(b·c)∘a = (b∘a)·a⁻¹·(c∘a)`; witnesses
    /// are `(a, b, c)`.
    pub fn right_relation_scan(&self, coverage: Coverage) -> Scan {
        scan::triples(self.order(), coverage, |a, b, c| {
            self.compose(self.mul(b, c), a)
                == self.mul(self.mul(self.compose(b, a), self.inv(a)), self.compose(c, a))
        })
    }

    /// `None` if the brace is two-sided, otherwise the lowest `(a, b, c)` at
    /// which the right brace relation fails.
    pub fn two_sided_witness(&self) -> Option<(usize, usize, usize)> {
        self.right_relation_scan(Coverage::Auto).first().map(|w| (w[0], w[1], w[2]))
    }

    pub fn is_two_sided(&self) -> bool {
        self.two_sided_witness().is_none()
    }

    /// Relabels through `perm` (fixing 0); the result is isomorphic to `self`.
    pub fn relabel(&self, perm: &[usize]) -> SkewBrace {
        SkewBrace {
            sampled: self.sampled,
            ..Self::from_tables_unchecked(self.dot.relabel(perm), self.circ.relabel(perm))
        }
    }
}

/// Validates two raw tables as a skew brace. When both identities sit at the
/// same index `e ≠ 0` the tables are relabeled by swapping `e` and 0, and `e`
/// is returned alongside the brace.
pub fn validate_skew_brace(
    dot_rows: &[Vec<usize>],
    circ_rows: &[Vec<usize>],
) -> Result<(SkewBrace, Option<usize>)> {
    if dot_rows.len() != circ_rows.len() {
        return Err(Error::OrderMismatch { dot: dot_rows.len(), circ: circ_rows.len() });
    }
    let dot_e = group::find_identity(dot_rows);
    let circ_e = group::find_identity(circ_rows);
    if let (Some(d), Some(c)) = (dot_e, circ_e) {
        if d != c {
            return Err(Error::IdentityMismatch { dot: d, circ: c });
        }
    }
    let dot = group::validate_group_table(dot_rows)?;
    let circ = group::validate_group_table(circ_rows)?;
    let relabeled = dot_e.filter(|&e| e != 0);
    Ok((SkewBrace::new(dot, circ)?, relabeled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn trivial_and_almost_trivial_lifts_validate() {
        for g in [catalog::symmetric(3), catalog::quaternion(8), catalog::cyclic(5)] {
            for mode in [LiftMode::Trivial, LiftMode::AlmostTrivial] {
                let b = SkewBrace::lift(&g, mode);
                assert!(SkewBrace::new(b.dot().clone(), b.circ().clone()).is_ok());
            }
        }
        let z2 = SkewBrace::lift(&catalog::cyclic(2), LiftMode::Trivial);
        assert_eq!(z2.order(), 2);
        let z6 = catalog::cyclic(6);
        assert_eq!(SkewBrace::lift(&z6, LiftMode::Trivial), SkewBrace::lift(&z6, LiftMode::AlmostTrivial));
    }

    #[test]
    fn lambda_of_lifts() {
        let s3 = catalog::symmetric(3);
        let trivial = SkewBrace::lift(&s3, LiftMode::Trivial);
        let almost = SkewBrace::lift(&s3, LiftMode::AlmostTrivial);
        for a in 0..6 {
            assert_eq!(trivial.lambda_perm(a), (0..6).collect::<Vec<_>>());
            for x in 0..6 {
                // λ_a(x) = a⁻¹·x·a
                assert_eq!(almost.lambda(a, x), s3.product(&[s3.inv(a), x, a]));
                assert_eq!(trivial.star(a, x), 0);
                assert_eq!(almost.star(a, x), s3.product(&[s3.inv(a), x, a, s3.inv(x)]));
            }
        }
    }

    #[test]
    fn lifts_are_two_sided() {
        let s3 = catalog::symmetric(3);
        assert!(SkewBrace::lift(&s3, LiftMode::Trivial).is_two_sided());
        assert!(SkewBrace::lift(&s3, LiftMode::AlmostTrivial).is_two_sided());
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let r = SkewBrace::new(catalog::cyclic(2), catalog::cyclic(3));
        assert!(matches!(r, Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn z4_with_klein_circ_over_all_labelings() {
        // Z4 addition against every relabeling of the Klein four-group.
        let z4 = catalog::cyclic(4).rows();
        let v4 = catalog::elementary_abelian(2, 2);
        let mut outcomes = (0, 0, 0);
        for perm in permutations(4) {
            let mut circ = vec![vec![0; 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    circ[perm[a]][perm[b]] = perm[v4.mul(a, b)];
                }
            }
            // independent brute-force oracle on the raw tables
            let e = perm[0];
            let inv = |x: usize| (4 - x) % 4;
            let holds = e == 0
                && (0..4).all(|a| {
                    (0..4).all(|b| {
                        (0..4).all(|c| circ[a][z4[b][c]] == z4[z4[circ[a][b]][inv(a)]][circ[a][c]])
                    })
                });
            match validate_skew_brace(&z4, &circ) {
                Ok(_) => {
                    assert!(holds);
                    outcomes.0 += 1
                }
                Err(Error::IdentityMismatch { .. }) => {
                    assert_ne!(e, 0);
                    outcomes.1 += 1
                }
                Err(Error::LeftBraceViolation(a, b, c)) => {
                    assert!(!holds);
                    assert_ne!(circ[a][z4[b][c]], z4[z4[circ[a][b]][inv(a)]][circ[a][c]]);
                    outcomes.2 += 1
                }
                Err(other) => panic!("unexpected {other}"),
            }
        }
        assert_eq!(outcomes.1, 18);
        assert_eq!(outcomes.0 + outcomes.2, 6);
        // XOR on the residues is a∘b = a + b + 2ab, a brace with additive Z4
        assert!(outcomes.0 > 0);
        assert!(validate_skew_brace(&z4, &v4.rows()).is_ok());
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn identity_relabeling_is_reported() {
        let s3 = catalog::symmetric(3);
        let perm = [3, 1, 2, 0, 4, 5];
        let raw = |g: &GroupTable| {
            let mut rows = vec![vec![0; 6]; 6];
            for a in 0..6 {
                for b in 0..6 {
                    rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
                }
            }
            rows
        };
        let (b, relabel) = validate_skew_brace(&raw(&s3), &raw(&s3.opposite())).unwrap();
        assert_eq!(relabel, Some(3));
        assert_eq!(b.order(), 6);
    }
}
