use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::SkewBrace;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::report::VerificationReport;

/// An ideal: a subset normal in both groups with `a·I = a∘I` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraceIdeal {
    members: Vec<usize>,
}

impl BraceIdeal {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.members.clone())
    }

    pub fn is_subset_of(&self, other: &BraceIdeal) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

fn whole(n: usize) -> Vec<usize> {
    (0..n).collect()
}

impl SkewBrace {
    /// The subgroup of `(A,·)` generated by all `x*y`, `x ∈ xs`, `y ∈ ys`.
    pub fn star_subgroup(&self, xs: &[usize], ys: &[usize]) -> Subgroup {
        let gens: BTreeSet<usize> =
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| self.star(x, y))).collect();
        self.dot().subgroup_closure(gens)
    }

    /// `A*A`, checked to be an ideal.
    pub fn derived_ideal(&self) -> Result<BraceIdeal> {
        let all = whole(self.order());
        self.certify("derived ideal", self.star_subgroup(&all, &all).into_members())
    }

    pub fn is_perfect(&self) -> Result<bool> {
        Ok(self.derived_ideal()?.order() == self.order())
    }

    /// Packages `members` as an ideal, or reports why it is not one.
    pub fn ideal(&self, members: &[usize]) -> Result<BraceIdeal> {
        let report = self.is_ideal(members);
        if !report.passed() {
            return Err(Error::NotAnIdeal(report));
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        Ok(BraceIdeal { members })
    }

    fn certify(&self, what: &str, members: Vec<usize>) -> Result<BraceIdeal> {
        let report = self.is_ideal(&members);
        if !report.passed() {
            return Err(Error::InternalInconsistency(format!("{what} is not an ideal: {report}")));
        }
        Ok(BraceIdeal { members })
    }

    /// Checks subgroup closure, normality in both groups and `a·I = a∘I`,
    /// stopping at the first failing condition.
    pub fn is_ideal(&self, subset: &[usize]) -> VerificationReport {
        let mut report = VerificationReport::new("ideal");
        let n = self.order();
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; n];
        for &x in &members {
            if x >= n {
                report.record("out-of-range", vec![x]);
                return report;
            }
            mask[x] = true;
        }
        if !mask[0] {
            report.record("contains-identity", vec![0]);
            return report;
        }
        for (name, table) in [("dot", self.dot()), ("circ", self.circ())] {
            if let Some((a, b)) = closure_failure(table, &members, &mask) {
                report.record(&format!("{name}-subgroup"), vec![a, b]);
                return report;
            }
            if let Some((g, x)) = table.normality_witness(&Subgroup::from_sorted(members.clone())) {
                report.record(&format!("{name}-normal"), vec![g, x]);
                return report;
            }
            report.checked += (members.len() * n) as u64;
        }
        // a∘x = a·λ_a(x), so a·I = a∘I iff λ_a(I) ⊆ I.
        for a in 0..n {
            if let Some(&x) = members.iter().find(|&&x| !mask[self.lambda(a, x)]) {
                report.record("coset-equality", vec![a, x]);
                return report;
            }
        }
        report.checked += (members.len() * n) as u64;
        report
    }

    /// The quotient brace on cosets with minimal representatives, and the
    /// projection `x ↦ coset index`.
    pub fn quotient_brace(&self, ideal: &BraceIdeal) -> Result<(SkewBrace, Vec<usize>)> {
        let report = self.is_ideal(ideal.members());
        if !report.passed() {
            return Err(Error::NotAnIdeal(report));
        }
        let (label, reps) = self.dot().coset_labels(&ideal.as_subgroup());
        let m = reps.len();
        let dot = GroupTable::from_fn_trusted(m, |i, j| label[self.mul(reps[i], reps[j])]);
        let circ = GroupTable::from_fn_trusted(m, |i, j| label[self.compose(reps[i], reps[j])]);
        let mut q = SkewBrace::from_tables_unchecked(dot, circ);
        q.sampled = self.sampled;
        Ok((q, label))
    }

    fn left_annihilating(&self, a: usize) -> bool {
        (0..self.order()).all(|x| self.star(a, x) == 0)
    }

    fn right_annihilating(&self, a: usize) -> bool {
        (0..self.order()).all(|x| self.star(x, a) == 0)
    }

    /// `{a : a*x = 1 for all x} ∩ Z(A,·)`.
    pub fn socle(&self) -> Result<BraceIdeal> {
        let z = self.dot().center();
        let members = z.into_members().into_iter().filter(|&a| self.left_annihilating(a)).collect();
        self.certify("socle", members)
    }

    /// `{a : a*x = 1 = x*a for all x} ∩ Z(A,·)`.
    pub fn annihilator(&self) -> Result<BraceIdeal> {
        let z = self.dot().center();
        let members = z
            .into_members()
            .into_iter()
            .filter(|&a| self.left_annihilating(a) && self.right_annihilating(a))
            .collect();
        self.certify("annihilator", members)
    }

    /// `Soc(A) ∩ Z(A,∘)`, the second description of the annihilator.
    pub fn annihilator_via_centers(&self) -> Result<BraceIdeal> {
        let zc = self.circ().center();
        let members = self.socle()?.members.into_iter().filter(|&a| zc.contains(a)).collect();
        self.certify("annihilator", members)
    }

    /// The preimage of `Ann(A/Ann(A))` under the projection `A → A/Ann(A)`.
    pub fn second_annihilator(&self) -> Result<BraceIdeal> {
        let ann = self.annihilator()?;
        let (q, proj) = self.quotient_brace(&ann)?;
        let upper = q.annihilator()?;
        let members = (0..self.order()).filter(|&a| upper.contains(proj[a])).collect();
        self.certify("second annihilator", members)
    }

    /// Elementwise description of `Ann₂(A)`: `a*x`, `x*a` and `[a, x]` lie in
    /// `Ann(A)` for every `x`. Agrees with [`Self::second_annihilator`].
    pub fn second_annihilator_direct(&self) -> Result<Vec<usize>> {
        let ann = self.annihilator()?;
        let n = self.order();
        Ok((0..n)
            .filter(|&a| {
                (0..n).all(|x| {
                    ann.contains(self.star(a, x))
                        && ann.contains(self.star(x, a))
                        && ann.contains(self.commutator(a, x))
                })
            })
            .collect())
    }

    /// Ideals among the subgroups of `(A,·)` generated by at most three
    /// elements. Complete for every brace whose additive subgroups are all
    /// 3-generated, which covers all orders below 16.
    pub fn small_ideals(&self) -> Vec<BraceIdeal> {
        let n = self.order();
        let mut subgroups: BTreeSet<Subgroup> = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                let ab = self.dot().subgroup_closure([a, b]);
                if ab.order() == n {
                    subgroups.insert(ab);
                    continue;
                }
                for c in b..n {
                    subgroups.insert(self.dot().subgroup_closure([a, b, c]));
                }
            }
        }
        subgroups
            .into_iter()
            .filter(|s| self.is_ideal(s.members()).passed())
            .map(|s| BraceIdeal { members: s.into_members() })
            .collect()
    }
}

fn closure_failure(table: &GroupTable, members: &[usize], mask: &[bool]) -> Option<(usize, usize)> {
    members.iter().find_map(|&a| {
        if !mask[table.inv(a)] {
            return Some((a, a));
        }
        members.iter().find(|&&b| !mask[table.mul(a, b)]).map(|&b| (a, b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::LiftMode;
    use crate::group::catalog;

    fn almost(g: &GroupTable) -> SkewBrace {
        SkewBrace::lift(g, LiftMode::AlmostTrivial)
    }

    #[test]
    fn trivial_brace_invariants() {
        let g = catalog::cyclic(6);
        let b = SkewBrace::lift(&g, LiftMode::Trivial);
        assert!(b.derived_ideal().unwrap().is_trivial());
        assert_eq!(b.socle().unwrap().order(), 6);
        assert_eq!(b.annihilator().unwrap().order(), 6);
        assert_eq!(b.second_annihilator().unwrap().order(), 6);
        assert!(!b.is_perfect().unwrap());
    }

    #[test]
    fn almost_trivial_socle_is_the_center() {
        for g in [catalog::symmetric(3), catalog::quaternion(8), catalog::dihedral(4), catalog::alternating(4)] {
            let b = almost(&g);
            assert_eq!(b.socle().unwrap().members(), g.center().members());
            assert_eq!(b.annihilator().unwrap().members(), g.center().members());
        }
    }

    #[test]
    fn almost_trivial_a5() {
        let b = almost(&catalog::alternating(5));
        assert_eq!(b.derived_ideal().unwrap().order(), 60);
        assert!(b.is_perfect().unwrap());
        assert!(b.socle().unwrap().is_trivial());
        assert!(b.second_annihilator().unwrap().is_trivial());
    }

    #[test]
    fn almost_trivial_s3_star_subgroup_is_a3() {
        let s3 = catalog::symmetric(3);
        let b = almost(&s3);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(b.star_subgroup(&all, &all), s3.derived_subgroup());
    }

    #[test]
    fn is_ideal_on_s3() {
        let s3 = catalog::symmetric(3);
        let b = almost(&s3);
        assert!(b.is_ideal(&[0]).passed());
        assert!(b.is_ideal(&(0..6).collect::<Vec<_>>()).passed());
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let r = b.is_ideal(&[0, t]);
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].rule, "dot-normal");
        let r = b.is_ideal(&[1]);
        assert_eq!(r.witnesses[0].rule, "contains-identity");
    }

    #[test]
    fn quotient_by_trivial_and_derived() {
        let b = almost(&catalog::symmetric(3));
        let (q, proj) = b.quotient_brace(&BraceIdeal { members: vec![0] }).unwrap();
        assert_eq!(q, b);
        assert_eq!(proj, (0..6).collect::<Vec<_>>());
        let (q, _) = b.quotient_brace(&b.derived_ideal().unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        assert!(q.is_trivial());
        let bad = BraceIdeal { members: vec![0, 1] };
        assert!(matches!(b.quotient_brace(&bad), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn order_one_brace_is_degenerate() {
        let b = SkewBrace::lift(&GroupTable::trivial(), LiftMode::Trivial);
        assert!(b.is_perfect().unwrap());
        assert!(b.is_two_sided());
        assert_eq!(b.annihilator().unwrap().order(), 1);
        assert_eq!(b.second_annihilator().unwrap().order(), 1);
        assert_eq!(b.socle().unwrap().order(), 1);
    }
}
