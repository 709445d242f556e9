//! How far the brace analog of Grün's lemma holds.
//!
//! For any skew brace `Ann₂(A)*(A*A)` and `[Ann₂(A), A*A]` are trivial, but
//! `(A*A)*Ann₂(A)` need not be. This module checks the supporting identities,
//! the maps `φ_a`, `π_a`, `ψ_a`, `ι_a` that control these products, and reports
//! the defect `(A*A)*Ann₂(A)` of a given brace.

use serde::{Deserialize, Serialize};

use crate::brace::{BraceIdeal, SkewBrace};
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};
use crate::scan::{self, Coverage};

/// Checks the standard identities over all triples (or a sample, per
/// `coverage`). A valid brace never violates any of them; a violation comes
/// back as [`Error::IdentityViolation`] carrying the full report.
pub fn identity_suite(a: &SkewBrace, coverage: Coverage) -> Result<VerificationReport> {
    let report = identity_report(a, coverage);
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::IdentityViolation(report))
    }
}

/// Like [`identity_suite`] but returns the report whatever the outcome.
pub fn identity_report(b: &SkewBrace, coverage: Coverage) -> VerificationReport {
    let n = b.order();
    let mut report = VerificationReport::new("identities");
    if b.sampled() {
        report.mark_sampled();
    }

    // a∘b = a·λ_a(b), a·b = a∘λ_ā(b), a*b = λ_a(b)·b⁻¹
    report.absorb(
        "circ-via-lambda",
        scan::pairs(n, |x, y| b.compose(x, y) == b.mul(x, b.lambda(x, y))),
    );
    report.absorb(
        "dot-via-lambda",
        scan::pairs(n, |x, y| b.mul(x, y) == b.compose(x, b.lambda(b.circ_inv(x), y))),
    );
    report.absorb(
        "star-via-lambda",
        scan::pairs(n, |x, y| b.star(x, y) == b.mul(b.lambda(x, y), b.inv(y))),
    );
    // ā = λ_ā(a⁻¹)
    report.absorb(
        "circ-inverse-via-lambda",
        scan::singles(n, |x| b.circ_inv(x) == b.lambda(b.circ_inv(x), b.inv(x))),
    );

    report.absorb(
        "lambda-automorphism",
        scan::triples(n, coverage, |x, y, z| {
            b.lambda(x, b.mul(y, z)) == b.mul(b.lambda(x, y), b.lambda(x, z))
        }),
    );
    report.absorb(
        "lambda-homomorphism",
        scan::triples(n, coverage, |x, y, z| {
            b.lambda(b.compose(x, y), z) == b.lambda(x, b.lambda(y, z))
        }),
    );
    // a*(x·y) = (a*x)·x·(a*y)·x⁻¹
    report.absorb(
        "star-of-product",
        scan::triples(n, coverage, |a, x, y| {
            b.star(a, b.mul(x, y)) == b.dot_word(&[b.star(a, x), x, b.star(a, y), b.inv(x)])
        }),
    );
    // (x∘y)*a = (x*(y*a))·(y*a)·(x*a)
    report.absorb(
        "star-of-composite",
        scan::triples(n, coverage, |x, y, a| {
            let ya = b.star(y, a);
            b.star(b.compose(x, y), a) == b.dot_word(&[b.star(x, ya), ya, b.star(x, a)])
        }),
    );
    // λ_a(x*y) = (a∘x∘ā)*λ_a(y)
    report.absorb(
        "lambda-of-star",
        scan::triples(n, coverage, |a, x, y| {
            let conj = b.compose(b.compose(a, x), b.circ_inv(a));
            b.lambda(a, b.star(x, y)) == b.star(conj, b.lambda(a, y))
        }),
    );
    // [a,x·y] = [a,x]·x·[a,y]·x⁻¹
    report.absorb(
        "commutator-of-product",
        scan::triples(n, coverage, |a, x, y| {
            b.commutator(a, b.mul(x, y))
                == b.dot_word(&[b.commutator(a, x), x, b.commutator(a, y), b.inv(x)])
        }),
    );
    report
}

/// Which of the maps attached to an element `a` are homomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapAnalysis {
    pub element: usize,
    pub in_second_annihilator: bool,
    /// `x ↦ a*x` on `(A,·)`
    pub phi_dot_hom: bool,
    /// `x ↦ [a,x]` on `(A,·)`
    pub pi_dot_hom: bool,
    /// `x ↦ x*a` on `(A,∘)`
    pub psi_circ_hom: bool,
    /// `x ↦ x*a` on `(A,·)`
    pub psi_dot_hom: bool,
    /// `x ↦ a∘x∘ā` preserves `·`
    pub iota_dot_aut: bool,
    /// `a∘x∘ā = a·λ_a(x)·a⁻¹·(x*ā)` for all `x`; only evaluated on `Ann₂(A)`.
    pub char2_relation_holds: Option<bool>,
}

fn preserves_dot(b: &SkewBrace, f: impl Fn(usize) -> usize + Sync) -> bool {
    scan::pairs(b.order(), |x, y| f(b.mul(x, y)) == b.mul(f(x), f(y))).is_clean()
}

fn psi_dot_hom(b: &SkewBrace, a: usize) -> bool {
    preserves_dot(b, |x| b.star(x, a))
}

fn iota(b: &SkewBrace, a: usize, x: usize) -> usize {
    b.compose(b.compose(a, x), b.circ_inv(a))
}

fn iota_dot_aut(b: &SkewBrace, a: usize) -> bool {
    preserves_dot(b, |x| iota(b, a, x))
}

pub fn map_analysis(b: &SkewBrace, a: usize) -> Result<MapAnalysis> {
    let ann2 = b.second_annihilator()?;
    Ok(map_analysis_with(b, a, &ann2))
}

fn map_analysis_with(b: &SkewBrace, a: usize, ann2: &BraceIdeal) -> MapAnalysis {
    let n = b.order();
    let in_ann2 = ann2.contains(a);
    let abar = b.circ_inv(a);
    let char2 = in_ann2.then(|| {
        (0..n).all(|x| {
            iota(b, a, x) == b.dot_word(&[a, b.lambda(a, x), b.inv(a), b.star(x, abar)])
        })
    });
    MapAnalysis {
        element: a,
        in_second_annihilator: in_ann2,
        phi_dot_hom: preserves_dot(b, |x| b.star(a, x)),
        pi_dot_hom: preserves_dot(b, |x| b.commutator(a, x)),
        psi_circ_hom: scan::pairs(n, |x, y| {
            b.star(b.compose(x, y), a) == b.mul(b.star(x, a), b.star(y, a))
        })
        .is_clean(),
        psi_dot_hom: psi_dot_hom(b, a),
        iota_dot_aut: iota_dot_aut(b, a),
        char2_relation_holds: char2,
    }
}

/// The conditions on `a ∈ Ann₂(A)` that decide whether `A*A` annihilates `a`
/// from the left. For a valid brace the four flags always agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharConditions {
    pub element: usize,
    /// `x ↦ x*ā` is a homomorphism on `(A,·)`.
    pub psi_bar_dot_hom: bool,
    /// `z*ā = 1` for every `z ∈ A*A`.
    pub derived_in_kernel: bool,
    /// `x ↦ a∘x∘ā` is an automorphism of `(A,·)`.
    pub iota_dot_aut: bool,
    /// `(x·y)∘ā = (x∘ā)·ā⁻¹·(y∘ā)` for all `x, y`.
    pub right_relation_at_inverse: bool,
}

impl CharConditions {
    pub fn agree(&self) -> bool {
        let v = self.psi_bar_dot_hom;
        self.derived_in_kernel == v && self.iota_dot_aut == v && self.right_relation_at_inverse == v
    }
}

pub fn char_conditions(b: &SkewBrace, a: usize, derived: &BraceIdeal) -> CharConditions {
    let abar = b.circ_inv(a);
    let ainv = b.inv(abar);
    CharConditions {
        element: a,
        psi_bar_dot_hom: psi_dot_hom(b, abar),
        derived_in_kernel: derived.members().iter().all(|&z| b.star(z, abar) == 0),
        iota_dot_aut: iota_dot_aut(b, a),
        right_relation_at_inverse: scan::pairs(b.order(), |x, y| {
            b.compose(b.mul(x, y), abar) == b.dot_word(&[b.compose(x, abar), ainv, b.compose(y, abar)])
        })
        .is_clean(),
    }
}

/// Checks, for every `a ∈ Ann₂(A)`, that the four [`CharConditions`] agree and
/// that `a∘x∘ā = a·λ_a(x)·a⁻¹·(x*ā)`. Also checks for every `a, x, y` that
/// `ι_a(x·y) = ι_a(x)·ι_a(y)` exactly when `(x·y)∘ā = (x∘ā)·ā⁻¹·(y∘ā)`.
pub fn char_equivalences(b: &SkewBrace) -> Result<VerificationReport> {
    let n = b.order();
    let ann2 = b.second_annihilator()?;
    let derived = b.derived_ideal()?;
    let mut report = VerificationReport::new("char-equivalences");
    if b.sampled() {
        report.mark_sampled();
    }
    for &a in ann2.members() {
        let c = char_conditions(b, a, &derived);
        report.checked += 1;
        if !c.agree() {
            report.record("three-way-equivalence", vec![a]);
        }
        if map_analysis_with(b, a, &ann2).char2_relation_holds != Some(true) {
            report.record("inner-automorphism-relation", vec![a]);
        }
    }
    report.absorb(
        "pointwise-right-relation",
        scan::triples(n, Coverage::Auto, |a, x, y| {
            let abar = b.circ_inv(a);
            let aut = iota(b, a, b.mul(x, y)) == b.mul(iota(b, a, x), iota(b, a, y));
            let right = b.compose(b.mul(x, y), abar)
                == b.dot_word(&[b.compose(x, abar), b.inv(abar), b.compose(y, abar)]);
            aut == right
        }),
    );
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::EquivalenceViolation(report))
    }
}

/// Checks that `Ann₂(A)*(A*A)` and `[Ann₂(A), A*A]` are trivial.
pub fn verify_theorem1(b: &SkewBrace) -> Result<VerificationReport> {
    let ann2 = b.second_annihilator()?;
    let derived = b.derived_ideal()?;
    let mut report = VerificationReport::new("annihilator-products");
    let star = b.star_subgroup(ann2.members(), derived.members());
    let comm = b.dot().commutator_subgroup(ann2.members(), derived.members());
    report.checked = 2 * (ann2.order() * derived.order()) as u64;
    if let Some(&x) = star.members().get(1) {
        report.record("second-annihilator-star-derived", vec![x]);
    }
    if let Some(&x) = comm.members().get(1) {
        report.record("second-annihilator-commutator-derived", vec![x]);
    }
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::TheoremViolation(report))
    }
}

/// Summary of the Grün analysis of one brace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrunReport {
    pub brace_id: String,
    pub order: usize,
    pub is_perfect: bool,
    pub is_two_sided: bool,
    pub ann_order: usize,
    pub ann2_order: usize,
    /// Members of `(A*A)*Ann₂(A)`, always containing the identity 0.
    pub defect_set: Vec<usize>,
    pub thm1_status: Status,
    /// Status of: defect trivial ⟺ `ι_a ∈ Aut(A,·)` for all `a ∈ Ann₂(A)`.
    pub cor_equivalence_status: Status,
    /// `Ann(A/Ann(A))` is trivial.
    pub grun_holds: bool,
    pub sampled: bool,
}

impl GrunReport {
    pub fn defect_is_trivial(&self) -> bool {
        self.defect_set.len() == 1
    }
}

pub fn grun_defect(b: &SkewBrace, brace_id: &str) -> Result<GrunReport> {
    let ann = b.annihilator()?;
    let ann2 = b.second_annihilator()?;
    let derived = b.derived_ideal()?;
    let is_perfect = derived.order() == b.order();
    let is_two_sided = b.is_two_sided();
    let defect = b.star_subgroup(derived.members(), ann2.members());

    let thm1_status = verify_theorem1(b)?.status;

    let (quotient, _) = b.quotient_brace(&ann)?;
    let grun_holds = quotient.annihilator()?.is_trivial();

    let all_inner_aut = ann2.members().iter().all(|&a| iota_dot_aut(b, a));
    let mut cor = VerificationReport::new("defect-criterion");
    cor.checked = ann2.order() as u64;
    if all_inner_aut != defect.is_trivial() {
        cor.record("defect-vs-inner-automorphisms", defect.members().to_vec());
    }

    let mut theorem = VerificationReport::new("grun-consequences");
    if is_two_sided && !defect.is_trivial() {
        theorem.record("two-sided-defect", defect.members().to_vec());
    }
    if is_perfect && grun_holds != (ann2.order() == ann.order()) {
        theorem.record("perfect-grun-criterion", ann2.members().to_vec());
    }
    if !cor.passed() {
        return Err(Error::TheoremViolation(cor));
    }
    if !theorem.passed() {
        return Err(Error::TheoremViolation(theorem));
    }

    let two_sided_sampled = b.order() > scan::EXHAUSTIVE_LIMIT;
    Ok(GrunReport {
        brace_id: brace_id.to_string(),
        order: b.order(),
        is_perfect,
        is_two_sided,
        ann_order: ann.order(),
        ann2_order: ann2.order(),
        defect_set: defect.into_members(),
        thm1_status,
        cor_equivalence_status: cor.status,
        grun_holds,
        sampled: b.sampled() || two_sided_sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::LiftMode;
    use crate::group::{catalog, GroupTable};

    fn lifts() -> Vec<SkewBrace> {
        let groups = [catalog::symmetric(3), catalog::quaternion(8), catalog::dihedral(4), catalog::cyclic(6)];
        groups
            .iter()
            .flat_map(|g| [SkewBrace::lift(g, LiftMode::Trivial), SkewBrace::lift(g, LiftMode::AlmostTrivial)])
            .collect()
    }

    #[test]
    fn identities_hold_on_lifts() {
        for b in lifts() {
            let r = identity_suite(&b, Coverage::Exhaustive).unwrap();
            assert_eq!(r.status, Status::Pass);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn relabeled_circ_breaks_identities() {
        let s3 = catalog::symmetric(3);
        let mut broken = 0;
        for i in 1..6 {
            for j in i + 1..6 {
                let mut perm: Vec<usize> = (0..6).collect();
                perm.swap(i, j);
                let circ = s3.relabel(&perm);
                if SkewBrace::new(s3.clone(), circ.clone()).is_ok() {
                    continue;
                }
                broken += 1;
                let b = SkewBrace::from_tables_unchecked(s3.clone(), circ);
                let Err(Error::IdentityViolation(report)) = identity_suite(&b, Coverage::Exhaustive) else {
                    panic!("violation expected for swap ({i} {j})")
                };
                assert!(report.violations > 0 && !report.witnesses.is_empty());
            }
        }
        assert!(broken > 0);
    }

    #[test]
    fn trivial_brace_maps_are_all_homomorphisms() {
        let b = SkewBrace::lift(&catalog::cyclic(6), LiftMode::Trivial);
        for a in 0..6 {
            let m = map_analysis(&b, a).unwrap();
            assert!(m.phi_dot_hom && m.pi_dot_hom && m.psi_circ_hom && m.psi_dot_hom && m.iota_dot_aut);
            assert_eq!(m.char2_relation_holds, Some(true));
        }
    }

    #[test]
    fn almost_trivial_inner_maps_are_automorphisms() {
        let b = SkewBrace::lift(&catalog::symmetric(3), LiftMode::AlmostTrivial);
        for a in 0..6 {
            assert!(map_analysis(&b, a).unwrap().iota_dot_aut);
        }
    }

    #[test]
    fn theorem_and_equivalences_on_lifts() {
        for b in lifts() {
            assert!(verify_theorem1(&b).unwrap().passed());
            assert!(char_equivalences(&b).unwrap().passed());
        }
    }

    #[test]
    fn grun_on_a5() {
        let b = SkewBrace::lift(&catalog::alternating(5), LiftMode::AlmostTrivial);
        let r = grun_defect(&b, "A5").unwrap();
        assert!(r.is_perfect && r.is_two_sided && r.grun_holds);
        assert_eq!(r.defect_set, vec![0]);
        assert_eq!((r.ann_order, r.ann2_order), (1, 1));
        assert_eq!(r.cor_equivalence_status, Status::Pass);
    }

    #[test]
    fn grun_on_trivial_braces() {
        let r = grun_defect(&SkewBrace::lift(&catalog::cyclic(4), LiftMode::Trivial), "Z4").unwrap();
        assert!(r.defect_is_trivial() && r.grun_holds && !r.is_perfect);
        let r = grun_defect(&SkewBrace::lift(&GroupTable::trivial(), LiftMode::Trivial), "1").unwrap();
        assert!(r.defect_is_trivial() && r.grun_holds && r.is_perfect);
        // Ann = Z(D4) and D4/Z(D4) is abelian, so the quotient is its own annihilator
        let r = grun_defect(&SkewBrace::lift(&catalog::dihedral(4), LiftMode::Trivial), "D4").unwrap();
        assert_eq!((r.ann_order, r.ann2_order), (2, 8));
        assert!(!r.grun_holds);
    }
}
