//! Semidirect products of skew braces and the concrete braces built from them.
//!
//! An element `(b, c)` of `B ⋊ C` has index `b + |B|·c`. Vectors of `F_p^n`
//! are indexed by their base-`p` digits, coordinate 0 least significant, so
//! `(1,0,1,0)` over `F_2` is index 5.

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::fp::{self, FpMatrix, FpSubspace, MatrixGroup};
use crate::group::{find_surjection, GroupHom, GroupTable};
use crate::grun::{grun_defect, GrunReport};
use crate::report::VerificationReport;

/// Largest `p^n` accepted by [`vector_trivial_brace`].
pub const MAX_VECTOR_SPACE: usize = 4096;

/// A homomorphism `c ↦ φ_c` from `(C,∘)` into the automorphisms of a brace
/// `B`, stored as one permutation of `B`'s indices per element of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceAction {
    maps: Vec<Vec<usize>>,
}

impl BraceAction {
    /// Checks that each `φ_c` is an automorphism of `(B,·)` and `(B,∘)` and
    /// that `φ_{c∘d} = φ_c φ_d`.
    pub fn new(b: &SkewBrace, c: &SkewBrace, maps: Vec<Vec<usize>>) -> Result<Self> {
        let m = b.order();
        if maps.len() != c.order() {
            return Err(Error::InvalidAction {
                c: maps.len(),
                reason: format!("{} maps for a brace of order {}", maps.len(), c.order()),
            });
        }
        for (ci, phi) in maps.iter().enumerate() {
            let mut seen = vec![false; m];
            if phi.len() != m || phi.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidAction { c: ci, reason: "not a permutation".into() });
            }
            for x in 0..m {
                for y in 0..m {
                    if phi[b.mul(x, y)] != b.mul(phi[x], phi[y]) {
                        return Err(Error::InvalidAction {
                            c: ci,
                            reason: format!("does not preserve · at ({x}, {y})"),
                        });
                    }
                    if phi[b.compose(x, y)] != b.compose(phi[x], phi[y]) {
                        return Err(Error::InvalidAction {
                            c: ci,
                            reason: format!("does not preserve ∘ at ({x}, {y})"),
                        });
                    }
                }
            }
        }
        for c1 in 0..c.order() {
            for c2 in 0..c.order() {
                let lhs = &maps[c.compose(c1, c2)];
                if (0..m).any(|x| lhs[x] != maps[c1][maps[c2][x]]) {
                    return Err(Error::InvalidAction {
                        c: c1,
                        reason: format!("not a homomorphism at ({c1}, {c2})"),
                    });
                }
            }
        }
        Ok(BraceAction { maps })
    }

    pub fn trivial(b_order: usize, c_order: usize) -> Self {
        BraceAction { maps: vec![(0..b_order).collect(); c_order] }
    }

    /// `φ_c(b)`
    pub fn apply(&self, c: usize, b: usize) -> usize {
        self.maps[c][b]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }
}

/// `B ⋊ C` with `(b₁,c₁)·(b₂,c₂) = (b₁·b₂, c₁·c₂)` and
/// `(b₁,c₁)∘(b₂,c₂) = (b₁∘φ_{c₁}(b₂), c₁∘c₂)`, validated as a skew brace.
pub fn semidirect_product(b: &SkewBrace, c: &SkewBrace, act: &BraceAction) -> Result<SkewBrace> {
    let m = b.order();
    let order = m * c.order();
    if order > crate::group::MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    let dot = GroupTable::from_fn_trusted(order, |x, y| {
        b.mul(x % m, y % m) + m * c.mul(x / m, y / m)
    });
    let circ = GroupTable::from_fn_trusted(order, |x, y| {
        let (b1, c1) = (x % m, x / m);
        b.compose(b1, act.apply(c1, y % m)) + m * c.compose(c1, y / m)
    });
    SkewBrace::new(dot, circ)
}

/// Index of a vector of `F_p^n`.
pub fn vector_index(p: u32, v: &[u8]) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * p as usize + x as usize)
}

/// The vector of `F_p^n` with the given index.
pub fn index_vector(p: u32, n: usize, mut i: usize) -> Vec<u8> {
    let p = p as usize;
    (0..n)
        .map(|_| {
            let d = i % p;
            i /= p;
            d as u8
        })
        .collect()
}

/// The trivial brace `(F_p^n, +, +)`.
pub fn vector_trivial_brace(p: u32, n: usize) -> Result<SkewBrace> {
    fp::check_prime(p)?;
    let size = (p as usize).checked_pow(n as u32).unwrap_or(usize::MAX);
    if size > MAX_VECTOR_SPACE {
        return Err(Error::SizeExceeded(size, MAX_VECTOR_SPACE));
    }
    let add = GroupTable::from_fn_trusted(size, |x, y| {
        let (u, v) = (index_vector(p, n, x), index_vector(p, n, y));
        let sum: Vec<u8> = u.iter().zip(&v).map(|(a, b)| ((a + b) as u32 % p) as u8).collect();
        vector_index(p, &sum)
    });
    Ok(SkewBrace::from_tables_unchecked(add.clone(), add))
}

/// The action of `(C,∘)` on `F_p^n` through `rep : (C,∘) → group`.
pub fn matrix_action(c: &SkewBrace, group: &MatrixGroup, rep: &GroupHom) -> Result<BraceAction> {
    if rep.images().len() != c.order() {
        return Err(Error::DimensionMismatch(format!(
            "representation defined on {} elements, brace has {}",
            rep.images().len(),
            c.order()
        )));
    }
    if let Some((x, y)) = rep.verify(c.circ(), &group.table()) {
        return Err(Error::InvalidAction {
            c: x,
            reason: format!("representation is not a homomorphism at ({x}, {y})"),
        });
    }
    let (p, n) = (group.modulus(), group.dimension());
    let size = (p as usize).pow(n as u32);
    let maps = (0..c.order())
        .map(|ci| {
            let m = group.element(rep.apply(ci));
            (0..size).map(|v| vector_index(p, &m.apply(&index_vector(p, n, v)))).collect()
        })
        .collect();
    Ok(BraceAction { maps })
}

fn mat(p: u32, rows: &[&[i64]]) -> FpMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    FpMatrix::from_rows(p, &rows).expect("valid matrix")
}

fn mat_pow(m: &FpMatrix, e: usize) -> FpMatrix {
    (0..e).fold(FpMatrix::identity(m.modulus(), m.shape().0), |acc, _| acc.mul(m))
}

/// Index of `(v, x₁, x₂, x₃) ∈ F_3 × F_2³` in [`example1_brace`].
pub fn example1_index(v: usize, x1: usize, x2: usize, x3: usize) -> usize {
    v + 3 * x1 + 6 * x2 + 12 * x3
}

fn example1_coords(i: usize) -> (usize, usize, usize, usize) {
    (i % 3, (i / 3) % 2, (i / 6) % 2, i / 12)
}

/// The perfect brace of order 24 with `(C,·) = F_3 × F_2³` and `(C,∘) ≅ S4`.
///
/// `λ_{(v,x)}` sends `(w, y)` to `((−1)^q w, T^v [[F^q, 0], [ε, 1]] y)` with
/// `q = x₃ − x₁x₂`, `F = [[0,1],[1,0]]`, `T = [[0,1,0],[1,1,0],[0,1,1]]` and
/// `ε = [x₁ x₂] S^{−v} F^{1+q}`, `S = [[0,1],[1,1]]`. With `S^{v}` in place of
/// `S^{−v}` the resulting `∘` is not associative.
pub fn example1_brace() -> Result<SkewBrace> {
    let t = mat(2, &[&[0, 1, 0], &[1, 1, 0], &[0, 1, 1]]);
    let f = mat(2, &[&[0, 1], &[1, 0]]);
    let s = mat(2, &[&[0, 1], &[1, 1]]);
    let dot = GroupTable::from_fn_trusted(24, |a, b| {
        let (v, x1, x2, x3) = example1_coords(a);
        let (w, y1, y2, y3) = example1_coords(b);
        example1_index((v + w) % 3, x1 ^ y1, x2 ^ y2, x3 ^ y3)
    });
    let lambdas: Vec<(bool, FpMatrix)> = (0..24)
        .map(|a| {
            let (v, x1, x2, x3) = example1_coords(a);
            let q = (x3 + x1 * x2) % 2;
            let row = FpMatrix::from_rows(2, &[vec![x1 as i64, x2 as i64]]).expect("valid row");
            let eps = row.mul(&mat_pow(&s, (2 * v) % 3)).mul(&mat_pow(&f, (1 + q) % 2));
            let m = mat_pow(&f, q);
            let block = mat(
                2,
                &[
                    &[m.get(0, 0) as i64, m.get(0, 1) as i64, 0],
                    &[m.get(1, 0) as i64, m.get(1, 1) as i64, 0],
                    &[eps.get(0, 0) as i64, eps.get(0, 1) as i64, 1],
                ],
            );
            (q == 1, mat_pow(&t, v).mul(&block))
        })
        .collect();
    let circ_op = |a: usize, b: usize| {
        let (negate, l) = &lambdas[a];
        let (w, y1, y2, y3) = example1_coords(b);
        let w = if *negate { (3 - w) % 3 } else { w };
        let y = l.apply(&[y1 as u8, y2 as u8, y3 as u8]);
        let image = example1_index(w, y[0] as usize, y[1] as usize, y[2] as usize);
        dot.mul(a, image)
    };
    let circ = GroupTable::from_fn(24, circ_op)
        .map_err(|e| Error::ConstructionInvalid(format!("composition is not a group: {e}")))?;
    SkewBrace::new(dot, circ).map_err(|e| Error::ConstructionInvalid(e.to_string()))
}

/// `[[1,1],[0,1]]` over `F_p`.
pub fn shear_generator(p: u32) -> Result<Vec<FpMatrix>> {
    Ok(vec![FpMatrix::from_rows(p, &[vec![1, 1], vec![0, 1]])?])
}

/// Generators of a subgroup of `GL_3(F_p)` isomorphic to `Z/p × Z/2`, `p` odd.
pub fn order_2p_generators(p: u32) -> Result<Vec<FpMatrix>> {
    Ok(vec![
        FpMatrix::from_rows(p, &[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]])?,
        FpMatrix::from_rows(p, &[vec![1, 1, 0], vec![0, -1, 0], vec![0, 0, 1]])?,
    ])
}

/// Four generators of a subgroup of `GL_4(F_2)` isomorphic to `S4` whose
/// common fixed space is `⟨(1,0,1,0)⟩`.
pub fn s4_generators() -> Vec<FpMatrix> {
    vec![
        mat(2, &[&[0, 1, 1, 1], &[0, 1, 0, 0], &[1, 0, 0, 1], &[0, 1, 0, 1]]),
        mat(2, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 1], &[1, 0, 1, 0]]),
        mat(2, &[&[1, 0, 0, 0], &[1, 1, 1, 1], &[0, 0, 1, 0], &[1, 1, 1, 0]]),
        mat(2, &[&[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 1]]),
    ]
}

/// `F_p^n ⋊ C`, acting through the first surjection `(C,∘) → target` found.
/// `C` must be perfect with trivial annihilator.
pub fn counterexample_brace(c: &SkewBrace, target: &MatrixGroup) -> Result<SkewBrace> {
    if !c.is_perfect()? {
        return Err(Error::PreconditionFailed("the acting brace is not perfect".into()));
    }
    if !c.annihilator()?.is_trivial() {
        return Err(Error::PreconditionFailed("the acting brace has a nontrivial annihilator".into()));
    }
    let rep = find_surjection(c.circ(), &target.table())?.ok_or(Error::NoSurjection)?;
    let act = matrix_action(c, target, &rep)?;
    let b = vector_trivial_brace(target.modulus(), target.dimension())?;
    semidirect_product(&b, c, &act)
}

/// [`counterexample_brace`] followed by its Grün analysis.
pub fn build_counterexample(c: &SkewBrace, target: &MatrixGroup) -> Result<(SkewBrace, GrunReport)> {
    let a = counterexample_brace(c, target)?;
    let id = format!("F{}^{} x C", target.modulus(), target.dimension());
    let report = grun_defect(&a, &id)?;
    Ok((a, report))
}

/// `F_p^2 ⋊ C` over the order-24 brace, acting through `⟨[[1,1],[0,1]]⟩`.
/// Only `p = 2` is realizable since `S4` has no quotient of odd prime order.
pub fn shear_counterexample(p: u32) -> Result<SkewBrace> {
    let target = MatrixGroup::closure(&shear_generator(p)?)?;
    counterexample_brace(&example1_brace()?, &target)
}

/// `F_2^4 ⋊ C` over the order-24 brace, acting through [`s4_generators`].
pub fn perfect_counterexample() -> Result<SkewBrace> {
    let target = MatrixGroup::closure(&s4_generators())?;
    counterexample_brace(&example1_brace()?, &target)
}

/// Derived ideal and annihilator of `F_p^n ⋊ C` as predicted from the image
/// of the action alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectPrediction {
    /// `A*A = derived × C`
    pub derived: FpSubspace,
    /// `Ann(A) = annihilator × {1}`
    pub annihilator: FpSubspace,
}

/// Requires `C` perfect and either `Ann(C) = 1` or a faithful action.
pub fn predict_semidirect_invariants(
    image: &MatrixGroup,
    c_perfect: bool,
    ann_c_trivial: bool,
    kernel_trivial: bool,
) -> Result<SemidirectPrediction> {
    if !c_perfect {
        return Err(Error::PreconditionFailed("the acting brace must be perfect".into()));
    }
    if !(ann_c_trivial || kernel_trivial) {
        return Err(Error::PreconditionFailed(
            "needs a trivial annihilator or a faithful action".into(),
        ));
    }
    Ok(SemidirectPrediction {
        derived: image.displacement_space(),
        annihilator: image.fixed_space_all_elements(),
    })
}

fn product_members(p: u32, space: &FpSubspace, c_members: impl Iterator<Item = usize> + Clone) -> Vec<usize> {
    let size = (p as usize).pow(space.ambient_dimension() as u32);
    let mut out: Vec<usize> = c_members
        .flat_map(|c| space.elements().into_iter().map(move |v| vector_index(p, &v) + size * c))
        .collect();
    out.sort_unstable();
    out
}

/// Compares a prediction with the derived ideal and annihilator of `a`.
pub fn check_prediction(a: &SkewBrace, prediction: &SemidirectPrediction) -> Result<VerificationReport> {
    let space = &prediction.derived;
    let p = space.modulus();
    let size = (p as usize).pow(space.ambient_dimension() as u32);
    let c_order = a.order() / size;
    let mut report = VerificationReport::new("semidirect-prediction");
    let derived = a.derived_ideal()?;
    let expected = product_members(p, space, 0..c_order);
    report.checked += 1;
    if let Some(x) = first_difference(derived.members(), &expected) {
        report.record("derived-ideal", vec![x]);
    }
    let ann = a.annihilator()?;
    let expected = product_members(p, &prediction.annihilator, 0..1);
    report.checked += 1;
    if let Some(x) = first_difference(ann.members(), &expected) {
        report.record("annihilator", vec![x]);
    }
    Ok(report)
}

fn first_difference(a: &[usize], b: &[usize]) -> Option<usize> {
    let sa: std::collections::BTreeSet<_> = a.iter().collect();
    let sb: std::collections::BTreeSet<_> = b.iter().collect();
    sa.symmetric_difference(&sb).next().map(|&&x| x)
}

/// Elements `(v, 1)` of `F_p^n ⋊ C` for `v` in `space`.
pub fn vector_ideal_members(p: u32, space: &FpSubspace) -> Vec<usize> {
    product_members(p, space, 0..1)
}
