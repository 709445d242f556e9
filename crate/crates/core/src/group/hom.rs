use std::collections::BTreeSet;

use super::{GroupTable, Subgroup};
use crate::error::{Error, Result};

/// Node budget for the isomorphism backtracking search.
pub const ISO_NODE_BUDGET: u64 = 10_000_000;

/// A map between element indices, `image_of[x]` being the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    image_of: Vec<usize>,
}

impl GroupHom {
    /// Wraps a map without checking the homomorphism property.
    pub fn new_unchecked(image_of: Vec<usize>) -> Self {
        GroupHom { image_of }
    }

    /// Wraps a map after checking it exhaustively against both tables.
    pub fn new(image_of: Vec<usize>, source: &GroupTable, target: &GroupTable) -> Result<Self> {
        let hom = GroupHom { image_of };
        if hom.image_of.len() != source.order() || hom.image_of.iter().any(|&y| y >= target.order())
        {
            return Err(Error::DimensionMismatch("map does not fit the tables".into()));
        }
        if let Some((a, b)) = hom.verify(source, target) {
            return Err(Error::InternalInconsistency(format!(
                "map is not a homomorphism at ({a}, {b})"
            )));
        }
        Ok(hom)
    }

    pub fn identity(n: usize) -> Self {
        GroupHom { image_of: (0..n).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image_of[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image_of
    }

    /// `None` when the map is a homomorphism; otherwise the lowest failing pair.
    pub fn verify(&self, source: &GroupTable, target: &GroupTable) -> Option<(usize, usize)> {
        let n = source.order();
        if self.image_of[0] != 0 {
            return Some((0, 0));
        }
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
            self.image_of[source.mul(a, b)] != target.mul(self.image_of[a], self.image_of[b])
        })
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.image_of.iter().collect();
        set.len() == self.image_of.len()
    }

    pub fn is_surjective_onto(&self, target_order: usize) -> bool {
        let set: BTreeSet<_> = self.image_of.iter().collect();
        set.len() == target_order
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective()
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.image_of.len()).filter(|&x| self.image_of[x] == 0).collect())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom { image_of: self.image_of.iter().map(|&y| other.apply(y)).collect() }
    }
}

fn centralizer_orders(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    (0..n).map(|x| (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count()).collect()
}

/// A generating set chosen greedily by decreasing element order.
pub(crate) fn greedy_generators(g: &GroupTable) -> Vec<usize> {
    let orders = g.element_orders();
    let mut candidates: Vec<usize> = (1..g.order()).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial();
    for x in candidates {
        if current.order() == g.order() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = g.subgroup_closure(gens.iter().copied());
        }
    }
    gens
}

struct IsoSearch<'a> {
    g: &'a GroupTable,
    h: &'a GroupTable,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl IsoSearch<'_> {
    /// Extends the assignment `gens[..imgs.len()] -> imgs` over the subgroup
    /// they generate; `None` if it is not a well-defined injective map.
    fn extend(&self, imgs: &[usize]) -> Option<Vec<usize>> {
        let n = self.g.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; self.h.order()];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&gj, &hj) in self.gens.iter().zip(imgs) {
                let y = self.g.mul(x, gj);
                let img = self.h.mul(map[x], hj);
                if map[y] == usize::MAX {
                    if std::mem::replace(&mut used[img], true) {
                        return None;
                    }
                    map[y] = img;
                    queue.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn run(&mut self, imgs: &mut Vec<usize>) -> Result<Option<Vec<usize>>> {
        let level = imgs.len();
        if level == self.gens.len() {
            return Ok(self.extend(imgs));
        }
        for i in 0..self.candidates[level].len() {
            let c = self.candidates[level][i];
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            imgs.push(c);
            if self.extend(imgs).is_some() {
                if let Some(found) = self.run(imgs)? {
                    return Ok(Some(found));
                }
            }
            imgs.pop();
        }
        Ok(None)
    }
}

/// Finds an isomorphism `G → H` by backtracking over images of a greedy
/// generating set of `G`. Candidate images must match element order and
/// centralizer order. Errors with [`Error::BudgetExceeded`] past
/// [`ISO_NODE_BUDGET`] nodes.
pub fn find_isomorphism(g: &GroupTable, h: &GroupTable) -> Result<Option<GroupHom>> {
    find_isomorphism_with_budget(g, h, ISO_NODE_BUDGET)
}

pub fn find_isomorphism_with_budget(
    g: &GroupTable,
    h: &GroupTable,
    budget: u64,
) -> Result<Option<GroupHom>> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return Ok(None);
    }
    if g.order() == 1 {
        return Ok(Some(GroupHom::identity(1)));
    }
    let (og, oh) = (g.element_orders(), h.element_orders());
    let (cg, ch) = (centralizer_orders(g), centralizer_orders(h));
    let mut class_g: Vec<_> = og.iter().zip(&cg).collect();
    let mut class_h: Vec<_> = oh.iter().zip(&ch).collect();
    class_g.sort();
    class_h.sort();
    if class_g != class_h {
        return Ok(None);
    }
    let gens = greedy_generators(g);
    let candidates = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| oh[y] == og[x] && ch[y] == cg[x]).collect())
        .collect();
    let mut search = IsoSearch { g, h, gens, candidates, nodes: 0, budget };
    Ok(search.run(&mut Vec::new())?.map(GroupHom::new_unchecked))
}

/// All normal subgroups, sorted by order and then by member list.
pub fn normal_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let n = g.order();
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    found.insert(Subgroup::trivial());
    for x in 1..n {
        let closure = g.subgroup_closure((0..n).map(|y| g.conjugate(y, x)));
        found.insert(closure);
    }
    loop {
        let current: Vec<Subgroup> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let join = g.subgroup_closure(a.members().iter().chain(b.members()).copied());
                grew |= found.insert(join);
            }
        }
        if !grew {
            break;
        }
    }
    let mut all: Vec<Subgroup> = found.into_iter().collect();
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    all
}

/// A surjective homomorphism `G → H`, found by scanning normal subgroups `N`
/// with `|G/N| = |H|` in the order of [`normal_subgroups`] and testing
/// `G/N ≅ H`.
pub fn find_surjection(g: &GroupTable, h: &GroupTable) -> Result<Option<GroupHom>> {
    if g.order() % h.order() != 0 {
        return Ok(None);
    }
    let index = g.order() / h.order();
    for normal in normal_subgroups(g).into_iter().filter(|s| s.order() == index) {
        let (q, proj) = g.quotient_group(&normal)?;
        if let Some(iso) = find_isomorphism(&q, h)? {
            return Ok(Some(proj.then(&iso)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn z4_and_klein_are_not_isomorphic() {
        let z4 = catalog::cyclic(4);
        let v4 = catalog::elementary_abelian(2, 2);
        assert!(find_isomorphism(&z4, &v4).unwrap().is_none());
    }

    #[test]
    fn s3_is_isomorphic_to_itself_and_d3() {
        let s3 = catalog::symmetric(3);
        let iso = find_isomorphism(&s3, &s3).unwrap().unwrap();
        assert!(iso.verify(&s3, &s3).is_none());
        let d3 = catalog::dihedral(3);
        let iso = find_isomorphism(&s3, &d3).unwrap().unwrap();
        assert!(iso.verify(&s3, &d3).is_none());
        assert!(iso.is_bijective());
    }

    #[test]
    fn budget_is_enforced() {
        let g = catalog::elementary_abelian(2, 4);
        let relabeled = g.relabel(&[0, 3, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15]);
        assert!(matches!(
            find_isomorphism_with_budget(&g, &relabeled, 1),
            Err(Error::BudgetExceeded(1))
        ));
        assert!(find_isomorphism(&g, &relabeled).unwrap().is_some());
    }

    #[test]
    fn surjections() {
        let s4 = catalog::symmetric(4);
        let z2 = catalog::cyclic(2);
        let sign = find_surjection(&s4, &z2).unwrap().unwrap();
        assert!(sign.verify(&s4, &z2).is_none());
        assert!(sign.is_surjective_onto(2));
        assert_eq!(sign.kernel().order(), 12);

        let a5 = catalog::alternating(5);
        assert!(find_surjection(&a5, &z2).unwrap().is_none());

        let trivial = GroupTable::trivial();
        let constant = find_surjection(&s4, &trivial).unwrap().unwrap();
        assert!(constant.images().iter().all(|&y| y == 0));

        assert!(find_surjection(&s4, &catalog::cyclic(5)).unwrap().is_none());
        assert!(find_surjection(&s4, &catalog::symmetric(3)).unwrap().is_some());
    }

    #[test]
    fn normal_subgroup_lattices() {
        // S4: 1, V4, A4, S4
        let orders: Vec<usize> =
            normal_subgroups(&catalog::symmetric(4)).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(normal_subgroups(&catalog::alternating(5)).len(), 2);
        // every subgroup of an abelian group is normal: Z2^3 has 16 subgroups
        assert_eq!(normal_subgroups(&catalog::elementary_abelian(2, 3)).len(), 16);
    }
}
