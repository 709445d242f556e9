use serde::{Deserialize, Serialize};

use super::{GroupHom, GroupTable};
use crate::error::{Error, Result};

/// A subgroup stored as a strictly increasing list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps a member list that is already known to be a subgroup.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn whole(n: usize) -> Self {
        Subgroup { members: (0..n).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn into_members(self) -> Vec<usize> {
        self.members
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

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &x in &self.members {
            mask[x] = true;
        }
        mask
    }
}

impl GroupTable {
    /// The smallest subgroup containing `gens`.
    pub fn subgroup_closure(&self, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let n = self.order();
        let mut in_gens = vec![false; n];
        let mut gens_list = Vec::new();
        for g in gens {
            if g != 0 && !std::mem::replace(&mut in_gens[g], true) {
                gens_list.push(g);
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in &gens_list {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        Subgroup::from_sorted(queue)
    }

    /// Checks a member list for subgroup closure, returning it as a
    /// [`Subgroup`] when it contains the identity and is closed.
    pub fn as_subgroup(&self, members: &[usize]) -> Option<Subgroup> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let s = Subgroup::from_sorted(sorted);
        if !s.contains(0) {
            return None;
        }
        let mask = s.mask(self.order());
        let closed = s
            .members()
            .iter()
            .all(|&a| mask[self.inv(a)] && s.members().iter().all(|&b| mask[self.mul(a, b)]));
        closed.then_some(s)
    }

    /// `None` when `s` is normal; otherwise the lowest `(g, x)` with `g x g⁻¹ ∉ s`.
    pub fn normality_witness(&self, s: &Subgroup) -> Option<(usize, usize)> {
        let mask = s.mask(self.order());
        (0..self.order()).find_map(|g| {
            s.members().iter().find(|&&x| !mask[self.conjugate(g, x)]).map(|&x| (g, x))
        })
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.normality_witness(s).is_none()
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order();
        let members =
            (0..n).filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z))).collect();
        Subgroup::from_sorted(members)
    }

    /// The subgroup generated by all `[x, y]` with `x ∈ xs`, `y ∈ ys`.
    pub fn commutator_subgroup(&self, xs: &[usize], ys: &[usize]) -> Subgroup {
        let gens: Vec<usize> =
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).map(|(x, y)| self.commutator(x, y)).collect();
        self.subgroup_closure(gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let all: Vec<usize> = (0..self.order()).collect();
        self.commutator_subgroup(&all, &all)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Coset label of every element; cosets are numbered by increasing
    /// minimal representative, so the coset of the identity is 0.
    pub(crate) fn coset_labels(&self, normal: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if label[x] == usize::MAX {
                let id = reps.len();
                reps.push(x);
                for &s in normal.members() {
                    label[self.mul(x, s)] = id;
                }
            }
        }
        (label, reps)
    }

    /// The quotient by a normal subgroup together with the projection.
    pub fn quotient_group(&self, normal: &Subgroup) -> Result<(GroupTable, GroupHom)> {
        if let Some((g, s)) = self.normality_witness(normal) {
            return Err(Error::NotNormal { g, s });
        }
        let (label, reps) = self.coset_labels(normal);
        let q = GroupTable::from_fn_trusted(reps.len(), |i, j| label[self.mul(reps[i], reps[j])]);
        Ok((q, GroupHom::new_unchecked(label)))
    }
}
