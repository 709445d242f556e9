use std::collections::{BTreeMap, HashMap};

use super::{FpMatrix, FpSubspace};
use crate::error::{Error, Result};
use crate::group::GroupTable;

/// Closure cap for [`MatrixGroup::closure`].
pub const MAX_GROUP_ELEMENTS: usize = 100_000;

/// A finite subgroup of `GL_n(F_p)` given by generators, with all elements
/// listed in breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    p: u32,
    dim: usize,
    generators: Vec<FpMatrix>,
    elements: Vec<FpMatrix>,
    index: HashMap<Vec<u8>, usize>,
}

impl MatrixGroup {
    pub fn closure(gens: &[FpMatrix]) -> Result<Self> {
        Self::closure_with_cap(gens, MAX_GROUP_ELEMENTS)
    }

    /// Like [`MatrixGroup::closure`] with an explicit element cap. The
    /// dimension and prime of an empty generator list default to `F_2^1`.
    pub fn closure_with_cap(gens: &[FpMatrix], cap: usize) -> Result<Self> {
        let (p, dim) = gens.first().map_or((2, 1), |g| (g.modulus(), g.shape().0));
        Self::closure_in(p, dim, gens, cap)
    }

    pub fn closure_in(p: u32, dim: usize, gens: &[FpMatrix], cap: usize) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.modulus() != p || g.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} is not a {dim}x{dim} matrix over F_{p}"
                )));
            }
            if !g.is_invertible() {
                return Err(Error::SingularGenerator(i));
            }
        }
        let id = FpMatrix::identity(p, dim);
        let mut index = HashMap::from([(id.data().to_vec(), 0usize)]);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            for g in gens {
                let y = elements[head].mul(g);
                if !index.contains_key(y.data()) {
                    if elements.len() == cap {
                        return Err(Error::ClosureBudgetExceeded(cap));
                    }
                    index.insert(y.data().to_vec(), elements.len());
                    elements.push(y);
                }
            }
            head += 1;
        }
        Ok(MatrixGroup { p, dim, generators: gens.to_vec(), elements, index })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &FpMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &FpMatrix) -> Option<usize> {
        self.index.get(m.data()).copied()
    }

    /// The abstract multiplication table, indices as in [`Self::elements`].
    pub fn table(&self) -> GroupTable {
        GroupTable::from_fn_trusted(self.order(), |a, b| {
            self.index[self.elements[a].mul(&self.elements[b]).data()]
        })
    }

    pub fn element_order(&self, i: usize) -> usize {
        let g = &self.elements[i];
        let mut x = g.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(g);
            k += 1;
        }
        k
    }

    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for i in 0..self.order() {
            *profile.entry(self.element_order(i)).or_insert(0) += 1;
        }
        profile
    }

    /// Common fixed vectors of the generators.
    pub fn fixed_space(&self) -> FpSubspace {
        fixed_space_of(self.p, self.dim, &self.generators)
    }

    /// Common fixed vectors of every element; agrees with [`Self::fixed_space`].
    pub fn fixed_space_all_elements(&self) -> FpSubspace {
        fixed_space_of(self.p, self.dim, &self.elements)
    }

    /// `⟨ ∪ Im(ξ − I) ⟩` over all elements `ξ`.
    pub fn displacement_space(&self) -> FpSubspace {
        let vectors = self
            .elements
            .iter()
            .flat_map(|m| {
                let d = m.minus_identity();
                (0..self.dim).map(move |j| d.column(j))
            })
            .collect();
        FpSubspace::span(self.p, self.dim, vectors)
    }
}

pub(crate) fn fixed_space_of(p: u32, dim: usize, mats: &[FpMatrix]) -> FpSubspace {
    if mats.is_empty() {
        return FpSubspace::full(p, dim);
    }
    let parts: Vec<FpMatrix> = mats.iter().map(FpMatrix::minus_identity).collect();
    FpMatrix::vstack(p, dim, &parts).kernel()
}
