use std::fmt;

use serde::{Deserialize, Serialize};

use super::{row_reduce, FpMatrix};

/// A subspace of `F_p^n` held as a reduced row echelon basis, so equal
/// subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpSubspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u8>>,
}

impl FpSubspace {
    pub fn span(p: u32, ambient: usize, vectors: Vec<Vec<u8>>) -> Self {
        let mut rows: Vec<Vec<u8>> = vectors.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        debug_assert!(rows.iter().all(|v| v.len() == ambient));
        row_reduce(&mut rows, p);
        FpSubspace { p, ambient, basis: rows }
    }

    pub fn zero(p: u32, ambient: usize) -> Self {
        FpSubspace { p, ambient, basis: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        FpSubspace::span(p, ambient, identity_rows(ambient))
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == self.ambient
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        row_reduce(&mut rows, self.p);
        rows.len() == self.basis.len()
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &FpSubspace) -> FpSubspace {
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        FpSubspace::span(self.p, self.ambient, vectors)
    }

    /// Vectors orthogonal to every basis vector under the standard pairing.
    pub fn annihilator(&self) -> FpSubspace {
        if self.basis.is_empty() {
            return FpSubspace::full(self.p, self.ambient);
        }
        self.basis_matrix().kernel()
    }

    pub fn intersect(&self, other: &FpSubspace) -> FpSubspace {
        let constraints: Vec<Vec<u8>> =
            self.annihilator().basis.into_iter().chain(other.annihilator().basis).collect();
        if constraints.is_empty() {
            return FpSubspace::full(self.p, self.ambient);
        }
        FpMatrix::from_data(self.p, constraints.len(), self.ambient, constraints.concat()).kernel()
    }

    /// The basis as the rows of a matrix.
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_data(self.p, self.basis.len(), self.ambient, self.basis.concat())
    }

    /// All vectors of the subspace, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u8>> {
        let p = self.p as usize;
        let k = self.dimension();
        let mut out: Vec<Vec<u8>> = (0..p.pow(k as u32))
            .map(|mut idx| {
                let mut v = vec![0u32; self.ambient];
                for b in &self.basis {
                    let c = (idx % p) as u32;
                    idx /= p;
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = (*x + c * y as u32) % self.p;
                    }
                }
                v.into_iter().map(|x| x as u8).collect()
            })
            .collect();
        out.sort();
        out
    }
}

fn identity_rows(n: usize) -> Vec<Vec<u8>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()
}

impl fmt::Debug for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?} in F_{}^{}", self.basis, self.p, self.ambient)
    }
}

impl fmt::Display for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis
            .iter()
            .map(|v| format!("({})", v.iter().map(u8::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", parts.join(", "))
    }
}
