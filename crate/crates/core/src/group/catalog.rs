//! Concrete small groups used as fixtures: cyclic, dihedral, symmetric and
//! alternating groups, metacyclic and split extensions, and a catalog of all
//! groups of order at most 16.

use std::collections::HashMap;

use super::GroupTable;
use crate::fp::{FpMatrix, MatrixGroup};

pub fn cyclic(n: usize) -> GroupTable {
    GroupTable::from_fn_trusted(n, |a, b| (a + b) % n)
}

/// `(Z/p)^k` with index `Σ x_i p^i`.
pub fn elementary_abelian(p: usize, k: u32) -> GroupTable {
    let n = p.pow(k);
    GroupTable::from_fn_trusted(n, |a, b| {
        let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    })
}

/// Permutation composition `(σ τ)(i) = σ(τ(i))`.
fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&i| s[i]).collect()
}

/// The group generated by permutations of `0..degree`, elements indexed in
/// breadth-first order from the identity.
pub fn permutation_group(degree: usize, gens: &[Vec<usize>]) -> GroupTable {
    let id: Vec<usize> = (0..degree).collect();
    let mut elems = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < elems.len() {
        for g in gens {
            let y = compose(&elems[head], g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        head += 1;
    }
    GroupTable::from_fn_trusted(elems.len(), |a, b| index[&compose(&elems[a], &elems[b])])
}

fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (i, &x) in points.iter().enumerate() {
        p[x] = points[(i + 1) % points.len()];
    }
    p
}

pub fn symmetric(n: usize) -> GroupTable {
    if n < 2 {
        return GroupTable::trivial();
    }
    let all: Vec<usize> = (0..n).collect();
    permutation_group(n, &[cycle(n, &[0, 1]), cycle(n, &all)])
}

pub fn alternating(n: usize) -> GroupTable {
    if n < 3 {
        return GroupTable::trivial();
    }
    let gens: Vec<Vec<usize>> = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
    permutation_group(n, &gens)
}

/// `⟨a, b | a^m, b^k = a^t, b a b⁻¹ = a^r⟩`, element `a^i b^j` at index `i + m j`.
///
/// Panics if the parameters do not define a group of order `m k`.
pub fn metacyclic(m: usize, k: usize, t: usize, r: usize) -> GroupTable {
    let rpow: Vec<usize> = (0..k).scan(1usize, |acc, _| {
        let cur = *acc;
        *acc = *acc * r % m;
        Some(cur)
    }).collect();
    GroupTable::from_fn(m * k, |x, y| {
        let (i, j) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        let mut a = i + i2 * rpow[j];
        let mut b = j + j2;
        if b >= k {
            b -= k;
            a += t;
        }
        a % m + m * b
    })
    .expect("metacyclic parameters must define a group")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> GroupTable {
    metacyclic(n, 2, 0, n - 1)
}

/// Generalized quaternion group of order `n` (a power of two, at least 8).
pub fn quaternion(n: usize) -> GroupTable {
    let m = n / 2;
    metacyclic(m, 2, m / 2, m - 1)
}

/// Dicyclic group of order `4m`.
pub fn dicyclic(m: usize) -> GroupTable {
    metacyclic(2 * m, 2, m, 2 * m - 1)
}

/// `N ⋊ Z_k` where the generator of `Z_k` acts by the automorphism `alpha`
/// (a permutation of `N` with `alpha^k = 1`); `(x, j)` has index `x + |N| j`.
///
/// Panics if `alpha` is not an automorphism of the right order.
pub fn split_by_cyclic(normal: &GroupTable, k: usize, alpha: &[usize]) -> GroupTable {
    let n = normal.order();
    let mut powers = vec![(0..n).collect::<Vec<usize>>()];
    for j in 1..=k {
        powers.push(compose(alpha, &powers[j - 1]));
    }
    assert!(powers[k].iter().enumerate().all(|(i, &x)| i == x), "alpha^k must be trivial");
    GroupTable::from_fn(n * k, |x, y| {
        let (a, i) = (x % n, x / n);
        let (b, j) = (y % n, y / n);
        normal.mul(a, powers[i][b]) + n * ((i + j) % k)
    })
    .expect("alpha must be an automorphism")
}

/// `SL(2, p)` as a matrix group.
pub fn special_linear_2(p: u32) -> GroupTable {
    let gens = [
        FpMatrix::from_rows(p, &[vec![1, 1], vec![0, 1]]).expect("valid matrix"),
        FpMatrix::from_rows(p, &[vec![0, -1], vec![1, 0]]).expect("valid matrix"),
    ];
    MatrixGroup::closure(&gens).expect("SL(2,p) closure").table()
}

/// One representative of every isomorphism class of groups of order at most 16
/// (42 groups), with short names.
pub fn groups_up_to_16() -> Vec<(&'static str, GroupTable)> {
    let z4z2 = cyclic(4).direct_product(&cyclic(2));
    // On Z4×Z2 with (i, j) at index i + 4j.
    let shear: Vec<usize> = (0..8).map(|x| (x % 4) + 4 * ((x / 4 + x % 4) % 2)).collect();
    let central: Vec<usize> = (0..8).map(|x| ((x % 4) + 2 * (x / 4)) % 4 + 4 * (x / 4)).collect();
    vec![
        ("1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2^2", elementary_abelian(2, 2)),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", symmetric(3)),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z4xZ2", z4z2.clone()),
        ("Z2^3", elementary_abelian(2, 3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion(8)),
        ("Z9", cyclic(9)),
        ("Z3^2", elementary_abelian(3, 2)),
        ("Z10", cyclic(10)),
        ("D5", dihedral(5)),
        ("Z11", cyclic(11)),
        ("Z12", cyclic(12)),
        ("Z6xZ2", cyclic(6).direct_product(&cyclic(2))),
        ("D6", dihedral(6)),
        ("A4", alternating(4)),
        ("Dic3", dicyclic(3)),
        ("Z13", cyclic(13)),
        ("Z14", cyclic(14)),
        ("D7", dihedral(7)),
        ("Z15", cyclic(15)),
        ("Z16", cyclic(16)),
        ("Z4xZ4", cyclic(4).direct_product(&cyclic(4))),
        ("(Z4xZ2):Z2", split_by_cyclic(&z4z2, 2, &shear)),
        ("Z4:Z4", metacyclic(4, 4, 0, 3)),
        ("Z8xZ2", cyclic(8).direct_product(&cyclic(2))),
        ("M16", metacyclic(8, 2, 0, 5)),
        ("D8", dihedral(8)),
        ("SD16", metacyclic(8, 2, 0, 3)),
        ("Q16", quaternion(16)),
        ("Z4xZ2^2", cyclic(4).direct_product(&elementary_abelian(2, 2))),
        ("D4xZ2", dihedral(4).direct_product(&cyclic(2))),
        ("Q8xZ2", quaternion(8).direct_product(&cyclic(2))),
        ("Pauli", split_by_cyclic(&z4z2, 2, &central)),
        ("Z2^4", elementary_abelian(2, 4)),
    ]
}

/// Looks up a named fixture group: catalog names plus `S<n>`, `A<n>`, `Z<n>`,
/// `D<n>`, `A5`, and `SL2_5`.
pub fn by_name(name: &str) -> Option<GroupTable> {
    if let Some((_, g)) = groups_up_to_16().into_iter().find(|(n, _)| *n == name) {
        return Some(g);
    }
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    // SL(2,37) is the largest that fits in a table
    if let Some(n) = num("SL2_").filter(|&n| n <= 37 && crate::fp::check_prime(n as u32).is_ok()) {
        return Some(special_linear_2(n as u32));
    }
    if let Some(n) = num("S").filter(|&n| (1..=6).contains(&n)) {
        return Some(symmetric(n));
    }
    if let Some(n) = num("A").filter(|&n| (1..=6).contains(&n)) {
        return Some(alternating(n));
    }
    if let Some(n) = num("Z").filter(|&n| n >= 1 && n <= 4096) {
        return Some(cyclic(n));
    }
    if let Some(n) = num("D").filter(|&n| n >= 2 && n <= 2048) {
        return Some(dihedral(n));
    }
    None
}
