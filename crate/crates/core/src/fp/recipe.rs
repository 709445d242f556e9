//! The fixed-line recipe: generators `M_1..M_d` of `GL_n(F_p)` such that
//!
//! 1. the columns of all `M_i − I` span `F_p^n`, and
//! 2. some `v` outside `U = ∩ ker(M_i − I)` is sent into `U` by every `M_i − I`.
//!
//! Acting on `F_p^n` through such a group makes the semidirect product with a
//! perfect brace of trivial annihilator perfect, with `(v, 1)` in the second
//! annihilator but not in the annihilator.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::group::fixed_space_of;
use super::{check_prime, FpMatrix, FpSubspace, MatrixGroup};
use crate::error::{Error, Result};

/// Witness vectors beyond this many are not listed.
pub const MAX_RECIPE_WITNESSES: usize = 4096;
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;
/// Random search stops after this many consecutive qualifying draws that
/// produce no new signature.
pub const DEFAULT_PATIENCE: u64 = 2_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeCheck {
    /// The columns of the `M_i − I` span the whole space.
    pub cond1: bool,
    /// `U`, the common fixed space of the generators.
    pub fixed: FpSubspace,
    /// `{v : (M_i − I) v ∈ U for all i}`, a subspace containing `U`.
    pub lifted: FpSubspace,
    /// Vectors of `lifted` outside `U`, scaled so the first nonzero entry is 1,
    /// in lexicographic order.
    pub witnesses: Vec<Vec<u8>>,
    pub cond2: bool,
}

impl RecipeCheck {
    pub fn qualifies(&self) -> bool {
        self.cond1 && self.cond2
    }
}

fn validate_generators(gens: &[FpMatrix]) -> Result<(u32, usize)> {
    let Some(first) = gens.first() else {
        return Err(Error::DimensionMismatch("at least one generator is required".into()));
    };
    let (p, n) = (first.modulus(), first.shape().0);
    for (i, g) in gens.iter().enumerate() {
        if g.modulus() != p || g.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!("generator {i} does not match generator 0")));
        }
        if !g.is_invertible() {
            return Err(Error::SingularGenerator(i));
        }
    }
    Ok((p, n))
}

pub fn recipe_check(gens: &[FpMatrix]) -> Result<RecipeCheck> {
    let (p, n) = validate_generators(gens)?;
    let shifted: Vec<FpMatrix> = gens.iter().map(FpMatrix::minus_identity).collect();
    let columns = shifted.iter().flat_map(|d| (0..n).map(move |j| d.column(j))).collect();
    let cond1 = FpSubspace::span(p, n, columns).is_full();
    let fixed = fixed_space_of(p, n, gens);

    // v ↦ (M_i − I) v lands in U iff every annihilator row of U kills it.
    let ann = fixed.annihilator();
    let lifted = if ann.dimension() == 0 {
        FpSubspace::full(p, n)
    } else {
        let constraints: Vec<FpMatrix> = shifted.iter().map(|d| ann.basis_matrix().mul(d)).collect();
        FpMatrix::vstack(p, n, &constraints).kernel()
    };

    let mut witnesses = Vec::new();
    if lifted.dimension() > fixed.dimension() && (p as f64).powi(lifted.dimension() as i32) <= 1e6 {
        for v in lifted.elements() {
            if fixed.contains(&v) || !is_normalized(&v) {
                continue;
            }
            witnesses.push(v);
            if witnesses.len() == MAX_RECIPE_WITNESSES {
                break;
            }
        }
    }
    let cond2 = lifted.dimension() > fixed.dimension();
    Ok(RecipeCheck { cond1, fixed, lifted, witnesses, cond2 })
}

fn is_normalized(v: &[u8]) -> bool {
    v.iter().find(|&&x| x != 0) == Some(&1)
}

/// Conjugacy-invariant summary used to deduplicate search results.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub group_order: usize,
    pub fixed_dimension: usize,
    /// `(element order, count)` pairs in increasing order.
    pub order_profile: Vec<(usize, usize)>,
}

impl Signature {
    pub fn of(group: &MatrixGroup) -> Self {
        Signature {
            group_order: group.order(),
            fixed_dimension: group.fixed_space().dimension(),
            order_profile: group.order_profile().into_iter().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// All sets of distinct invertible matrices of size `1..=max_generators`,
    /// in enumeration order.
    Exhaustive,
    /// Uniform random generator sets from a seeded stream.
    Random { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dimension: usize,
    pub prime: u32,
    pub budget: u64,
    pub strategy: SearchStrategy,
    pub max_generators: usize,
    pub patience: u64,
}

impl SearchConfig {
    pub fn exhaustive(dimension: usize, prime: u32) -> Self {
        SearchConfig {
            dimension,
            prime,
            budget: DEFAULT_SEARCH_BUDGET,
            strategy: SearchStrategy::Exhaustive,
            max_generators: 2,
            patience: DEFAULT_PATIENCE,
        }
    }

    pub fn random(dimension: usize, prime: u32, seed: u64) -> Self {
        SearchConfig {
            strategy: SearchStrategy::Random { seed },
            max_generators: 4,
            ..SearchConfig::exhaustive(dimension, prime)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeCandidate {
    pub signature: Signature,
    pub generators: Vec<FpMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeSearch {
    pub config: SearchConfig,
    pub nodes: u64,
    pub qualifying: u64,
    /// Set when the budget ran out before the search space (exhaustive) was
    /// covered; the candidates found so far are still returned.
    pub budget_exceeded: bool,
    pub candidates: Vec<RecipeCandidate>,
}

struct Catalog(BTreeMap<Signature, Vec<FpMatrix>>);

impl Catalog {
    /// Returns whether the signature was new.
    fn offer(&mut self, gens: Vec<FpMatrix>) -> bool {
        let Ok(group) = MatrixGroup::closure(&gens) else {
            return false;
        };
        let sig = Signature::of(&group);
        match self.0.get_mut(&sig) {
            Some(existing) => {
                if gens < *existing {
                    *existing = gens;
                }
                false
            }
            None => {
                self.0.insert(sig, gens);
                true
            }
        }
    }
}

fn all_invertible(p: u32, n: usize, budget: u64, nodes: &mut u64) -> Option<Vec<FpMatrix>> {
    let total = (p as u64).checked_pow((n * n) as u32)?;
    let mut out = Vec::new();
    for mut code in 0..total {
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let mut data = vec![0u8; n * n];
        for x in data.iter_mut() {
            *x = (code % p as u64) as u8;
            code /= p as u64;
        }
        let m = FpMatrix::from_data(p, n, n, data);
        if m.is_invertible() {
            out.push(m);
        }
    }
    out.sort();
    Some(out)
}

fn random_invertible(rng: &mut ChaCha8Rng, p: u32, n: usize) -> FpMatrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..p) as u8).collect();
        let m = FpMatrix::from_data(p, n, n, data);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Searches `GL_n(F_p)` for generator sets passing [`recipe_check`],
/// deduplicated by [`Signature`]. Results are ordered by signature.
pub fn search_recipe(config: &SearchConfig) -> Result<RecipeSearch> {
    check_prime(config.prime)?;
    let (p, n) = (config.prime, config.dimension);
    if n == 0 || n > super::MAX_DIMENSION {
        return Err(Error::DimensionMismatch(format!("dimension {n} is out of range")));
    }
    if config.max_generators == 0 || config.max_generators > 4 {
        return Err(Error::DimensionMismatch("between 1 and 4 generators are supported".into()));
    }
    let mut nodes = 0u64;
    let mut qualifying = 0u64;
    let mut budget_exceeded = false;
    let mut catalog = Catalog(BTreeMap::new());

    match config.strategy {
        SearchStrategy::Exhaustive => match all_invertible(p, n, config.budget, &mut nodes) {
            None => budget_exceeded = true,
            Some(gl) => {
                let mut combo = Vec::new();
                budget_exceeded = !exhaust(
                    &gl,
                    0,
                    config.max_generators,
                    &mut combo,
                    &mut |gens: &[usize]| {
                        nodes += 1;
                        if nodes > config.budget {
                            return false;
                        }
                        let mats: Vec<FpMatrix> = gens.iter().map(|&i| gl[i].clone()).collect();
                        if recipe_check(&mats).map(|r| r.qualifies()).unwrap_or(false) {
                            qualifying += 1;
                            catalog.offer(mats);
                        }
                        true
                    },
                );
            }
        },
        SearchStrategy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut stale = 0u64;
            while nodes < config.budget && stale < config.patience {
                nodes += 1;
                let d = rng.gen_range(1..=config.max_generators);
                let mats: Vec<FpMatrix> = (0..d).map(|_| random_invertible(&mut rng, p, n)).collect();
                if recipe_check(&mats)?.qualifies() {
                    qualifying += 1;
                    if catalog.offer(mats) {
                        stale = 0;
                    } else {
                        stale += 1;
                    }
                }
            }
        }
    }

    let candidates = catalog
        .0
        .into_iter()
        .map(|(signature, generators)| RecipeCandidate { signature, generators })
        .collect();
    Ok(RecipeSearch { config: config.clone(), nodes, qualifying, budget_exceeded, candidates })
}

/// Visits every strictly increasing index tuple of length `1..=max_len`
/// drawn from `0..pool.len()`; stops early when `visit` returns false.
fn exhaust(
    pool: &[FpMatrix],
    start: usize,
    max_len: usize,
    combo: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    for i in start..pool.len() {
        combo.push(i);
        if !visit(combo) {
            return false;
        }
        if combo.len() < max_len && !exhaust(pool, i + 1, max_len, combo, visit) {
            return false;
        }
        combo.pop();
    }
    true
}
