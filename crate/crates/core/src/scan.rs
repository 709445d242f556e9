//! Exhaustive and sampled scans over pairs and triples of element indices.
//!
//! Exhaustive scans may run in parallel but always report the
//! lexicographically smallest witnesses first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::MAX_WITNESSES;

/// Orders up to this bound are checked exhaustively under [`Coverage::Auto`].
pub const EXHAUSTIVE_LIMIT: usize = 512;
/// Sampled scans draw this many triples per `n²`.
pub const SAMPLES_PER_SQUARE: usize = 10;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Coverage {
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`], sampled above.
    #[default]
    Auto,
    Exhaustive,
    Sampled { seed: u64 },
}

impl Coverage {
    fn sample_seed(self, n: usize) -> Option<u64> {
        match self {
            Coverage::Auto if n > EXHAUSTIVE_LIMIT => Some(DEFAULT_SEED),
            Coverage::Auto | Coverage::Exhaustive => None,
            Coverage::Sampled { seed } => Some(seed),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scan {
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Vec<usize>>,
    pub sampled: bool,
}

impl Scan {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }

    pub fn first(&self) -> Option<&[usize]> {
        self.witnesses.first().map(Vec::as_slice)
    }

    fn push(&mut self, w: Vec<usize>) {
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    fn merge(&mut self, other: Scan) {
        self.checked += other.checked;
        self.violations += other.violations;
        for w in other.witnesses {
            if self.witnesses.len() == MAX_WITNESSES {
                break;
            }
            self.witnesses.push(w);
        }
    }
}

/// Checks `holds(a, b, c)` over triples in `0..n`.
pub fn triples<F>(n: usize, coverage: Coverage, holds: F) -> Scan
where
    F: Fn(usize, usize, usize) -> bool + Sync,
{
    if let Some(seed) = coverage.sample_seed(n) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut scan = Scan { sampled: true, ..Scan::default() };
        for _ in 0..SAMPLES_PER_SQUARE * n * n {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            scan.checked += 1;
            if !holds(a, b, c) {
                scan.push(vec![a, b, c]);
            }
        }
        scan.witnesses.sort();
        return scan;
    }
    let parts: Vec<Scan> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut part = Scan::default();
            for b in 0..n {
                for c in 0..n {
                    if !holds(a, b, c) {
                        part.push(vec![a, b, c]);
                    }
                }
            }
            part.checked = (n * n) as u64;
            part
        })
        .collect();
    let mut scan = Scan::default();
    for part in parts {
        scan.merge(part);
    }
    scan
}

/// Checks `holds(x, y)` over all pairs in `0..n`. Pair scans are always
/// exhaustive: `n²` evaluations never exceed the sampled budget.
pub fn pairs<F>(n: usize, holds: F) -> Scan
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let mut scan = Scan::default();
    for x in 0..n {
        for y in 0..n {
            if !holds(x, y) {
                scan.push(vec![x, y]);
            }
        }
    }
    scan.checked = (n * n) as u64;
    scan
}

/// Checks `holds(x)` over `0..n`.
pub fn singles<F>(n: usize, holds: F) -> Scan
where
    F: Fn(usize) -> bool,
{
    let mut scan = Scan { checked: n as u64, ..Scan::default() };
    for x in 0..n {
        if !holds(x) {
            scan.push(vec![x]);
        }
    }
    scan
}
