//! Seeded random instances with exact rational entries, and the empirical
//! filter comparison built on them.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::convertibility::l_set;
use crate::error::Result;
use crate::filters::{CatalysisPair, FilterId};
use crate::scalar::Rational;
use crate::search::oracle_catalyzes;
use crate::vectors::SchmidtVector;
use crate::ProbVector;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalizes positive integer weights into an exact probability vector.
pub fn from_weights(weights: &[u64]) -> ProbVector {
    let total: u64 = weights.iter().sum();
    let mut entries: Vec<Rational> = weights
        .iter()
        .map(|&w| Rational::new(w.into(), total.into()))
        .collect();
    crate::vectors::sort_desc(&mut entries);
    SchmidtVector::from_sorted_unchecked(entries)
}

/// Random vector of dimension `dim` with integer weights drawn from `lo..=hi`.
pub fn random_vector(rng: &mut impl Rng, dim: usize, lo: u64, hi: u64) -> ProbVector {
    let weights: Vec<u64> = (0..dim).map(|_| rng.random_range(lo..=hi)).collect();
    if weights.iter().all(|&w| w == 0) {
        return SchmidtVector::product_state(dim);
    }
    from_weights(&weights)
}

/// Random vector with a randomly chosen weight spread, from near uniform to
/// strongly skewed.
pub fn random_spread_vector(rng: &mut impl Rng, dim: usize) -> ProbVector {
    let lo = rng.random_range(1..=20);
    let hi = lo + rng.random_range(1..=40);
    random_vector(rng, dim, lo, hi)
}

/// Random solvable incomparable pair of dimension `dim` (at least 4).
pub fn random_solvable_pair(rng: &mut impl Rng, dim: usize) -> (ProbVector, ProbVector) {
    assert!(dim >= 4, "solvable pairs need dimension at least 4");
    loop {
        let p = random_spread_vector(rng, dim);
        let q = random_spread_vector(rng, dim);
        if l_set(&p, &q).is_solvable() {
            return (p, q);
        }
    }
}

/// Random vector of Schmidt rank exactly `rank`, zero padded to `dim`.
pub fn random_rank_vector(rng: &mut impl Rng, rank: usize, dim: usize) -> ProbVector {
    let lo = rng.random_range(1..=10);
    let hi = lo + rng.random_range(0..=50);
    random_vector(rng, rank, lo, hi).padded(dim)
}

/// Confusion counts of one filter against the oracle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Confusion {
    pub filter: String,
    pub samples: usize,
    /// Filter rejects and the oracle refutes: a correct certificate.
    pub true_rejections: usize,
    /// Filter rejects a confirmed catalyst: a soundness failure.
    pub false_rejections: usize,
    pub accepted_catalysts: usize,
    pub accepted_non_catalysts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonSummary {
    pub seed: u64,
    pub samples: usize,
    pub oracle_catalysts: usize,
    pub filters: Vec<Confusion>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparisonConfig {
    pub samples: usize,
    pub seed: u64,
    pub dims: (usize, usize),
    pub catalyst_dims: (usize, usize),
}

impl Default for ComparisonConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 0,
            dims: (4, 6),
            catalyst_dims: (2, 3),
        }
    }
}

/// Draws the triples sequentially from one seeded stream, so the sample is
/// fixed by the seed regardless of how evaluation is scheduled.
pub fn random_triples(config: &ComparisonConfig) -> Vec<(ProbVector, ProbVector, ProbVector)> {
    let mut rng = rng_from_seed(config.seed);
    (0..config.samples)
        .map(|_| {
            let d = rng.random_range(config.dims.0..=config.dims.1);
            let k = rng.random_range(config.catalyst_dims.0..=config.catalyst_dims.1);
            let (p, q) = random_solvable_pair(&mut rng, d);
            let r = random_spread_vector(&mut rng, k);
            (p, q, r)
        })
        .collect()
}

/// Runs the adjacent-entry condition and the earlier baseline against the
/// oracle on random solvable triples.
pub fn compare_filters(config: &ComparisonConfig) -> Result<ComparisonSummary> {
    let triples = random_triples(config);
    let rows: Vec<(bool, [bool; 2])> = triples
        .par_iter()
        .map(|(p, q, r)| -> Result<(bool, [bool; 2])> {
            let pair = CatalysisPair::new(p, q)?;
            let oracle = oracle_catalyzes(pair.p(), pair.q(), r);
            let prop1 = pair.prop1(r)?.accepted;
            let pra99 = pair.pra99(r)?.accepted;
            Ok((oracle, [prop1, pra99]))
        })
        .collect::<Result<_>>()?;

    let names = ["PROP1", FilterId::Pra99Baseline.as_str()];
    let mut confusions: Vec<Confusion> = names
        .iter()
        .map(|n| Confusion {
            filter: n.to_string(),
            samples: rows.len(),
            ..Confusion::default()
        })
        .collect();
    for (oracle, accepted) in &rows {
        for (c, &acc) in confusions.iter_mut().zip(accepted) {
            match (acc, *oracle) {
                (false, false) => c.true_rejections += 1,
                (false, true) => c.false_rejections += 1,
                (true, true) => c.accepted_catalysts += 1,
                (true, false) => c.accepted_non_catalysts += 1,
            }
        }
    }
    Ok(ComparisonSummary {
        seed: config.seed,
        samples: rows.len(),
        oracle_catalysts: rows.iter().filter(|(o, _)| *o).count(),
        filters: confusions,
    })
}
