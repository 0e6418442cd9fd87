//! Exact catalyst oracle and exhaustive, filter-pruned grid search.
//!
//! The grid at resolution `1/D` is the set of nonincreasing compositions of
//! `D` into `k` parts, each divided by `D`. Candidates are processed in
//! fixed-size contiguous chunks on a worker pool; chunk results are merged
//! in chunk order, so every count and every result list is independent of
//! the number of workers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filters::{BatteryConfig, BoundParams, CatalysisPair, FilterId};
use crate::scalar::Scalar;
use crate::vectors::{first_majorization_violation, majorizes, SchmidtVector};

const CHUNK: usize = 64;
const CHUNKS_PER_WAVE: usize = 32;

/// `p ⊗ r ≺ q ⊗ r`, decided exactly by sorting both products.
pub fn oracle_catalyzes<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>, r: &SchmidtVector<S>) -> bool {
    majorizes(&p.tensor(r), &q.tensor(r))
}

/// First prefix length of `p ⊗ r` exceeding `q ⊗ r`, with the excess.
pub fn oracle_violation<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    r: &SchmidtVector<S>,
) -> Option<(usize, S)> {
    first_majorization_violation(&p.tensor(r), &q.tensor(r))
}

/// Default grid denominator for catalyst dimension `k`.
pub fn default_denominator(k: usize) -> u64 {
    match k {
        0..=2 => 200,
        3 => 60,
        4 => 30,
        _ => 20,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub k: usize,
    pub denominator: u64,
    pub include_boundary_zeros: bool,
}

impl GridSpec {
    pub fn new(k: usize, denominator: u64) -> Self {
        Self {
            k,
            denominator,
            include_boundary_zeros: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidGrid(format!("k must be at least 2, got {}", self.k)));
        }
        if self.denominator == 0 || (!self.include_boundary_zeros && self.denominator < self.k as u64) {
            return Err(Error::InvalidGrid(format!(
                "denominator {} too small for {} positive parts",
                self.denominator, self.k
            )));
        }
        Ok(())
    }

    /// Nonincreasing compositions of `D` into `k` parts, lexicographically
    /// increasing.
    pub fn compositions(&self) -> Vec<Vec<u64>> {
        let min_part = u64::from(!self.include_boundary_zeros);
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(self.k);
        compose(self.denominator, self.k, self.denominator, min_part, &mut buf, &mut out);
        out
    }

    pub fn candidates<S: Scalar>(&self) -> Vec<SchmidtVector<S>> {
        self.compositions()
            .into_iter()
            .map(|parts| self.to_vector(&parts))
            .collect()
    }

    fn to_vector<S: Scalar>(&self, parts: &[u64]) -> SchmidtVector<S> {
        SchmidtVector::from_sorted_unchecked(
            parts
                .iter()
                .map(|&a| S::from_ratio(a, self.denominator))
                .collect(),
        )
    }
}

fn compose(remaining: u64, parts: usize, cap: u64, min_part: u64, buf: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if parts == 0 {
        if remaining == 0 {
            out.push(buf.clone());
        }
        return;
    }
    let slots = parts as u64;
    // largest part must cover the average; every later part needs min_part
    let low = remaining.div_ceil(slots).max(min_part);
    let high = cap.min(remaining.saturating_sub((slots - 1) * min_part));
    for a in low..=high {
        buf.push(a);
        compose(remaining - a, parts - 1, a, min_part, buf, out);
        buf.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct SearchOutcome<S: Scalar> {
    pub grid: GridSpec,
    pub use_filters: bool,
    pub candidates: usize,
    pub covered: usize,
    pub oracle_count: usize,
    pub pruned_count: usize,
    pub pruned_by: BTreeMap<FilterId, usize>,
    /// Confirmed catalysts, lexicographically smallest first.
    pub found: Vec<SchmidtVector<S>>,
    /// More catalysts were confirmed than `max_results` allowed.
    pub truncated: bool,
    /// Every grid point was examined and `found` lists all catalysts on it.
    pub exhausted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub battery: BatteryConfig,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            workers: None,
            battery: BatteryConfig::pruning(),
        }
    }
}

struct ChunkResult<S> {
    found: Vec<SchmidtVector<S>>,
    oracle_count: usize,
    pruned: BTreeMap<FilterId, usize>,
}

impl<S> Default for ChunkResult<S> {
    fn default() -> Self {
        Self {
            found: Vec::new(),
            oracle_count: 0,
            pruned: BTreeMap::new(),
        }
    }
}

fn with_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidGrid(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

fn screen<S: Scalar>(
    pair: &CatalysisPair<S>,
    r: &SchmidtVector<S>,
    use_filters: bool,
    config: &BatteryConfig,
) -> Option<FilterId> {
    let positive = r.entries().iter().all(|x| !x.is_zero());
    if use_filters && positive {
        // all preconditions were checked up front
        pair.first_rejecting(r, config).ok().flatten()
    } else {
        None
    }
}

/// Searches the grid for catalysts of `(p, q)`, stopping once at least
/// `max_results` are confirmed (at a chunk-wave boundary).
pub fn search_catalyst<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    grid: GridSpec,
    use_filters: bool,
    max_results: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome<S>> {
    let pair = CatalysisPair::new(p, q)?;
    grid.validate()?;
    let candidates: Vec<SchmidtVector<S>> = grid.candidates();
    let config = options.battery;

    let mut found = Vec::new();
    let mut oracle_count = 0;
    let mut pruned_by: BTreeMap<FilterId, usize> = BTreeMap::new();
    let mut covered = 0;

    for wave in candidates.chunks(CHUNK * CHUNKS_PER_WAVE) {
        let results: Vec<ChunkResult<S>> = with_pool(options.workers, || {
            wave.par_chunks(CHUNK)
                .map(|chunk| {
                    let mut res = ChunkResult::default();
                    for r in chunk {
                        if let Some(id) = screen(&pair, r, use_filters, &config) {
                            *res.pruned.entry(id).or_default() += 1;
                            continue;
                        }
                        res.oracle_count += 1;
                        if oracle_catalyzes(pair.p(), pair.q(), r) {
                            res.found.push(r.clone());
                        }
                    }
                    res
                })
                .collect()
        })?;
        for res in results {
            found.extend(res.found);
            oracle_count += res.oracle_count;
            for (id, n) in res.pruned {
                *pruned_by.entry(id).or_default() += n;
            }
        }
        covered += wave.len();
        if found.len() >= max_results {
            break;
        }
    }

    found.sort_by(|a, b| a.lex_cmp(b));
    let truncated = found.len() > max_results;
    found.truncate(max_results);
    Ok(SearchOutcome {
        grid,
        use_filters,
        candidates: candidates.len(),
        covered,
        oracle_count,
        pruned_count: pruned_by.values().sum(),
        pruned_by,
        found,
        truncated,
        exhausted: covered == candidates.len() && !truncated,
    })
}

/// One grid point with its battery screen and oracle verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct CandidateRow<S: Scalar> {
    pub candidate: SchmidtVector<S>,
    pub first_rejection: Option<FilterId>,
    pub catalyzes: bool,
}

/// Evaluates every grid point with both the battery and the oracle.
pub fn grid_scan<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    grid: GridSpec,
    options: &SearchOptions,
) -> Result<Vec<CandidateRow<S>>> {
    let pair = CatalysisPair::new(p, q)?;
    grid.validate()?;
    let candidates: Vec<SchmidtVector<S>> = grid.candidates();
    let config = options.battery;
    with_pool(options.workers, || {
        candidates
            .par_iter()
            .map(|r| CandidateRow {
                first_rejection: screen(&pair, r, true, &config),
                catalyzes: oracle_catalyzes(pair.p(), pair.q(), r),
                candidate: r.clone(),
            })
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionAttempt {
    pub k: usize,
    pub denominator: u64,
    pub candidates: usize,
    pub oracle_count: usize,
    pub pruned_count: usize,
    pub found: bool,
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct MinDimensionReport<S: Scalar> {
    /// Smallest `k` whose grid holds a catalyst, if any up to `k_max`.
    pub dimension: Option<usize>,
    pub catalyst: Option<SchmidtVector<S>>,
    pub bound: BoundParams<S>,
    pub attempts: Vec<DimensionAttempt>,
    /// Grid exhaustion rules out catalysts on the grid only.
    pub note: &'static str,
}

/// Smallest catalyst dimension in `[max(2, k_lower), k_max]` that the grid
/// search can realize. `denominator = None` uses [`default_denominator`].
pub fn min_catalyst_dimension<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    k_max: usize,
    denominator: Option<u64>,
    options: &SearchOptions,
) -> Result<MinDimensionReport<S>> {
    let pick = |k: usize| denominator.unwrap_or_else(|| default_denominator(k));
    min_catalyst_dimension_with(p, q, k_max, &pick, options)
}

/// As [`min_catalyst_dimension`], with the grid denominator chosen per `k`.
pub fn min_catalyst_dimension_with<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    k_max: usize,
    denominator: &(dyn Fn(usize) -> u64 + Sync),
    options: &SearchOptions,
) -> Result<MinDimensionReport<S>> {
    let pair = CatalysisPair::new(p, q)?;
    if k_max < 2 {
        return Err(Error::InvalidGrid(format!("k_max must be at least 2, got {k_max}")));
    }
    let bound = pair.bound_params();
    let mut report = MinDimensionReport {
        dimension: None,
        catalyst: None,
        bound: bound.clone(),
        attempts: Vec::new(),
        note: "absence of a catalyst certifies only the searched grids, not the continuum",
    };
    let Some(k_lower) = bound.k_lower else {
        return Ok(report);
    };
    for k in k_lower.max(2)..=k_max {
        let grid = GridSpec::new(k, denominator(k));
        let outcome = search_catalyst(pair.p(), pair.q(), grid, true, 1, options)?;
        report.attempts.push(DimensionAttempt {
            k,
            denominator: grid.denominator,
            candidates: outcome.candidates,
            oracle_count: outcome.oracle_count,
            pruned_count: outcome.pruned_count,
            found: !outcome.found.is_empty(),
            exhausted: outcome.exhausted,
        });
        if let Some(r) = outcome.found.into_iter().next() {
            report.dimension = Some(k);
            report.catalyst = Some(r);
            break;
        }
    }
    Ok(report)
}
