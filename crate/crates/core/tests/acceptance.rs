//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use elocc::sampling::{random_rank_vector, random_solvable_pair, random_spread_vector, rng_from_seed};
use elocc::search::oracle_violation;
use elocc::{
    lemma2_sufficient, majorizes, majorization_distance, oracle_catalyzes, p_max_catalytic, p_max_plain,
    prop2_report, search_catalyst, universal_rank_reach, BatteryConfig, CatalysisPair, FilterId, GridSpec,
    ProbVector, Quotient, Rational, SearchOptions,
};

const SWEEP_TRIPLES: usize = 10_000;
const PROP2_TRIPLES: usize = 10_000;
const LEMMA_INSTANCES: usize = 1_000;
const TARGETS_PER_INSTANCE: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn v(s: &str) -> ProbVector {
    ProbVector::parse_list(s).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn example_pair() -> (ProbVector, ProbVector) {
    (v("0.4,0.35,0.15,0.1"), v("0.5,0.2,0.2,0.1"))
}

fn catalysable_pair() -> (ProbVector, ProbVector) {
    (v("0.4,0.4,0.1,0.1"), v("0.5,0.25,0.25,0"))
}

fn within(limit: Duration, elapsed: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.3}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let (p, qv) = example_pair();
    let r = v("0.7,0.3");
    let pair = CatalysisPair::new(&p, &qv).unwrap();
    let rem2 = pair.rem2(&r).unwrap();
    let cor3 = pair.cor3(&r).unwrap();
    let head = rem2.checked[0].left.clone();
    let ratio = rem2.checked[0].right.clone();
    let tail = Quotient::of(&qv.at(3), &qv.at(4));
    let chain = head == Quotient::Finite(q(5, 2))
        && ratio == Quotient::Finite(q(7, 3))
        && tail == Quotient::Finite(q(2, 1))
        && rem2.accepted
        && !cor3.accepted
        && cor3.witness.as_ref().is_some_and(|w| w.is_consistent());
    let violation = oracle_violation(&p, &qv, &r);
    let oracle_ok = !oracle_catalyzes(&p, &qv, &r) && violation == Some((2, q(1, 40)));
    let violation = violation.map_or("none".to_string(), |(l, gap)| format!("l'={l}, gap {gap}"));
    let (fast, time) = within(Duration::from_secs(1), start.elapsed());
    Outcome::new(
        chain && oracle_ok && fast,
        format!("q1/q2 = {head} > r1/r2 = {ratio} > q3/q4 = {tail}; COR3 rejects; first violated prefix {violation}; {time}"),
    )
}

fn gapped_instance() -> Outcome {
    let start = Instant::now();
    let p = v("0.414047778,0.31764445,0.18499118,0.083316592");
    let qv = v("0.428610282,0.289194489,0.212421079,0.06977415");
    let grid = GridSpec::new(2, 2000);
    let opts = SearchOptions::default();
    let pruned = search_catalyst(&p, &qv, grid, true, usize::MAX, &opts).unwrap();
    let plain = search_catalyst(&p, &qv, grid, false, usize::MAX, &opts).unwrap();
    let (fast, time) = within(Duration::from_secs(60), start.elapsed());
    Outcome::new(
        pruned.found.is_empty() && pruned.exhausted && plain.found.is_empty() && plain.exhausted && fast,
        format!(
            "{} grid points, {} pruned, {} oracle calls, found {}, exhausted {}; unpruned found {}; {time}",
            pruned.candidates,
            pruned.pruned_count,
            pruned.oracle_count,
            pruned.found.len(),
            pruned.exhausted,
            plain.found.len()
        ),
    )
}

fn known_success() -> Outcome {
    let start = Instant::now();
    let (p, qv) = catalysable_pair();
    let out = search_catalyst(&p, &qv, GridSpec::new(2, 10), true, usize::MAX, &SearchOptions::default()).unwrap();
    let target = v("0.6,0.4");
    let found = out.found.contains(&target) && oracle_catalyzes(&p, &qv, &target);
    let pair = CatalysisPair::new(&p, &qv).unwrap();
    let config = BatteryConfig::default();
    let rejecting: Vec<&str> = [
        FilterId::T1Ratio,
        FilterId::T2Sequence,
        FilterId::Cor1TwoLevel,
        FilterId::Prop1Edge,
        FilterId::Prop1Triple,
        FilterId::Cor3Dual,
        FilterId::Rem2Head,
        FilterId::Pra99Baseline,
    ]
    .into_iter()
    .filter(|id| {
        let verdict = pair.run_filter(*id, &target, &config).unwrap();
        !verdict.accepted || verdict.inconclusive
    })
    .map(|id| id.as_str())
    .collect();
    let (fast, time) = within(Duration::from_secs(1), start.elapsed());
    Outcome::new(
        found && rejecting.is_empty() && fast,
        format!("found {:?}; rejecting filters {rejecting:?}; {time}", out.found.iter().map(|r| r.render()).collect::<Vec<_>>()),
    )
}

struct Triple {
    p: ProbVector,
    q: ProbVector,
    r: ProbVector,
}

/// Oracle-confirmed triples: random solvable pairs, each scanned on small
/// grids with the oracle alone, so the sample is not biased by any filter.
fn confirmed_triples(target: usize) -> Vec<Triple> {
    let grids: Vec<Vec<ProbVector>> = vec![GridSpec::new(2, 40).candidates(), GridSpec::new(3, 24).candidates()];
    let mut rng = rng_from_seed(20_240_501);
    let mut out = Vec::new();
    while out.len() < target {
        let pairs: Vec<(ProbVector, ProbVector)> = (0..512)
            .map(|_| {
                let d = rng.random_range(4..=6);
                random_solvable_pair(&mut rng, d)
            })
            .collect();
        let batch: Vec<Vec<Triple>> = pairs
            .par_iter()
            .map(|(p, qv)| {
                grids
                    .iter()
                    .flatten()
                    .filter(|r| oracle_catalyzes(p, qv, r))
                    .map(|r| Triple {
                        p: p.clone(),
                        q: qv.clone(),
                        r: r.clone(),
                    })
                    .collect()
            })
            .collect();
        out.extend(batch.into_iter().flatten());
    }
    out
}

fn soundness_sweep(triples: &[Triple], elapsed: Duration) -> Outcome {
    let start = Instant::now();
    let config = BatteryConfig::default();
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|t| {
            let pair = CatalysisPair::new(&t.p, &t.q).unwrap();
            let checks = [
                pair.t1(&t.r),
                pair.t2(&t.r, config.t2_subsets, config.t2_cap),
                pair.cor1_all(&t.r),
                pair.prop1(&t.r),
                pair.cor3(&t.r),
                pair.rem2(&t.r),
            ];
            let rejected: Vec<&str> = checks
                .iter()
                .filter_map(|c| match c {
                    Ok(v) if v.accepted => None,
                    Ok(v) => Some(v.filter.as_str()),
                    Err(_) => Some("error"),
                })
                .collect();
            (!rejected.is_empty()).then(|| format!("{:?} {:?} {:?}: {rejected:?}", t.p.render(), t.q.render(), t.r.render()))
        })
        .collect();
    let total = elapsed + start.elapsed();
    let (fast, time) = within(Duration::from_secs(600), total);
    let k2 = triples.iter().filter(|t| t.r.dim() == 2).count();
    let by_d: Vec<usize> = (4..=6).map(|d| triples.iter().filter(|t| t.p.dim() == d).count()).collect();
    let mut detail = format!(
        "{} confirmed triples ({} with k=2, {} with k=3; d=4,5,6: {by_d:?}), {} rejections; {time}",
        triples.len(),
        k2,
        triples.len() - k2,
        failures.len()
    );
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Outcome::new(triples.len() >= SWEEP_TRIPLES && failures.is_empty() && fast, detail)
}

fn bound_consistency(triples: &[Triple]) -> Outcome {
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|t| {
            let pair = CatalysisPair::new(&t.p, &t.q).unwrap();
            let bound = pair.bound_params();
            let dim_ok = bound.k_lower.is_some_and(|k| t.r.dim() >= k);
            let ratios_ok = bound.adjacent_ratios_within(&t.r);
            let interval_ok = t.r.dim() != 2
                || pair
                    .two_dim_interval()
                    .is_some_and(|iv| iv.contains(&(t.r.at(1) / t.r.at(2))));
            (!(dim_ok && ratios_ok && interval_ok)).then(|| {
                format!(
                    "{:?} {:?} {:?}: dim {dim_ok} ratios {ratios_ok} interval {interval_ok}",
                    t.p.render(),
                    t.q.render(),
                    t.r.render()
                )
            })
        })
        .collect();
    let mut detail = format!("{} triples checked, {} violations", triples.len(), failures.len());
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Outcome::new(triples.len() >= SWEEP_TRIPLES && failures.is_empty(), detail)
}

fn prop2_identity(catalysts: &[Triple]) -> Outcome {
    let mut rng = rng_from_seed(7_070_707);
    let mut triples: Vec<Triple> = (0..PROP2_TRIPLES)
        .map(|i| {
            // alternate arbitrary pairs and solvable incomparable pairs
            let (p, qv) = if i % 2 == 0 {
                let d = rng.random_range(2..=6);
                let e = rng.random_range(1..=d);
                (random_spread_vector(&mut rng, d), random_spread_vector(&mut rng, e))
            } else {
                let d = rng.random_range(4..=6);
                random_solvable_pair(&mut rng, d)
            };
            let k = rng.random_range(1..=3);
            let r = random_spread_vector(&mut rng, k);
            Triple { p, q: qv, r }
        })
        .collect();
    let random = triples.len();
    triples.extend(catalysts.iter().step_by(4).map(|t| Triple {
        p: t.p.clone(),
        q: t.q.clone(),
        r: t.r.clone(),
    }));
    let results: Vec<(bool, bool)> = triples
        .par_iter()
        .map(|t| {
            let rep = prop2_report(&t.p, &t.q, &t.r);
            (rep.consistent, rep.oracle)
        })
        .collect();
    let violations = results.iter().filter(|(ok, _)| !ok).count();
    let positives = results.iter().filter(|(_, o)| *o).count();
    Outcome::new(
        random >= PROP2_TRIPLES && violations == 0,
        format!(
            "{} triples ({random} random, {} confirmed catalysts), {positives} oracle positives, {violations} violations",
            triples.len(),
            triples.len() - random
        ),
    )
}

fn lemma_soundness() -> Outcome {
    let mut rng = rng_from_seed(31_415);
    let mut instances = Vec::new();
    let mut attempts = 0usize;
    while instances.len() < LEMMA_INSTANCES && attempts < 10_000_000 {
        attempts += 1;
        let n = rng.random_range(3..=8);
        let t = rng.random_range(2..n);
        let s = rng.random_range(1..n);
        let lo = rng.random_range(1..=40);
        let hi = lo + rng.random_range(1..=20);
        let p = elocc::sampling::random_vector(&mut rng, n, lo, hi);
        if lemma2_sufficient(&p, t, s).unwrap() {
            let targets: Vec<ProbVector> = (0..TARGETS_PER_INSTANCE)
                .map(|_| random_rank_vector(&mut rng, t, n))
                .collect();
            instances.push((p, t, s, targets));
        }
    }
    let failures: Vec<String> = instances
        .par_iter()
        .filter_map(|(p, t, s, targets)| {
            let reach = universal_rank_reach(p, *t).unwrap_or(false);
            let all = targets.iter().all(|target| majorizes(p, target));
            (!(reach && all)).then(|| format!("{:?} t={t} s={s}: reach {reach}, targets {all}", p.render()))
        })
        .collect();
    let mut detail = format!(
        "{} instances from {attempts} draws, {} targets each, {} violations",
        instances.len(),
        TARGETS_PER_INSTANCE,
        failures.len()
    );
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Outcome::new(instances.len() >= LEMMA_INSTANCES && failures.is_empty(), detail)
}

fn metrics_golden() -> Outcome {
    let (p, qv) = example_pair();
    let r = v("0.7,0.3");
    let plain = p_max_plain(&p, &qv);
    let cat = p_max_catalytic(&p, &qv, &r);
    let dist = majorization_distance(&p, &qv, &r);
    Outcome::new(
        plain.p_max == q(5, 6) && cat.p_max == q(5, 6) && dist.delta == q(1, 20),
        format!(
            "P'max = {} (l={}), catalytic Pmax = {} (l'={}), delta = {} (l'={})",
            plain.p_max, plain.argmin_l, cat.p_max, cat.argmin_l, dist.delta, dist.argmax_l
        ),
    )
}

fn determinism() -> Outcome {
    let (p, qv) = catalysable_pair();
    let runs = [
        (GridSpec::new(3, 60), true, usize::MAX),
        (GridSpec::new(3, 90), false, 5),
        (GridSpec::new(4, 30), true, 50),
    ];
    let mut details = Vec::new();
    let mut pass = true;
    for (grid, filters, max) in runs {
        let outputs: Vec<String> = [1, 4, 8]
            .into_iter()
            .map(|w| {
                let opts = SearchOptions {
                    workers: Some(w),
                    ..SearchOptions::default()
                };
                serde_json::to_string(&search_catalyst(&p, &qv, grid, filters, max, &opts).unwrap()).unwrap()
            })
            .collect();
        let same = outputs.windows(2).all(|w| w[0] == w[1]);
        pass &= same;
        details.push(format!("k={} D={} ({} bytes) identical {same}", grid.k, grid.denominator, outputs[0].len()));
    }
    Outcome::new(pass, details.join("; "))
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "example reproduction", example_reproduction()));
    results.push((2, "two-dimensional grid nonexistence", gapped_instance()));
    results.push((3, "known catalysis success", known_success()));
    let start = Instant::now();
    let triples = confirmed_triples(SWEEP_TRIPLES);
    let generation = start.elapsed();
    results.push((4, "filter soundness sweep", soundness_sweep(&triples, generation)));
    results.push((5, "dimension bound consistency", bound_consistency(&triples)));
    results.push((6, "probability/distance identity", prop2_identity(&triples)));
    results.push((7, "rank reach lemma soundness", lemma_soundness()));
    results.push((8, "metrics golden values", metrics_golden()));
    results.push((9, "worker-count determinism", determinism()));

    let mut failed = 0;
    for (id, name, outcome) in &results {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{id}] {name}: {}", outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
