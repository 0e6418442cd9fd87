//! Conversion probability and majorization distance.

use serde::Serialize;

use crate::scalar::Scalar;
use crate::search::oracle_catalyzes;
use crate::serde_support::scalar_report;
use crate::vectors::{prefix_sums, SchmidtVector};

/// Minimum of the tail-mass ratios and the 1-based index attaining it.
/// Zero exactly when the target has larger Schmidt rank than the source.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct ProbabilityBound<S: Scalar> {
    #[serde(serialize_with = "scalar_report")]
    pub p_max: S,
    pub argmin_l: usize,
}

/// Clamped majorization distance and the 1-based prefix attaining the
/// largest gap.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Distance<S: Scalar> {
    #[serde(serialize_with = "scalar_report")]
    pub delta: S,
    pub argmax_l: usize,
    /// Largest prefix gap before doubling and clamping.
    #[serde(serialize_with = "scalar_report")]
    pub max_gap: S,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct MetricReport<S: Scalar> {
    #[serde(serialize_with = "scalar_report")]
    pub p_max: S,
    pub argmin_l: usize,
    #[serde(serialize_with = "scalar_report")]
    pub delta: S,
    pub argmax_l: usize,
}

/// Smallest `num[i]/den[i]`, skipping zero denominators (those ratios are
/// `0/0` or `+inf` and never bind). Ties keep the smallest index.
fn min_ratio<S: Scalar>(nums: &[S], dens: &[S]) -> ProbabilityBound<S> {
    let mut best: Option<(S, usize)> = None;
    for (i, (n, d)) in nums.iter().zip(dens).enumerate() {
        if *d <= S::zero() {
            continue;
        }
        let ratio = n.clone() / d.clone();
        if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
            best = Some((ratio, i + 1));
        }
    }
    // index 1 always has positive mass
    let (p_max, argmin_l) = best.expect("first tail is the whole mass");
    ProbabilityBound { p_max, argmin_l }
}

/// Tail masses `E_l = sum_{i>=l} v_i` for `l = 1..=len`.
fn tails<S: Scalar>(v: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); v.len()];
    let mut acc = S::zero();
    for i in (0..v.len()).rev() {
        acc = acc + v[i].clone();
        out[i] = acc.clone();
    }
    out
}

/// Largest probability of converting `p` into `q` by LOCC:
/// `min_l E_l(p)/E_l(q)`.
pub fn p_max_plain<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>) -> ProbabilityBound<S> {
    let d = p.dim().max(q.dim());
    let (p, q) = (p.padded(d), q.padded(d));
    min_ratio(&tails(p.entries()), &tails(q.entries()))
}

/// Tail masses written as `1 - prefix_{l-1}`.
fn complement_tails<S: Scalar>(v: &SchmidtVector<S>) -> Vec<S> {
    let mut out = vec![S::one()];
    let sums = prefix_sums(v.entries());
    out.extend(sums[..sums.len() - 1].iter().map(|s| S::one() - s.clone()));
    out
}

/// Same minimum taken over the sorted products `p ⊗ r` and `q ⊗ r`.
pub fn p_max_catalytic<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    r: &SchmidtVector<S>,
) -> ProbabilityBound<S> {
    let (pr, qr) = padded_products(p, q, r);
    min_ratio(&complement_tails(&pr), &complement_tails(&qr))
}

fn padded_products<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    r: &SchmidtVector<S>,
) -> (SchmidtVector<S>, SchmidtVector<S>) {
    let d = p.dim().max(q.dim());
    (p.padded(d).tensor(r), q.padded(d).tensor(r))
}

/// `max(0, 2·max_l' (prefix_l'(p ⊗ r) - prefix_l'(q ⊗ r)))`. The gap at
/// the full length is zero, so the clamp never changes a computed value.
pub fn majorization_distance<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    r: &SchmidtVector<S>,
) -> Distance<S> {
    let (pr, qr) = padded_products(p, q, r);
    let (sp, sq) = (prefix_sums(pr.entries()), prefix_sums(qr.entries()));
    let mut best: Option<(S, usize)> = None;
    for (i, (a, b)) in sp.iter().zip(&sq).enumerate() {
        let gap = a.clone() - b.clone();
        if best.as_ref().is_none_or(|(g, _)| gap > *g) {
            best = Some((gap, i + 1));
        }
    }
    let (max_gap, argmax_l) = best.expect("products are nonempty");
    let doubled = max_gap.clone() + max_gap.clone();
    let delta = if doubled > S::zero() { doubled } else { S::zero() };
    Distance {
        delta,
        argmax_l,
        max_gap,
    }
}

pub fn metric_report<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>, r: &SchmidtVector<S>) -> MetricReport<S> {
    let prob = p_max_catalytic(p, q, r);
    let dist = majorization_distance(p, q, r);
    MetricReport {
        p_max: prob.p_max,
        argmin_l: prob.argmin_l,
        delta: dist.delta,
        argmax_l: dist.argmax_l,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prop2Report {
    pub p_max_is_one: bool,
    pub delta_is_zero: bool,
    pub oracle: bool,
    /// All three agree.
    pub consistent: bool,
}

pub fn prop2_report<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>, r: &SchmidtVector<S>) -> Prop2Report {
    let p_max_is_one = p_max_catalytic(p, q, r).p_max == S::one();
    let delta_is_zero = majorization_distance(p, q, r).delta.is_zero();
    let d = p.dim().max(q.dim());
    let oracle = oracle_catalyzes(&p.padded(d), &q.padded(d), r);
    Prop2Report {
        p_max_is_one,
        delta_is_zero,
        oracle,
        consistent: p_max_is_one == delta_is_zero && delta_is_zero == oracle,
    }
}

/// `(P_max = 1) == (δ = 0) == (p ⊗ r ≺ q ⊗ r)`.
pub fn prop2_check<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>, r: &SchmidtVector<S>) -> bool {
    prop2_report(p, q, r).consistent
}
