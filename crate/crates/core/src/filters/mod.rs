//! Necessary conditions that every catalyst of a solvable incomparable pair
//! must satisfy.
//!
//! Each filter is an inequality family on the catalyst `r` derived from a
//! block-ordering argument on `q ⊗ r`: whenever the inequality fails, a known
//! set of entries of `q ⊗ r` is forced to be the top (or bottom) block, and
//! the excess of `p` over `q` on an index in `L` then breaks majorization.
//! A rejection therefore certifies that `r` is not a catalyst. Acceptance
//! certifies nothing.
//!
//! All inequalities are evaluated exactly in cross-multiplied form
//! (`a/b < c/d` as `a·d < c·b`), which coincides with the extended order
//! `x/0 = +inf` and needs no division.
//!
//! Indices in witnesses and labels are 1-based.

mod battery;
mod bound;

use std::collections::BTreeMap;

use serde::Serialize;

pub use battery::{run_battery, BatteryConfig, BatteryReport};
pub use bound::{dimension_bound, two_dim_feasible_interval, BoundParams, RatioInterval};

use crate::convertibility::{l_set, LSetReport};
use crate::error::{Error, Result};
use crate::scalar::{Quotient, Scalar};
use crate::serde_support::{quotient_report, scalar_report};
use crate::vectors::SchmidtVector;

/// Default cap on the number of index sequences enumerated by [`CatalysisPair::t2`].
pub const DEFAULT_T2_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FilterId {
    #[serde(rename = "T1_RATIO")]
    T1Ratio,
    #[serde(rename = "T2_SEQUENCE")]
    T2Sequence,
    #[serde(rename = "COR1_TWOLEVEL")]
    Cor1TwoLevel,
    #[serde(rename = "PROP1_TRIPLE")]
    Prop1Triple,
    #[serde(rename = "PROP1_EDGE")]
    Prop1Edge,
    #[serde(rename = "COR3_DUAL")]
    Cor3Dual,
    #[serde(rename = "REM2_HEAD")]
    Rem2Head,
    #[serde(rename = "PRA99_BASELINE")]
    Pra99Baseline,
}

impl FilterId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FilterId::T1Ratio => "T1_RATIO",
            FilterId::T2Sequence => "T2_SEQUENCE",
            FilterId::Cor1TwoLevel => "COR1_TWOLEVEL",
            FilterId::Prop1Triple => "PROP1_TRIPLE",
            FilterId::Prop1Edge => "PROP1_EDGE",
            FilterId::Cor3Dual => "COR3_DUAL",
            FilterId::Rem2Head => "REM2_HEAD",
            FilterId::Pra99Baseline => "PRA99_BASELINE",
        }
    }
}

/// One strict inequality, stated as `statement` with displayed sides
/// `left`/`right`, and decided exactly as `lhs < rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Comparison<S: Scalar> {
    pub statement: String,
    #[serde(serialize_with = "quotient_report")]
    pub left: Quotient<S>,
    #[serde(serialize_with = "quotient_report")]
    pub right: Quotient<S>,
    #[serde(serialize_with = "scalar_report")]
    pub lhs: S,
    #[serde(serialize_with = "scalar_report")]
    pub rhs: S,
}

impl<S: Scalar> Comparison<S> {
    pub fn holds(&self) -> bool {
        self.lhs < self.rhs
    }
}

/// Indices that triggered a rejection and the inequalities found violated.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Witness<S: Scalar> {
    pub indices: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    /// Every entry evaluates to false; for disjunctive conditions all
    /// alternatives are listed.
    pub violated: Vec<Comparison<S>>,
}

impl<S: Scalar> Witness<S> {
    fn new(indices: &[(&str, usize)], violated: Vec<Comparison<S>>) -> Self {
        Self {
            indices: indices.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            sequence: None,
            subset: None,
            violated,
        }
    }

    /// True when every recorded inequality re-evaluates to a violation.
    pub fn is_consistent(&self) -> bool {
        !self.violated.is_empty() && self.violated.iter().all(|c| !c.holds())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct FilterVerdict<S: Scalar> {
    pub filter: FilterId,
    pub accepted: bool,
    /// Set when enumeration was truncated by a cap; the verdict is then an
    /// unproven accept.
    pub inconclusive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness<S>>,
    /// The inequalities of single-inequality filters, shown even on accept.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checked: Vec<Comparison<S>>,
}

impl<S: Scalar> FilterVerdict<S> {
    fn accept(filter: FilterId) -> Self {
        Self {
            filter,
            accepted: true,
            inconclusive: false,
            witness: None,
            checked: Vec::new(),
        }
    }

    fn reject(filter: FilterId, witness: Witness<S>) -> Self {
        Self {
            filter,
            accepted: false,
            inconclusive: false,
            witness: Some(witness),
            checked: Vec::new(),
        }
    }

    fn with_checked(mut self, checked: Vec<Comparison<S>>) -> Self {
        self.checked = checked;
        self
    }
}

/// `num_a/den_a > num_b/den_b`, decided as `num_b·den_a < num_a·den_b`.
fn ratio_gt<S: Scalar>(
    (num_a, den_a, label_a): (&S, &S, String),
    (num_b, den_b, label_b): (&S, &S, String),
) -> Comparison<S> {
    Comparison {
        statement: format!("{label_a} > {label_b}"),
        left: Quotient::of(num_a, den_a),
        right: Quotient::of(num_b, den_b),
        lhs: num_b.clone() * den_a.clone(),
        rhs: num_a.clone() * den_b.clone(),
    }
}

/// `num_a/den_a < num_b/den_b`, decided as `num_a·den_b < num_b·den_a`.
fn ratio_lt<S: Scalar>(
    (num_a, den_a, label_a): (&S, &S, String),
    (num_b, den_b, label_b): (&S, &S, String),
) -> Comparison<S> {
    Comparison {
        statement: format!("{label_a} < {label_b}"),
        left: Quotient::of(num_a, den_a),
        right: Quotient::of(num_b, den_b),
        lhs: num_a.clone() * den_b.clone(),
        rhs: num_b.clone() * den_a.clone(),
    }
}

fn idx(name: &str, i: usize) -> String {
    format!("{name}_{i}")
}

fn frac(a: String, b: String) -> String {
    format!("{a}/{b}")
}

/// A solvable incomparable pair with both vectors padded to a common
/// dimension, ready to screen candidate catalysts.
#[derive(Clone, Debug)]
pub struct CatalysisPair<S> {
    p: SchmidtVector<S>,
    q: SchmidtVector<S>,
    lset: LSetReport,
}

impl<S: Scalar> CatalysisPair<S> {
    /// Fails with `UnsolvablePair` unless `(p, q)` is solvable incomparable.
    pub fn new(p: &SchmidtVector<S>, q: &SchmidtVector<S>) -> Result<Self> {
        let lset = l_set(p, q);
        lset.require_solvable()?;
        Ok(Self {
            p: p.padded(lset.d),
            q: q.padded(lset.d),
            lset,
        })
    }

    pub fn p(&self) -> &SchmidtVector<S> {
        &self.p
    }

    pub fn q(&self) -> &SchmidtVector<S> {
        &self.q
    }

    pub fn lset(&self) -> &LSetReport {
        &self.lset
    }

    pub fn d(&self) -> usize {
        self.lset.d
    }

    fn l_elems(&self) -> &[usize] {
        &self.lset.elements
    }

    fn m_low(&self) -> usize {
        self.lset.min.expect("solvable pair has a nonempty L")
    }

    fn m_high(&self) -> usize {
        self.lset.max.expect("solvable pair has a nonempty L")
    }

    fn check_catalyst(r: &SchmidtVector<S>) -> Result<()> {
        if r.dim() < 2 {
            return Err(Error::RankOrderViolation(format!(
                "catalyst dimension must be at least 2, got {}",
                r.dim()
            )));
        }
        match r.entries().iter().position(|x| x.is_zero()) {
            Some(i) => Err(Error::DegenerateCatalyst { index: i + 1 }),
            None => Ok(()),
        }
    }

    /// Ratio of extreme catalyst entries must beat, for every `l ∈ L`,
    /// `min(p_l/p_{l+1}, q_l/q_{l+1})`.
    pub fn t1(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        let (r1, rk) = (r.at(1), r.at(k));
        let (lr1, lrk) = (idx("r", 1), idx("r", k));
        for &l in self.l_elems() {
            let (pl, pl1, ql, ql1) = (self.p.at(l), self.p.at(l + 1), self.q.at(l), self.q.at(l + 1));
            let via_p = ratio_gt(
                (&r1, &rk, frac(lr1.clone(), lrk.clone())),
                (&pl, &pl1, frac(idx("p", l), idx("p", l + 1))),
            );
            let via_q = ratio_gt(
                (&r1, &rk, frac(lr1.clone(), lrk.clone())),
                (&ql, &ql1, frac(idx("q", l), idx("q", l + 1))),
            );
            if !via_p.holds() && !via_q.holds() {
                return Ok(FilterVerdict::reject(
                    FilterId::T1Ratio,
                    Witness::new(&[("l", l)], vec![via_p, via_q]),
                ));
            }
        }
        Ok(FilterVerdict::accept(FilterId::T1Ratio))
    }

    /// Evaluates the block inequality for one nonincreasing sequence `js`
    /// over the prefix lengths `ls` (`ls.len() + 1 == js.len()`, with
    /// `l_0 = 0` and `l_{last} = d` implied). Returns the comparison
    /// `min_τ r_{j_τ} q_{l_τ} < max_τ r_{j_τ+1} q_{l_{τ-1}+1}`, where terms
    /// touching `r_0` or `r_{k+1}` are dropped.
    fn sequence_comparison(&self, r: &SchmidtVector<S>, js: &[usize], ls: &[usize]) -> Comparison<S> {
        let k = r.dim();
        let d = self.d();
        let l_at = |tau: usize| -> usize {
            // tau in 0..=len
            if tau == 0 {
                0
            } else if tau == js.len() {
                d
            } else {
                ls[tau - 1]
            }
        };
        let mut min: Option<(S, String)> = None;
        let mut max: Option<(S, String)> = None;
        for (t0, &j) in js.iter().enumerate() {
            let tau = t0 + 1;
            if j >= 1 {
                let l = l_at(tau);
                let v = r.at(j) * self.q.at(l);
                if min.as_ref().is_none_or(|(m, _)| v < *m) {
                    min = Some((v, format!("r_{j}*q_{l}")));
                }
            }
            if j < k {
                let l = l_at(tau - 1) + 1;
                let v = r.at(j + 1) * self.q.at(l);
                if max.as_ref().is_none_or(|(m, _)| v > *m) {
                    max = Some((v, format!("r_{}*q_{l}", j + 1)));
                }
            }
        }
        let (min_v, min_l) = min.expect("sequence with a strict decrease has j_1 >= 1");
        let (max_v, max_l) = max.expect("sequence with a strict decrease has j_last < k");
        Comparison {
            statement: format!("min = {min_l} < max = {max_l}"),
            left: Quotient::Finite(min_v.clone()),
            right: Quotient::Finite(max_v.clone()),
            lhs: min_v,
            rhs: max_v,
        }
    }

    /// Sequence family over all nonincreasing `j_1 ≥ … ≥ j_{m+1}` in `[0, k]`
    /// with at least one strict decrease; with `subsets`, additionally every
    /// nonempty `L̄ ⊆ L` with `0 < j_{m'+1} < … < j_1 < k`.
    pub fn t2(&self, r: &SchmidtVector<S>, subsets: bool, cap: usize) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        let ls = self.l_elems().to_vec();
        let mut evaluated = 0usize;

        let mut js = vec![0usize; ls.len() + 1];
        let mut found: Option<Witness<S>> = None;
        let mut capped = false;
        for_each_nonincreasing(&mut js, 0, k, &mut |seq| {
            if seq.first() == seq.last() {
                return true;
            }
            if evaluated >= cap {
                capped = true;
                return false;
            }
            evaluated += 1;
            let cmp = self.sequence_comparison(r, seq, &ls);
            if !cmp.holds() {
                let mut w = Witness::new(&[], vec![cmp]);
                w.sequence = Some(seq.to_vec());
                found = Some(w);
                return false;
            }
            true
        });

        if found.is_none() && !capped && subsets {
            let m = ls.len();
            'subsets: for mask in 1u64..(1u64 << m) {
                let sub: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| ls[b]).collect();
                let len = sub.len() + 1;
                if k < len + 1 {
                    continue;
                }
                // strictly decreasing values drawn from 1..=k-1
                let mut combo: Vec<usize> = (0..len).map(|i| k - 1 - i).collect();
                loop {
                    if evaluated >= cap {
                        capped = true;
                        break 'subsets;
                    }
                    evaluated += 1;
                    let cmp = self.sequence_comparison(r, &combo, &sub);
                    if !cmp.holds() {
                        let mut w = Witness::new(&[], vec![cmp]);
                        w.sequence = Some(combo.clone());
                        w.subset = Some(sub.clone());
                        found = Some(w);
                        break 'subsets;
                    }
                    if !prev_decreasing_combo(&mut combo) {
                        break;
                    }
                }
            }
        }

        Ok(match found {
            Some(w) => FilterVerdict::reject(FilterId::T2Sequence, w),
            None => {
                let mut v = FilterVerdict::accept(FilterId::T2Sequence);
                v.inconclusive = capped;
                v
            }
        })
    }

    /// Two-level instance of the sequence family:
    /// `min(r_{c1} q_d, r_{c2} q_{l_s}) < max(r_{c1+1} q_{l_s+1}, r_{c2+1} q_1)`
    /// for `0 ≤ c1 < c2 ≤ k` and `1 ≤ s ≤ m`; terms with `r_0`, `r_{k+1}` are dropped.
    pub fn cor1(&self, r: &SchmidtVector<S>, c1: usize, c2: usize, s: usize) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        let m = self.lset.m;
        if !(c1 < c2 && c2 <= k) || !(1 <= s && s <= m) {
            return Err(Error::IndexOutOfRange(format!(
                "need 0 <= c1 < c2 <= k = {k} and 1 <= s <= m = {m}, got c1 = {c1}, c2 = {c2}, s = {s}"
            )));
        }
        let d = self.d();
        let ls = self.l_elems()[s - 1];
        let mut mins: Vec<(S, String)> = Vec::new();
        if c1 >= 1 {
            mins.push((r.at(c1) * self.q.at(d), format!("r_{c1}*q_{d}")));
        }
        mins.push((r.at(c2) * self.q.at(ls), format!("r_{c2}*q_{ls}")));
        let mut maxs: Vec<(S, String)> = vec![(
            r.at(c1 + 1) * self.q.at(ls + 1),
            format!("r_{}*q_{}", c1 + 1, ls + 1),
        )];
        if c2 < k {
            maxs.push((r.at(c2 + 1) * self.q.at(1), format!("r_{}*q_1", c2 + 1)));
        }
        let min = mins
            .into_iter()
            .reduce(|a, b| if b.0 < a.0 { b } else { a })
            .expect("nonempty");
        let max = maxs
            .into_iter()
            .reduce(|a, b| if b.0 > a.0 { b } else { a })
            .expect("nonempty");
        let cmp = Comparison {
            statement: format!("min = {} < max = {}", min.1, max.1),
            left: Quotient::Finite(min.0.clone()),
            right: Quotient::Finite(max.0.clone()),
            lhs: min.0,
            rhs: max.0,
        };
        Ok(if cmp.holds() {
            FilterVerdict::accept(FilterId::Cor1TwoLevel).with_checked(vec![cmp])
        } else {
            FilterVerdict::reject(
                FilterId::Cor1TwoLevel,
                Witness::new(&[("c1", c1), ("c2", c2), ("s", s), ("l_s", ls)], vec![cmp]),
            )
        })
    }

    /// All valid `(c1, c2, s)` choices; rejects on the first violated one.
    pub fn cor1_all(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        for s in 1..=self.lset.m {
            for c2 in 1..=k {
                for c1 in 0..c2 {
                    let v = self.cor1(r, c1, c2, s)?;
                    if !v.accepted {
                        return Ok(v);
                    }
                }
            }
        }
        Ok(FilterVerdict::accept(FilterId::Cor1TwoLevel))
    }

    /// Edge conditions on the first and last two catalyst entries, for every `l ∈ L`:
    /// `q_d/q_{l+1} < r_k/r_{k-1}` and `q_1/q_l > r_1/r_2`.
    pub fn prop1_edge(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        let d = self.d();
        let (r1, r2, rk1, rk) = (r.at(1), r.at(2), r.at(k - 1), r.at(k));
        for &l in self.l_elems() {
            let tail = ratio_lt(
                (&self.q.at(d), &self.q.at(l + 1), frac(idx("q", d), idx("q", l + 1))),
                (&rk, &rk1, frac(idx("r", k), idx("r", k - 1))),
            );
            if !tail.holds() {
                return Ok(FilterVerdict::reject(
                    FilterId::Prop1Edge,
                    Witness::new(&[("l", l)], vec![tail]),
                ));
            }
            let head = ratio_gt(
                (&self.q.at(1), &self.q.at(l), frac(idx("q", 1), idx("q", l))),
                (&r1, &r2, frac(idx("r", 1), idx("r", 2))),
            );
            if !head.holds() {
                return Ok(FilterVerdict::reject(
                    FilterId::Prop1Edge,
                    Witness::new(&[("l", l)], vec![head]),
                ));
            }
        }
        Ok(FilterVerdict::accept(FilterId::Prop1Edge))
    }

    /// Interior condition: for every `l ∈ L` and `s ∈ {2, …, k-1}` at least one of
    /// `q_1/q_d > r_{s-1}/r_{s+1}`, `q_1/q_l > r_s/r_{s+1}`, `q_{l+1}/q_d > r_{s-1}/r_s`.
    pub fn prop1_triple(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        let d = self.d();
        let (q1, qd) = (self.q.at(1), self.q.at(d));
        for &l in self.l_elems() {
            let (ql, ql1) = (self.q.at(l), self.q.at(l + 1));
            for s in 2..k {
                let (rp, rs, rn) = (r.at(s - 1), r.at(s), r.at(s + 1));
                let a = ratio_gt(
                    (&q1, &qd, frac(idx("q", 1), idx("q", d))),
                    (&rp, &rn, frac(idx("r", s - 1), idx("r", s + 1))),
                );
                let b = ratio_gt(
                    (&q1, &ql, frac(idx("q", 1), idx("q", l))),
                    (&rs, &rn, frac(idx("r", s), idx("r", s + 1))),
                );
                let c = ratio_gt(
                    (&ql1, &qd, frac(idx("q", l + 1), idx("q", d))),
                    (&rp, &rs, frac(idx("r", s - 1), idx("r", s))),
                );
                if !a.holds() && !b.holds() && !c.holds() {
                    return Ok(FilterVerdict::reject(
                        FilterId::Prop1Triple,
                        Witness::new(&[("l", l), ("s", s)], vec![a, b, c]),
                    ));
                }
            }
        }
        Ok(FilterVerdict::accept(FilterId::Prop1Triple))
    }

    /// Both halves of the adjacent-entry condition; the edge half is checked first.
    pub fn prop1(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        let edge = self.prop1_edge(r)?;
        if !edge.accepted {
            return Ok(edge);
        }
        self.prop1_triple(r)
    }

    /// `q_d/q_{M_L+1} < r_k/r_{k-1}`.
    pub fn cor3(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        let d = self.d();
        let big = self.m_high();
        let cmp = ratio_lt(
            (&self.q.at(d), &self.q.at(big + 1), frac(idx("q", d), idx("q", big + 1))),
            (&r.at(k), &r.at(k - 1), frac(idx("r", k), idx("r", k - 1))),
        );
        Ok(self.single(FilterId::Cor3Dual, cmp, &[("M_L", big)]))
    }

    /// `q_1/q_{m_L} > r_1/r_2`.
    pub fn rem2(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let small = self.m_low();
        let cmp = ratio_gt(
            (&self.q.at(1), &self.q.at(small), frac(idx("q", 1), idx("q", small))),
            (&r.at(1), &r.at(2), frac(idx("r", 1), idx("r", 2))),
        );
        Ok(self.single(FilterId::Rem2Head, cmp, &[("m_L", small)]))
    }

    fn single(&self, id: FilterId, cmp: Comparison<S>, indices: &[(&str, usize)]) -> FilterVerdict<S> {
        if cmp.holds() {
            FilterVerdict::accept(id).with_checked(vec![cmp])
        } else {
            FilterVerdict::reject(id, Witness::new(indices, vec![cmp.clone()])).with_checked(vec![cmp])
        }
    }

    /// Earlier published bounds, kept for empirical comparison only:
    /// `max_v r_v/r_{v+1} < min(q_1/q_{m_L}, q_{M_L+1}/q_d)` and
    /// `r_1/r_k > max_{l ∈ L} q_l/q_{l+1}`.
    pub fn pra99(&self, r: &SchmidtVector<S>) -> Result<FilterVerdict<S>> {
        Self::check_catalyst(r)?;
        let k = r.dim();
        let d = self.d();
        let (small, big) = (self.m_low(), self.m_high());
        for v in 1..k {
            let (rv, rv1) = (r.at(v), r.at(v + 1));
            let label = frac(idx("r", v), idx("r", v + 1));
            let head = ratio_lt(
                (&rv, &rv1, label.clone()),
                (&self.q.at(1), &self.q.at(small), frac(idx("q", 1), idx("q", small))),
            );
            if !head.holds() {
                return Ok(FilterVerdict::reject(
                    FilterId::Pra99Baseline,
                    Witness::new(&[("v", v)], vec![head]),
                ));
            }
            let tail = ratio_lt(
                (&rv, &rv1, label),
                (&self.q.at(big + 1), &self.q.at(d), frac(idx("q", big + 1), idx("q", d))),
            );
            if !tail.holds() {
                return Ok(FilterVerdict::reject(
                    FilterId::Pra99Baseline,
                    Witness::new(&[("v", v)], vec![tail]),
                ));
            }
        }
        let (r1, rk) = (r.at(1), r.at(k));
        for &l in self.l_elems() {
            let cmp = ratio_gt(
                (&r1, &rk, frac(idx("r", 1), idx("r", k))),
                (&self.q.at(l), &self.q.at(l + 1), frac(idx("q", l), idx("q", l + 1))),
            );
            if !cmp.holds() {
                return Ok(FilterVerdict::reject(
                    FilterId::Pra99Baseline,
                    Witness::new(&[("l", l)], vec![cmp]),
                ));
            }
        }
        Ok(FilterVerdict::accept(FilterId::Pra99Baseline))
    }
}

/// Visits every nonincreasing sequence with values in `[0, top]` in
/// lexicographically decreasing order. The visitor returns `false` to stop.
fn for_each_nonincreasing(
    buf: &mut [usize],
    pos: usize,
    top: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if pos == buf.len() {
        return visit(buf);
    }
    for v in (0..=top).rev() {
        buf[pos] = v;
        if !for_each_nonincreasing(buf, pos + 1, v, visit) {
            return false;
        }
    }
    true
}

/// Steps a strictly decreasing combination (values in `1..=k-1`, first
/// element largest) to the previous one in lexicographic order.
fn prev_decreasing_combo(combo: &mut [usize]) -> bool {
    let n = combo.len();
    // the last slot can go down to 1, the one before to 2, ...
    for i in (0..n).rev() {
        let floor = n - i;
        if combo[i] > floor {
            combo[i] -= 1;
            for j in i + 1..n {
                combo[j] = combo[j - 1] - 1;
            }
            return true;
        }
    }
    false
}

macro_rules! pair_filter {
    ($(#[$doc:meta])* $name:ident => $method:ident) => {
        $(#[$doc])*
        pub fn $name<S: Scalar>(
            p: &SchmidtVector<S>,
            q: &SchmidtVector<S>,
            r: &SchmidtVector<S>,
        ) -> Result<FilterVerdict<S>> {
            CatalysisPair::new(p, q)?.$method(r)
        }
    };
}

pair_filter!(
    /// Extreme-ratio condition. See [`CatalysisPair::t1`].
    filter_t1 => t1
);
pair_filter!(
    /// Adjacent-entry condition. See [`CatalysisPair::prop1`].
    filter_prop1 => prop1
);
pair_filter!(filter_cor3 => cor3);
pair_filter!(filter_rem2 => rem2);
pair_filter!(filter_pra99 => pra99);

/// Sequence-family condition. See [`CatalysisPair::t2`].
pub fn filter_t2<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    r: &SchmidtVector<S>,
    subset_mode: bool,
) -> Result<FilterVerdict<S>> {
    CatalysisPair::new(p, q)?.t2(r, subset_mode, DEFAULT_T2_CAP)
}

/// Two-level condition. See [`CatalysisPair::cor1`].
pub fn filter_cor1<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    r: &SchmidtVector<S>,
    c1: usize,
    c2: usize,
    s: usize,
) -> Result<FilterVerdict<S>> {
    CatalysisPair::new(p, q)?.cor1(r, c1, c2, s)
}
