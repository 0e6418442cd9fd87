//! LOCC convertibility of pure states from their Schmidt vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vectors::{majorizes, SchmidtVector};

/// Relationship between a source `p` and a target `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `p = q` entrywise.
    Equal,
    /// `p ≺ q`: the conversion is possible by LOCC alone.
    ComparableForward,
    /// `q ≺ p` but not `p ≺ q`.
    ComparableBackward,
    /// Incomparable and the excess set avoids `1`, `d-1` and `d`.
    IncomparableSolvable,
    /// Incomparable with an excess index at `1`, `d-1` or `d`; no catalyst can exist.
    IncomparableUnsolvable,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Equal => "equal",
            Classification::ComparableForward => "comparable_forward",
            Classification::ComparableBackward => "comparable_backward",
            Classification::IncomparableSolvable => "incomparable_solvable",
            Classification::IncomparableUnsolvable => "incomparable_unsolvable",
        }
    }
}

/// The set of prefix lengths `l` where `sum_{i<=l} p_i > sum_{i<=l} q_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LSetReport {
    /// 1-based prefix lengths, increasing.
    pub elements: Vec<usize>,
    #[serde(rename = "m_L")]
    pub min: Option<usize>,
    #[serde(rename = "M_L")]
    pub max: Option<usize>,
    pub m: usize,
    /// Common dimension after zero padding.
    pub d: usize,
    pub classification: Classification,
}

impl LSetReport {
    pub fn is_solvable(&self) -> bool {
        self.classification == Classification::IncomparableSolvable
    }

    /// `Err(UnsolvablePair)` unless the pair is solvable incomparable.
    pub fn require_solvable(&self) -> Result<()> {
        if self.is_solvable() {
            Ok(())
        } else {
            Err(Error::UnsolvablePair {
                classification: self.classification.as_str().to_string(),
            })
        }
    }
}

/// Computes the excess set and classifies the pair.
pub fn l_set<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>) -> LSetReport {
    let d = p.dim().max(q.dim());
    let (p, q) = (p.padded(d), q.padded(d));
    let tol = S::sum_tolerance();
    let (cp, cq) = (p.cumulative().prefix_sums, q.cumulative().prefix_sums);

    let elements: Vec<usize> = (0..d)
        .filter(|&i| cp[i] > cq[i].clone() + tol.clone())
        .map(|i| i + 1)
        .collect();
    let backward = (0..d).any(|i| cq[i] > cp[i].clone() + tol.clone());

    let classification = if elements.is_empty() && !backward {
        Classification::Equal
    } else if elements.is_empty() {
        Classification::ComparableForward
    } else if !backward {
        Classification::ComparableBackward
    } else if elements.iter().any(|&l| l == 1 || l + 1 == d || l == d) {
        Classification::IncomparableUnsolvable
    } else {
        Classification::IncomparableSolvable
    };

    LSetReport {
        min: elements.first().copied(),
        max: elements.last().copied(),
        m: elements.len(),
        d,
        elements,
        classification,
    }
}

/// Nielsen's criterion: `p` converts to `q` by LOCC iff `p ≺ q`.
pub fn nielsen_convertible<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>) -> bool {
    majorizes(p, q)
}

fn check_reach_params<S: Scalar>(p: &SchmidtVector<S>, t: usize) -> Result<()> {
    let rank = p.schmidt_rank();
    if t == 0 || t >= rank {
        return Err(Error::RankOrderViolation(format!(
            "need 0 < t < schmidt rank, got t = {t}, rank = {rank}"
        )));
    }
    Ok(())
}

/// Whether `p` reaches every target of Schmidt rank `t < rank(p)`, decided
/// as `p ≺ (1/t, ..., 1/t, 0, ..., 0)`.
pub fn universal_rank_reach<S: Scalar>(p: &SchmidtVector<S>, t: usize) -> Result<bool> {
    check_reach_params(p, t)?;
    let uniform = SchmidtVector::<S>::uniform_padded(t, p.dim().max(t));
    Ok(majorizes(p, &uniform))
}

/// The literal strict condition `p_1 < 1/t`, which implies [`universal_rank_reach`].
pub fn largest_below_uniform<S: Scalar>(p: &SchmidtVector<S>, t: usize) -> Result<bool> {
    check_reach_params(p, t)?;
    Ok(p.at(1) < S::from_ratio(1, t as u64))
}

/// Tail-sum sufficient condition for reaching rank `t`:
/// `s(t-1)/(t(n-1)) < sum of the s smallest entries < s/n`, with `n = dim(p)`.
pub fn lemma2_sufficient<S: Scalar>(p: &SchmidtVector<S>, t: usize, s: usize) -> Result<bool> {
    let n = p.dim();
    if !(1 < t && t < n) || !(1 <= s && s < n) {
        return Err(Error::RankOrderViolation(format!(
            "need 1 < t < n and 1 <= s < n, got t = {t}, s = {s}, n = {n}"
        )));
    }
    let tail = p.entries()[n - s..]
        .iter()
        .cloned()
        .fold(S::zero(), |acc, v| acc + v);
    let lower = S::from_ratio((s * (t - 1)) as u64, (t * (n - 1)) as u64);
    let upper = S::from_ratio(s as u64, n as u64);
    Ok(lower < tail && tail < upper)
}
