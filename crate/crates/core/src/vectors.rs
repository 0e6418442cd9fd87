//! Schmidt probability vectors and their core algebra.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{approximate_f64, Rational, Scalar};

/// Nonincreasing, nonnegative vector summing to one. Zero padding is kept.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtVector<S> {
    entries: Vec<S>,
}

/// Prefix sums of a Schmidt vector; nondecreasing and ending at one.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulativeProfile<S> {
    pub prefix_sums: Vec<S>,
}

pub(crate) fn sort_desc<S: Scalar>(values: &mut [S]) {
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
}

impl<S: Scalar> SchmidtVector<S> {
    /// Validates and sorts arbitrary nonnegative values that sum to one.
    pub fn from_unsorted(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, v) in values.iter().enumerate() {
            if v.partial_cmp(&S::zero()).is_none() {
                return Err(Error::Parse(format!("entry {index} is not a number")));
            }
            if v.is_negative_value() {
                return Err(Error::NegativeEntry {
                    index,
                    value: v.render(),
                });
            }
        }
        let sum = values.iter().cloned().fold(S::zero(), |acc, v| acc + v);
        let deficit = S::one() - sum.clone();
        let off = if deficit < S::zero() {
            S::zero() - deficit.clone()
        } else {
            deficit.clone()
        };
        if off > S::sum_tolerance() {
            return Err(Error::SumNotOne {
                sum: sum.render(),
                deficit: deficit.render(),
            });
        }
        let mut entries = values;
        sort_desc(&mut entries);
        Ok(Self { entries })
    }

    /// Parses literals (`0.35`, `7/20`) then validates.
    pub fn parse<T: AsRef<str>>(literals: &[T]) -> Result<Self> {
        let values = literals
            .iter()
            .map(|t| S::parse_literal(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_unsorted(values)
    }

    /// Parses a comma separated list such as `0.4,0.35,0.15,0.1`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        Self::parse(&parts)
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<S>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] >= w[1]));
        Self { entries }
    }

    /// `(1/n, ..., 1/n)`.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform vector needs a positive dimension");
        Self {
            entries: vec![S::from_ratio(1, n as u64); n],
        }
    }

    /// Uniform over the first `rank` entries, zero padded to `dim`.
    pub fn uniform_padded(rank: usize, dim: usize) -> Self {
        assert!(rank > 0 && rank <= dim);
        let mut entries = vec![S::from_ratio(1, rank as u64); rank];
        entries.resize(dim, S::zero());
        Self { entries }
    }

    /// `(1, 0, ..., 0)`.
    pub fn product_state(dim: usize) -> Self {
        assert!(dim > 0);
        let mut entries = vec![S::zero(); dim];
        entries[0] = S::one();
        Self { entries }
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Number of nonzero entries.
    pub fn schmidt_rank(&self) -> usize {
        self.entries.iter().take_while(|v| !v.is_zero()).count()
    }

    /// 1-based accessor matching the usual `x_i` notation; zero beyond `dim`.
    pub fn at(&self, i: usize) -> S {
        debug_assert!(i >= 1);
        self.entries.get(i - 1).cloned().unwrap_or_else(S::zero)
    }

    /// Zero padded copy of length `dim` (no-op if already that long or longer).
    pub fn padded(&self, dim: usize) -> Self {
        let mut entries = self.entries.clone();
        if entries.len() < dim {
            entries.resize(dim, S::zero());
        }
        Self { entries }
    }

    /// All pairwise products, sorted nonincreasing.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for x in &self.entries {
            for y in &other.entries {
                entries.push(x.clone() * y.clone());
            }
        }
        sort_desc(&mut entries);
        Self { entries }
    }

    pub fn cumulative(&self) -> CumulativeProfile<S> {
        CumulativeProfile {
            prefix_sums: prefix_sums(&self.entries),
        }
    }

    /// Sum of the first `l` entries.
    pub fn prefix(&self, l: usize) -> S {
        self.entries
            .iter()
            .take(l)
            .cloned()
            .fold(S::zero(), |acc, v| acc + v)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Scalar::to_f64).collect()
    }

    pub fn render(&self) -> Vec<String> {
        self.entries.iter().map(Scalar::render).collect()
    }

    /// Lexicographic order on entries, used to order search results.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.partial_cmp(b) {
                Some(Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }
}

pub(crate) fn prefix_sums<S: Scalar>(values: &[S]) -> Vec<S> {
    let mut acc = S::zero();
    values
        .iter()
        .map(|v| {
            acc = acc.clone() + v.clone();
            acc.clone()
        })
        .collect()
}

/// `weaker ≺ stronger`: every prefix sum of `weaker` is at most the
/// corresponding prefix sum of `stronger`, after zero padding.
pub fn majorizes<S: Scalar>(weaker: &SchmidtVector<S>, stronger: &SchmidtVector<S>) -> bool {
    first_majorization_violation(weaker, stronger).is_none()
}

/// First prefix length `l` (1-based) at which `weaker` exceeds `stronger`,
/// together with the excess.
pub fn first_majorization_violation<S: Scalar>(
    weaker: &SchmidtVector<S>,
    stronger: &SchmidtVector<S>,
) -> Option<(usize, S)> {
    let n = weaker.dim().max(stronger.dim());
    let tol = S::sum_tolerance();
    let (mut sw, mut ss) = (S::zero(), S::zero());
    for i in 0..n {
        if let Some(v) = weaker.entries.get(i) {
            sw = sw + v.clone();
        }
        if let Some(v) = stronger.entries.get(i) {
            ss = ss + v.clone();
        }
        if sw > ss.clone() + tol.clone() {
            return Some((i + 1, sw - ss));
        }
    }
    None
}

/// Result of quantizing floating point data onto exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Quantized {
    pub vector: SchmidtVector<Rational>,
    /// Amount added to the largest entry to restore an exact unit sum.
    pub adjustment: Rational,
}

/// Quantizes floats to rationals with denominators at most `max_den`, then
/// shifts the largest entry so the entries sum to exactly one.
pub fn quantize(values: &[f64], max_den: u64) -> Result<Quantized> {
    if values.is_empty() {
        return Err(Error::EmptyVector);
    }
    let mut entries = Vec::with_capacity(values.len());
    for (index, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::Parse(format!("entry {index} is not finite")));
        }
        if v < 0.0 {
            return Err(Error::NegativeEntry {
                index,
                value: v.to_string(),
            });
        }
        entries.push(approximate_f64(v, max_den)?);
    }
    sort_desc(&mut entries);
    let sum = entries.iter().fold(Rational::zero(), |acc, v| acc + v);
    let adjustment = Rational::one() - sum;
    entries[0] += &adjustment;
    if entries[0] < Rational::zero() {
        return Err(Error::SumNotOne {
            sum: (Rational::one() - &adjustment).render(),
            deficit: adjustment.render(),
        });
    }
    sort_desc(&mut entries);
    Ok(Quantized {
        vector: SchmidtVector { entries },
        adjustment,
    })
}
