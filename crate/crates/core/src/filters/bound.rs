use serde::Serialize;

use crate::error::Result;
use crate::scalar::{Quotient, Scalar};
use crate::serde_support::{quotient_report, scalar_report};
use crate::vectors::SchmidtVector;

use super::CatalysisPair;

/// Exponents above this are settled in floating point, rounded down.
const EXACT_POWER_LIMIT: usize = 4096;

/// Scalars built from the pair alone, and the catalyst-dimension lower bound
/// they imply.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct BoundParams<S: Scalar> {
    /// `max(q_1/q_{m_L}, q_{M_L+1}/q_d)`; infinite when `q_d = 0`.
    #[serde(serialize_with = "quotient_report")]
    pub a: Quotient<S>,
    /// `max_{l ∈ L} q_l/q_{l+1}`.
    #[serde(serialize_with = "scalar_report")]
    pub b: S,
    /// `max_{l ∈ L} min(p_l/p_{l+1}, q_l/q_{l+1})`.
    #[serde(serialize_with = "scalar_report")]
    pub c: S,
    /// Smallest `k` with `k > ln(c)/ln(a√b) + 1`. `None` when `a²b = 1`:
    /// then `r_1/r_2 < q_1/q_{m_L} = 1` is unsatisfiable and no catalyst of
    /// any dimension exists.
    pub k_lower: Option<usize>,
}

impl<S: Scalar> BoundParams<S> {
    /// `r_s/r_{s+1} < a√b` for every `s`, compared as `r_s² < a²b·r_{s+1}²`.
    pub fn adjacent_ratios_within(&self, r: &SchmidtVector<S>) -> bool {
        let Some(a) = self.a.finite() else {
            return true;
        };
        let a2b = a.clone() * a.clone() * self.b.clone();
        r.entries().windows(2).all(|w| {
            let (hi, lo) = (w[0].clone(), w[1].clone());
            hi.clone() * hi < a2b.clone() * lo.clone() * lo
        })
    }
}

impl<S: Scalar> CatalysisPair<S> {
    pub fn bound_params(&self) -> BoundParams<S> {
        let d = self.d();
        let (p, q) = (self.p(), self.q());
        let a = Quotient::of(&q.at(1), &q.at(self.m_low()))
            .max_ext(Quotient::of(&q.at(self.m_high() + 1), &q.at(d)));

        let mut b: Option<S> = None;
        let mut c: Option<S> = None;
        for &l in self.l_elems() {
            // q_{l+1} > 0 for l ∈ L, since the prefix of q at l is below one
            let q_ratio = q.at(l) / q.at(l + 1);
            if b.as_ref().is_none_or(|x| q_ratio > *x) {
                b = Some(q_ratio.clone());
            }
            let p_ratio = Quotient::of(&p.at(l), &p.at(l + 1)).indeterminate_as_infinite();
            let local = match p_ratio.finite() {
                Some(pr) if *pr < q_ratio => pr.clone(),
                _ => q_ratio,
            };
            if c.as_ref().is_none_or(|x| local > *x) {
                c = Some(local);
            }
        }
        let (b, c) = (b.expect("L nonempty"), c.expect("L nonempty"));
        let k_lower = lower_dimension(&a, &b, &c);
        BoundParams { a, b, c, k_lower }
    }

    /// Open interval of `r_1/r_2` left by the two-dimensional necessary
    /// conditions, `(max(1, c), min(q_1/q_{m_L}, q_{M_L+1}/q_d))`, or `None`
    /// when it is empty.
    pub fn two_dim_interval(&self) -> Option<RatioInterval<S>> {
        let params = self.bound_params();
        let q = self.q();
        let lower = if params.c > S::one() { params.c } else { S::one() };
        let upper = Quotient::of(&q.at(1), &q.at(self.m_low()))
            .min_ext(Quotient::of(&q.at(self.m_high() + 1), &q.at(self.d())));
        let nonempty = match &upper {
            Quotient::Finite(u) => lower < *u,
            Quotient::Infinite => true,
            Quotient::Indeterminate => false,
        };
        nonempty.then_some(RatioInterval { lower, upper })
    }
}

pub(super) fn lower_dimension<S: Scalar>(a: &Quotient<S>, b: &S, c: &S) -> Option<usize> {
    let a = match a {
        Quotient::Finite(a) => a,
        // a√b = inf: the bound reads k > 1
        _ => return Some(2),
    };
    let base = a.clone() * a.clone() * b.clone();
    if base <= S::one() {
        return None;
    }
    let target = c.clone() * c.clone();
    // k > ln(c)/ln(a√b) + 1  <=>  (a²b)^(k-1) > c²
    let exceeds = |k: usize| num_traits::pow(base.clone(), k - 1) > target;
    let estimate = target.to_f64().ln() / base.to_f64().ln() + 1.0;
    if estimate.is_finite() && estimate > EXACT_POWER_LIMIT as f64 {
        // float fallback, rounded down so the bound never overshoots
        return Some(((estimate * (1.0 - 1e-9)).floor() as usize).max(2));
    }
    let mut k = if estimate.is_finite() {
        (estimate.floor() as usize).clamp(2, EXACT_POWER_LIMIT)
    } else {
        2
    };
    while k > 2 && exceeds(k - 1) {
        k -= 1;
    }
    while !exceeds(k) {
        k += 1;
    }
    Some(k)
}

/// Open interval `(lower, upper)` of ratios.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct RatioInterval<S: Scalar> {
    #[serde(serialize_with = "scalar_report")]
    pub lower: S,
    #[serde(serialize_with = "quotient_report")]
    pub upper: Quotient<S>,
}

impl<S: Scalar> RatioInterval<S> {
    pub fn contains(&self, x: &S) -> bool {
        *x > self.lower
            && match &self.upper {
                Quotient::Finite(u) => x < u,
                Quotient::Infinite => true,
                Quotient::Indeterminate => false,
            }
    }
}

/// Dimension lower bound for catalysts of a solvable incomparable pair.
pub fn dimension_bound<S: Scalar>(p: &SchmidtVector<S>, q: &SchmidtVector<S>) -> Result<BoundParams<S>> {
    Ok(CatalysisPair::new(p, q)?.bound_params())
}

/// Surviving interval of `r_1/r_2` for two-dimensional catalysts.
pub fn two_dim_feasible_interval<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
) -> Result<Option<RatioInterval<S>>> {
    Ok(CatalysisPair::new(p, q)?.two_dim_interval())
}
