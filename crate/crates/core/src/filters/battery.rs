use serde::Serialize;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::vectors::SchmidtVector;

use super::{CatalysisPair, FilterId, FilterVerdict, DEFAULT_T2_CAP};

/// Order in which the battery runs its members.
pub const BATTERY_ORDER: [FilterId; 6] = [
    FilterId::T1Ratio,
    FilterId::Rem2Head,
    FilterId::Cor3Dual,
    FilterId::Prop1Edge,
    FilterId::Prop1Triple,
    FilterId::T2Sequence,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BatteryConfig {
    /// Stop at the first rejecting filter.
    pub short_circuit: bool,
    pub t2_cap: usize,
    /// Also range over subsets of `L` in the sequence family.
    pub t2_subsets: bool,
    /// Evaluate the earlier published baseline alongside (never combined).
    pub include_baseline: bool,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            short_circuit: false,
            t2_cap: DEFAULT_T2_CAP,
            t2_subsets: true,
            include_baseline: true,
        }
    }
}

impl BatteryConfig {
    /// Settings for pruning inside a search loop.
    pub fn pruning() -> Self {
        Self {
            short_circuit: true,
            include_baseline: false,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct BatteryReport<S: Scalar> {
    pub accepted: bool,
    pub first_rejection: Option<FilterId>,
    pub verdicts: Vec<FilterVerdict<S>>,
    /// Baseline verdict, reported apart from the battery outcome.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<FilterVerdict<S>>,
}

impl<S: Scalar> CatalysisPair<S> {
    pub fn run_filter(&self, id: FilterId, r: &SchmidtVector<S>, config: &BatteryConfig) -> Result<FilterVerdict<S>> {
        match id {
            FilterId::T1Ratio => self.t1(r),
            FilterId::T2Sequence => self.t2(r, config.t2_subsets, config.t2_cap),
            FilterId::Cor1TwoLevel => self.cor1_all(r),
            FilterId::Prop1Triple => self.prop1_triple(r),
            FilterId::Prop1Edge => self.prop1_edge(r),
            FilterId::Cor3Dual => self.cor3(r),
            FilterId::Rem2Head => self.rem2(r),
            FilterId::Pra99Baseline => self.pra99(r),
        }
    }

    pub fn battery(&self, r: &SchmidtVector<S>, config: &BatteryConfig) -> Result<BatteryReport<S>> {
        let mut verdicts = Vec::with_capacity(BATTERY_ORDER.len());
        let mut first_rejection = None;
        for id in BATTERY_ORDER {
            let v = self.run_filter(id, r, config)?;
            let rejected = !v.accepted;
            verdicts.push(v);
            if rejected && first_rejection.is_none() {
                first_rejection = Some(id);
                if config.short_circuit {
                    break;
                }
            }
        }
        let baseline = if config.include_baseline {
            Some(self.pra99(r)?)
        } else {
            None
        };
        Ok(BatteryReport {
            accepted: first_rejection.is_none(),
            first_rejection,
            verdicts,
            baseline,
        })
    }

    /// First filter (in battery order) that rejects `r`, if any.
    pub fn first_rejecting(&self, r: &SchmidtVector<S>, config: &BatteryConfig) -> Result<Option<FilterId>> {
        for id in BATTERY_ORDER {
            if !self.run_filter(id, r, config)?.accepted {
                return Ok(Some(id));
            }
        }
        Ok(None)
    }
}

/// Runs the battery on `(p, q, r)`.
pub fn run_battery<S: Scalar>(
    p: &SchmidtVector<S>,
    q: &SchmidtVector<S>,
    r: &SchmidtVector<S>,
    config: &BatteryConfig,
) -> Result<BatteryReport<S>> {
    CatalysisPair::new(p, q)?.battery(r, config)
}
