//! Checker for catalytic conversion of a mixed state given as an ensemble
//! of pure branches.
//!
//! The protocol attaches an ancilla that records the branch index, runs the
//! branch-specific catalytic LOCC conversion `ψ_i ⊗ χ → φ ⊗ χ` conditioned
//! on it, and finally discards ancilla and catalyst. Everything hinges on
//! each branch conversion existing, so the checker verifies exactly that at
//! the Schmidt-vector level and narrates the rest. Any catalyst dimension is
//! accepted.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::search::{oracle_catalyzes, oracle_violation};
use crate::serde_support::{option_scalar_report, scalar_list};
use crate::vectors::SchmidtVector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Branch<S: Scalar> {
    #[serde(with = "crate::serde_support::exact")]
    pub weight: S,
    pub schmidt: SchmidtVector<S>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct EnsembleSpec<S: Scalar> {
    pub branches: Vec<Branch<S>>,
    pub target: SchmidtVector<S>,
    pub catalyst: SchmidtVector<S>,
}

impl<S: Scalar> EnsembleSpec<S> {
    /// Positive weights summing to one, every branch in the target's dimension.
    pub fn validate(&self) -> Result<()> {
        if self.branches.is_empty() {
            return Err(Error::Parse("ensemble has no branches".into()));
        }
        let mut sum = S::zero();
        for (i, b) in self.branches.iter().enumerate() {
            if b.weight <= S::zero() {
                return Err(Error::InvalidWeight { index: i + 1 });
            }
            sum = sum + b.weight.clone();
            if b.schmidt.dim() != self.target.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.target.dim(),
                    got: b.schmidt.dim(),
                });
            }
        }
        let off = if sum > S::one() {
            sum.clone() - S::one()
        } else {
            S::one() - sum.clone()
        };
        if off > S::sum_tolerance() {
            return Err(Error::WeightSumNotOne { sum: sum.render() });
        }
        Ok(())
    }

    pub fn ancilla_dimension(&self) -> usize {
        self.branches.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct BranchReport<S: Scalar> {
    /// 1-based branch index, also the ancilla basis label.
    pub branch: usize,
    pub catalyzes: bool,
    /// First prefix of the sorted products where the branch exceeds the target.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated_prefix: Option<usize>,
    #[serde(serialize_with = "option_scalar_report", skip_serializing_if = "Option::is_none")]
    pub excess: Option<S>,
}

/// Joint output before the ancilla and catalyst are discarded.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct FinalState<S: Scalar> {
    pub target: SchmidtVector<S>,
    pub catalyst: SchmidtVector<S>,
    /// Classical mixture over ancilla labels `1..=m`, equal to the input weights.
    #[serde(serialize_with = "scalar_list")]
    pub ancilla_weights: Vec<S>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct FeasibilityReport<S: Scalar> {
    pub branches: Vec<BranchReport<S>>,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_state: Option<FinalState<S>>,
}

impl<S: Scalar> FeasibilityReport<S> {
    pub fn failed_branches(&self) -> Vec<usize> {
        self.branches
            .iter()
            .filter(|b| !b.catalyzes)
            .map(|b| b.branch)
            .collect()
    }
}

/// Checks every branch conversion `schmidt_i ⊗ catalyst ≺ target ⊗ catalyst`.
pub fn protocol_feasible<S: Scalar>(e: &EnsembleSpec<S>) -> Result<FeasibilityReport<S>> {
    e.validate()?;
    let branches: Vec<BranchReport<S>> = e
        .branches
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let violation = oracle_violation(&b.schmidt, &e.target, &e.catalyst);
            BranchReport {
                branch: i + 1,
                catalyzes: violation.is_none(),
                violated_prefix: violation.as_ref().map(|v| v.0),
                excess: violation.map(|v| v.1),
            }
        })
        .collect();
    let feasible = branches.iter().all(|b| b.catalyzes);
    let final_state = feasible.then(|| final_state(e));
    Ok(FeasibilityReport {
        branches,
        feasible,
        final_state,
    })
}

fn final_state<S: Scalar>(e: &EnsembleSpec<S>) -> FinalState<S> {
    FinalState {
        target: e.target.clone(),
        catalyst: e.catalyst.clone(),
        ancilla_weights: e.branches.iter().map(|b| b.weight.clone()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case", bound = "")]
pub enum TraceStep<S: Scalar> {
    /// Ancilla `|i⟩` attached to branch `i`; the state is the labelled mixture.
    PrepareAncilla {
        ancilla_dimension: usize,
        branches: Vec<Branch<S>>,
        catalyst: SchmidtVector<S>,
    },
    /// Conditioned on ancilla label `branch`, the catalytic LOCC map turns the
    /// branch into the target with the catalyst returned intact.
    Convert {
        branch: usize,
        #[serde(with = "crate::serde_support::exact")]
        weight: S,
        from: SchmidtVector<S>,
        to: SchmidtVector<S>,
    },
    /// Every branch now holds `target ⊗ catalyst`; the ancilla keeps the weights.
    Joint(FinalState<S>),
    /// Ancilla and catalyst traced out.
    Output { state: SchmidtVector<S> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct ProtocolTrace<S: Scalar> {
    pub steps: Vec<TraceStep<S>>,
}

impl<S: Scalar> ProtocolTrace<S> {
    pub fn conversions(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, TraceStep::Convert { .. }))
            .count()
    }
}

/// Step-by-step record of the protocol; fails unless every branch converts.
pub fn protocol_trace<S: Scalar>(e: &EnsembleSpec<S>) -> Result<ProtocolTrace<S>> {
    let report = protocol_feasible(e)?;
    if !report.feasible {
        return Err(Error::ProtocolInfeasible {
            failed: report.failed_branches(),
        });
    }
    let mut steps = vec![TraceStep::PrepareAncilla {
        ancilla_dimension: e.ancilla_dimension(),
        branches: e.branches.clone(),
        catalyst: e.catalyst.clone(),
    }];
    for (i, b) in e.branches.iter().enumerate() {
        debug_assert!(oracle_catalyzes(&b.schmidt, &e.target, &e.catalyst));
        steps.push(TraceStep::Convert {
            branch: i + 1,
            weight: b.weight.clone(),
            from: b.schmidt.clone(),
            to: e.target.clone(),
        });
    }
    steps.push(TraceStep::Joint(final_state(e)));
    steps.push(TraceStep::Output {
        state: e.target.clone(),
    });
    Ok(ProtocolTrace { steps })
}
