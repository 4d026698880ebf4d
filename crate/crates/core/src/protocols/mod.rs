//! Measurement-driven protocols: teleportation of a squeezed-vacuum
//! superposition and entanglement concentration, each with its analytic
//! reference values.

mod concentrate;
mod superposition;
mod teleport;

pub use concentrate::{
    concentrate, concentrate_branch_probability, concentrate_measurement_state, concentrate_success_probability,
    entropy_after_concentration,
};
pub use superposition::{build_superposition, superposition_normalization, SuperpositionSpec};
pub use teleport::{
    teleport, teleport_branch_probability, teleport_measurement_state, teleport_success_partial_sum,
    teleport_success_probability,
};

use crate::entanglement::entropy_fock;
use crate::error::Result;
use crate::fock::{fidelity, FockState, MeasurementRecord};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

/// One photon-count outcome of a protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchEntry<T: Real> {
    pub counts: Vec<usize>,
    pub probability: T,
    /// Normalized state left on the unmeasured modes.
    pub conditional_state: FockState<T>,
    /// `|⟨target|conditional⟩|²`.
    pub fidelity_to_target: T,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolReport<T: Real> {
    /// Sorted by count tuple.
    pub branches: Vec<BranchEntry<T>>,
    pub success_probability: T,
    /// Probability-weighted mean fidelity over success branches.
    pub mean_success_fidelity: T,
    /// Largest of the squeezed-vacuum weight lost above the cutoff and the
    /// prepared state's weight on the cutoff layer.
    pub truncation_tail: T,
}

impl<T: Real> ProtocolReport<T> {
    pub fn total_probability(&self) -> T {
        self.branches.iter().fold(T::zero(), |acc, b| acc + b.probability)
    }

    pub fn success_branches(&self) -> impl Iterator<Item = &BranchEntry<T>> {
        self.branches.iter().filter(|b| b.outcome == Outcome::Success)
    }

    pub fn min_success_fidelity(&self) -> Option<T> {
        self.success_branches().map(|b| b.fidelity_to_target).reduce(|a, b| a.min(b))
    }

    pub fn branch(&self, counts: &[usize]) -> Option<&BranchEntry<T>> {
        self.branches.iter().find(|b| b.counts == counts)
    }

    /// Smallest single-mode entropy (bits) among two-mode success states.
    pub fn min_success_entropy(&self) -> Result<Option<T>> {
        let mut worst: Option<T> = None;
        for b in self.success_branches() {
            let e = entropy_fock(&b.conditional_state, 0)?;
            worst = Some(worst.map_or(e, |w| w.min(e)));
        }
        Ok(worst)
    }
}

/// Success means an odd count on every measured mode.
pub fn is_odd_odd(counts: &[usize]) -> bool {
    counts.iter().all(|c| c % 2 == 1)
}

fn assemble_report<T: Real>(
    records: Vec<MeasurementRecord<T>>,
    target: &FockState<T>,
    truncation_tail: T,
) -> Result<ProtocolReport<T>> {
    let mut branches = Vec::with_capacity(records.len());
    for rec in records {
        let conditional_state = rec.residual.expect("protocols always leave unmeasured modes");
        let fidelity_to_target = fidelity(target, &conditional_state)?;
        let outcome = if is_odd_odd(&rec.counts) { Outcome::Success } else { Outcome::Failure };
        branches.push(BranchEntry {
            counts: rec.counts,
            probability: rec.probability,
            conditional_state,
            fidelity_to_target,
            outcome,
        });
    }
    let (success_probability, weighted) = branches
        .iter()
        .filter(|b| b.outcome == Outcome::Success)
        .fold((T::zero(), T::zero()), |(p, w), b| (p + b.probability, w + b.probability * b.fidelity_to_target));
    let mean_success_fidelity =
        if success_probability > T::zero() { weighted / success_probability } else { T::zero() };
    Ok(ProtocolReport { branches, success_probability, mean_success_fidelity, truncation_tail })
}
