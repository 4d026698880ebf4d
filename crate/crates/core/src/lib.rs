//! Truncated Fock-space simulator for teleportation of squeezed-vacuum
//! superpositions and for entanglement concentration with a beam splitter
//! and photon counters.
//!
//! Everything is generic over the real scalar ([`Real`]); the `*64` aliases
//! below are the double-precision instantiations the tolerances are tuned
//! for.

pub mod entanglement;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod protocols;
pub mod scalar;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Result, SimError};
pub use scalar::Real;

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;

pub type FockState64 = fock::FockState<f64>;
pub type ModeOperator64 = fock::ModeOperator<f64>;
pub type MeasurementRecord64 = fock::MeasurementRecord<f64>;
pub type SqueezeParam64 = gaussian::SqueezeParam<f64>;
pub type QubitEmbedding64 = entanglement::QubitEmbedding<f64>;
pub type SuperpositionSpec64 = protocols::SuperpositionSpec<f64>;
pub type BranchEntry64 = protocols::BranchEntry<f64>;
pub type ProtocolReport64 = protocols::ProtocolReport<f64>;

pub type FockState32 = fock::FockState<f32>;
pub type ModeOperator32 = fock::ModeOperator<f32>;
pub type SqueezeParam32 = gaussian::SqueezeParam<f32>;
pub type ProtocolReport32 = protocols::ProtocolReport<f32>;
