//! Truncated multi-mode Fock spaces: states, operators, measurement.

pub mod basis;
pub mod measure;
pub mod operator;
pub mod state;

pub use basis::{decode, encode, TruncationSpec};
pub use measure::{measure_photons, measure_photons_with_floor, reduced_density, MeasurementRecord};
pub use operator::{annihilation, Block, ModeOperator};
pub use state::{fidelity, inner, tensor, tensor_all, vacuum, FockState};
