//! Squeezing and beam-splitter unitaries, plus the closed-form squeezed
//! vacuum used as their oracle.

mod cases;
mod expm;
mod ops;
mod param;
mod svs;

pub use cases::{verify_case1, verify_case2};
pub use expm::exp_i_hermitian;
pub use ops::{beam_splitter_op, squeeze_op, two_mode_squeeze_op};
pub use param::SqueezeParam;
pub use svs::{svs_closed_form, svs_overlap, svs_tail_weight};
