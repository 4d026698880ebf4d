//! Beam-splitter action on pairs of squeezed vacua.

use super::{beam_splitter_op, svs_closed_form, two_mode_squeeze_op, SqueezeParam};
use crate::error::Result;
use crate::fock::{fidelity, tensor, vacuum, TruncationSpec};
use crate::scalar::Real;

/// Equal squeezing on both inputs: the output should be the two-mode squeezed
/// vacuum with parameter `r·e^{i(φ+π/2)}`. Returns the fidelity between the two.
pub fn verify_case1<T: Real>(xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<T> {
    let single = svs_closed_form(xi, trunc)?;
    let output = beam_splitter_op(trunc).apply(&tensor(&single, &single)?)?;
    let target = two_mode_squeeze_op(&xi.rotated(T::frac_pi_2()), trunc).apply(&vacuum(2, trunc))?;
    fidelity(&output, &target)
}

/// Opposite squeezing angles: the output should be the product
/// `|ξ⟩ ⊗ |−ξ⟩`, with `ξ` on the first output port. Swapping the ports
/// only relabels the modes.
pub fn verify_case2<T: Real>(xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<T> {
    let first = svs_closed_form(xi, trunc)?;
    let second = svs_closed_form(&xi.neg(), trunc)?;
    let input = tensor(&first, &second)?;
    let output = beam_splitter_op(trunc).apply(&input)?;
    fidelity(&output, &input)
}
