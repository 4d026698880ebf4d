//! Entanglement concentration from two copies of a partially entangled
//! channel.
//!
//! Modes 0..4 are the channel pairs (0, 1) and (2, 3); mode 0 is at the
//! receiver. Modes 1 and 2 go through the beam splitter and are counted;
//! odd-odd outcomes leave modes 0 and 3 in `Φ₋`.

use super::{assemble_report, ProtocolReport};
use crate::entanglement::{
    build_ess, build_partial_channel, ess_normalization, partial_channel_normalization, EssKind,
};
use crate::error::{Result, SimError};
use crate::fock::{measure_photons, tensor, FockState, TruncationSpec};
use crate::gaussian::{beam_splitter_op, svs_tail_weight, SqueezeParam};
use crate::scalar::{lit, to_f64, Real};

fn check_inputs<T: Real>(eta: T, xi: &SqueezeParam<T>) -> Result<()> {
    if !(eta > T::zero() && eta < T::frac_pi_2()) {
        return Err(SimError::InvalidParameter(format!("η must lie in (0, π/2), got {eta:?}")));
    }
    if xi.r() <= T::zero() {
        return Err(SimError::Degenerate("concentration needs r > 0".into()));
    }
    Ok(())
}

/// Four-mode state right before the photon counting.
pub fn concentrate_measurement_state<T: Real>(
    eta: T,
    xi: &SqueezeParam<T>,
    trunc: TruncationSpec,
) -> Result<FockState<T>> {
    check_inputs(eta, xi)?;
    let channel = build_partial_channel(eta, xi, trunc)?;
    let prepared = tensor(&channel, &channel)?;
    beam_splitter_op(trunc).apply_on_modes(&prepared, &[1, 2])
}

pub fn concentrate<T: Real>(eta: T, xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<ProtocolReport<T>> {
    check_inputs(eta, xi)?;
    let channel = build_partial_channel(eta, xi, trunc)?;
    let prepared = tensor(&channel, &channel)?;
    let tail = lit::<T>(svs_tail_weight(to_f64(xi.r()), trunc.n_max())).max(prepared.tail_weight());
    let mixed = beam_splitter_op(trunc).apply_on_modes(&prepared, &[1, 2])?;
    let records = measure_photons(&mixed, &[1, 2])?;
    let target = build_ess(EssKind::PhiMinus, xi, trunc)?;
    assemble_report(records, &target, tail)
}

/// Smallest entropy (bits) among the post-selected two-mode states.
pub fn entropy_after_concentration<T: Real>(eta: T, xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<T> {
    concentrate(eta, xi, trunc)?
        .min_success_entropy()?
        .ok_or_else(|| SimError::Degenerate("no success branch above the probability floor".into()))
}

/// `N₋ sin²(2η) sech²r tanh^{2·count} r / (4 N_η²)` for an odd `count` in
/// both measured modes.
pub fn concentrate_branch_probability<T: Real>(count: usize, eta: T, r: T) -> T {
    let n_eta = partial_channel_normalization(eta, r);
    let s2 = (lit::<T>(2.0) * eta).sin();
    let sech = T::one() / r.cosh();
    ess_normalization(EssKind::PhiMinus, r) * s2 * s2 * sech * sech * r.tanh().powi(2 * count as i32)
        / (lit::<T>(4.0) * n_eta * n_eta)
}

/// `(1/4) sin²(2η) N₋ tanh²r / (N_η² (1 + tanh²r))`.
pub fn concentrate_success_probability<T: Real>(eta: T, r: T) -> T {
    let n_eta = partial_channel_normalization(eta, r);
    let s2 = (lit::<T>(2.0) * eta).sin();
    let t2 = r.tanh() * r.tanh();
    lit::<T>(0.25) * s2 * s2 * ess_normalization(EssKind::PhiMinus, r) * t2 / (n_eta * n_eta * (T::one() + t2))
}
