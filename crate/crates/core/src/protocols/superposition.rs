use nalgebra::Complex;

use crate::error::{Result, SimError};
use crate::fock::{FockState, TruncationSpec};
use crate::gaussian::{svs_closed_form, svs_overlap, SqueezeParam};
use crate::scalar::{lit, Real};

/// Unnormalized norm² below which a superposition is rejected.
pub const DEGENERATE_NORM_SQUARED: f64 = 1e-12;

/// `C₊|ξ⟩ + C₋|−ξ⟩`, the state to be teleported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionSpec<T: Real> {
    pub c_plus: Complex<T>,
    pub c_minus: Complex<T>,
    pub xi: SqueezeParam<T>,
}

impl<T: Real> SuperpositionSpec<T> {
    pub fn new(c_plus: Complex<T>, c_minus: Complex<T>, xi: SqueezeParam<T>) -> Result<Self> {
        if c_plus.norm_sqr() == T::zero() && c_minus.norm_sqr() == T::zero() {
            return Err(SimError::InvalidParameter("C₊ and C₋ cannot both vanish".into()));
        }
        Ok(Self { c_plus, c_minus, xi })
    }
}

/// `N_Ψ = |C₊|² + |C₋|² + 2k·Re(C₊C₋*)`.
pub fn superposition_normalization<T: Real>(spec: &SuperpositionSpec<T>) -> T {
    let k = svs_overlap(spec.xi.r());
    spec.c_plus.norm_sqr() + spec.c_minus.norm_sqr() + lit::<T>(2.0) * k * (spec.c_plus * spec.c_minus.conj()).re
}

/// Normalized `(C₊|ξ⟩ + C₋|−ξ⟩)/√N_Ψ`.
pub fn build_superposition<T: Real>(spec: &SuperpositionSpec<T>, trunc: TruncationSpec) -> Result<FockState<T>> {
    let raw = svs_closed_form(&spec.xi, trunc)?
        .scaled(spec.c_plus)
        .add_scaled(spec.c_minus, &svs_closed_form(&spec.xi.neg(), trunc)?)?;
    if raw.norm_squared() < lit(DEGENERATE_NORM_SQUARED) {
        return Err(SimError::Degenerate("superposition vanishes (C₋ ≈ −C₊ with k ≈ 1)".into()));
    }
    raw.normalize()
}
