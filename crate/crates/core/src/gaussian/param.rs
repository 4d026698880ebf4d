use nalgebra::Complex;

use crate::error::{Result, SimError};
use crate::scalar::{cis, Real};

/// Complex squeezing parameter `ξ = r·e^{iφ}` with `φ` kept in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParam<T: Real> {
    r: T,
    phi: T,
}

impl<T: Real> SqueezeParam<T> {
    pub fn new(r: T, phi: T) -> Result<Self> {
        if !(r.is_finite() && phi.is_finite()) {
            return Err(SimError::InvalidParameter("squeezing parameter must be finite".into()));
        }
        if r < T::zero() {
            return Err(SimError::InvalidParameter(format!("squeezing amplitude must be ≥ 0, got {r:?}")));
        }
        Ok(Self { r, phi: reduce_angle(phi) })
    }

    /// Real squeezing, `φ = 0`.
    pub fn real(r: T) -> Result<Self> {
        Self::new(r, T::zero())
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// `ξ` as a complex number.
    pub fn value(&self) -> Complex<T> {
        cis(self.phi).scale(self.r)
    }

    /// `−ξ`: same amplitude, angle shifted by `π`.
    pub fn neg(&self) -> Self {
        let pi = T::pi();
        let phi = if self.phi > T::zero() { self.phi - pi } else { self.phi + pi };
        Self { r: self.r, phi }
    }

    /// Same amplitude, angle advanced by `delta`.
    pub fn rotated(&self, delta: T) -> Self {
        Self { r: self.r, phi: reduce_angle(self.phi + delta) }
    }
}

fn reduce_angle<T: Real>(phi: T) -> T {
    let two_pi = T::two_pi();
    phi - two_pi * ((phi - T::pi()) / two_pi).ceil()
}
