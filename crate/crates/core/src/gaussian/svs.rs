//! Closed-form number-basis expansion of the squeezed vacuum.

use nalgebra::{Complex, DVector};

use super::SqueezeParam;
use crate::error::{Result, SimError};
use crate::fock::{FockState, TruncationSpec};
use crate::scalar::{cis, czero, from_usize, to_f64, Real};

/// `k = ⟨ξ|−ξ⟩ = √(sech²r / (1 + tanh²r))`; real and independent of `φ`.
pub fn svs_overlap<T: Real>(r: T) -> T {
    let sech = T::one() / r.cosh();
    let t = r.tanh();
    (sech * sech / (T::one() + t * t)).sqrt()
}

/// Exact probability weight of `|ξ⟩` on photon numbers above `n_max`.
pub fn svs_tail_weight(r: f64, n_max: usize) -> f64 {
    let t2 = r.tanh().powi(2);
    if t2 == 0.0 {
        return 0.0;
    }
    // p_n = |c_{2n}|², p_{n+1} = p_n · tanh²r · (2n+1)/(2n+2)
    let mut p = 1.0 / r.cosh();
    let mut n = 0usize;
    while 2 * n <= n_max {
        p *= t2 * (2 * n + 1) as f64 / (2 * n + 2) as f64;
        n += 1;
        if p == 0.0 {
            return 0.0;
        }
    }
    let mut tail = 0.0;
    loop {
        tail += p;
        p *= t2 * (2 * n + 1) as f64 / (2 * n + 2) as f64;
        n += 1;
        // the remaining terms sum to less than p / (1 − tanh²r)
        if p / (1.0 - t2) <= tail * 1e-17 || p == 0.0 {
            return tail;
        }
    }
}

/// `|ξ⟩ = Ŝ(ξ)|0⟩` from its even-photon expansion
/// `c_{2n} = (−e^{iφ} tanh r)ⁿ √((2n)!) / (2ⁿ n! √cosh r)`, renormalized on
/// the truncated space.
///
/// Fails with [`SimError::TailExceeded`] when the weight lost above the cutoff
/// exceeds the truncation's tail tolerance.
pub fn svs_closed_form<T: Real>(xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<FockState<T>> {
    let tail = svs_tail_weight(to_f64(xi.r()), trunc.n_max());
    if tail > trunc.tail_tolerance() {
        return Err(SimError::TailExceeded { tail, tolerance: trunc.tail_tolerance() });
    }
    let ratio = -cis(xi.phi()).scale(xi.r().tanh());
    let mut amps = DVector::from_element(trunc.local_dim(), czero::<T>());
    let mut c = Complex::new(T::one() / xi.r().cosh().sqrt(), T::zero());
    let mut n = 0usize;
    while 2 * n <= trunc.n_max() {
        amps[2 * n] = c;
        let growth = (from_usize::<T>(2 * n + 1) / from_usize::<T>(2 * n + 2)).sqrt();
        c *= ratio.scale(growth);
        n += 1;
    }
    FockState::from_amplitudes(1, trunc, amps)?.normalize()
}
