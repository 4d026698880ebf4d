//! Squeezing and beam-splitter unitaries on the truncated space.
//!
//! Each builder writes its generator as `iH` with `H` Hermitian and
//! exponentiates `H` sector by sector:
//! single-mode squeeze conserves photon parity, the beam splitter conserves
//! total photon number, two-mode squeezing conserves `n₀ − n₁`.

use nalgebra::Complex;

use super::expm::{sector_unitary, Coupling};
use super::SqueezeParam;
use crate::fock::{encode, ModeOperator, TruncationSpec};
use crate::scalar::{from_usize, lit, Real};

/// `Ŝ(ξ) = exp(−(ξ/2)â†² + (ξ*/2)â²)`.
pub fn squeeze_op<T: Real>(xi: &SqueezeParam<T>, trunc: TruncationSpec) -> ModeOperator<T> {
    // H = −iG:  H[n+2, n] = (iξ/2)·√((n+1)(n+2))
    let half_i_xi = Complex::new(T::zero(), lit(0.5)) * xi.value();
    let couplings: Vec<_> = (0..trunc.local_dim().saturating_sub(2))
        .map(|n| Coupling { row: n + 2, col: n, value: half_i_xi.scale(from_usize::<T>((n + 1) * (n + 2)).sqrt()) })
        .collect();
    sector_unitary(1, trunc, |c| (c[0] % 2) as i64, &couplings).expect("parity sectors partition the space")
}

/// 50/50 beam splitter `exp[i(π/4)(â₁†â₂ + â₂†â₁)]`.
pub fn beam_splitter_op<T: Real>(trunc: TruncationSpec) -> ModeOperator<T> {
    let d = trunc.local_dim();
    let quarter_pi = T::frac_pi_4();
    let mut couplings = Vec::new();
    // â₁†â₂ |k, l⟩ = √((k+1) l) |k+1, l−1⟩
    for k in 0..d - 1 {
        for l in 1..d {
            couplings.push(Coupling {
                row: encode(&[k + 1, l - 1], d),
                col: encode(&[k, l], d),
                value: Complex::new(quarter_pi * from_usize::<T>((k + 1) * l).sqrt(), T::zero()),
            });
        }
    }
    sector_unitary(2, trunc, |c| (c[0] + c[1]) as i64, &couplings).expect("number sectors partition the space")
}

/// `exp(−ξ Â₀†Â₁† + ξ* Â₀Â₁)`.
pub fn two_mode_squeeze_op<T: Real>(xi: &SqueezeParam<T>, trunc: TruncationSpec) -> ModeOperator<T> {
    let d = trunc.local_dim();
    // H = −iG:  H[(n+1, m+1), (n, m)] = iξ·√((n+1)(m+1))
    let i_xi = Complex::new(T::zero(), T::one()) * xi.value();
    let mut couplings = Vec::new();
    for n in 0..d - 1 {
        for m in 0..d - 1 {
            couplings.push(Coupling {
                row: encode(&[n + 1, m + 1], d),
                col: encode(&[n, m], d),
                value: i_xi.scale(from_usize::<T>((n + 1) * (m + 1)).sqrt()),
            });
        }
    }
    sector_unitary(2, trunc, |c| c[0] as i64 - c[1] as i64, &couplings).expect("difference sectors partition the space")
}
