//! Entangled squeezed states, their two-qubit embedding, and entanglement
//! entropy.
//!
//! The four families are superpositions of `|±ξ⟩|±ξ⟩` products with
//! normalization `N± = 2(1 ± k²)`, where `k = ⟨ξ|−ξ⟩`. Entropy is computed two
//! ways: numerically from the reduced density matrix of the Fock-space state,
//! and from the closed form in `k`.

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Result, SimError};
use crate::fock::{reduced_density, tensor, FockState, TruncationSpec};
use crate::gaussian::{svs_closed_form, svs_overlap, SqueezeParam};
use crate::scalar::{lit, Real};

/// Eigenvalues below this are dropped before the entropy sum.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EssKind {
    /// `|ξ⟩|ξ⟩ + |−ξ⟩|−ξ⟩`
    PhiPlus,
    /// `|ξ⟩|ξ⟩ − |−ξ⟩|−ξ⟩`
    PhiMinus,
    /// `|ξ⟩|−ξ⟩ + |−ξ⟩|ξ⟩`
    PsiPlus,
    /// `|ξ⟩|−ξ⟩ − |−ξ⟩|ξ⟩`
    PsiMinus,
}

impl EssKind {
    pub const ALL: [EssKind; 4] = [EssKind::PhiPlus, EssKind::PhiMinus, EssKind::PsiPlus, EssKind::PsiMinus];

    pub fn is_minus(self) -> bool {
        matches!(self, EssKind::PhiMinus | EssKind::PsiMinus)
    }

    pub fn is_phi(self) -> bool {
        matches!(self, EssKind::PhiPlus | EssKind::PhiMinus)
    }

    pub fn name(self) -> &'static str {
        match self {
            EssKind::PhiPlus => "PhiPlus",
            EssKind::PhiMinus => "PhiMinus",
            EssKind::PsiPlus => "PsiPlus",
            EssKind::PsiMinus => "PsiMinus",
        }
    }

    fn sign<T: Real>(self) -> T {
        if self.is_minus() {
            -T::one()
        } else {
            T::one()
        }
    }
}

/// `N± = 2(1 ± k²)` at squeezing amplitude `r`.
pub fn ess_normalization<T: Real>(kind: EssKind, r: T) -> T {
    let k = svs_overlap(r);
    lit::<T>(2.0) * (T::one() + kind.sign::<T>() * k * k)
}

/// The superposition before dividing by `√N±`.
pub fn ess_unnormalized<T: Real>(kind: EssKind, xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<FockState<T>> {
    let plus = svs_closed_form(xi, trunc)?;
    let minus = svs_closed_form(&xi.neg(), trunc)?;
    let (first, second) = if kind.is_phi() {
        (tensor(&plus, &plus)?, tensor(&minus, &minus)?)
    } else {
        (tensor(&plus, &minus)?, tensor(&minus, &plus)?)
    };
    first.add_scaled(Complex::new(kind.sign(), T::zero()), &second)
}

/// Normalized two-mode entangled squeezed state.
///
/// The minus families vanish identically at `r = 0` and are rejected there.
pub fn build_ess<T: Real>(kind: EssKind, xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<FockState<T>> {
    if kind.is_minus() && xi.r() == T::zero() {
        return Err(SimError::Degenerate(format!("{} vanishes at r = 0", kind.name())));
    }
    ess_unnormalized(kind, xi, trunc)?.normalize()
}

/// Two-qubit form of an entangled squeezed state in the orthonormal basis
/// `|0⟩ = |ξ⟩`, `|1⟩ = (|−ξ⟩ − k|ξ⟩)/M`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitEmbedding<T: Real> {
    pub kind: EssKind,
    /// Overlap `⟨ξ|−ξ⟩`.
    pub k: T,
    /// `√(1 − k²)`.
    pub m: T,
    /// `coeffs[i][j]` multiplies `|i⟩₁|j⟩₂`.
    pub coeffs: [[Complex<T>; 2]; 2],
}

impl<T: Real> QubitEmbedding<T> {
    pub fn norm_squared(&self) -> T {
        self.coeffs.iter().flatten().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.coeffs
            .iter()
            .flatten()
            .zip(other.coeffs.iter().flatten())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    /// Entropy of the first qubit, in bits.
    pub fn entropy(&self) -> T {
        let c = &self.coeffs;
        let rho = DMatrix::from_fn(2, 2, |i, j| c[i][0] * c[j][0].conj() + c[i][1] * c[j][1].conj());
        von_neumann_entropy(rho)
    }
}

/// Coefficients of the embedded state; requires `r > 0` so `|ξ⟩`, `|−ξ⟩` are
/// linearly independent.
pub fn embed_qubit<T: Real>(kind: EssKind, xi: &SqueezeParam<T>) -> Result<QubitEmbedding<T>> {
    if xi.r() <= T::zero() {
        return Err(SimError::Degenerate("qubit basis is degenerate at r = 0".into()));
    }
    let k = svs_overlap(xi.r());
    let m = (T::one() - k * k).sqrt();
    let s = kind.sign::<T>();
    let inv = T::one() / ess_normalization(kind, xi.r()).sqrt();
    let re = |x: T| Complex::new(x * inv, T::zero());
    let coeffs = if kind.is_phi() {
        [[re(T::one() + s * k * k), re(s * k * m)], [re(s * m * k), re(s * m * m)]]
    } else {
        [[re(k + s * k), re(m)], [re(s * m), re(T::zero())]]
    };
    Ok(QubitEmbedding { kind, k, m, coeffs })
}

/// Von Neumann entropy in bits of a density matrix.
pub fn von_neumann_entropy<T: Real>(rho: DMatrix<Complex<T>>) -> T {
    let floor: T = lit(EIGENVALUE_FLOOR);
    SymmetricEigen::new(rho)
        .eigenvalues
        .iter()
        .map(|&l| l.max(T::zero()).min(T::one()))
        .filter(|&l| l >= floor)
        .fold(T::zero(), |acc, l| acc - l * l.log2())
}

/// Entropy (bits) of `kept_mode` for a two-mode pure state.
pub fn entropy_fock<T: Real>(state: &FockState<T>, kept_mode: usize) -> Result<T> {
    if state.num_modes() != 2 {
        return Err(SimError::ShapeMismatch { expected: 2, found: state.num_modes() });
    }
    Ok(von_neumann_entropy(reduced_density(state, &[kept_mode])?))
}

/// Closed-form entropy: exactly 1 for the minus families; for the plus
/// families `−Σ λ log₂ λ` with `λ = (1 ± k)² / (2(1 + k²))`.
pub fn entropy_formula<T: Real>(kind: EssKind, r: T) -> T {
    if kind.is_minus() {
        return T::one();
    }
    let k = svs_overlap(r);
    let denom = lit::<T>(2.0) * (T::one() + k * k);
    [(T::one() + k), (T::one() - k)]
        .iter()
        .map(|&x| x * x / denom)
        .filter(|&l| l > T::zero())
        .fold(T::zero(), |acc, l| acc - l * l.log2())
}

/// `N_η = 1 − sin(2η)·sech²r / (1 + tanh²r)`.
pub fn partial_channel_normalization<T: Real>(eta: T, r: T) -> T {
    let k = svs_overlap(r);
    T::one() - (lit::<T>(2.0) * eta).sin() * k * k
}

/// `(cos η |ξ⟩|−ξ⟩ − sin η |−ξ⟩|ξ⟩)/√N_η` for `0 < η < π/2`.
pub fn build_partial_channel<T: Real>(eta: T, xi: &SqueezeParam<T>, trunc: TruncationSpec) -> Result<FockState<T>> {
    partial_channel_unnormalized(eta, xi, trunc)?.normalize()
}

pub fn partial_channel_unnormalized<T: Real>(
    eta: T,
    xi: &SqueezeParam<T>,
    trunc: TruncationSpec,
) -> Result<FockState<T>> {
    if !(eta > T::zero() && eta < T::frac_pi_2()) {
        return Err(SimError::InvalidParameter(format!("η must lie in (0, π/2), got {eta:?}")));
    }
    let plus = svs_closed_form(xi, trunc)?;
    let minus = svs_closed_form(&xi.neg(), trunc)?;
    let first = tensor(&plus, &minus)?.scaled(Complex::new(eta.cos(), T::zero()));
    first.add_scaled(Complex::new(-eta.sin(), T::zero()), &tensor(&minus, &plus)?)
}
