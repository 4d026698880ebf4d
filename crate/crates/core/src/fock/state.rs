use nalgebra::{Complex, DVector};

use super::basis::{self, TruncationSpec};
use crate::error::{Result, SimError};
use crate::scalar::{cone, czero, Real};

/// Pure state of `num_modes` bosonic modes in a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState<T: Real> {
    num_modes: usize,
    trunc: TruncationSpec,
    amplitudes: DVector<Complex<T>>,
}

impl<T: Real> FockState<T> {
    /// Wraps raw amplitudes; the vector is taken as-is (not normalized).
    pub fn from_amplitudes(num_modes: usize, trunc: TruncationSpec, amplitudes: DVector<Complex<T>>) -> Result<Self> {
        if num_modes == 0 {
            return Err(SimError::InvalidModes("a state needs at least one mode".into()));
        }
        let dim = trunc.dim(num_modes);
        if amplitudes.len() != dim {
            return Err(SimError::InvalidParameter(format!(
                "amplitude vector has length {}, expected {dim}",
                amplitudes.len()
            )));
        }
        Ok(Self { num_modes, trunc, amplitudes })
    }

    pub fn zeros(num_modes: usize, trunc: TruncationSpec) -> Self {
        let dim = trunc.dim(num_modes);
        Self { num_modes, trunc, amplitudes: DVector::from_element(dim, czero()) }
    }

    /// Number state `|n₀, n₁, …⟩`.
    pub fn basis(trunc: TruncationSpec, counts: &[usize]) -> Result<Self> {
        if let Some(&n) = counts.iter().find(|&&n| n > trunc.n_max()) {
            return Err(SimError::InvalidParameter(format!("photon number {n} above cutoff {}", trunc.n_max())));
        }
        if counts.is_empty() {
            return Err(SimError::InvalidModes("a state needs at least one mode".into()));
        }
        let mut out = Self::zeros(counts.len(), trunc);
        out.amplitudes[basis::encode(counts, trunc.local_dim())] = cone();
        Ok(out)
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn trunc(&self) -> TruncationSpec {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex<T>> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex<T>> {
        self.amplitudes
    }

    pub fn amplitude(&self, counts: &[usize]) -> Complex<T> {
        self.amplitudes[basis::encode(counts, self.trunc.local_dim())]
    }

    pub fn norm_squared(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalize(mut self) -> Result<Self> {
        let norm = self.norm();
        if norm <= T::zero() || !norm.is_finite() {
            return Err(SimError::Degenerate("cannot normalize a zero-norm state".into()));
        }
        let inv = T::one() / norm;
        self.amplitudes.iter_mut().for_each(|a| *a = a.scale(inv));
        Ok(self)
    }

    pub fn scaled(mut self, factor: Complex<T>) -> Self {
        self.amplitudes *= factor;
        self
    }

    /// `self + factor · other`.
    pub fn add_scaled(mut self, factor: Complex<T>, other: &Self) -> Result<Self> {
        self.ensure_same_shape(other)?;
        self.amplitudes.axpy(factor, &other.amplitudes, cone());
        Ok(self)
    }

    /// Probability weight on basis states where some mode sits at `n_max`.
    pub fn tail_weight(&self) -> T {
        let d = self.trunc.local_dim();
        let n_max = self.trunc.n_max();
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| basis::decode(*i, self.num_modes, d).contains(&n_max))
            .fold(T::zero(), |acc, (_, a)| acc + a.norm_sqr())
    }

    /// Total photon-number expectation.
    pub fn mean_photon_number(&self) -> T {
        let d = self.trunc.local_dim();
        self.amplitudes.iter().enumerate().fold(T::zero(), |acc, (i, a)| {
            let total: usize = basis::decode(i, self.num_modes, d).iter().sum();
            acc + a.norm_sqr() * crate::scalar::from_usize(total)
        })
    }

    pub(crate) fn ensure_same_shape(&self, other: &Self) -> Result<()> {
        self.trunc.ensure_same(&other.trunc)?;
        if self.num_modes != other.num_modes {
            return Err(SimError::ShapeMismatch { expected: self.num_modes, found: other.num_modes });
        }
        Ok(())
    }
}

/// All-zeros number state on `num_modes` modes.
pub fn vacuum<T: Real>(num_modes: usize, trunc: TruncationSpec) -> FockState<T> {
    let mut out = FockState::zeros(num_modes.max(1), trunc);
    out.amplitudes[0] = cone();
    out
}

/// Kronecker product; the modes of `a` come first.
pub fn tensor<T: Real>(a: &FockState<T>, b: &FockState<T>) -> Result<FockState<T>> {
    a.trunc.ensure_same(&b.trunc)?;
    let nb = b.dim();
    let mut amps = DVector::from_element(a.dim() * nb, czero());
    for (i, &x) in a.amplitudes.iter().enumerate() {
        if x == czero() {
            continue;
        }
        let mut row = amps.rows_mut(i * nb, nb);
        row.axpy(x, &b.amplitudes, czero());
    }
    FockState::from_amplitudes(a.num_modes + b.num_modes, a.trunc, amps)
}

/// Product of several states, left to right.
pub fn tensor_all<T: Real>(states: &[&FockState<T>]) -> Result<FockState<T>> {
    let (first, rest) = states.split_first().ok_or_else(|| SimError::InvalidModes("empty tensor product".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, s| tensor(&acc, s))
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner<T: Real>(a: &FockState<T>, b: &FockState<T>) -> Result<Complex<T>> {
    a.ensure_same_shape(b)?;
    Ok(a.amplitudes.dotc(&b.amplitudes))
}

/// `|⟨a|b⟩|² / (‖a‖²‖b‖²)`; global-phase invariant.
pub fn fidelity<T: Real>(a: &FockState<T>, b: &FockState<T>) -> Result<T> {
    let overlap = inner(a, b)?.norm_sqr();
    let denom = a.norm_squared() * b.norm_squared();
    if denom <= T::zero() {
        return Err(SimError::Degenerate("fidelity with a zero-norm state".into()));
    }
    Ok(overlap / denom)
}
