//! Truncation settings and the flat-index convention for multi-mode kets.
//!
//! Mode 0 is the slowest-varying digit: with `D = n_max + 1`,
//! `index = n₀·D^{m−1} + n₁·D^{m−2} + … + n_{m−1}`.

use crate::error::{Result, SimError};

/// Default admissible probability weight beyond the cutoff.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;

/// Beyond-cutoff weight targeted by [`TruncationSpec::for_squeezing`].
///
/// Tighter than [`DEFAULT_TAIL_TOLERANCE`]: two-mode unitaries are only exact
/// in total-photon sectors `N ≤ n_max`, so the weight in distorted sectors has
/// to sit below the measurement floor for conditional states to stay exact.
pub const RULE_TAIL_TARGET: f64 = 1e-16;

/// Photon-number cutoff per mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    n_max: usize,
    tail_tolerance: f64,
}

impl TruncationSpec {
    pub fn new(n_max: usize, tail_tolerance: f64) -> Result<Self> {
        if n_max < 1 {
            return Err(SimError::InvalidTruncation(format!("n_max must be ≥ 1, got {n_max}")));
        }
        if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
            return Err(SimError::InvalidTruncation(format!(
                "tail_tolerance must lie in (0, 1), got {tail_tolerance}"
            )));
        }
        Ok(Self { n_max, tail_tolerance })
    }

    /// Cutoff with the default tail tolerance.
    pub fn with_n_max(n_max: usize) -> Result<Self> {
        Self::new(n_max, DEFAULT_TAIL_TOLERANCE)
    }

    /// Default cutoff for squeezing amplitude `r`.
    ///
    /// `max(16, ⌈10(1 + 4r)⌉)`, raised further until the squeezed-vacuum
    /// weight beyond the cutoff is at most [`RULE_TAIL_TARGET`].
    pub fn for_squeezing(r: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(SimError::InvalidParameter(format!("squeezing amplitude must be finite and ≥ 0, got {r}")));
        }
        let mut n_max = 16usize.max((10.0 * (1.0 + 4.0 * r)).ceil() as usize);
        while crate::gaussian::svs_tail_weight(r, n_max) > RULE_TAIL_TARGET {
            n_max += 1;
        }
        Self::with_n_max(n_max)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }

    /// Single-mode dimension `n_max + 1`.
    pub fn local_dim(&self) -> usize {
        self.n_max + 1
    }

    /// Dimension of the `num_modes`-mode space.
    pub fn dim(&self, num_modes: usize) -> usize {
        self.local_dim().pow(num_modes as u32)
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.n_max != other.n_max {
            return Err(SimError::TruncationMismatch { left: self.n_max, right: other.n_max });
        }
        Ok(())
    }
}

/// Flat index of the basis state with photon numbers `digits`.
pub fn encode(digits: &[usize], local_dim: usize) -> usize {
    digits.iter().fold(0, |acc, &n| {
        debug_assert!(n < local_dim);
        acc * local_dim + n
    })
}

/// Photon numbers of the basis state at flat `index`.
pub fn decode(index: usize, num_modes: usize, local_dim: usize) -> Vec<usize> {
    let mut digits = vec![0; num_modes];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = rest % local_dim;
        rest /= local_dim;
    }
    digits
}

/// Flat-index stride of every mode.
pub fn strides(num_modes: usize, local_dim: usize) -> Vec<usize> {
    let mut out = vec![1; num_modes];
    for i in (0..num_modes.saturating_sub(1)).rev() {
        out[i] = out[i + 1] * local_dim;
    }
    out
}

/// Checks that `modes` are distinct and below `total`.
pub(crate) fn validate_modes(modes: &[usize], total: usize) -> Result<()> {
    if modes.is_empty() {
        return Err(SimError::InvalidModes("mode list is empty".into()));
    }
    for (i, &m) in modes.iter().enumerate() {
        if m >= total {
            return Err(SimError::InvalidModes(format!("mode {m} out of range for {total} modes")));
        }
        if modes[..i].contains(&m) {
            return Err(SimError::InvalidModes(format!("mode {m} listed twice")));
        }
    }
    Ok(())
}

/// Modes of `0..total` not listed in `modes`, ascending.
pub(crate) fn complement(modes: &[usize], total: usize) -> Vec<usize> {
    (0..total).filter(|m| !modes.contains(m)).collect()
}

/// Flat offsets of every sub-index over `modes`, enumerated with the
/// mode-0-slowest convention applied to the listed order.
pub(crate) fn sub_offsets(modes: &[usize], num_modes: usize, local_dim: usize) -> Vec<usize> {
    let full = strides(num_modes, local_dim);
    let count = local_dim.pow(modes.len() as u32);
    (0..count).map(|j| decode(j, modes.len(), local_dim).iter().zip(modes).map(|(&n, &m)| n * full[m]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn truncation_invariants() {
        assert!(TruncationSpec::new(0, 1e-10).is_err());
        assert!(TruncationSpec::new(4, 0.0).is_err());
        assert!(TruncationSpec::new(4, 1.0).is_err());
        let t = TruncationSpec::new(4, 1e-10).unwrap();
        assert_eq!(t.local_dim(), 5);
        assert_eq!(t.dim(3), 125);
    }

    #[test]
    fn mode_zero_is_slowest() {
        assert_eq!(encode(&[1, 0], 3), 3);
        assert_eq!(encode(&[0, 1], 3), 1);
        assert_eq!(decode(5, 2, 3), vec![1, 2]);
        assert_eq!(strides(3, 4), vec![16, 4, 1]);
    }

    #[test]
    fn rule_floor_and_growth() {
        assert_eq!(TruncationSpec::for_squeezing(0.0).unwrap().n_max(), 16);
        let a = TruncationSpec::for_squeezing(0.5).unwrap().n_max();
        let b = TruncationSpec::for_squeezing(0.9).unwrap().n_max();
        assert!(a >= 30 && b > a);
        assert!(TruncationSpec::for_squeezing(-0.1).is_err());
    }

    #[test]
    fn mode_validation() {
        assert!(validate_modes(&[0, 2], 3).is_ok());
        assert!(validate_modes(&[], 3).is_err());
        assert!(validate_modes(&[1, 1], 3).is_err());
        assert!(validate_modes(&[3], 3).is_err());
        assert_eq!(complement(&[2, 0], 4), vec![1, 3]);
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(num_modes in 1usize..5, local_dim in 2usize..7, seed in 0usize..10_000) {
            let total = local_dim.pow(num_modes as u32);
            let index = seed % total;
            let digits = decode(index, num_modes, local_dim);
            prop_assert!(digits.iter().all(|&d| d < local_dim));
            prop_assert_eq!(encode(&digits, local_dim), index);
        }
    }
}
