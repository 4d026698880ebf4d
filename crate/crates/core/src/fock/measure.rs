//! Photon counting on a subset of modes.

use nalgebra::{Complex, DMatrix, DVector};

use super::basis;
use super::state::FockState;
use crate::error::{Result, SimError};
use crate::scalar::{czero, lit, Real};

/// Default probability below which no record is emitted.
pub const DEFAULT_PROBABILITY_FLOOR: f64 = 1e-14;

/// One photon-count outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord<T: Real> {
    /// Counts on the measured modes, in the order they were requested.
    pub counts: Vec<usize>,
    pub probability: T,
    /// Normalized state of the unmeasured modes; `None` when every mode was
    /// measured.
    pub residual: Option<FockState<T>>,
}

/// Measures photon numbers on `measured_modes` with the default floor.
pub fn measure_photons<T: Real>(state: &FockState<T>, measured_modes: &[usize]) -> Result<Vec<MeasurementRecord<T>>> {
    measure_photons_with_floor(state, measured_modes, DEFAULT_PROBABILITY_FLOOR)
}

/// Records are sorted by count tuple; outcomes with probability `≤ floor`
/// are dropped.
pub fn measure_photons_with_floor<T: Real>(
    state: &FockState<T>,
    measured_modes: &[usize],
    floor: f64,
) -> Result<Vec<MeasurementRecord<T>>> {
    let total = state.num_modes();
    basis::validate_modes(measured_modes, total)?;
    let trunc = state.trunc();
    let d = trunc.local_dim();
    let outcome_offsets = basis::sub_offsets(measured_modes, total, d);
    let rest_modes = basis::complement(measured_modes, total);
    let rest_offsets = basis::sub_offsets(&rest_modes, total, d);
    let amps = state.amplitudes();
    let floor_t: T = lit(floor);

    let mut records = Vec::new();
    for (outcome, &base) in outcome_offsets.iter().enumerate() {
        let probability = rest_offsets.iter().fold(T::zero(), |acc, &off| acc + amps[base + off].norm_sqr());
        if probability <= floor_t {
            continue;
        }
        let residual = if rest_modes.is_empty() {
            None
        } else {
            let inv = T::one() / probability.sqrt();
            let v: DVector<Complex<T>> =
                DVector::from_iterator(rest_offsets.len(), rest_offsets.iter().map(|&off| amps[base + off].scale(inv)));
            Some(FockState::from_amplitudes(rest_modes.len(), trunc, v)?)
        };
        records.push(MeasurementRecord {
            counts: basis::decode(outcome, measured_modes.len(), d),
            probability,
            residual,
        });
    }
    Ok(records)
}

/// Reduced density matrix on `kept_modes` (listed order defines the index
/// convention of the result). Keeping every mode returns `|ψ⟩⟨ψ|`.
pub fn reduced_density<T: Real>(state: &FockState<T>, kept_modes: &[usize]) -> Result<DMatrix<Complex<T>>> {
    let total = state.num_modes();
    basis::validate_modes(kept_modes, total)?;
    let d = state.trunc().local_dim();
    let kept = basis::sub_offsets(kept_modes, total, d);
    let rest = basis::sub_offsets(&basis::complement(kept_modes, total), total, d);
    let amps = state.amplitudes();
    let a = DMatrix::from_fn(kept.len(), rest.len(), |i, j| amps[kept[i] + rest[j]]);
    Ok(&a * a.adjoint())
}

/// Dephased density matrix rebuilt from measurement records:
/// `Σ p · |counts⟩⟨counts| ⊗ ρ_residual`, in the index order
/// (measured modes, then remaining modes ascending).
pub fn reassemble_density<T: Real>(
    records: &[MeasurementRecord<T>],
    num_measured: usize,
    num_rest: usize,
    local_dim: usize,
) -> Result<DMatrix<Complex<T>>> {
    let rest_dim = local_dim.pow(num_rest as u32);
    let dim = local_dim.pow(num_measured as u32) * rest_dim;
    let mut out = DMatrix::from_element(dim, dim, czero());
    for rec in records {
        let base = basis::encode(&rec.counts, local_dim) * rest_dim;
        match &rec.residual {
            Some(res) => {
                let v = res.amplitudes();
                for i in 0..rest_dim {
                    for j in 0..rest_dim {
                        out[(base + i, base + j)] += (v[i] * v[j].conj()).scale(rec.probability);
                    }
                }
            }
            None if num_rest == 0 => out[(base, base)] += Complex::new(rec.probability, T::zero()),
            None => return Err(SimError::InvalidParameter("record without residual".into())),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis::TruncationSpec;
    use crate::fock::state::{tensor, vacuum};
    use crate::testutil::random_state;
    use nalgebra::SymmetricEigen;

    fn trunc(n: usize) -> TruncationSpec {
        TruncationSpec::with_n_max(n).unwrap()
    }

    #[test]
    fn vacuum_measures_zero() {
        let t = trunc(3);
        let recs = measure_photons(&vacuum::<f64>(2, t), &[0]).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].counts, vec![0]);
        assert!((recs[0].probability - 1.0).abs() < 1e-15);
        assert_eq!(recs[0].residual.as_ref().unwrap(), &vacuum(1, t));
    }

    #[test]
    fn probabilities_complete_and_residuals_normalized() {
        for seed in 0..6 {
            let s = random_state(3, trunc(3), seed);
            for modes in [vec![0], vec![1, 2], vec![2, 0]] {
                let recs = measure_photons(&s, &modes).unwrap();
                let total: f64 = recs.iter().map(|r| r.probability).sum();
                assert!((total - 1.0).abs() < 1e-10);
                for r in &recs {
                    let n = r.residual.as_ref().unwrap().norm_squared();
                    assert!((n - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn measuring_every_mode_reports_probabilities_only() {
        let s = random_state(2, trunc(2), 4);
        let recs = measure_photons(&s, &[0, 1]).unwrap();
        assert!(recs.iter().all(|r| r.residual.is_none()));
        let total: f64 = recs.iter().map(|r| r.probability).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn invalid_mode_lists_rejected() {
        let s = random_state(2, trunc(2), 4);
        assert!(measure_photons(&s, &[]).is_err());
        assert!(measure_photons(&s, &[1, 1]).is_err());
        assert!(measure_photons(&s, &[2]).is_err());
    }

    #[test]
    fn conditioning_is_consistent_with_dephased_density() {
        for n_max in [2, 4, 6] {
            let s = random_state(2, trunc(n_max), n_max as u64);
            let d = n_max + 1;
            let recs = measure_photons_with_floor(&s, &[0], 0.0).unwrap();
            let rebuilt = reassemble_density(&recs, 1, 1, d).unwrap();
            let mut full = reduced_density(&s, &[0, 1]).unwrap();
            // keep only blocks diagonal in the measured mode
            for i in 0..d * d {
                for j in 0..d * d {
                    if i / d != j / d {
                        full[(i, j)] = czero();
                    }
                }
            }
            assert!((rebuilt - full).camax() < 1e-9);
        }
    }

    #[test]
    fn reduced_density_properties() {
        let t = trunc(3);
        for seed in 0..4 {
            let s = random_state(3, t, seed);
            for kept in [vec![0], vec![2], vec![0, 2]] {
                let rho = reduced_density(&s, &kept).unwrap();
                assert!((rho.trace().re - 1.0).abs() < 1e-12);
                assert!((&rho - rho.adjoint()).camax() < 1e-14);
                let eig = SymmetricEigen::new(rho).eigenvalues;
                assert!(eig.iter().all(|&l| l > -1e-12));
            }
        }
        assert!(reduced_density(&random_state(2, t, 0), &[]).is_err());
    }

    #[test]
    fn product_state_reduces_to_rank_one() {
        let t = trunc(3);
        let p = tensor(&random_state(1, t, 1), &random_state(1, t, 2)).unwrap();
        let eig = SymmetricEigen::new(reduced_density(&p, &[0]).unwrap()).eigenvalues;
        let significant = eig.iter().filter(|&&l| l > 1e-12).count();
        assert_eq!(significant, 1);
    }
}
