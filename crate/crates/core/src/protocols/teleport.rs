//! Teleportation of `C₊|ξ⟩ + C₋|−ξ⟩` through the `Φ₋` channel.
//!
//! Mode 0 holds the input, modes 1 and 2 the channel (mode 2 at the
//! receiver). The beam splitter mixes modes 0 and 1, both are counted, and
//! odd-odd outcomes leave mode 2 in the input state.

use super::{assemble_report, build_superposition, ProtocolReport, SuperpositionSpec};
use crate::entanglement::{build_ess, ess_normalization, EssKind};
use crate::error::{Result, SimError};
use crate::fock::{measure_photons, tensor, FockState, TruncationSpec};
use crate::gaussian::{beam_splitter_op, svs_tail_weight};
use crate::scalar::{lit, to_f64, Real};

/// Three-mode state right before the photon counting.
pub fn teleport_measurement_state<T: Real>(spec: &SuperpositionSpec<T>, trunc: TruncationSpec) -> Result<FockState<T>> {
    let channel = build_ess(EssKind::PhiMinus, &spec.xi, trunc)?;
    let input = build_superposition(spec, trunc)?;
    let prepared = tensor(&input, &channel)?;
    beam_splitter_op(trunc).apply_on_modes(&prepared, &[0, 1])
}

pub fn teleport<T: Real>(spec: &SuperpositionSpec<T>, trunc: TruncationSpec) -> Result<ProtocolReport<T>> {
    let channel = build_ess(EssKind::PhiMinus, &spec.xi, trunc)?;
    let input = build_superposition(spec, trunc)?;
    let prepared = tensor(&input, &channel)?;
    let tail = lit::<T>(svs_tail_weight(to_f64(spec.xi.r()), trunc.n_max())).max(prepared.tail_weight());
    let mixed = beam_splitter_op(trunc).apply_on_modes(&prepared, &[0, 1])?;
    let records = measure_photons(&mixed, &[0, 1])?;
    assemble_report(records, &input, tail)
}

/// Probability of counting `count` photons (odd) in both modes 0 and 1:
/// `sech²r · tanh^{2·count} r / N₋`.
pub fn teleport_branch_probability<T: Real>(count: usize, r: T) -> T {
    let sech = T::one() / r.cosh();
    sech * sech * r.tanh().powi(2 * count as i32) / ess_normalization(EssKind::PhiMinus, r)
}

/// Sum over all odd counts, in geometric closed form
/// `sech²r · tanh²r / (N₋ (1 − tanh⁴r))`; equals 1/4 for every `r > 0`.
pub fn teleport_success_probability<T: Real>(r: T) -> Result<T> {
    require_positive(r)?;
    let sech = T::one() / r.cosh();
    let t2 = r.tanh() * r.tanh();
    Ok(sech * sech * t2 / (ess_normalization(EssKind::PhiMinus, r) * (T::one() - t2 * t2)))
}

/// The first `terms` odd-count branch probabilities, summed.
pub fn teleport_success_partial_sum<T: Real>(r: T, terms: usize) -> Result<T> {
    require_positive(r)?;
    Ok((0..terms).fold(T::zero(), |acc, n| acc + teleport_branch_probability(2 * n + 1, r)))
}

fn require_positive<T: Real>(r: T) -> Result<()> {
    if r > T::zero() {
        Ok(())
    } else {
        Err(SimError::InvalidParameter(format!("squeezing amplitude must be > 0, got {r:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{fidelity, measure_photons};
    use crate::gaussian::{svs_closed_form, SqueezeParam};
    use crate::protocols::Outcome;
    use crate::Complex;

    fn spec(r: f64, phi: f64, cp: (f64, f64), cm: (f64, f64)) -> SuperpositionSpec<f64> {
        SuperpositionSpec::new(Complex::new(cp.0, cp.1), Complex::new(cm.0, cm.1), SqueezeParam::new(r, phi).unwrap())
            .unwrap()
    }

    #[test]
    fn closed_form_is_a_quarter() {
        for r in [0.1f64, 0.5, 1.0] {
            assert!((teleport_success_probability(r).unwrap() - 0.25).abs() < 1e-12);
        }
        assert!(teleport_success_probability(0.0).is_err());
    }

    #[test]
    fn partial_sums_increase_towards_a_quarter() {
        let sums: Vec<f64> = (1..40).map(|n| teleport_success_partial_sum(0.7, n).unwrap()).collect();
        assert!(sums.windows(2).all(|w| w[1] >= w[0]));
        assert!(sums[..15].windows(2).all(|w| w[1] > w[0]));
        assert!(sums.iter().all(|&s| s < 0.25 + 1e-15));
        assert!((sums.last().unwrap() - 0.25).abs() < 1e-10);
    }

    #[test]
    fn default_run_succeeds_with_a_quarter() {
        let s = spec(0.5, 0.0, (0.6, 0.0), (0.0, 0.8));
        let report = teleport(&s, TruncationSpec::for_squeezing(0.5).unwrap()).unwrap();
        assert!((report.success_probability - 0.25).abs() < 1e-6);
        assert!((report.total_probability() - 1.0).abs() < 1e-9);
        assert!(report.min_success_fidelity().unwrap() >= 1.0 - 1e-8);
        let first = report.branch(&[1, 1]).unwrap();
        assert!((first.probability - teleport_branch_probability(1, 0.5)).abs() < 1e-8);
    }

    #[test]
    fn bare_squeezed_vacuum_is_teleported_exactly() {
        let s = spec(0.5, 0.0, (1.0, 0.0), (0.0, 0.0));
        let t = TruncationSpec::for_squeezing(0.5).unwrap();
        let report = teleport(&s, t).unwrap();
        let target = svs_closed_form(&s.xi, t).unwrap();
        for b in report.success_branches() {
            assert!(1.0 - fidelity(&b.conditional_state, &target).unwrap() < 1e-10);
        }
    }

    #[test]
    fn zero_squeezing_channel_rejected() {
        let s = spec(0.0, 0.0, (0.6, 0.0), (0.0, 0.8));
        assert!(matches!(teleport(&s, TruncationSpec::with_n_max(16).unwrap()), Err(SimError::Degenerate(_))));
    }

    #[test]
    fn fixed_cutoff_30_gives_a_quarter() {
        let s = spec(0.5, 0.0, (0.6, 0.0), (0.0, 0.8));
        let report = teleport(&s, TruncationSpec::with_n_max(30).unwrap()).unwrap();
        assert!((report.success_probability - 0.25).abs() < 1e-6);
        // branches that carry non-negligible weight are exact even here
        for b in report.success_branches().filter(|b| b.probability > 1e-10) {
            assert!(b.fidelity_to_target >= 1.0 - 1e-8, "{:?}", b.counts);
        }
    }

    #[test]
    fn odd_counts_only_appear_in_equal_pairs() {
        let s = spec(0.5, 0.0, (0.6, 0.0), (0.0, 0.8));
        let mid = teleport_measurement_state(&s, TruncationSpec::for_squeezing(0.5).unwrap()).unwrap();
        let recs = measure_photons(&mid, &[0, 1]).unwrap();
        for r in &recs {
            let (m, n) = (r.counts[0], r.counts[1]);
            if m != n && (m % 2 == 1 || n % 2 == 1) {
                panic!("outcome ({m}, {n}) has probability {}", r.probability);
            }
        }
    }

    #[test]
    fn unequal_even_counts_match_the_product_terms() {
        // Terms with opposite squeezing in modes 0 and 1 pass the splitter
        // unchanged and leave mode 2 in C₊|−ξ⟩ + C₋|ξ⟩, whose norm equals N_Ψ,
        // so P(0, 2) = |c₀ c₂|² / N₋ with c₂ = c₀ tanh r / √2.
        let (r, cp, cm) = (0.5f64, Complex::new(0.6, 0.0), Complex::new(0.0, 0.8));
        let s = SuperpositionSpec::new(cp, cm, SqueezeParam::real(r).unwrap()).unwrap();
        let t = TruncationSpec::for_squeezing(r).unwrap();
        let mid = teleport_measurement_state(&s, t).unwrap();
        let p02 = measure_photons(&mid, &[0, 1]).unwrap().into_iter().find(|x| x.counts == [0, 2]).unwrap();

        let c0 = 1.0 / r.cosh().sqrt();
        let c2 = c0 * r.tanh() / 2f64.sqrt();
        let want = (c0 * c2).powi(2) / ess_normalization(EssKind::PhiMinus, r);
        assert!((p02.probability - want).abs() < 1e-10, "{} vs {want}", p02.probability);
    }

    #[test]
    fn even_branches_can_fail() {
        let s = spec(0.5, 0.0, (0.6, 0.0), (0.0, 0.8));
        let report = teleport(&s, TruncationSpec::with_n_max(30).unwrap()).unwrap();
        let worst_even = report
            .branches
            .iter()
            .filter(|b| b.outcome == Outcome::Failure)
            .map(|b| b.fidelity_to_target)
            .fold(1.0f64, f64::min);
        assert!(worst_even < 1.0 - 1e-3);
    }

    #[test]
    fn branch_probabilities_do_not_depend_on_the_input() {
        let t = TruncationSpec::for_squeezing(0.5).unwrap();
        let a = teleport(&spec(0.5, 0.0, (0.6, 0.0), (0.0, 0.8)), t).unwrap();
        let b = teleport(&spec(0.5, 0.0, (1.0, 0.0), (1.0, 0.0)), t).unwrap();
        let table = |r: &ProtocolReport<f64>| {
            r.success_branches().map(|b| (b.counts.clone(), b.probability)).collect::<Vec<_>>()
        };
        let (ta, tb) = (table(&a), table(&b));
        assert_eq!(ta.len(), tb.len());
        for (x, y) in ta.iter().zip(&tb) {
            assert_eq!(x.0, y.0);
            assert!((x.1 - y.1).abs() < 1e-10);
        }
    }
}
