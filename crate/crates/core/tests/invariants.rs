//! Structural invariants of the Fock-space machinery on random inputs.

use proptest::prelude::*;
use sqtele_core::fock::{measure_photons, FockState, TruncationSpec};
use sqtele_core::gaussian::{beam_splitter_op, squeeze_op, two_mode_squeeze_op, SqueezeParam};
use sqtele_core::Complex;

fn state(num_modes: usize, trunc: TruncationSpec, raw: &[(f64, f64)]) -> FockState<f64> {
    let amps = raw.iter().map(|&(re, im)| Complex::new(re, im)).collect::<Vec<_>>();
    FockState::from_amplitudes(num_modes, trunc, nalgebra::DVector::from_vec(amps)).unwrap().normalize().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gaussian_unitaries_preserve_norm(
        raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64),
        r in 0.0f64..1.0,
        phi in -3.0f64..3.0,
    ) {
        prop_assume!(raw.iter().any(|&(a, b)| a.abs() + b.abs() > 1e-3));
        let trunc = TruncationSpec::with_n_max(7).unwrap();
        let psi = state(2, trunc, &raw);
        let xi = SqueezeParam::new(r, phi).unwrap();
        let bs = beam_splitter_op::<f64>(trunc).apply(&psi).unwrap();
        prop_assert!((bs.norm_squared() - 1.0).abs() < 1e-12);
        let tms = two_mode_squeeze_op(&xi, trunc).apply(&psi).unwrap();
        prop_assert!((tms.norm_squared() - 1.0).abs() < 1e-12);
        let sq = squeeze_op(&xi, trunc).apply_on_modes(&psi, &[1]).unwrap();
        prop_assert!((sq.norm_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_probabilities_sum_to_one(
        raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 125),
        which in 0usize..3,
    ) {
        prop_assume!(raw.iter().any(|&(a, b)| a.abs() + b.abs() > 1e-3));
        let trunc = TruncationSpec::with_n_max(4).unwrap();
        let psi = state(3, trunc, &raw);
        let recs = measure_photons(&psi, &[which]).unwrap();
        let total: f64 = recs.iter().map(|r| r.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for rec in &recs {
            let res = rec.residual.as_ref().unwrap();
            prop_assert!((res.norm_squared() - 1.0).abs() < 1e-12);
            prop_assert_eq!(res.num_modes(), 2);
        }
    }
}

#[test]
fn two_beam_splitters_swap_a_single_photon() {
    // applying the 50:50 splitter twice maps |1,0> to a single-mode state
    let trunc = TruncationSpec::with_n_max(3).unwrap();
    let one = FockState::<f64>::basis(trunc, &[1, 0]).unwrap();
    let bs = beam_splitter_op::<f64>(trunc);
    let twice = bs.apply(&bs.apply(&one).unwrap()).unwrap();
    let p: f64 =
        measure_photons(&twice, &[0, 1]).unwrap().iter().filter(|r| r.counts == [0, 1]).map(|r| r.probability).sum();
    assert!((p - 1.0).abs() < 1e-12);
}
