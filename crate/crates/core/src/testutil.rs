//! Seeded random states and unitaries for tests.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fock::{FockState, ModeOperator, TruncationSpec};
use crate::gaussian::exp_i_hermitian;
use crate::scalar::{lit, Real};

pub fn random_state(num_modes: usize, trunc: TruncationSpec, seed: u64) -> FockState<f64> {
    random_state_in(num_modes, trunc, seed)
}

pub fn random_state_in<T: Real>(num_modes: usize, trunc: TruncationSpec, seed: u64) -> FockState<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = trunc.dim(num_modes);
    let amps = DVector::from_fn(dim, |_, _| {
        Complex::new(lit::<T>(rng.gen_range(-1.0..1.0)), lit::<T>(rng.gen_range(-1.0..1.0)))
    });
    FockState::from_amplitudes(num_modes, trunc, amps).unwrap().normalize().unwrap()
}

pub fn random_unitary(num_modes: usize, trunc: TruncationSpec, seed: u64) -> ModeOperator<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = trunc.dim(num_modes);
    let a = DMatrix::from_fn(dim, dim, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h = (&a + a.adjoint()).scale(0.5);
    ModeOperator::from_dense(num_modes, trunc, exp_i_hermitian(h)).unwrap()
}
