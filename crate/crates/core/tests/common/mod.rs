#![allow(dead_code)]

use clone_bound::linalg::{Mat2, Mat4, Matrix};
use clone_bound::rotation::random_unit_vector;
use clone_bound::state::{bloch_to_density, BlochVector, OneQubitState, TwoQubitState};
use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<const N: usize>(rng: &mut ChaCha8Rng) -> Matrix<f64, N, N> {
    Matrix::from_fn(|_, _| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn random_hermitian<const N: usize>(rng: &mut ChaCha8Rng) -> Matrix<f64, N, N> {
    random_matrix::<N>(rng).hermitian_part()
}

/// A A† / Tr(A A†).
pub fn random_density4(rng: &mut ChaCha8Rng) -> TwoQubitState<f64> {
    let a = random_matrix::<4>(rng);
    let p = a * a.adjoint();
    let tr = p.trace().re;
    TwoQubitState::new(p.scale(1.0 / tr)).unwrap()
}

pub fn random_density2(rng: &mut ChaCha8Rng) -> OneQubitState<f64> {
    let a: Mat2<f64> = random_matrix::<2>(rng);
    let p = a * a.adjoint();
    let tr = p.trace().re;
    OneQubitState::new(p.scale(1.0 / tr)).unwrap()
}

pub fn random_axis(rng: &mut ChaCha8Rng) -> BlochVector<f64> {
    random_unit_vector(rng)
}

pub fn random_pure(rng: &mut ChaCha8Rng) -> OneQubitState<f64> {
    bloch_to_density(random_axis(rng)).unwrap()
}

pub fn max_abs4(a: &Mat4<f64>, b: &Mat4<f64>) -> f64 {
    (*a - *b).max_abs()
}

pub fn max_abs33(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (a[i][j] - b[i][j]).abs()))
        .fold(0.0, f64::max)
}
