//! Deterministic random data and shared fixtures for unit tests.

use crate::models::LeastSquaresModel;
use crate::numerics::{mat_vec, DenseMatrix};

/// 4x5 compressed sensing matrix with planted solution (1, -1, 0, 0, 0).
pub fn p2_matrix() -> DenseMatrix {
    DenseMatrix::new(
        4,
        5,
        vec![
            0.8899, -0.4355, 0.5304, -0.2324, 0.3745, //
            0.0797, -0.3475, 0.0942, 0.9681, -0.4919, //
            0.4425, 0.3248, 0.6921, 0.0921, 0.7575, //
            0.0773, 0.7643, -0.4804, 0.0142, 0.2099,
        ],
    )
    .unwrap()
}

pub fn p2_model() -> LeastSquaresModel {
    let a = p2_matrix();
    let b = mat_vec(&a, &[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
    LeastSquaresModel::new(a, b).unwrap()
}

pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Uniform sample in [-1, 1).
pub fn uniform(state: &mut u64) -> f64 {
    (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}
