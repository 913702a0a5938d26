//! Inputs shared by the benchmarks.

use unf_core::{corpus, Mat, Poly};

/// Companion matrix of `(λ² + 1)^k`, the deepest recursion per dimension.
pub fn quadratic_power(k: u32) -> Mat {
    Mat::companion(&Poly::from_ints(&[1, 0, 1]).pow(k))
}

/// Fixed-seed random integer matrices of one dimension.
pub fn random_batch(dim: usize, count: usize) -> Vec<Mat> {
    let mut rng = corpus::rng(dim as u64);
    (0..count)
        .map(|_| corpus::random_integer_matrix(&mut rng, dim, -3, 3))
        .collect()
}
