//! Fixed workloads shared by the pipeline benchmarks.

use misub_core::dataset::synth_gaussian;
use misub_core::{Dataset, Matrix, Result};

/// Symmetric positive definite `d × d` matrix with a spread spectrum.
pub fn spd_matrix(d: usize) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let x = ((i * 31 + j * 17) % 23) as f64 / 23.0;
            let y = ((j * 31 + i * 17) % 23) as f64 / 23.0;
            m[(i, j)] = 0.5 * (x + y);
        }
        m[(i, i)] += d as f64;
    }
    m
}

/// Two Gaussian classes in `d` dimensions, one informative axis per pair.
pub fn two_class(d: usize, n_per_class: usize, seed: u64) -> Result<Dataset> {
    let mean_a = vec![0.0; d];
    let mean_b: Vec<f64> = (0..d).map(|i| if i % 2 == 1 { 1.0 } else { 0.0 }).collect();
    let diag: Vec<f64> = (0..d).map(|i| 1.0 + (d - i) as f64).collect();
    let cov = Matrix::from_diag(&diag)?;
    synth_gaussian(n_per_class, &mean_a, &mean_b, &cov, seed)
}
