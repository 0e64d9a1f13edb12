//! Shared fixtures for the benchmarks.

use quadlie_core::exactla::{rat, Mat};
use quadlie_core::{samples, BilinearForm, LieAlgebra, UnitalAlgebra};

/// The worked-example algebra at `ξ = 1` with its metric.
pub fn example() -> (LieAlgebra, BilinearForm) {
    let xi = rat(1);
    (samples::example_algebra(&xi), samples::example_metric(&xi))
}

/// A dense integer matrix with a known rank deficiency (last row is the sum
/// of the first two).
pub fn dense_matrix(n: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = rat(((i * 7 + j * 13) % 11) as i64 - 5);
        }
    }
    for j in 0..n {
        m[(n - 1, j)] = &m[(0, j)] + &m[(1, j)];
    }
    m
}

pub fn example_unital() -> UnitalAlgebra {
    let (g, b) = example();
    UnitalAlgebra::new(g, b).expect("metric is invariant")
}
