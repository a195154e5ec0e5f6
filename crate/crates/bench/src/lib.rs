//! Inputs shared by the benchmarks in `benches/`.

use conormal_core::arith::{Field, Matrix};
use conormal_core::{Configuration, Matroid};

/// The five-element configuration with columns `e1, e2, e3, e1+e2, e1+e3`.
pub fn example() -> Configuration {
    let rows = [vec![1, 0, 0, 1, 1], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]];
    Configuration::new(Matrix::from_i64(Field::Rational, &rows).expect("rectangular")).expect("rank 3")
}

/// Uniform matroids of growing size, for scaling runs.
pub fn uniform_family() -> Vec<(String, Matroid)> {
    [(2, 4), (2, 5), (3, 6), (3, 7)]
        .into_iter()
        .map(|(r, n)| (format!("U({r},{n})"), Matroid::uniform(r, n).expect("0 < r < n")))
        .collect()
}
