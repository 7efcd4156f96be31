//! Fixtures shared by the benchmarks.

use qwalk_core::genfun::BiSeries;
use qwalk_core::{Complex64, Mat2, Scalar};

/// A dense scalar series with bounded, deterministic coefficients.
pub fn dense_series(nz: usize, nt: usize) -> BiSeries<Complex64> {
    let terms = (0..=nz).flat_map(|i| {
        (0..=nt).map(move |j| {
            (
                (i, j),
                Complex64::new(1.0 / (1 + i + j) as f64, ((i * 7 + j * 3) % 5) as f64 / 5.0),
            )
        })
    });
    BiSeries::from_terms(nz, nt, terms)
}

/// A dense matrix series without constant term, entries shrinking with degree.
pub fn dense_matrix_series<S: Scalar>(nz: usize, nt: usize) -> BiSeries<Mat2<S>> {
    let terms = (0..=nz)
        .flat_map(|i| (0..=nt).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j > 0)
        .map(|(i, j)| {
            let w = S::from_i64(((i + 2 * j) % 3) as i64 - 1);
            ((i, j), Mat2::new(w.clone(), S::zero(), w, S::one()))
        });
    BiSeries::from_terms(nz, nt, terms)
}
