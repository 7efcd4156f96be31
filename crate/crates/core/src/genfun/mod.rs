//! Generating functions of the sojourn tables.
//!
//! `u~(z, t) = sum_{n >= 1} sum_k u_n(k) z^n t^k` for a coefficient table, its
//! four-fold sign symmetrization `u-`, the excursion series
//! `X = sum_r F+_{2r} (zt)^{2r} + F-_{2r} z^{2r}` and the return series
//! `Gamma-(z, t) = sum Gamma_{2n}(2k) z^{2n} t^{2k} = X (I - X)^{-1}`.

mod diagnostics;
mod series;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use diagnostics::{
    classify, convergence_diagnostics, matrix_diagnostics, partial_sums, summarize, DecayClass,
    DiagnosticsConfig, DiagnosticsReport, EntryDiagnostics, EvalDiagnostics, Trend,
};
pub use series::BiSeries;

use crate::algebra::{Backend, Mat2, Ring, Scalar};
use crate::error::{Error, Result};
use crate::sojourn::{ExcursionSequences, GammaTable};

/// Default truncation for scalar series.
pub const SCALAR_ORDERS: (usize, usize) = (200, 200);
/// Default truncation for matrix series.
pub const MATRIX_ORDERS: (usize, usize) = (100, 100);

/// Builds `sum_{n >= 1} u_n(k) z^n t^k`; the `n = 0` row is dropped.
pub fn series_from_table<C: Ring>(
    table: &BTreeMap<(usize, usize), C>,
    nz: usize,
    nt: usize,
) -> Result<BiSeries<C>> {
    if let Some((&(i, j), _)) = table
        .iter()
        .find(|((i, j), c)| (*i > nz || *j > nt) && !c.is_zero())
    {
        return Err(Error::TruncationOverflow {
            z_degree: i,
            t_degree: j,
            nz,
            nt,
        });
    }
    Ok(BiSeries::from_terms(
        nz,
        nt,
        table
            .iter()
            .filter(|((n, _), _)| *n >= 1)
            .map(|(k, c)| (*k, c.clone())),
    ))
}

/// `s(z,t) + s(-z,t) + s(z,-t) + s(-z,-t)`: four times the even-even part.
pub fn symmetrize<C: Ring>(s: &BiSeries<C>) -> BiSeries<C> {
    let (nz, nt) = s.orders();
    let four = |c: &C| {
        let two = c.add_ref(c);
        two.add_ref(&two)
    };
    BiSeries::from_terms(
        nz,
        nt,
        s.terms()
            .filter(|((i, j), _)| i % 2 == 0 && j % 2 == 0)
            .map(|(k, c)| (*k, four(c))),
    )
}

/// `X = sum_r F+_{2r} (zt)^{2r} + F-_{2r} z^{2r}` truncated to `(nz, nt)`.
pub fn build_x<S: Scalar>(
    f: &ExcursionSequences<S>,
    nz: usize,
    nt: usize,
) -> Result<BiSeries<Mat2<S>>> {
    let needed = nz - nz % 2;
    if f.max_time < needed {
        return Err(Error::InsufficientOrder {
            available: f.max_time,
            required: needed,
        });
    }
    let mut x = BiSeries::zero(nz, nt);
    for r in 1..=nz / 2 {
        x.add_term(2 * r, 2 * r, &f.plus(r));
        x.add_term(2 * r, 0, &f.minus(r));
    }
    Ok(x)
}

/// `X (I - X)^{-1}` to truncation order, computed as the unique solution of
/// `Y = X + Y X` degree by degree, then checked against `Y (I - X) = X`.
pub fn neumann_inverse_times<S: Scalar>(x: &BiSeries<Mat2<S>>) -> Result<BiSeries<Mat2<S>>> {
    if x.coeff_ref(0, 0).is_some() {
        return Err(Error::NonNilpotentConstantTerm);
    }
    let (nz, nt) = x.orders();
    let x_terms: Vec<((usize, usize), &Mat2<S>)> = x.terms().map(|(k, c)| (*k, c)).collect();
    let mut y: BiSeries<Mat2<S>> = BiSeries::zero(nz, nt);
    for i in 0..=nz {
        for j in 0..=nt {
            let mut acc = x.coeff(i, j);
            for &((a, b), xc) in &x_terms {
                if a > i {
                    break;
                }
                if b > j {
                    continue;
                }
                if let Some(yc) = y.coeff_ref(i - a, j - b) {
                    acc.add_assign_ref(&yc.mul_ref(xc));
                }
            }
            y.set(i, j, acc);
        }
    }
    let identity_minus_x = BiSeries::identity(nz, nt).sub(x);
    let residual = y.mul(&identity_minus_x).sub(x);
    let worst = residual
        .terms()
        .map(|(_, m)| m.frobenius())
        .fold(0.0, f64::max);
    let holds = match S::BACKEND {
        Backend::Exact => residual.is_zero(),
        Backend::Float => worst < 1e-9,
    };
    if !holds {
        return Err(Error::IdentityCheck { residual: worst });
    }
    Ok(y)
}

/// Which sojourn columns enter `Gamma-`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaBarMode {
    /// All `k`, including `k = 0` (needed for `Gamma- = X (I - X)^{-1}`).
    #[default]
    IncludeZeroSojourn,
    /// Only `k >= 1`.
    PositiveSojourn,
}

/// `sum Gamma_{2n}(2k) z^{2n} t^{2k}` read directly from the table,
/// `n >= 1`.
pub fn gamma_bar_direct<S: Scalar>(
    gamma: &GammaTable<S>,
    nz: usize,
    nt: usize,
    mode: GammaBarMode,
) -> Result<BiSeries<Mat2<S>>> {
    let needed = nz - nz % 2;
    if gamma.max_time < needed {
        return Err(Error::InsufficientOrder {
            available: gamma.max_time,
            required: needed,
        });
    }
    Ok(BiSeries::from_terms(
        nz,
        nt,
        gamma
            .iter()
            .filter(|((n, k), _)| *n >= 1 && (*k >= 1 || mode == GammaBarMode::IncludeZeroSojourn))
            .map(|(k, m)| (*k, m.clone())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_basis, coins, split_coin, ExactComplex};
    use crate::sojourn::{
        decompose_psi, first_return_excursions, gamma_table, psi_aggregate, SojournConvention,
    };
    use num_complex::Complex64;

    type E = ExactComplex;
    type M = Mat2<E>;

    fn scalar(terms: &[((usize, usize), i64)], nz: usize, nt: usize) -> BiSeries<E> {
        BiSeries::from_terms(nz, nt, terms.iter().map(|&(k, c)| (k, E::from_i64(c))))
    }

    #[test]
    fn series_from_table_examples() {
        let table = BTreeMap::from([((1, 0), E::one())]);
        let s = series_from_table(&table, 4, 4).unwrap();
        assert_eq!(s, scalar(&[((1, 0), 1)], 4, 4));

        let empty = BTreeMap::<(usize, usize), E>::new();
        assert!(series_from_table(&empty, 4, 4).unwrap().is_zero());

        let zero_row = BTreeMap::from([((0, 0), E::one()), ((2, 1), E::one())]);
        assert_eq!(
            series_from_table(&zero_row, 4, 4).unwrap(),
            scalar(&[((2, 1), 1)], 4, 4)
        );

        let over = BTreeMap::from([((5, 0), E::one())]);
        assert!(matches!(
            series_from_table(&over, 4, 4),
            Err(Error::TruncationOverflow { z_degree: 5, .. })
        ));
    }

    #[test]
    fn grover_p_series() {
        let coin = coins::grover::<E>();
        let (p, q) = split_coin(&coin).unwrap();
        let basis = build_basis(&p, &q).unwrap();
        let psi = psi_aggregate(&coin, 0, 6, SojournConvention::Midpoint, 100).unwrap();
        let tables = decompose_psi(&psi, &basis);
        let s = series_from_table(&tables.p, 6, 6).unwrap();
        assert_eq!(s.coeff(1, 0), E::one());
    }

    #[test]
    fn symmetrize_examples() {
        assert!(symmetrize(&scalar(&[((1, 1), 1)], 4, 4)).is_zero());
        assert_eq!(
            symmetrize(&scalar(&[((2, 2), 1)], 4, 4)),
            scalar(&[((2, 2), 4)], 4, 4)
        );
        assert_eq!(
            symmetrize(&scalar(&[((1, 0), 1), ((2, 0), 1)], 4, 4)),
            scalar(&[((2, 0), 4)], 4, 4)
        );
    }

    #[test]
    fn grover_x_and_gamma_bar() {
        let coin = coins::grover::<E>();
        let f = first_return_excursions(&coin, 12).unwrap();
        let x = build_x(&f, 12, 12).unwrap();
        let mut expected = BiSeries::zero(12, 12);
        expected.set(2, 2, M::unit(0, 0));
        expected.set(2, 0, M::unit(1, 1));
        assert_eq!(x, expected);

        let y = neumann_inverse_times(&x).unwrap();
        for n in 1..=6 {
            assert_eq!(y.coeff(2 * n, 2 * n), M::unit(0, 0));
            assert_eq!(y.coeff(2 * n, 0), M::unit(1, 1));
        }
        assert_eq!(y.nnz(), 12);

        let gamma = gamma_table(&coin, 12, SojournConvention::Midpoint).unwrap();
        let direct = gamma_bar_direct(&gamma, 12, 12, GammaBarMode::IncludeZeroSojourn).unwrap();
        assert_eq!(direct.coeff(4, 4), M::unit(0, 0));
        assert_eq!(direct.coeff(4, 2), M::zero());
        assert!(direct.terms().all(|((i, _), _)| i % 2 == 0));
        assert_eq!(direct, y);

        let strict = gamma_bar_direct(&gamma, 12, 12, GammaBarMode::PositiveSojourn).unwrap();
        assert!(strict.terms().all(|((_, j), _)| *j >= 1));
        assert_eq!(strict.nnz(), 6);
    }

    #[test]
    fn hadamard_closed_form_matches_direct() {
        let coin = coins::hadamard::<E>();
        let f = first_return_excursions(&coin, 10).unwrap();
        let x = build_x(&f, 10, 10).unwrap();
        assert_eq!(
            x.coeff(2, 2),
            M::new(E::ratio(1, 2), E::ratio(-1, 2), E::zero(), E::zero())
        );
        let y = neumann_inverse_times(&x).unwrap();
        let gamma = gamma_table(&coin, 10, SojournConvention::Midpoint).unwrap();
        let direct = gamma_bar_direct(&gamma, 10, 10, GammaBarMode::IncludeZeroSojourn).unwrap();
        assert_eq!(direct, y);
    }

    #[test]
    fn neumann_examples() {
        let zero = BiSeries::<M>::zero(8, 8);
        assert!(neumann_inverse_times(&zero).unwrap().is_zero());

        let mut x = BiSeries::zero(8, 3);
        x.set(1, 0, M::identity());
        let y = neumann_inverse_times(&x).unwrap();
        for i in 1..=8 {
            assert_eq!(y.coeff(i, 0), M::identity());
        }
        assert_eq!(y.nnz(), 8);

        let mut bad = BiSeries::zero(4, 4);
        bad.set(0, 0, M::identity());
        assert_eq!(
            neumann_inverse_times(&bad),
            Err(Error::NonNilpotentConstantTerm)
        );
    }

    #[test]
    fn short_excursions_are_rejected() {
        let f = first_return_excursions(&coins::grover::<E>(), 6).unwrap();
        assert!(matches!(
            build_x(&f, 8, 8),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn grover_diagnostics_at_one() {
        let coin = coins::grover::<E>();
        let gamma = gamma_table(&coin, 40, SojournConvention::Midpoint).unwrap();
        let g = gamma_bar_direct(&gamma, 40, 40, GammaBarMode::IncludeZeroSojourn).unwrap();
        let entry = g.entry(0, 0);
        let sums = partial_sums(&entry, &E::one(), &E::one());
        for (n, s) in sums.iter().enumerate() {
            assert_eq!(*s, E::from_i64(n as i64 / 2));
        }
        let report = convergence_diagnostics(
            &entry,
            &[(E::one(), E::one())],
            &DiagnosticsConfig::default(),
        )
        .unwrap();
        assert_eq!(report.decay_class(), DecayClass::NonDecaying);
        let ev = &report.evaluations[0];
        assert!(ev.divergent && ev.unbounded_growth);
        assert_eq!(ev.growth_ratio, 20.0);
    }

    #[test]
    fn geometric_series_converges() {
        let s = BiSeries::from_terms(
            40,
            20,
            (0..=40).map(|n| ((n, 0), Complex64::new(0.5f64.powi(n as i32), 0.0))),
        );
        let one = Complex64::new(1.0, 0.0);
        let report =
            convergence_diagnostics(&s, &[(one, one)], &DiagnosticsConfig::default()).unwrap();
        assert!(!report.any_divergent());
        assert!((report.root_test_radius.unwrap() - 2.0).abs() < 0.1);
        assert_eq!(report.decay_class(), DecayClass::Faster);
        assert!((report.evaluations[0].partial_sums[40].re - 2.0).abs() < 1e-9);
    }

    #[test]
    fn zero_series_diagnostics() {
        let s = BiSeries::<E>::zero(20, 20);
        let report =
            convergence_diagnostics(&s, &[(E::one(), E::one())], &DiagnosticsConfig::default())
                .unwrap();
        assert!(!report.any_divergent());
        assert_eq!(report.decay_class(), DecayClass::Faster);
        assert_eq!(report.root_test_radius, None);

        assert!(matches!(
            convergence_diagnostics(
                &BiSeries::<E>::zero(19, 40),
                &[],
                &DiagnosticsConfig::default()
            ),
            Err(Error::InsufficientOrder {
                available: 19,
                required: 20
            })
        ));
    }

    #[test]
    fn classify_rates() {
        let cfg = DiagnosticsConfig::default();
        let flat: Vec<f64> = (0..=100)
            .map(|n| if n % 2 == 0 { 1.0 } else { 0.0 })
            .collect();
        assert_eq!(classify(&flat, &cfg).class, DecayClass::NonDecaying);
        let poly: Vec<f64> = (0..=100).map(|n| 1.0 / (1.0 + n as f64)).collect();
        assert_eq!(classify(&poly, &cfg).class, DecayClass::PolynomialDecay);
        let slow: Vec<f64> = (0..=100).map(|n| 1.0 / (1.0 + n as f64).sqrt()).collect();
        assert_eq!(classify(&slow, &cfg).class, DecayClass::PolynomialDecay);
        let geo: Vec<f64> = (0..=100).map(|n| 0.8f64.powi(n)).collect();
        assert_eq!(classify(&geo, &cfg).class, DecayClass::Faster);
        let growing: Vec<f64> = (0..=100).map(|n| n as f64).collect();
        assert_eq!(classify(&growing, &cfg).class, DecayClass::NonDecaying);
    }

    #[test]
    fn hadamard_does_not_diverge() {
        let coin = coins::hadamard::<Complex64>();
        let gamma = gamma_table(&coin, 100, SojournConvention::Midpoint).unwrap();
        let g = gamma_bar_direct(&gamma, 100, 100, GammaBarMode::IncludeZeroSojourn).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let entries = matrix_diagnostics(&g, &[(one, one)], &DiagnosticsConfig::default()).unwrap();
        for e in &entries {
            assert!(!e.report.any_divergent());
            assert_eq!(e.report.decay_class(), DecayClass::PolynomialDecay);
        }
        let top = &entries[0].report;
        assert!(!top.any_divergent());
        assert_ne!(top.decay_class(), DecayClass::NonDecaying);
    }
}
