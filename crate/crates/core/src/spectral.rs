//! Momentum-space coins, band flatness and the localization scan.
//!
//! The one-step operator of the walk acts in momentum space as
//! `U(k) = diag(e^{-ik}, e^{ik}) U`. Its eigenvalues as functions of `k` are
//! the two bands; a walk whose bands are both flat does not spread.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::coins::{self, NamedCoin};
use crate::algebra::{check_unitary, Mat2, Vec2, UNITARITY_TOL};
use crate::error::{Error, Result};
use crate::genfun::{
    gamma_bar_direct, matrix_diagnostics, summarize, DecayClass, DiagnosticsConfig, GammaBarMode,
};
use crate::sojourn::{gamma_table_with_ceiling, SojournConvention};
use crate::walk::{averaged_return_probability, evolve_xi, WalkConfig};

/// Band flatness tolerance.
pub const FLAT_TOL: f64 = 1e-9;
pub const DEFAULT_GRID: usize = 1024;
pub const MIN_GRID: usize = 16;

/// `diag(e^{-ik}, e^{ik}) U` for a unitary `U`.
pub fn fourier_coin(u: &Mat2<Complex64>, k: f64) -> Result<Mat2<Complex64>> {
    check_unitary(u)?;
    Ok(fourier_unchecked(u, k))
}

fn fourier_unchecked(u: &Mat2<Complex64>, k: f64) -> Mat2<Complex64> {
    let phase = Mat2::diag(
        Complex64::from_polar(1.0, -k),
        Complex64::from_polar(1.0, k),
    );
    &phase * u
}

/// Principal argument with the branch cut pushed so that `-pi` reads `+pi`.
fn sort_key(z: &Complex64) -> f64 {
    let a = z.arg();
    if a < -PI + 1e-12 {
        PI
    } else {
        a
    }
}

/// Roots of `x^2 - tr(M) x + det(M)`, sorted by principal argument.
pub fn eigenvalues2(m: &Mat2<Complex64>) -> (Complex64, Complex64) {
    let tr = m.trace();
    let det = m.det();
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    if sort_key(&l1) <= sort_key(&l2) {
        (l1, l2)
    } else {
        (l2, l1)
    }
}

/// Both bands on the uniform grid `k_j = 2 pi j / M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub momenta: Vec<f64>,
    pub bands: Vec<(Complex64, Complex64)>,
}

impl SpectrumSample {
    /// Largest `| |lambda| - 1 |` over the grid.
    pub fn modulus_defect(&self) -> f64 {
        self.bands
            .iter()
            .flat_map(|(a, b)| [a, b])
            .map(|l| (l.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn spectrum(u: &Mat2<Complex64>, grid: usize) -> Result<SpectrumSample> {
    check_unitary(u)?;
    if grid < MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "momentum grid needs at least {MIN_GRID} points, got {grid}"
        )));
    }
    let momenta: Vec<f64> = (0..grid).map(|j| TAU * j as f64 / grid as f64).collect();
    let bands = momenta
        .iter()
        .map(|&k| eigenvalues2(&fourier_unchecked(u, k)))
        .collect();
    Ok(SpectrumSample { momenta, bands })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flatness {
    pub flat: bool,
    /// Max over both bands of `|lambda(k) - lambda(0)|`.
    pub max_deviation: f64,
    pub modulus_defect: f64,
}

pub fn flatness_scan(u: &Mat2<Complex64>, grid: usize) -> Result<Flatness> {
    flatness_scan_with_tol(u, grid, FLAT_TOL)
}

pub fn flatness_scan_with_tol(u: &Mat2<Complex64>, grid: usize, tol: f64) -> Result<Flatness> {
    let s = spectrum(u, grid)?;
    let (a0, b0) = s.bands[0];
    let max_deviation = s
        .bands
        .iter()
        .map(|(a, b)| (a - a0).norm().max((b - b0).norm()))
        .fold(0.0, f64::max);
    Ok(Flatness {
        flat: max_deviation < tol,
        max_deviation,
        modulus_defect: s.modulus_defect(),
    })
}

/// Coin families for the scan. Angles are drawn uniformly from `[0, 2 pi)`
/// by `ChaCha8Rng::seed_from_u64(seed)`, in the order listed per sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoinFamily {
    /// `[[0, e^{i a}], [e^{i b}, 0]]`; draws `a, b`.
    OffDiagonal,
    /// `e^{i alpha} [[e^{i psi} cos th, e^{i chi} sin th], [-e^{-i chi} sin th, e^{-i psi} cos th]]`
    /// with `cos^2 th` uniform on `[0, 1]`; draws `alpha, psi, chi`, then `u` for `th = acos(sqrt(u))`.
    RandomUnitary,
    /// A fixed list; `count` is ignored.
    Named(Vec<NamedCoin>),
}

impl CoinFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CoinFamily::OffDiagonal => "off-diagonal",
            CoinFamily::RandomUnitary => "random-unitary",
            CoinFamily::Named(_) => "named",
        }
    }
}

/// The coins a scan visits, in sample order.
pub fn sample_coins(family: &CoinFamily, count: usize, seed: u64) -> Result<Vec<Mat2<Complex64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angle = move || TAU * rng.random::<f64>();
    let coins: Vec<Mat2<Complex64>> = match family {
        CoinFamily::OffDiagonal => (0..count)
            .map(|_| {
                let b = Complex64::from_polar(1.0, angle());
                let c = Complex64::from_polar(1.0, angle());
                coins::off_diagonal(b, c)
            })
            .collect(),
        CoinFamily::RandomUnitary => (0..count)
            .map(|_| {
                let (alpha, psi, chi) = (angle(), angle(), angle());
                let theta = (angle() / TAU).sqrt().acos();
                let (s, c) = theta.sin_cos();
                let e = |x: f64| Complex64::from_polar(1.0, x);
                Mat2::new(e(psi) * c, e(chi) * s, -e(-chi) * s, e(-psi) * c).scale(&e(alpha))
            })
            .collect(),
        CoinFamily::Named(list) => list.iter().map(|c| c.matrix()).collect(),
    };
    for u in &coins {
        let residual = u.unitarity_defect().re.sqrt();
        if residual >= UNITARITY_TOL {
            return Err(Error::NonUnitarySample { residual });
        }
    }
    Ok(coins)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanParams {
    pub family: CoinFamily,
    pub count: usize,
    pub seed: u64,
    /// Horizon of the sojourn tables; the return series is truncated here.
    pub max_time: usize,
    pub grid: usize,
    pub flat_tol: f64,
    /// Averaging window of the return probability.
    pub horizon: usize,
    pub diagnostics: DiagnosticsConfig,
}

impl ScanParams {
    pub fn new(family: CoinFamily, count: usize, seed: u64) -> Self {
        ScanParams {
            family,
            count,
            seed,
            max_time: 100,
            grid: DEFAULT_GRID,
            flat_tol: FLAT_TOL,
            horizon: 200,
            diagnostics: DiagnosticsConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub index: usize,
    pub family: String,
    /// `[a, b, c, d]`, row-major.
    pub coin: [Complex64; 4],
    pub flat_band: bool,
    pub max_deviation: f64,
    /// Slowest coefficient-decay class over the entries of `Gamma-`.
    pub decay_class: DecayClass,
    /// Divergence flag of any entry of `Gamma-` at `(z, t) = (1, 1)`.
    pub divergent: bool,
    pub return_probability: f64,
    pub conjecture_consistent: bool,
}

impl ScanReport {
    /// Divergent sojourn series on a dispersive spectrum.
    pub fn counterexample_candidate(&self) -> bool {
        self.divergent && !self.flat_band
    }
}

fn scan_one(
    index: usize,
    family: &str,
    u: &Mat2<Complex64>,
    params: &ScanParams,
) -> Result<ScanReport> {
    let flat = flatness_scan_with_tol(u, params.grid, params.flat_tol)?;
    let n = params.max_time - params.max_time % 2;
    let gamma = gamma_table_with_ceiling(u, n, SojournConvention::Midpoint, usize::MAX)?;
    let bar = gamma_bar_direct(&gamma, n, n, GammaBarMode::IncludeZeroSojourn)?;
    let one = Complex64::new(1.0, 0.0);
    let entries = matrix_diagnostics(&bar, &[(one, one)], &params.diagnostics)?;
    let (decay_class, divergent) = summarize(&entries);

    let walk = WalkConfig::with_ceiling(
        u.clone(),
        Vec2::default_initial(),
        params.horizon,
        usize::MAX,
    )?;
    let table = evolve_xi(&walk)?;
    let ret = averaged_return_probability(&table, walk.initial_state(), params.horizon)?;

    Ok(ScanReport {
        index,
        family: family.to_string(),
        coin: u.m,
        flat_band: flat.flat,
        max_deviation: flat.max_deviation,
        decay_class,
        divergent,
        return_probability: ret.re,
        conjecture_consistent: !divergent || flat.flat,
    })
}

/// Samples the family sequentially, then evaluates coins in parallel;
/// reports come back in sample order and are identical for equal params.
pub fn conjecture_scan(params: &ScanParams) -> Result<Vec<ScanReport>> {
    let coins = sample_coins(&params.family, params.count, params.seed)?;
    let family = params.family.name();
    coins
        .par_iter()
        .enumerate()
        .map(|(i, u)| scan_one(i, family, u, params))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub flat: usize,
    pub divergent: usize,
    pub consistent: usize,
    /// Indices of divergent, non-flat coins.
    pub counterexample_candidates: Vec<usize>,
}

pub fn summarize_scan(reports: &[ScanReport]) -> ScanSummary {
    ScanSummary {
        total: reports.len(),
        flat: reports.iter().filter(|r| r.flat_band).count(),
        divergent: reports.iter().filter(|r| r.divergent).count(),
        consistent: reports.iter().filter(|r| r.conjecture_consistent).count(),
        counterexample_candidates: reports
            .iter()
            .filter(|r| r.counterexample_candidate())
            .map(|r| r.index)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &Mat2<Complex64>, b: &Mat2<Complex64>) -> bool {
        a.m.iter().zip(&b.m).all(|(x, y)| (x - y).norm() < 1e-15)
    }

    #[test]
    fn fourier_examples() {
        let g = coins::grover::<Complex64>();
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        assert_eq!(fourier_coin(&g, 0.0).unwrap(), Mat2::new(z, one, one, z));
        let g2 = fourier_coin(&g, PI / 2.0).unwrap();
        assert!(close(&g2, &Mat2::new(z, c(0.0, -1.0), c(0.0, 1.0), z)));
        let id = fourier_coin(&coins::identity::<Complex64>(), 0.3).unwrap();
        assert!(close(
            &id,
            &Mat2::diag(
                Complex64::from_polar(1.0, -0.3),
                Complex64::from_polar(1.0, 0.3)
            )
        ));
        assert!(matches!(
            fourier_coin(&Mat2::new(one, one, z, one), 0.0),
            Err(Error::NonUnitaryCoin { .. })
        ));
    }

    #[test]
    fn eigenvalue_examples() {
        let g = coins::grover::<Complex64>();
        for j in 0..32 {
            let (a, b) = eigenvalues2(&fourier_coin(&g, j as f64 * 0.2).unwrap());
            assert!((a - 1.0).norm() < 1e-12 && (b + 1.0).norm() < 1e-12);
        }
        let (a, b) = eigenvalues2(&Mat2::diag(c(0.0, 1.0), c(1.0, 0.0)));
        assert_eq!((a, b), (c(1.0, 0.0), c(0.0, 1.0)));

        let h = coins::hadamard::<Complex64>();
        let e0 = eigenvalues2(&fourier_coin(&h, 0.0).unwrap());
        let e1 = eigenvalues2(&fourier_coin(&h, PI / 2.0).unwrap());
        assert!((e0.0 - e1.0).norm() > 0.1);
        for m in [fourier_coin(&h, 1.1).unwrap(), coins::hadamard()] {
            let (a, b) = eigenvalues2(&m);
            for l in [a, b] {
                assert!((l * l - m.trace() * l + m.det()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn flatness_examples() {
        let g = flatness_scan(&coins::grover(), DEFAULT_GRID).unwrap();
        assert!(g.flat && g.max_deviation < 1e-12);
        let h = flatness_scan(&coins::hadamard(), DEFAULT_GRID).unwrap();
        assert!(!h.flat && h.max_deviation > 0.1);
        let th = 0.7;
        let od = coins::off_diagonal(
            Complex64::from_polar(1.0, th),
            Complex64::from_polar(1.0, -th),
        );
        assert!(flatness_scan(&od, DEFAULT_GRID).unwrap().flat);
        assert!(flatness_scan(&od, 8).is_err());
    }

    #[test]
    fn sampling_is_reproducible_and_unitary() {
        for fam in [CoinFamily::OffDiagonal, CoinFamily::RandomUnitary] {
            let a = sample_coins(&fam, 50, 7).unwrap();
            assert_eq!(a, sample_coins(&fam, 50, 7).unwrap());
            assert_ne!(a, sample_coins(&fam, 50, 8).unwrap());
            for u in &a {
                let f = flatness_scan(u, 64).unwrap();
                assert!(f.modulus_defect < 1e-10);
            }
        }
    }

    #[test]
    fn named_scan() {
        let mut params = ScanParams::new(
            CoinFamily::Named(vec![NamedCoin::Grover, NamedCoin::Hadamard]),
            0,
            0,
        );
        params.max_time = 40;
        let reports = conjecture_scan(&params).unwrap();
        assert_eq!(reports.len(), 2);
        let (g, h) = (&reports[0], &reports[1]);
        assert!(g.flat_band && g.divergent && g.conjecture_consistent);
        assert!((g.return_probability - 0.5).abs() < 1e-12);
        assert!(!h.flat_band && !h.divergent);
        assert_ne!(h.decay_class, DecayClass::NonDecaying);
    }
}
