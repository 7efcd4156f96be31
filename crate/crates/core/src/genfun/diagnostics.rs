//! Finite-window convergence diagnostics for truncated series.
//!
//! A finite truncation cannot prove divergence. These diagnostics give a
//! falsifiable proxy: a series is flagged divergent at a point when its terms
//! there do not decay over the window (so the necessary condition for
//! convergence visibly fails) or when its partial sums grow monotonically by
//! more than a configured factor.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::series::{pow, BiSeries};
use crate::algebra::{Mat2, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayClass {
    Faster,
    PolynomialDecay,
    NonDecaying,
}

impl std::fmt::Display for DecayClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DecayClass::Faster => "faster",
            DecayClass::PolynomialDecay => "polynomial-decay",
            DecayClass::NonDecaying => "non-decaying",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsConfig {
    /// Partial-sum growth (end of window over onset) that counts as unbounded.
    pub growth_factor: f64,
    /// Minimum truncation order in each variable.
    pub min_order: usize,
    /// Log-log envelope slope at or above which a sequence is non-decaying.
    pub nondecay_exponent: f64,
    /// Per-order envelope ratio at or below which decay counts as geometric.
    pub geometric_ratio: f64,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        DiagnosticsConfig {
            growth_factor: 10.0,
            min_order: 20,
            nondecay_exponent: -0.25,
            geometric_ratio: 0.9,
        }
    }
}

/// Envelope trend of a nonnegative sequence over its tail window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub class: DecayClass,
    /// Window `[first, last]` used.
    pub window: (usize, usize),
    /// Log-log slope of the running tail maximum between the window start
    /// and its midpoint; `None` when the window is all zero.
    pub exponent: Option<f64>,
    /// Per-order ratio of the envelope over the same span.
    pub ratio: Option<f64>,
}

/// Classifies `seq[n]`, `n = 0..=N`, on the window `[ceil(N/5), N]` using
/// the tail-maximum envelope, which is robust to oscillation and to parity
/// zeros.
pub fn classify(seq: &[f64], cfg: &DiagnosticsConfig) -> Trend {
    let last = seq.len().saturating_sub(1);
    let first = last.div_ceil(5).max(1).min(last);
    let mid = first + (last - first) / 2;
    let tail_max = |from: usize| seq[from..=last].iter().copied().fold(0.0, f64::max);
    let b1 = tail_max(first);
    let b2 = tail_max(mid);
    let window = (first, last);
    if b1 == 0.0 || b2 == 0.0 || mid == first {
        return Trend {
            class: if b1 == 0.0 || b2 == 0.0 {
                DecayClass::Faster
            } else {
                DecayClass::NonDecaying
            },
            window,
            exponent: None,
            ratio: None,
        };
    }
    let exponent = (b2 / b1).ln() / (mid as f64 / first as f64).ln();
    let ratio = (b2 / b1).powf(1.0 / (mid - first) as f64);
    let class = if exponent >= cfg.nondecay_exponent {
        DecayClass::NonDecaying
    } else if ratio <= cfg.geometric_ratio {
        DecayClass::Faster
    } else {
        DecayClass::PolynomialDecay
    };
    Trend {
        class,
        window,
        exponent: Some(exponent),
        ratio: Some(ratio),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalDiagnostics {
    pub z: Complex64,
    pub t: Complex64,
    /// `S_N = sum_{i <= N} sum_j c_{i,j} z^i t^j` for `N = 0..=nz`.
    pub partial_sums: Vec<Complex64>,
    /// Decay trend of the order-`N` terms `|S_N - S_{N-1}|`.
    pub terms: Trend,
    /// `|S_nz| / |S_onset|`, onset being the first nonzero partial sum.
    pub growth_ratio: f64,
    /// `|S_N|` nondecreasing over the second half of the window and
    /// strictly larger at its end.
    pub monotone_tail: bool,
    pub unbounded_growth: bool,
    pub divergent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub orders: (usize, usize),
    /// `|c_{n,n}|`.
    pub diagonal_norms: Vec<f64>,
    /// `|c_{n,0}|`.
    pub t0_norms: Vec<f64>,
    /// `sum_k |c_{n,k}|`.
    pub slice_norms: Vec<f64>,
    /// `1 / limsup (slice_norm_n)^(1/n)` over the second half of the window;
    /// `None` for an infinite radius.
    pub root_test_radius: Option<f64>,
    pub decay: Trend,
    pub evaluations: Vec<EvalDiagnostics>,
}

impl DiagnosticsReport {
    pub fn decay_class(&self) -> DecayClass {
        self.decay.class
    }

    pub fn any_divergent(&self) -> bool {
        self.evaluations.iter().any(|e| e.divergent)
    }
}

/// Partial sums in z-order, `S_N` for `N = 0..=nz`, in the series' own
/// arithmetic.
pub fn partial_sums<S: Scalar>(s: &BiSeries<S>, z: &S, t: &S) -> Vec<S> {
    let (nz, _) = s.orders();
    let mut terms = vec![S::zero(); nz + 1];
    for (&(i, j), c) in s.terms() {
        terms[i].add_assign_ref(&c.mul_ref(&pow(z, i)).mul_ref(&pow(t, j)));
    }
    let mut acc = S::zero();
    terms
        .into_iter()
        .map(|term| {
            acc.add_assign_ref(&term);
            acc.clone()
        })
        .collect()
}

pub fn convergence_diagnostics<S: Scalar>(
    s: &BiSeries<S>,
    eval: &[(S, S)],
    cfg: &DiagnosticsConfig,
) -> Result<DiagnosticsReport> {
    let (nz, nt) = s.orders();
    if nz < cfg.min_order || nt < cfg.min_order {
        return Err(Error::InsufficientOrder {
            available: nz.min(nt),
            required: cfg.min_order,
        });
    }
    let diag_len = nz.min(nt) + 1;
    let mut diagonal_norms = vec![0.0; diag_len];
    let mut t0_norms = vec![0.0; nz + 1];
    let mut slice_norms = vec![0.0; nz + 1];
    for (&(i, j), c) in s.terms() {
        let a = c.to_c64().norm();
        if i == j {
            diagonal_norms[i] = a;
        }
        if j == 0 {
            t0_norms[i] = a;
        }
        slice_norms[i] += a;
    }

    let limsup = slice_norms
        .iter()
        .enumerate()
        .skip((nz / 2).max(1))
        .filter(|(_, a)| **a > 0.0)
        .map(|(n, a)| a.powf(1.0 / n as f64))
        .fold(0.0, f64::max);
    let root_test_radius = (limsup > 0.0).then(|| 1.0 / limsup);

    let evaluations = eval.iter().map(|(z, t)| evaluate(s, z, t, cfg)).collect();

    Ok(DiagnosticsReport {
        orders: (nz, nt),
        decay: classify(&slice_norms, cfg),
        diagonal_norms,
        t0_norms,
        slice_norms,
        root_test_radius,
        evaluations,
    })
}

fn evaluate<S: Scalar>(s: &BiSeries<S>, z: &S, t: &S, cfg: &DiagnosticsConfig) -> EvalDiagnostics {
    let sums: Vec<Complex64> = partial_sums(s, z, t).iter().map(Scalar::to_c64).collect();
    let norms: Vec<f64> = sums.iter().map(|x| x.norm()).collect();
    let term_norms: Vec<f64> = sums
        .iter()
        .enumerate()
        .map(|(n, x)| {
            if n == 0 {
                x.norm()
            } else {
                (x - sums[n - 1]).norm()
            }
        })
        .collect();
    let terms = classify(&term_norms, cfg);

    let last = norms.len() - 1;
    let growth_ratio = norms
        .iter()
        .find(|x| **x > 0.0)
        .map_or(0.0, |onset| norms[last] / onset);
    let half = last / 2;
    let monotone_tail = norms[half..]
        .windows(2)
        .all(|w| w[1] >= w[0] * (1.0 - 1e-12))
        && norms[last] > norms[half];
    let unbounded_growth = monotone_tail && growth_ratio > cfg.growth_factor;

    EvalDiagnostics {
        z: z.to_c64(),
        t: t.to_c64(),
        divergent: terms.class == DecayClass::NonDecaying || unbounded_growth,
        partial_sums: sums,
        terms,
        growth_ratio,
        monotone_tail,
        unbounded_growth,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryDiagnostics {
    pub row: usize,
    pub col: usize,
    pub report: DiagnosticsReport,
}

/// Runs [`convergence_diagnostics`] on each of the four matrix entries.
pub fn matrix_diagnostics<S: Scalar>(
    s: &BiSeries<Mat2<S>>,
    eval: &[(S, S)],
    cfg: &DiagnosticsConfig,
) -> Result<Vec<EntryDiagnostics>> {
    let mut out = Vec::with_capacity(4);
    for row in 0..2 {
        for col in 0..2 {
            let report = convergence_diagnostics(&s.entry(row, col), eval, cfg)?;
            out.push(EntryDiagnostics { row, col, report });
        }
    }
    Ok(out)
}

/// The slowest decay class and any-divergence flag across entries.
pub fn summarize(entries: &[EntryDiagnostics]) -> (DecayClass, bool) {
    let class = entries
        .iter()
        .map(|e| e.report.decay_class())
        .max()
        .unwrap_or(DecayClass::Faster);
    (class, entries.iter().any(|e| e.report.any_divergent()))
}
