use std::fmt::Write;

use num_complex::Complex64;
use qwalk_core::genfun::{
    build_x, convergence_diagnostics, gamma_bar_direct, matrix_diagnostics, neumann_inverse_times,
    series_from_table, symmetrize, BiSeries, DiagnosticsConfig, DiagnosticsReport,
    EntryDiagnostics, GammaBarMode, MATRIX_ORDERS, SCALAR_ORDERS,
};
use qwalk_core::sojourn::{
    decompose_psi, first_return_excursions_with_ceiling, gamma_table_with_ceiling, psi_aggregate,
};
use qwalk_core::{build_basis, split_coin, Mat2};
use serde::Serialize;

use super::{oracle_audit, Value};
use crate::args::Format;
use crate::config::{CliResult, RunConfig};
use crate::output::{emit, emit_sidecar, json_bytes, num};

const SYMMETRIZATION: &str = "ubar(z,t) = u(z,t) + u(-z,t) + u(z,-t) + u(-z,-t): coefficients are 4x the even-even coefficients of u";

#[derive(Serialize)]
struct GammaBarDiagnostics {
    orders: (usize, usize),
    mode: GammaBarMode,
    /// `X (I - X)^{-1}` built from first-return excursions equals the
    /// directly tabulated series.
    closed_form_agrees: bool,
    entries: Vec<EntryDiagnostics>,
}

#[derive(Serialize)]
struct NamedReport {
    name: &'static str,
    report: DiagnosticsReport,
}

#[derive(Serialize)]
struct UbarDiagnostics {
    orders: (usize, usize),
    symmetrization: &'static str,
    series: Vec<NamedReport>,
}

#[derive(Serialize)]
struct Diagnostics {
    command: &'static str,
    coin: String,
    backend: String,
    convention: String,
    eval: Vec<(Complex64, Complex64)>,
    gamma_bar: GammaBarDiagnostics,
    ubar: UbarDiagnostics,
}

#[derive(Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
struct Coefficient<S> {
    series: String,
    z_degree: usize,
    t_degree: usize,
    row: Option<usize>,
    col: Option<usize>,
    value: S,
}

#[derive(Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
struct Document<'a, S> {
    coefficients: Vec<Coefficient<S>>,
    diagnostics: &'a Diagnostics,
}

fn even(n: usize) -> usize {
    n - n % 2
}

pub fn run<S: Value>(cfg: &RunConfig, coin: &Mat2<S>) -> CliResult<()> {
    let (mz, mt) = cfg.truncation.unwrap_or(MATRIX_ORDERS);
    let (sz, st) = cfg.truncation.unwrap_or(SCALAR_ORDERS);
    cfg.check_ceiling(mz.max(sz))?;
    let dcfg = DiagnosticsConfig::default();
    if mz.min(mt).min(sz).min(st) < dcfg.min_order {
        return Err(qwalk_core::Error::InsufficientOrder {
            available: mz.min(mt).min(sz).min(st),
            required: dcfg.min_order,
        }
        .into());
    }
    let eval: Vec<(S, S)> = cfg
        .eval
        .iter()
        .map(|(z, t)| (S::from_c64(*z), S::from_c64(*t)))
        .collect();

    let gamma = gamma_table_with_ceiling(coin, even(mz), cfg.convention, cfg.ceiling)?;
    let gamma_bar = gamma_bar_direct(&gamma, mz, mt, GammaBarMode::IncludeZeroSojourn)?;
    let excursions = first_return_excursions_with_ceiling(coin, even(mz), cfg.ceiling)?;
    let closed = neumann_inverse_times(&build_x(&excursions, mz, mt)?)?;
    let closed_form_agrees = closed.sub(&gamma_bar).terms().all(|(_, m)| m.within(1e-9));
    let entries = matrix_diagnostics(&gamma_bar, &eval, &dcfg)?;

    let (p, q) = split_coin(coin)?;
    let basis = build_basis(&p, &q)?;
    let psi = psi_aggregate(coin, 0, sz, cfg.convention, cfg.ceiling)?;
    let tables = decompose_psi(&psi, &basis);
    let mut ubar: Vec<(&'static str, BiSeries<S>)> = Vec::new();
    for (name, table) in tables.named() {
        let within = table
            .iter()
            .filter(|((_, k), _)| *k <= st)
            .map(|(key, c)| (*key, c.clone()))
            .collect();
        ubar.push((name, symmetrize(&series_from_table(&within, sz, st)?)));
    }
    let ubar_reports = ubar
        .iter()
        .map(|(name, s)| {
            Ok(NamedReport {
                name,
                report: convergence_diagnostics(s, &eval, &dcfg)?,
            })
        })
        .collect::<Result<Vec<_>, qwalk_core::Error>>()?;

    let diagnostics = Diagnostics {
        command: "genfun",
        coin: cfg.coin.label(),
        backend: cfg.backend.to_string(),
        convention: cfg.convention.name().to_string(),
        eval: cfg.eval.clone(),
        gamma_bar: GammaBarDiagnostics {
            orders: (mz, mt),
            mode: GammaBarMode::IncludeZeroSojourn,
            closed_form_agrees,
            entries,
        },
        ubar: UbarDiagnostics {
            orders: (sz, st),
            symmetrization: SYMMETRIZATION,
            series: ubar_reports,
        },
    };

    let mut coefficients = Vec::new();
    for (&(i, j), m) in gamma_bar.terms() {
        for row in 0..2 {
            for col in 0..2 {
                let value = m.get(row, col).clone();
                if !value.is_zero() {
                    coefficients.push(Coefficient {
                        series: "gamma_bar".to_string(),
                        z_degree: i,
                        t_degree: j,
                        row: Some(row),
                        col: Some(col),
                        value,
                    });
                }
            }
        }
    }
    for (name, s) in &ubar {
        for (&(i, j), c) in s.terms() {
            coefficients.push(Coefficient {
                series: format!("ubar_{name}"),
                z_degree: i,
                t_degree: j,
                row: None,
                col: None,
                value: c.clone(),
            });
        }
    }

    let bytes = match cfg.format {
        Format::Csv => {
            let mut out = String::from("series,z_degree,t_degree,row,col,re,im\n");
            for c in &coefficients {
                let z = c.value.to_c64();
                let cell = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    c.series,
                    c.z_degree,
                    c.t_degree,
                    cell(c.row),
                    cell(c.col),
                    num(z.re),
                    num(z.im)
                )
                .expect("string write");
            }
            out.into_bytes()
        }
        Format::Json => json_bytes(&Document {
            coefficients,
            diagnostics: &diagnostics,
        })?,
    };
    emit(cfg.output.as_deref(), &bytes)?;
    if cfg.format == Format::Csv {
        emit_sidecar(cfg.output.as_deref(), ".diagnostics.json", &diagnostics)?;
    }
    summarize(&diagnostics);
    if cfg.oracle {
        oracle_audit(cfg, coin, even(mz))?;
    }
    Ok(())
}

fn point(z: &Complex64) -> String {
    if z.im == 0.0 {
        num(z.re)
    } else {
        format!("{}{:+}i", num(z.re), z.im)
    }
}

fn summarize(d: &Diagnostics) {
    let line = |label: String, r: &DiagnosticsReport| {
        let flags: Vec<String> = r
            .evaluations
            .iter()
            .map(|e| format!("({},{})={}", point(&e.z), point(&e.t), e.divergent))
            .collect();
        eprintln!(
            "{label}: decay {}, divergent {}",
            r.decay_class(),
            flags.join(" ")
        );
    };
    for e in &d.gamma_bar.entries {
        line(format!("gamma_bar[{},{}]", e.row, e.col), &e.report);
    }
    for s in &d.ubar.series {
        line(format!("ubar_{}", s.name), &s.report);
    }
    eprintln!(
        "closed form X(I-X)^-1 agrees: {}",
        d.gamma_bar.closed_form_agrees
    );
}
