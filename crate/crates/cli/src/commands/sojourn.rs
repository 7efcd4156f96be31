use std::fmt::Write;

use qwalk_core::sojourn::{
    first_return_excursions_with_ceiling, gamma_table_with_ceiling, psi_table_with_ceiling,
    verify_renewal, RenewalReport,
};
use qwalk_core::{Mat2, Ring, Scalar};
use serde::Serialize;

use super::{oracle_audit, Value};
use crate::args::Format;
use crate::config::{CliResult, RunConfig};
use crate::output::{emit, emit_sidecar, json_bytes, num, sidecar, write_atomic};

const DEFAULT_STEPS: usize = 20;

#[derive(Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
struct GammaEntry<S> {
    n: usize,
    k: usize,
    matrix: Mat2<S>,
}

#[derive(Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
struct PsiEntry<S> {
    n: usize,
    x: i64,
    y: i64,
    k: usize,
    matrix: Mat2<S>,
}

#[derive(Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
struct Document<S> {
    command: &'static str,
    coin: String,
    backend: String,
    steps: usize,
    convention: String,
    /// Nonzero `Gamma_n(k)`.
    gamma: Vec<GammaEntry<S>>,
    /// Nonzero `Psi_n^{0 -> y}(k)`.
    psi: Vec<PsiEntry<S>>,
    renewal: RenewalReport,
}

fn entry_rows(out: &mut String, prefix: &str, m: &Mat2<impl Scalar>) {
    for i in 0..2 {
        for j in 0..2 {
            let z = m.get(i, j).to_c64();
            writeln!(out, "{prefix},{i},{j},{},{}", num(z.re), num(z.im)).expect("string write");
        }
    }
}

pub fn run<S: Value>(cfg: &RunConfig, coin: &Mat2<S>) -> CliResult<()> {
    let steps = cfg.steps_or(DEFAULT_STEPS)?;
    let gamma = gamma_table_with_ceiling(coin, steps, cfg.convention, cfg.ceiling)?;
    let psi = psi_table_with_ceiling(coin, 0, steps, cfg.convention, cfg.ceiling)?;
    let excursions = first_return_excursions_with_ceiling(coin, steps, cfg.ceiling)?;
    let renewal = verify_renewal(&gamma, &excursions);

    match cfg.format {
        Format::Csv => {
            let mut out = String::from("n,k,i,j,re,im\n");
            for n in (0..=steps).step_by(2) {
                for k in 0..=n {
                    entry_rows(&mut out, &format!("{n},{k}"), &gamma.get(n, k));
                }
            }
            emit(cfg.output.as_deref(), out.as_bytes())?;
            if let Some(o) = cfg.output.as_deref() {
                let mut psi_out = String::from("n,x,y,k,i,j,re,im\n");
                for (&(n, y, k), m) in psi.iter() {
                    if !m.is_zero() {
                        entry_rows(&mut psi_out, &format!("{n},0,{y},{k}"), m);
                    }
                }
                write_atomic(&sidecar(o, ".psi.csv"), psi_out.as_bytes())?;
                emit_sidecar(Some(o), ".renewal.json", &renewal)?;
            }
        }
        Format::Json => {
            let doc = Document {
                command: "sojourn",
                coin: cfg.coin.label(),
                backend: cfg.backend.to_string(),
                steps,
                convention: cfg.convention.name().to_string(),
                gamma: gamma
                    .iter()
                    .map(|(&(n, k), m)| GammaEntry {
                        n,
                        k,
                        matrix: m.clone(),
                    })
                    .collect(),
                psi: psi
                    .iter()
                    .filter(|(_, m)| !m.is_zero())
                    .map(|(&(n, y, k), m)| PsiEntry {
                        n,
                        x: 0,
                        y,
                        k,
                        matrix: m.clone(),
                    })
                    .collect(),
                renewal: renewal.clone(),
            };
            emit(cfg.output.as_deref(), &json_bytes(&doc)?)?;
        }
    }

    let orders: Vec<String> = renewal
        .matching_orders
        .iter()
        .map(|o| format!("{o:?}").to_lowercase())
        .collect();
    eprintln!(
        "renewal: matching factor orders [{}]; residual right {} left {}; base shapes residual {}",
        orders.join(","),
        renewal.max_residual_right,
        renewal.max_residual_left,
        renewal.max_residual_base_shapes
    );
    if cfg.oracle {
        oracle_audit(cfg, coin, steps)?;
    }
    Ok(())
}
