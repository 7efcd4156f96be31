use std::fmt::Write;

use qwalk_core::walk::{slice_distribution, WalkConfig, XiSlices};
use qwalk_core::Mat2;
use serde::Serialize;

use super::{oracle_audit, Value};
use crate::args::Format;
use crate::config::{CliResult, RunConfig};
use crate::output::{emit, json_bytes, num};

const DEFAULT_STEPS: usize = 100;

#[derive(Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
struct Row<S> {
    n: usize,
    x: i64,
    probability: f64,
    value: S,
}

#[derive(Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
struct Document<S> {
    command: &'static str,
    coin: String,
    backend: String,
    steps: usize,
    initial: [[f64; 2]; 2],
    rows: Vec<Row<S>>,
}

pub fn run<S: Value>(cfg: &RunConfig, coin: &Mat2<S>) -> CliResult<()> {
    let steps = cfg.steps_or(DEFAULT_STEPS)?;
    let walk = WalkConfig::with_ceiling(coin.clone(), cfg.initial_state(), steps, cfg.ceiling)?;
    let mut rows = Vec::new();
    for (n, slice) in XiSlices::new(walk.coin(), steps)?.enumerate() {
        let support = slice
            .iter()
            .enumerate()
            .map(|(m, xi)| (2 * m as i64 - n as i64, xi));
        for (x, p) in slice_distribution(support, walk.initial_state()) {
            rows.push(Row {
                n,
                x,
                probability: p.re_f64(),
                value: p,
            });
        }
    }

    let bytes = match cfg.format {
        Format::Csv => {
            let mut out = String::from("n,x,probability\n");
            for r in &rows {
                writeln!(out, "{},{},{}", r.n, r.x, num(r.probability)).expect("string write");
            }
            out.into_bytes()
        }
        Format::Json => json_bytes(&Document {
            command: "distribution",
            coin: cfg.coin.label(),
            backend: cfg.backend.to_string(),
            steps,
            initial: cfg.initial.map(|z| [z.re, z.im]),
            rows,
        })?,
    };
    emit(cfg.output.as_deref(), &bytes)?;
    if cfg.oracle {
        oracle_audit(cfg, coin, steps)?;
    }
    Ok(())
}
