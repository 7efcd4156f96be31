use std::fmt::Write;

use qwalk_core::spectral::{
    conjecture_scan, summarize_scan, CoinFamily, ScanParams, ScanReport, ScanSummary,
};
use qwalk_core::Backend;
use serde::Serialize;

use crate::args::{FamilyArg, Format};
use crate::config::{CliError, CliResult, CoinSpec, RunConfig};
use crate::output::{emit, json_bytes, num};

const DEFAULT_STEPS: usize = 100;

#[derive(Serialize)]
struct Document<'a> {
    command: &'static str,
    params: &'a ScanParams,
    reports: &'a [ScanReport],
    summary: &'a ScanSummary,
}

fn family(cfg: &RunConfig) -> CliResult<CoinFamily> {
    Ok(match cfg.family {
        FamilyArg::OffDiagonal => CoinFamily::OffDiagonal,
        FamilyArg::RandomUnitary => CoinFamily::RandomUnitary,
        FamilyArg::Named => match &cfg.coin {
            CoinSpec::Named(list) => CoinFamily::Named(list.clone()),
            CoinSpec::Custom(_) => {
                return Err(CliError::Config(
                    "--family named takes --coin names".to_string(),
                ))
            }
        },
    })
}

pub fn run(cfg: &RunConfig) -> CliResult<()> {
    if cfg.backend == Backend::Exact && cfg.family != FamilyArg::Named {
        // sampled coins have transcendental entries
        return Err(CliError::Config(
            "scan over sampled families needs --backend float".to_string(),
        ));
    }
    let steps = cfg.steps_or(DEFAULT_STEPS)?;
    let mut params = ScanParams::new(family(cfg)?, cfg.count, cfg.seed);
    params.max_time = steps;
    params.grid = cfg.grid;
    params.flat_tol = cfg.tol;
    cfg.check_ceiling(params.horizon)?;

    let reports = conjecture_scan(&params)?;
    let summary = summarize_scan(&reports);

    let bytes = match cfg.format {
        Format::Csv => {
            let mut out = String::from(
                "index,family,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im,flat_band,max_deviation,decay_class,divergent,return_probability,conjecture_consistent\n",
            );
            for r in &reports {
                let coin: Vec<String> =
                    r.coin.iter().flat_map(|z| [num(z.re), num(z.im)]).collect();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.index,
                    r.family,
                    coin.join(","),
                    r.flat_band,
                    num(r.max_deviation),
                    r.decay_class,
                    r.divergent,
                    num(r.return_probability),
                    r.conjecture_consistent
                )
                .expect("string write");
            }
            out.into_bytes()
        }
        Format::Json => json_bytes(&Document {
            command: "scan",
            params: &params,
            reports: &reports,
            summary: &summary,
        })?,
    };
    emit(cfg.output.as_deref(), &bytes)?;
    let candidates: Vec<String> = summary
        .counterexample_candidates
        .iter()
        .map(|i| i.to_string())
        .collect();
    eprintln!(
        "scan: {} coins, {} flat-band, {} divergent, {} conjecture-consistent, {} counterexample candidates [{}]",
        summary.total,
        summary.flat,
        summary.divergent,
        summary.consistent,
        candidates.len(),
        candidates.join(",")
    );
    Ok(())
}
