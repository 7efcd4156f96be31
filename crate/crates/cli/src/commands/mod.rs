mod distribution;
mod genfun;
mod scan;
mod sojourn;

use num_complex::Complex64;
use qwalk_core::oracle::{audit, ORACLE_MAX_STEPS};
use qwalk_core::{Backend, ExactComplex, Mat2, Scalar};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::args::Command;
use crate::config::{CliError, CliResult, RunConfig};
use crate::output::emit_sidecar;

/// A backend scalar the CLI can serialize.
pub trait Value: Scalar + Serialize + DeserializeOwned {}

impl Value for ExactComplex {}
impl Value for Complex64 {}

pub fn run(command: &Command, cfg: &RunConfig) -> CliResult<()> {
    match command {
        Command::Scan(_) => scan::run(cfg),
        _ => match cfg.backend {
            Backend::Exact => dispatch::<ExactComplex>(command, cfg),
            Backend::Float => dispatch::<Complex64>(command, cfg),
        },
    }
}

fn dispatch<S: Value>(command: &Command, cfg: &RunConfig) -> CliResult<()> {
    let coin = cfg.coin_matrix::<S>()?;
    match command {
        Command::Distribution(_) => distribution::run(cfg, &coin),
        Command::Sojourn(_) => sojourn::run(cfg, &coin),
        Command::Genfun(_) => genfun::run(cfg, &coin),
        Command::Scan(_) => unreachable!("scan has its own dispatch"),
    }
}

/// Audits every table up to `min(steps, 20)` against enumeration; writes
/// `<output>.oracle.json` and fails on any disagreement.
fn oracle_audit<S: Value>(cfg: &RunConfig, coin: &Mat2<S>, steps: usize) -> CliResult<()> {
    let n = steps.min(ORACLE_MAX_STEPS);
    let report = audit(coin, n, cfg.convention, &[0])?;
    let compared = report.rows.len();
    let failed = report.rows.iter().filter(|r| !r.agree).count();
    emit_sidecar(cfg.output.as_deref(), ".oracle.json", &report)?;
    eprintln!("oracle audit: n <= {n}, {compared} tables compared, {failed} disagreements");
    if failed > 0 {
        return Err(CliError::Consistency(format!(
            "{failed} tables differ from exhaustive enumeration"
        )));
    }
    Ok(())
}
