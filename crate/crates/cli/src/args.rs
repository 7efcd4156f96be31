use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qwalk",
    version,
    about = "Quantum walk sojourn-time experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Position distribution P(X_n = x) for n = 0..=steps
    Distribution(RunArgs),
    /// Sojourn tables Gamma_n(k), Psi_n(k) and the renewal check
    Sojourn(RunArgs),
    /// Generating-function coefficients and divergence diagnostics
    Genfun(RunArgs),
    /// Flat-band / sojourn-divergence scan over a coin family
    Scan(RunArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    OffDiagonal,
    RandomUnitary,
    Named,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Named coin (grover, hadamard, identity); comma-separated list for `scan --family named`
    #[arg(long, conflicts_with = "coin_entries")]
    pub coin: Option<String>,

    /// Custom coin as re0,im0,re1,im1,re2,im2,re3,im3 (row-major a, b, c, d)
    #[arg(long, value_parser = floats::<8>, allow_hyphen_values = true)]
    pub coin_entries: Option<[f64; 8]>,

    /// Initial chirality state re0,im0,re1,im1
    #[arg(long, value_parser = floats::<4>, default_value = "0,0,0,1", allow_hyphen_values = true)]
    pub initial: [f64; 4],

    /// Arithmetic backend [default: exact for named coins, float for custom entries]
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,

    /// Time horizon N
    #[arg(long)]
    pub steps: Option<usize>,

    /// Sojourn convention: midpoint or endpoint
    #[arg(long, default_value = "midpoint")]
    pub convention: String,

    /// Series truncation orders NZ,NT
    #[arg(long, value_parser = orders)]
    pub truncation: Option<(usize, usize)>,

    /// Momentum grid size for flat-band tests
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,

    /// Flat-band tolerance
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    /// Seed for sampled coin families
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Coin family for `scan`
    #[arg(long, value_enum, default_value = "off-diagonal")]
    pub family: FamilyArg,

    /// Number of sampled coins for `scan`
    #[arg(long, default_value_t = 20)]
    pub count: usize,

    /// Evaluation point z_re,z_im,t_re,t_im (repeatable) [default: 1,0,1,0]
    #[arg(long, value_parser = floats::<4>, allow_hyphen_values = true)]
    pub eval: Vec<[f64; 4]>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Output file; stdout when absent (sidecar files need this)
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Audit the dynamic programs against exhaustive path enumeration
    #[arg(long)]
    pub oracle: bool,
}

fn floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let vals = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(v) = vals.iter().find(|v| !v.is_finite()) {
        return Err(format!("non-finite value {v}"));
    }
    let n = vals.len();
    vals.try_into()
        .map_err(|_| format!("expected {N} comma-separated numbers, got {n}"))
}

fn orders(s: &str) -> Result<(usize, usize), String> {
    match s.split_once(',') {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?,
            b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?,
        )),
        None => Err("expected NZ,NT".to_string()),
    }
}
