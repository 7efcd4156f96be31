use std::fmt;
use std::path::PathBuf;

use num_complex::Complex64;
use qwalk_core::coins::{self, NamedCoin};
use qwalk_core::sojourn::SojournConvention;
use qwalk_core::walk::check_normalized;
use qwalk_core::{algebra::check_unitary, Backend, Error, Mat2, Scalar, Vec2, DEFAULT_MAX_TIME};

use crate::args::{BackendArg, FamilyArg, Format, RunArgs};

/// Overrides the resource ceiling on steps and truncation orders.
pub const CEILING_ENV: &str = "QWALK_MAX_TIME";

#[derive(Debug)]
pub enum CliError {
    /// Exit code 1.
    Config(String),
    /// Exit code 2.
    Resource(String),
    /// Exit code 3: a self-check failed.
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::Consistency(m) => write!(f, "consistency check failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } | Error::InsufficientOrder { .. } => {
                CliError::Resource(e.to_string())
            }
            Error::NonNilpotentConstantTerm | Error::IdentityCheck { .. } => {
                CliError::Consistency(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(format!("json: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq)]
pub enum CoinSpec {
    Named(Vec<NamedCoin>),
    Custom([Complex64; 4]),
}

impl CoinSpec {
    pub fn label(&self) -> String {
        match self {
            CoinSpec::Named(list) => list.iter().map(|c| c.name()).collect::<Vec<_>>().join(","),
            CoinSpec::Custom(_) => "custom".to_string(),
        }
    }
}

/// Validated command configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub coin: CoinSpec,
    pub initial: [Complex64; 2],
    pub backend: Backend,
    pub steps: Option<usize>,
    pub convention: SojournConvention,
    pub truncation: Option<(usize, usize)>,
    pub grid: usize,
    pub tol: f64,
    pub seed: u64,
    pub family: FamilyArg,
    pub count: usize,
    pub eval: Vec<(Complex64, Complex64)>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub oracle: bool,
    pub ceiling: usize,
}

impl RunConfig {
    pub fn from_args(a: RunArgs) -> CliResult<Self> {
        let coin = match (&a.coin, &a.coin_entries) {
            (_, Some(e)) => CoinSpec::Custom([
                Complex64::new(e[0], e[1]),
                Complex64::new(e[2], e[3]),
                Complex64::new(e[4], e[5]),
                Complex64::new(e[6], e[7]),
            ]),
            (Some(names), None) => CoinSpec::Named(
                names
                    .split(',')
                    .map(|n| n.trim().parse::<NamedCoin>())
                    .collect::<Result<_, _>>()?,
            ),
            (None, None) => CoinSpec::Named(vec![NamedCoin::Grover]),
        };
        let backend = match (a.backend, &coin) {
            (Some(BackendArg::Exact), _) => Backend::Exact,
            (Some(BackendArg::Float), _) => Backend::Float,
            (None, CoinSpec::Named(_)) => Backend::Exact,
            (None, CoinSpec::Custom(_)) => Backend::Float,
        };
        let ceiling = match std::env::var(CEILING_ENV) {
            Ok(v) => v
                .parse()
                .map_err(|_| CliError::Config(format!("{CEILING_ENV}={v:?} is not a count")))?,
            Err(_) => DEFAULT_MAX_TIME,
        };
        let i = a.initial;
        let eval = if a.eval.is_empty() {
            vec![(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))]
        } else {
            a.eval
                .iter()
                .map(|e| (Complex64::new(e[0], e[1]), Complex64::new(e[2], e[3])))
                .collect()
        };
        if a.tol.is_nan() || a.tol <= 0.0 {
            return Err(CliError::Config(format!(
                "--tol must be positive, got {}",
                a.tol
            )));
        }
        let cfg = RunConfig {
            coin,
            initial: [Complex64::new(i[0], i[1]), Complex64::new(i[2], i[3])],
            backend,
            steps: a.steps,
            convention: a.convention.parse()?,
            truncation: a.truncation,
            grid: a.grid,
            tol: a.tol,
            seed: a.seed,
            family: a.family,
            count: a.count,
            eval,
            format: a.format,
            output: a.output,
            oracle: a.oracle,
            ceiling,
        };
        match cfg.backend {
            Backend::Exact => cfg.validate::<qwalk_core::ExactComplex>()?,
            Backend::Float => cfg.validate::<Complex64>()?,
        }
        Ok(cfg)
    }

    fn validate<S: Scalar>(&self) -> CliResult<()> {
        if let CoinSpec::Custom(_) = self.coin {
            check_unitary(&self.coin_matrix::<S>()?)?;
        }
        check_normalized(&self.initial_state::<S>())?;
        Ok(())
    }

    /// The single coin of a non-scan command.
    pub fn coin_matrix<S: Scalar>(&self) -> CliResult<Mat2<S>> {
        match &self.coin {
            CoinSpec::Named(list) if list.len() == 1 => Ok(list[0].matrix()),
            CoinSpec::Named(_) => Err(CliError::Config(
                "a coin list is only accepted by `scan --family named`".to_string(),
            )),
            CoinSpec::Custom(e) => Ok(coins::from_entries(*e).map(|z| S::from_c64(*z))),
        }
    }

    pub fn initial_state<S: Scalar>(&self) -> Vec2<S> {
        Vec2::new(S::from_c64(self.initial[0]), S::from_c64(self.initial[1]))
    }

    pub fn steps_or(&self, default: usize) -> CliResult<usize> {
        let n = self.steps.unwrap_or(default);
        self.check_ceiling(n)?;
        Ok(n)
    }

    pub fn check_ceiling(&self, n: usize) -> CliResult<()> {
        if n > self.ceiling {
            return Err(CliError::Resource(format!(
                "{n} exceeds the ceiling {} (set {CEILING_ENV} to raise it)",
                self.ceiling
            )));
        }
        Ok(())
    }
}
