use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin is not unitary (residual {residual:e})")]
    NonUnitaryCoin { residual: f64 },

    #[error("initial state is not normalized (squared norm {norm_sqr})")]
    UnnormalizedState { norm_sqr: f64 },

    #[error("Gram-Schmidt completion produced only {found} of 2 new basis vectors")]
    DegenerateBasis { found: usize },

    #[error("requested time {requested} exceeds the resource ceiling {ceiling}")]
    ResourceLimit { requested: usize, ceiling: usize },

    #[error("coefficient at degree ({z_degree}, {t_degree}) exceeds truncation ({nz}, {nt})")]
    TruncationOverflow {
        z_degree: usize,
        t_degree: usize,
        nz: usize,
        nt: usize,
    },

    #[error("series has a nonzero constant term; (I - X)^-1 is not a formal Neumann series")]
    NonNilpotentConstantTerm,

    #[error("insufficient order: {available} available, at least {required} required")]
    InsufficientOrder { available: usize, required: usize },

    #[error("series identity check failed (residual {residual:e})")]
    IdentityCheck { residual: f64 },

    #[error("sampled coin is not unitary (residual {residual:e})")]
    NonUnitarySample { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
