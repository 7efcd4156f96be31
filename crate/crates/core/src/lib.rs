//! Exact simulation and analysis of one-dimensional two-state discrete-time
//! quantum walks.
//!
//! The walk moves a walker on the integers with a 2x2 unitary coin `U`,
//! split row-wise as `U = P + Q` into a left-mover `P` and a right-mover `Q`.
//! This crate computes
//!
//! * path-sum amplitudes and position distributions ([`walk`]),
//! * sojourn-time weight tables and first-return excursions ([`sojourn`]),
//! * bivariate generating functions and divergence diagnostics ([`genfun`]),
//! * momentum-space flat-band tests and coin-family scans ([`spectral`]),
//! * exhaustive path enumeration used as ground truth ([`oracle`]).
//!
//! Every computation is generic over a [`Scalar`] backend: [`ExactComplex`]
//! (the field Q(i, sqrt 2), zero rounding error) or `num_complex::Complex64`.

pub mod algebra;
pub mod error;
pub mod genfun;
pub mod oracle;
pub mod sojourn;
pub mod spectral;
pub mod walk;

pub use algebra::{
    build_basis, coins, decompose, split_coin, trace_inner, Backend, BasisCoefficients, CoinBasis,
    ExactComplex, Mat2, QSqrt2, Ring, Scalar, Vec2,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default ceiling on simulated time.
pub const DEFAULT_MAX_TIME: usize = 10_000;
