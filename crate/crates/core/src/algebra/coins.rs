//! Named coins.

use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Mat2, Scalar};
use crate::error::Error;

/// The Grover coin in one dimension, `[[0, 1], [1, 0]]`.
pub fn grover<S: Scalar>() -> Mat2<S> {
    Mat2::from_i64([0, 1, 1, 0])
}

/// `(1/sqrt2) [[1, 1], [1, -1]]`.
pub fn hadamard<S: Scalar>() -> Mat2<S> {
    let h = S::frac_1_sqrt2();
    Mat2::new(h.clone(), h.clone(), h.clone(), -h)
}

pub fn identity<S: Scalar>() -> Mat2<S> {
    Mat2::identity()
}

/// `[[0, b], [c, 0]]`.
pub fn off_diagonal<S: Scalar>(b: S, c: S) -> Mat2<S> {
    Mat2::new(S::zero(), b, c, S::zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedCoin {
    Grover,
    Hadamard,
    Identity,
}

impl NamedCoin {
    pub fn matrix<S: Scalar>(self) -> Mat2<S> {
        match self {
            NamedCoin::Grover => grover(),
            NamedCoin::Hadamard => hadamard(),
            NamedCoin::Identity => identity(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedCoin::Grover => "grover",
            NamedCoin::Hadamard => "hadamard",
            NamedCoin::Identity => "identity",
        }
    }
}

impl FromStr for NamedCoin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "grover" => Ok(NamedCoin::Grover),
            "hadamard" => Ok(NamedCoin::Hadamard),
            "identity" => Ok(NamedCoin::Identity),
            other => Err(Error::InvalidArgument(format!("unknown coin {other:?}"))),
        }
    }
}

impl std::fmt::Display for NamedCoin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A float coin from its four complex entries, row-major.
pub fn from_entries(entries: [Complex64; 4]) -> Mat2<Complex64> {
    Mat2 { m: entries }
}
