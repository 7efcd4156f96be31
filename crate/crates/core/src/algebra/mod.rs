//! Amplitude algebra: complex scalars (exact and floating), 2x2 matrices,
//! chirality vectors and the trace-orthonormal coin basis.

mod basis;
pub mod coins;
mod exact;
mod float;
mod mat2;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use basis::{
    build_basis, check_unitary, decompose, split_coin, trace_inner, BasisCoefficients, CoinBasis,
};
pub use exact::{ExactComplex, QSqrt2};
pub use mat2::{Mat2, Vec2};

/// Unitarity tolerance for floating coins (Frobenius norm of `U*U - I`).
pub const UNITARITY_TOL: f64 = 1e-10;

/// Normalization tolerance for floating states and distributions.
pub const NORM_TOL: f64 = 1e-12;

/// Which arithmetic a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

/// The operations a series coefficient needs: a (possibly noncommutative)
/// ring with a recognizable zero.
///
/// Binary operations take references so big-number backends avoid clones.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

/// A complex scalar backend.
pub trait Scalar:
    Ring + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `1/sqrt(2)`, exactly representable in the exact backend.
    fn frac_1_sqrt2() -> Self;
    /// Converts from binary64; the exact backend keeps the value bit-exactly.
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(&self) -> Complex64;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// `|x|^2` as a real-valued scalar.
    fn norm_sqr(&self) -> Self;
    /// Nonnegative square root of a nonnegative real element, when it exists
    /// in the backend's field.
    fn sqrt_real(&self) -> Option<Self>;

    /// Zero test at the backend's tolerance: exact equality for the exact
    /// backend, modulus below `tol` for floats.
    fn within(&self, tol: f64) -> bool {
        match Self::BACKEND {
            Backend::Exact => self.is_zero(),
            Backend::Float => self.to_c64().norm() < tol,
        }
    }

    fn re_f64(&self) -> f64 {
        self.to_c64().re
    }
}
