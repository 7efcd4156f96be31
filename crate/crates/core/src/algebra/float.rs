//! Binary64 complex backend for coins outside Q(i, sqrt 2).

use num_complex::Complex64;

use super::{Backend, Ring, Scalar};

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn frac_1_sqrt2() -> Self {
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }

    fn from_c64(z: Complex64) -> Self {
        z
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Complex64::inv(self))
        }
    }

    fn norm_sqr(&self) -> Self {
        Complex64::new(Complex64::norm_sqr(self), 0.0)
    }

    fn sqrt_real(&self) -> Option<Self> {
        (self.re >= 0.0).then(|| Complex64::new(self.re.sqrt(), 0.0))
    }
}
