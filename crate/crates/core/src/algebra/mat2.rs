use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Ring, Scalar};

/// 2x2 matrix, row-major `[a, b, c, d]` for `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct Mat2<S> {
    pub m: [S; 4],
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { m: [a, b, c, d] }
    }

    pub fn from_i64([a, b, c, d]: [i64; 4]) -> Self {
        Mat2::new(
            S::from_i64(a),
            S::from_i64(b),
            S::from_i64(c),
            S::from_i64(d),
        )
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    /// Matrix unit `E_{row,col}` (zero-based).
    pub fn unit(row: usize, col: usize) -> Self {
        let mut out = <Self as Ring>::zero();
        out.m[2 * row + col] = S::one();
        out
    }

    pub fn diag(a: S, d: S) -> Self {
        Mat2::new(a, S::zero(), S::zero(), d)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.m[2 * row + col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = &self.m;
        Mat2::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn trace(&self) -> S {
        self.m[0].add_ref(&self.m[3])
    }

    pub fn det(&self) -> S {
        let [a, b, c, d] = &self.m;
        a.mul_ref(d).sub_ref(&b.mul_ref(c))
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat2 {
            m: std::array::from_fn(|i| self.m[i].mul_ref(s)),
        }
    }

    /// Squared Frobenius norm, as a real-valued scalar.
    pub fn frobenius_sqr(&self) -> S {
        self.m
            .iter()
            .fold(S::zero(), |acc, x| acc.add_ref(&x.norm_sqr()))
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sqr().re_f64().max(0.0).sqrt()
    }

    pub fn apply(&self, v: &Vec2<S>) -> Vec2<S> {
        let [a, b, c, d] = &self.m;
        Vec2::new(
            a.mul_ref(&v.v[0]).add_ref(&b.mul_ref(&v.v[1])),
            c.mul_ref(&v.v[0]).add_ref(&d.mul_ref(&v.v[1])),
        )
    }

    /// Residual of `U*U = I`: squared Frobenius norm as a scalar.
    pub fn unitarity_defect(&self) -> S {
        let g = &self.adjoint() * self;
        (&g - &Mat2::identity()).frobenius_sqr()
    }

    /// Exact zero for the exact backend, `< tol` Frobenius for floats.
    pub fn within(&self, tol: f64) -> bool {
        match S::BACKEND {
            super::Backend::Exact => self.is_zero(),
            super::Backend::Float => self.frobenius() < tol,
        }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Mat2<T> {
        Mat2 {
            m: std::array::from_fn(|i| f(&self.m[i])),
        }
    }
}

impl<S: Scalar> Ring for Mat2<S> {
    fn zero() -> Self {
        Mat2::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    fn is_zero(&self) -> bool {
        self.m.iter().all(Ring::is_zero)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Mat2 {
            m: std::array::from_fn(|i| self.m[i].add_ref(&rhs.m[i])),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Mat2 {
            m: std::array::from_fn(|i| self.m[i].sub_ref(&rhs.m[i])),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &rhs.m;
        Mat2::new(
            a.mul_ref(e).add_ref(&b.mul_ref(g)),
            a.mul_ref(f).add_ref(&b.mul_ref(h)),
            c.mul_ref(e).add_ref(&d.mul_ref(g)),
            c.mul_ref(f).add_ref(&d.mul_ref(h)),
        )
    }

    fn neg_ref(&self) -> Self {
        Mat2 {
            m: std::array::from_fn(|i| self.m[i].neg_ref()),
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        for (x, y) in self.m.iter_mut().zip(&rhs.m) {
            x.add_assign_ref(y);
        }
    }
}

impl<S: Scalar> Add for &Mat2<S> {
    type Output = Mat2<S>;
    fn add(self, rhs: Self) -> Mat2<S> {
        self.add_ref(rhs)
    }
}

impl<S: Scalar> Sub for &Mat2<S> {
    type Output = Mat2<S>;
    fn sub(self, rhs: Self) -> Mat2<S> {
        self.sub_ref(rhs)
    }
}

impl<S: Scalar> Mul for &Mat2<S> {
    type Output = Mat2<S>;
    fn mul(self, rhs: Self) -> Mat2<S> {
        self.mul_ref(rhs)
    }
}

impl<S: Scalar> Neg for &Mat2<S> {
    type Output = Mat2<S>;
    fn neg(self) -> Mat2<S> {
        self.neg_ref()
    }
}

impl<S: Scalar> Add for Mat2<S> {
    type Output = Mat2<S>;
    fn add(self, rhs: Self) -> Mat2<S> {
        self.add_ref(&rhs)
    }
}

impl<S: Scalar> Sub for Mat2<S> {
    type Output = Mat2<S>;
    fn sub(self, rhs: Self) -> Mat2<S> {
        self.sub_ref(&rhs)
    }
}

impl<S: Scalar> Mul for Mat2<S> {
    type Output = Mat2<S>;
    fn mul(self, rhs: Self) -> Mat2<S> {
        self.mul_ref(&rhs)
    }
}

/// Chirality vector `[left, right]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct Vec2<S> {
    pub v: [S; 2],
}

impl<S: Scalar> Vec2<S> {
    pub fn new(left: S, right: S) -> Self {
        Vec2 { v: [left, right] }
    }

    /// `|L> = [1, 0]^T`.
    pub fn left() -> Self {
        Vec2::new(S::one(), S::zero())
    }

    /// `|R> = [0, 1]^T`.
    pub fn right() -> Self {
        Vec2::new(S::zero(), S::one())
    }

    /// The default initial state `[0, i]^T`.
    pub fn default_initial() -> Self {
        Vec2::new(S::zero(), S::i())
    }

    pub fn norm_sqr(&self) -> S {
        self.v[0].norm_sqr().add_ref(&self.v[1].norm_sqr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactComplex;
    use num_complex::Complex64;

    type M = Mat2<ExactComplex>;

    #[test]
    fn identity_is_neutral() {
        let a = M::from_i64([1, -2, 3, 5]);
        let i = M::identity();
        assert_eq!(&i * &a, a);
        assert_eq!(&a * &i, a);
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = M::from_i64([1, 2, 3, 4]);
        let b = M::from_i64([0, 1, 1, 0]);
        assert_eq!(&a * &b, M::from_i64([2, 1, 4, 3]));
        assert_eq!(&b * &a, M::from_i64([3, 4, 1, 2]));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let i = ExactComplex::i();
        let a = M::new(
            i.clone(),
            ExactComplex::from_i64(2),
            ExactComplex::zero(),
            -i.clone(),
        );
        let adj = a.adjoint();
        assert_eq!(adj.m[0], -i.clone());
        assert_eq!(adj.m[2], ExactComplex::from_i64(2));
        assert_eq!(adj.adjoint(), a);
    }

    #[test]
    fn default_state_is_unit() {
        assert_eq!(
            Vec2::<ExactComplex>::default_initial().norm_sqr(),
            ExactComplex::one()
        );
        let f = Vec2::<Complex64>::default_initial().norm_sqr();
        assert!((f.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_matrices() {
        assert_eq!(M::unit(0, 1), M::from_i64([0, 1, 0, 0]));
        assert_eq!(M::unit(1, 0), M::from_i64([0, 0, 1, 0]));
        assert_eq!(M::unit(0, 1).frobenius_sqr(), ExactComplex::one());
    }
}
