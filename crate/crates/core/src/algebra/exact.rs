//! Exact arithmetic in the field Q(i, sqrt 2).
//!
//! An element is stored as `(x1 + x2*sqrt2) + i*(x3 + x4*sqrt2)` with four
//! arbitrary-precision rationals. Every coin the toolkit names (Grover,
//! Hadamard, identity) and the default initial state live in this field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Backend, Ring, Scalar};

/// Real quadratic number `a + b*sqrt(2)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        QSqrt2::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn zero() -> Self {
        QSqrt2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        QSqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }

    fn sub(&self, o: &Self) -> Self {
        QSqrt2::new(&self.a - &o.a, &self.b - &o.b)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QSqrt2::zero();
        }
        // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
        let two = BigRational::from_integer(BigInt::from(2));
        let a = &self.a * &o.a + two * (&self.b * &o.b);
        let b = &self.a * &o.b + &self.b * &o.a;
        QSqrt2::new(a, b)
    }

    fn neg(&self) -> Self {
        QSqrt2::new(-&self.a, -&self.b)
    }

    /// Galois conjugate `a - b*sqrt2`.
    fn galois(&self) -> Self {
        QSqrt2::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a^2 - 2b^2`; nonzero for nonzero elements since sqrt 2 is
    /// irrational.
    fn field_norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.a * &self.a - two * (&self.b * &self.b)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.field_norm();
        let g = self.galois();
        Some(QSqrt2::new(g.a / &n, g.b / n))
    }

    fn scale(&self, r: &BigRational) -> Self {
        QSqrt2::new(&self.a * r, &self.b * r)
    }

    /// Nonnegative square root inside Q(sqrt2), if one exists.
    ///
    /// Solves `(c + d sqrt2)^2 = a + b sqrt2`, i.e. `c^2 + 2d^2 = a`,
    /// `2cd = b`, which forces `c^2 = (a +- sqrt(a^2 - 2b^2)) / 2`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(QSqrt2::zero());
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let disc = rational_sqrt(&self.field_norm())?;
        for s in [disc.clone(), -disc] {
            let c2 = (&self.a + &s) / &two;
            let candidate = if c2.is_zero() {
                rational_sqrt(&(&self.a / &two)).map(|d| QSqrt2::new(BigRational::zero(), d))
            } else {
                rational_sqrt(&c2).map(|c| {
                    let d = &self.b / (&two * &c);
                    QSqrt2::new(c, d)
                })
            };
            if let Some(root) = candidate {
                let root = if root.to_f64() < 0.0 {
                    root.neg()
                } else {
                    root
                };
                if &root.mul(&root) == self {
                    return Some(root);
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

/// Element of Q(i, sqrt 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: QSqrt2,
    pub im: QSqrt2,
}

impl ExactComplex {
    pub fn new(re: QSqrt2, im: QSqrt2) -> Self {
        ExactComplex { re, im }
    }

    /// Builds `(x1 + x2 sqrt2) + i (x3 + x4 sqrt2)`.
    pub fn from_rationals([x1, x2, x3, x4]: [BigRational; 4]) -> Self {
        ExactComplex::new(QSqrt2::new(x1, x2), QSqrt2::new(x3, x4))
    }

    pub fn rationals(&self) -> [BigRational; 4] {
        [
            self.re.a.clone(),
            self.re.b.clone(),
            self.im.a.clone(),
            self.im.b.clone(),
        ]
    }

    /// Rational `num/den`.
    pub fn ratio(num: i64, den: i64) -> Self {
        let r = BigRational::new(num.into(), den.into());
        ExactComplex::new(QSqrt2::new(r, BigRational::zero()), QSqrt2::zero())
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Sign of a real element (`None` if not real). Exact, via comparing
    /// `a^2` against `2 b^2`.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        let QSqrt2 { a, b } = &self.re;
        let sa = sign(a);
        let sb = sign(b);
        Some(if sa == sb || sb == 0 {
            sa
        } else if sa == 0 {
            sb
        } else {
            let two = BigRational::from_integer(BigInt::from(2));
            let a2 = a * a;
            let b2 = two * (b * b);
            if a2 > b2 {
                sa
            } else if a2 < b2 {
                sb
            } else {
                0
            }
        })
    }

    /// Exact conversion of a binary64 complex number.
    pub fn from_f64_parts(re: f64, im: f64) -> Option<Self> {
        let re = BigRational::from_float(re)?;
        let im = BigRational::from_float(im)?;
        Some(ExactComplex::new(
            QSqrt2::new(re, BigRational::zero()),
            QSqrt2::new(im, BigRational::zero()),
        ))
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Ring for ExactComplex {
    fn zero() -> Self {
        ExactComplex::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add_ref(&self, o: &Self) -> Self {
        ExactComplex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    fn sub_ref(&self, o: &Self) -> Self {
        ExactComplex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ExactComplex::zero();
        }
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ExactComplex::new(re, im)
    }

    fn neg_ref(&self) -> Self {
        ExactComplex::new(self.re.neg(), self.im.neg())
    }
}

impl Scalar for ExactComplex {
    const BACKEND: Backend = Backend::Exact;

    fn one() -> Self {
        ExactComplex::new(QSqrt2::from_int(1), QSqrt2::zero())
    }

    fn i() -> Self {
        ExactComplex::new(QSqrt2::zero(), QSqrt2::from_int(1))
    }

    fn from_i64(n: i64) -> Self {
        ExactComplex::new(QSqrt2::from_int(n), QSqrt2::zero())
    }

    fn frac_1_sqrt2() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        ExactComplex::new(QSqrt2::new(BigRational::zero(), half), QSqrt2::zero())
    }

    fn from_c64(z: Complex64) -> Self {
        ExactComplex::from_f64_parts(z.re, z.im).expect("finite complex value")
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn conj(&self) -> Self {
        ExactComplex::new(self.re.clone(), self.im.neg())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/z = conj(z) / |z|^2 with |z|^2 in Q(sqrt2)
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = n.inv()?;
        Some(ExactComplex::new(
            self.re.mul(&ninv),
            self.im.neg().mul(&ninv),
        ))
    }

    fn norm_sqr(&self) -> Self {
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        ExactComplex::new(n, QSqrt2::zero())
    }

    fn sqrt_real(&self) -> Option<Self> {
        if !self.is_real() || self.real_sign()? < 0 {
            return None;
        }
        Some(ExactComplex::new(self.re.sqrt()?, QSqrt2::zero()))
    }
}

impl ExactComplex {
    /// Multiplies by a rational.
    pub fn scale_rational(&self, r: &BigRational) -> Self {
        ExactComplex::new(self.re.scale(r), self.im.scale(r))
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self.add_ref(&rhs)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self.sub_ref(&rhs)
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self.mul_ref(&rhs)
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}
forward_ops!(ExactComplex);

fn fmt_q(q: &QSqrt2, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match (q.a.is_zero(), q.b.is_zero()) {
        (_, true) => write!(f, "{}", q.a),
        (true, false) => write!(f, "{}*sqrt2", q.b),
        (false, false) => write!(f, "{} + {}*sqrt2", q.a, q.b),
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_q(&self.re, f);
        }
        if self.re.is_zero() {
            write!(f, "i*(")?;
            fmt_q(&self.im, f)?;
            return write!(f, ")");
        }
        write!(f, "(")?;
        fmt_q(&self.re, f)?;
        write!(f, ") + i*(")?;
        fmt_q(&self.im, f)?;
        write!(f, ")")
    }
}

/// Wire form: the four rationals as decimal strings plus a float rendering.
#[derive(Serialize, Deserialize)]
struct ExactRepr {
    rational: [String; 4],
    float: [f64; 2],
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let z = self.to_c64();
        ExactRepr {
            rational: self.rationals().map(|r| r.to_string()),
            float: [z.re, z.im],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ExactRepr::deserialize(d)?;
        let mut parts = Vec::with_capacity(4);
        for s in &repr.rational {
            parts.push(
                parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))?,
            );
        }
        let parts: [BigRational; 4] = parts.try_into().expect("four parts");
        Ok(ExactComplex::from_rationals(parts))
    }
}

/// Parses `"p"` or `"p/q"`.
pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
