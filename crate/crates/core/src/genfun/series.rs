use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Mat2, Ring, Scalar};

/// Truncated bivariate power series `sum c_{i,j} z^i t^j`, `i <= nz`,
/// `j <= nt`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: Deserialize<'de>"))]
pub struct BiSeries<C> {
    nz: usize,
    nt: usize,
    coeffs: BTreeMap<(usize, usize), C>,
}

impl<C: Ring> BiSeries<C> {
    pub fn zero(nz: usize, nt: usize) -> Self {
        BiSeries {
            nz,
            nt,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a series, silently discarding terms beyond the truncation.
    pub fn from_terms(
        nz: usize,
        nt: usize,
        terms: impl IntoIterator<Item = ((usize, usize), C)>,
    ) -> Self {
        let mut s = BiSeries::zero(nz, nt);
        for ((i, j), c) in terms {
            s.add_term(i, j, &c);
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.nz, self.nt)
    }

    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, i: usize, j: usize) -> Option<&C> {
        self.coeffs.get(&(i, j))
    }

    /// Adds `c z^i t^j`; no-op beyond the truncation.
    pub fn add_term(&mut self, i: usize, j: usize, c: &C) {
        if i > self.nz || j > self.nt || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(C::zero);
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        if i > self.nz || j > self.nt {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &C)> {
        self.coeffs.iter()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Same coefficients under a (possibly smaller) truncation.
    pub fn truncate(&self, nz: usize, nt: usize) -> Self {
        BiSeries {
            nz,
            nt,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((i, j), _)| *i <= nz && *j <= nt)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (nz, nt) = (self.nz.min(rhs.nz), self.nt.min(rhs.nt));
        let mut out = self.truncate(nz, nt);
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiSeries {
            nz: self.nz,
            nt: self.nt,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Truncated product; the left factor's coefficients multiply on the
    /// left (matters for matrix coefficients).
    pub fn mul(&self, rhs: &Self) -> Self {
        let (nz, nt) = (self.nz.min(rhs.nz), self.nt.min(rhs.nt));
        let mut out = BiSeries::zero(nz, nt);
        for (&(i1, j1), a) in &self.coeffs {
            if i1 > nz || j1 > nt {
                continue;
            }
            for (&(i2, j2), b) in &rhs.coeffs {
                if i1 + i2 > nz {
                    break;
                }
                if j1 + j2 > nt {
                    continue;
                }
                out.add_term(i1 + i2, j1 + j2, &a.mul_ref(b));
            }
        }
        out
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> BiSeries<D> {
        BiSeries::from_terms(
            self.nz,
            self.nt,
            self.coeffs.iter().map(|(k, c)| (*k, f(c))),
        )
    }
}

impl<S: Scalar> BiSeries<S> {
    /// Evaluates the polynomial truncation at `(z, t)`.
    pub fn eval(&self, z: &S, t: &S) -> S {
        let mut out = S::zero();
        for (&(i, j), c) in &self.coeffs {
            out.add_assign_ref(&c.mul_ref(&pow(z, i)).mul_ref(&pow(t, j)));
        }
        out
    }
}

impl<S: Scalar> BiSeries<Mat2<S>> {
    /// Series with constant coefficient `I` and nothing else.
    pub fn identity(nz: usize, nt: usize) -> Self {
        let mut s = BiSeries::zero(nz, nt);
        s.set(0, 0, Mat2::identity());
        s
    }

    /// Scalar series of matrix entry `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> BiSeries<S> {
        self.map(|m| m.get(row, col).clone())
    }
}

pub(crate) fn pow<S: Scalar>(x: &S, e: usize) -> S {
    let mut out = S::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            out = out.mul_ref(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_ref(&base);
        }
    }
    out
}
