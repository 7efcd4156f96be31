//! Coin splitting and the trace-orthonormal basis `{P, Q, R, S}`.

use serde::{Deserialize, Serialize};

use super::{Backend, Mat2, Ring, Scalar, UNITARITY_TOL};
use crate::error::{Error, Result};

/// Splits a unitary coin row-wise into the left-mover `P` (top row) and
/// right-mover `Q` (bottom row).
pub fn split_coin<S: Scalar>(u: &Mat2<S>) -> Result<(Mat2<S>, Mat2<S>)> {
    check_unitary(u)?;
    let [a, b, c, d] = u.m.clone();
    let p = Mat2::new(a, b, S::zero(), S::zero());
    let q = Mat2::new(S::zero(), S::zero(), c, d);
    Ok((p, q))
}

/// Errors with [`Error::NonUnitaryCoin`] unless `U*U = I` (exactly, or to
/// [`UNITARITY_TOL`] in Frobenius norm for floats).
pub fn check_unitary<S: Scalar>(u: &Mat2<S>) -> Result<()> {
    let defect = u.unitarity_defect();
    let residual = defect.re_f64().max(0.0).sqrt();
    let ok = match S::BACKEND {
        Backend::Exact => defect.is_zero(),
        Backend::Float => residual < UNITARITY_TOL,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NonUnitaryCoin { residual })
    }
}

/// `<A|B> = tr(A* B)`.
pub fn trace_inner<S: Scalar>(a: &Mat2<S>, b: &Mat2<S>) -> S {
    a.m.iter()
        .zip(&b.m)
        .fold(S::zero(), |acc, (x, y)| acc.add_ref(&x.conj().mul_ref(y)))
}

/// Orthonormal basis of the 2x2 complex matrices built around a coin split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct CoinBasis<S> {
    pub p: Mat2<S>,
    pub q: Mat2<S>,
    pub r: Mat2<S>,
    pub s: Mat2<S>,
}

/// Coordinates of a matrix in a [`CoinBasis`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct BasisCoefficients<S> {
    pub p: S,
    pub q: S,
    pub r: S,
    pub s: S,
}

impl<S: Scalar> BasisCoefficients<S> {
    pub fn zero() -> Self {
        BasisCoefficients {
            p: S::zero(),
            q: S::zero(),
            r: S::zero(),
            s: S::zero(),
        }
    }

    pub fn as_array(&self) -> [&S; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }
}

impl<S: Scalar> CoinBasis<S> {
    pub fn elements(&self) -> [&Mat2<S>; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    /// 4x4 matrix of pairwise trace inner products, row-major.
    pub fn gram(&self) -> [[S; 4]; 4] {
        let e = self.elements();
        std::array::from_fn(|i| std::array::from_fn(|j| trace_inner(e[i], e[j])))
    }

    pub fn reconstruct(&self, c: &BasisCoefficients<S>) -> Mat2<S> {
        self.elements()
            .iter()
            .zip(c.as_array())
            .fold(<Mat2<S> as Ring>::zero(), |acc, (m, x)| {
                acc.add_ref(&m.scale(x))
            })
    }
}

/// Completes `{P, Q}` to an orthonormal basis by Gram-Schmidt over the matrix
/// units `E11, E12, E21, E22`, in that order, keeping the first two
/// independent residuals as `R` and `S`. For `P = E12`, `Q = E21` this gives
/// `R = E11`, `S = E22`; taking `R = P` would not be orthonormal.
pub fn build_basis<S: Scalar>(p: &Mat2<S>, q: &Mat2<S>) -> Result<CoinBasis<S>> {
    let one = S::one();
    let unit_ok = |x: S| x.sub_ref(&one).within(UNITARITY_TOL);
    if !unit_ok(trace_inner(p, p))
        || !unit_ok(trace_inner(q, q))
        || !trace_inner(p, q).within(UNITARITY_TOL)
    {
        return Err(Error::InvalidArgument(
            "P and Q must be trace-orthonormal".into(),
        ));
    }

    let mut accepted: Vec<Mat2<S>> = vec![p.clone(), q.clone()];
    for (row, col) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        if accepted.len() == 4 {
            break;
        }
        let e = Mat2::<S>::unit(row, col);
        let residual = accepted.iter().fold(e.clone(), |v, b| {
            let coeff = trace_inner(b, &e);
            v.sub_ref(&b.scale(&coeff))
        });
        if residual.within(1e-8) {
            continue;
        }
        let norm = residual
            .frobenius_sqr()
            .sqrt_real()
            .and_then(|n| n.inv())
            .ok_or_else(|| {
                Error::InvalidArgument("basis normalization leaves the scalar field".into())
            })?;
        accepted.push(residual.scale(&norm));
    }
    if accepted.len() < 4 {
        return Err(Error::DegenerateBasis {
            found: accepted.len() - 2,
        });
    }
    let s = accepted.pop().expect("four elements");
    let r = accepted.pop().expect("four elements");
    Ok(CoinBasis {
        p: p.clone(),
        q: q.clone(),
        r,
        s,
    })
}

/// Coordinates `u = <U|M>` for each basis element `U`.
pub fn decompose<S: Scalar>(m: &Mat2<S>, basis: &CoinBasis<S>) -> BasisCoefficients<S> {
    BasisCoefficients {
        p: trace_inner(&basis.p, m),
        q: trace_inner(&basis.q, m),
        r: trace_inner(&basis.r, m),
        s: trace_inner(&basis.s, m),
    }
}
