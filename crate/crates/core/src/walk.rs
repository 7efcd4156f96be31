//! Path-sum amplitudes `Xi_n(l, m)` and the position distribution.
//!
//! `Xi_n(l, m)` is the sum over all `n`-step paths with `l` left and `m` right
//! moves of the time-ordered product of `P`/`Q` factors, newest step on the
//! left. It obeys
//!
//! ```text
//! Xi_{n+1}(l, m) = P Xi_n(l-1, m) + Q Xi_n(l, m-1),   Xi_0(0, 0) = I,
//! ```
//!
//! and the walker's position distribution from a state `phi` is
//! `P(X_n = x) = |Xi_n(l, m) phi|^2` with `x = m - l`.

use serde::{Deserialize, Serialize};

use crate::algebra::{split_coin, Backend, Mat2, Ring, Scalar, Vec2, NORM_TOL};
use crate::error::{Error, Result};
use crate::DEFAULT_MAX_TIME;

#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig<S> {
    coin: Mat2<S>,
    initial_state: Vec2<S>,
    max_time: usize,
    ceiling: usize,
}

impl<S: Scalar> WalkConfig<S> {
    pub fn new(coin: Mat2<S>, initial_state: Vec2<S>, max_time: usize) -> Result<Self> {
        Self::with_ceiling(coin, initial_state, max_time, DEFAULT_MAX_TIME)
    }

    /// Like [`WalkConfig::new`] with an explicit resource ceiling on `max_time`.
    pub fn with_ceiling(
        coin: Mat2<S>,
        initial_state: Vec2<S>,
        max_time: usize,
        ceiling: usize,
    ) -> Result<Self> {
        crate::algebra::check_unitary(&coin)?;
        check_normalized(&initial_state)?;
        Ok(WalkConfig {
            coin,
            initial_state,
            max_time,
            ceiling,
        })
    }

    pub fn coin(&self) -> &Mat2<S> {
        &self.coin
    }

    pub fn initial_state(&self) -> &Vec2<S> {
        &self.initial_state
    }

    pub fn max_time(&self) -> usize {
        self.max_time
    }
}

pub fn check_normalized<S: Scalar>(v: &Vec2<S>) -> Result<()> {
    let n = v.norm_sqr();
    let ok = match S::BACKEND {
        Backend::Exact => n == S::one(),
        Backend::Float => (n.re_f64() - 1.0).abs() < NORM_TOL,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnnormalizedState {
            norm_sqr: n.re_f64(),
        })
    }
}

pub(crate) fn check_ceiling(requested: usize, ceiling: usize) -> Result<()> {
    if requested > ceiling {
        Err(Error::ResourceLimit { requested, ceiling })
    } else {
        Ok(())
    }
}

/// `Xi_n(l, m)` for every `n <= N`, stored densely per time slice: slice `n`
/// holds `n + 1` matrices indexed by the number of right moves `m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct AmplitudeTable<S> {
    slices: Vec<Vec<Mat2<S>>>,
}

impl<S: Scalar> AmplitudeTable<S> {
    pub fn max_time(&self) -> usize {
        self.slices.len() - 1
    }

    /// `Xi_n` at position `x`; `None` off the lattice (`|x| > n` or wrong parity).
    pub fn get(&self, n: usize, x: i64) -> Option<&Mat2<S>> {
        let slice = self.slices.get(n)?;
        let m = position_to_right_moves(n, x)?;
        slice.get(m)
    }

    /// `(x, Xi_n)` pairs for the support `-n, -n+2, ..., n`.
    pub fn slice(&self, n: usize) -> impl Iterator<Item = (i64, &Mat2<S>)> {
        self.slices[n]
            .iter()
            .enumerate()
            .map(move |(m, xi)| (2 * m as i64 - n as i64, xi))
    }
}

fn position_to_right_moves(n: usize, x: i64) -> Option<usize> {
    let n = n as i64;
    if x.abs() > n || (n + x) % 2 != 0 {
        return None;
    }
    Some(((n + x) / 2) as usize)
}

/// Streams the time slices of `Xi` without retaining them.
pub struct XiSlices<S> {
    p: Mat2<S>,
    q: Mat2<S>,
    current: Option<Vec<Mat2<S>>>,
    remaining: usize,
}

impl<S: Scalar> XiSlices<S> {
    pub fn new(coin: &Mat2<S>, max_time: usize) -> Result<Self> {
        let (p, q) = split_coin(coin)?;
        Ok(XiSlices {
            p,
            q,
            current: None,
            remaining: max_time + 1,
        })
    }
}

impl<S: Scalar> Iterator for XiSlices<S> {
    type Item = Vec<Mat2<S>>;

    fn next(&mut self) -> Option<Vec<Mat2<S>>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let next = match &self.current {
            None => vec![Mat2::identity()],
            Some(prev) => {
                let n = prev.len() - 1;
                (0..=n + 1)
                    .map(|m| {
                        // left move keeps m, right move came from m - 1
                        let mut acc = <Mat2<S> as Ring>::zero();
                        if m <= n {
                            acc.add_assign_ref(&(&self.p * &prev[m]));
                        }
                        if m >= 1 {
                            acc.add_assign_ref(&(&self.q * &prev[m - 1]));
                        }
                        acc
                    })
                    .collect()
            }
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// Fills `Xi_n` for all `n <= N` in `O(N^2)` matrix products.
pub fn evolve_xi<S: Scalar>(config: &WalkConfig<S>) -> Result<AmplitudeTable<S>> {
    check_ceiling(config.max_time, config.ceiling)?;
    let slices = XiSlices::new(&config.coin, config.max_time)?.collect();
    Ok(AmplitudeTable { slices })
}

/// `|Xi phi|^2` for one slice given as `(x, Xi)` pairs.
pub fn slice_distribution<'a, S: Scalar>(
    slice: impl Iterator<Item = (i64, &'a Mat2<S>)>,
    phi: &Vec2<S>,
) -> Vec<(i64, S)> {
    slice.map(|(x, xi)| (x, xi.apply(phi).norm_sqr())).collect()
}

/// `P(X_n = x)` over the support `{-n, -n+2, ..., n}`, ascending in `x`.
pub fn position_distribution<S: Scalar>(
    table: &AmplitudeTable<S>,
    phi: &Vec2<S>,
    n: usize,
) -> Result<Vec<(i64, S)>> {
    if n > table.max_time() {
        return Err(Error::InvalidArgument(format!(
            "time {n} beyond table horizon {}",
            table.max_time()
        )));
    }
    Ok(slice_distribution(table.slice(n), phi))
}

/// `(1/T) sum_{n=1..T} P(X_n = 0)`.
pub fn averaged_return_probability<S: Scalar>(
    table: &AmplitudeTable<S>,
    phi: &Vec2<S>,
    horizon: usize,
) -> Result<S> {
    if horizon == 0 || horizon > table.max_time() {
        return Err(Error::InvalidArgument(format!(
            "averaging horizon {horizon} must lie in 1..={}",
            table.max_time()
        )));
    }
    let total = (1..=horizon)
        .filter_map(|n| table.get(n, 0))
        .fold(S::zero(), |acc, xi| acc.add_ref(&xi.apply(phi).norm_sqr()));
    let inv = S::from_i64(horizon as i64).inv().expect("nonzero horizon");
    Ok(total.mul_ref(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{coins, ExactComplex};
    use num_complex::Complex64;

    type E = ExactComplex;
    type M = Mat2<E>;

    fn grover_table(n: usize) -> AmplitudeTable<E> {
        let cfg = WalkConfig::new(coins::grover(), Vec2::default_initial(), n).unwrap();
        evolve_xi(&cfg).unwrap()
    }

    #[test]
    fn first_step_is_the_split() {
        let t = grover_table(1);
        assert_eq!(t.get(0, 0), Some(&M::identity()));
        assert_eq!(t.get(1, -1), Some(&M::unit(0, 1)));
        assert_eq!(t.get(1, 1), Some(&M::unit(1, 0)));
        assert_eq!(t.get(1, 0), None);
        assert_eq!(t.get(1, 3), None);
    }

    #[test]
    fn grover_returns_identity_at_even_times() {
        let t = grover_table(12);
        for m in 1..=6 {
            let n = 2 * m;
            for (x, xi) in t.slice(n) {
                if x == 0 {
                    assert_eq!(xi, &M::identity(), "n={n}");
                } else {
                    assert!(xi.is_zero(), "n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn grover_distribution_examples() {
        let t = grover_table(2);
        let phi = Vec2::default_initial();
        let d1 = position_distribution(&t, &phi, 1).unwrap();
        assert_eq!(d1, vec![(-1, E::one()), (1, E::zero())]);
        let d2 = position_distribution(&t, &phi, 2).unwrap();
        assert_eq!(d2[1], (0, E::one()));
    }

    #[test]
    fn averaged_return_examples() {
        let phi = Vec2::default_initial();
        let t = grover_table(100);
        assert_eq!(
            averaged_return_probability(&t, &phi, 100).unwrap(),
            E::ratio(1, 2)
        );
        assert_eq!(averaged_return_probability(&t, &phi, 1).unwrap(), E::zero());

        let cfg = WalkConfig::new(coins::identity::<E>(), phi.clone(), 100).unwrap();
        let t = evolve_xi(&cfg).unwrap();
        assert_eq!(
            averaged_return_probability(&t, &phi, 100).unwrap(),
            E::zero()
        );
        assert!(averaged_return_probability(&t, &phi, 0).is_err());
    }

    #[test]
    fn hadamard_float_distribution_normalized() {
        let cfg =
            WalkConfig::new(coins::hadamard::<Complex64>(), Vec2::default_initial(), 60).unwrap();
        let t = evolve_xi(&cfg).unwrap();
        for n in 0..=60 {
            let total: f64 = position_distribution(&t, cfg.initial_state(), n)
                .unwrap()
                .iter()
                .map(|(_, p)| p.re)
                .sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ceiling_and_validation() {
        let cfg = WalkConfig::with_ceiling(coins::grover::<E>(), Vec2::default_initial(), 11, 10)
            .unwrap();
        assert_eq!(
            evolve_xi(&cfg),
            Err(Error::ResourceLimit {
                requested: 11,
                ceiling: 10
            })
        );
        let bad = Vec2::new(E::one(), E::one());
        assert!(matches!(
            WalkConfig::new(coins::grover::<E>(), bad, 3),
            Err(Error::UnnormalizedState { .. })
        ));
        assert!(matches!(
            WalkConfig::new(M::from_i64([1, 1, 0, 1]), Vec2::default_initial(), 3),
            Err(Error::NonUnitaryCoin { .. })
        ));
    }
}
