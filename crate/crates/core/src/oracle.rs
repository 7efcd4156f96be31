//! Ground truth by exhaustive enumeration of all `2^n` step sequences.
//!
//! Nothing here shares code with the dynamic programs it checks: each path's
//! weight is the literal time-ordered product of its `P`/`Q` factors (newest
//! on the left) and its sojourn count is read off its trajectory.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{split_coin, Backend, Mat2, Ring, Scalar, Vec2};
use crate::error::{Error, Result};
use crate::sojourn::{first_return_excursions, gamma_table, psi_table, SojournConvention};
use crate::walk::{evolve_xi, WalkConfig};

/// Hard cap on enumerated path length.
pub const ORACLE_MAX_STEPS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct PathRecord<S> {
    pub steps: Vec<Step>,
    /// `x_0, ..., x_n`.
    pub positions: Vec<i64>,
    pub weight: Mat2<S>,
    pub sojourn: usize,
}

impl<S> PathRecord<S> {
    pub fn end(&self) -> i64 {
        *self.positions.last().expect("nonempty trajectory")
    }

    /// Returns to its start with every intermediate position strictly on
    /// the `side` (`+1` right, `-1` left) of the origin. Requires start 0.
    pub fn is_excursion(&self, side: i64) -> bool {
        let n = self.positions.len() - 1;
        n >= 2
            && self.positions[0] == 0
            && self.positions[n] == 0
            && self.positions[1..n].iter().all(|&x| x * side > 0)
    }
}

/// All `2^n` paths of length `n` from `start`, in index order: bit `j` of the
/// index (least significant first) selects step `j + 1`, `0` for L, `1` for R.
pub fn enumerate<S: Scalar>(
    coin: &Mat2<S>,
    n: usize,
    start: i64,
    conv: SojournConvention,
) -> Result<Vec<PathRecord<S>>> {
    if n > ORACLE_MAX_STEPS {
        return Err(Error::ResourceLimit {
            requested: n,
            ceiling: ORACLE_MAX_STEPS,
        });
    }
    let (p, q) = split_coin(coin)?;
    let records = (0..1u64 << n)
        .map(|index| {
            let steps: Vec<Step> = (0..n)
                .map(|j| {
                    if index >> j & 1 == 1 {
                        Step::R
                    } else {
                        Step::L
                    }
                })
                .collect();
            let mut positions = Vec::with_capacity(n + 1);
            positions.push(start);
            let mut weight = Mat2::identity();
            let mut sojourn = 0;
            for step in &steps {
                let x = *positions.last().expect("nonempty");
                let (y, factor) = match step {
                    Step::L => (x - 1, &p),
                    Step::R => (x + 1, &q),
                };
                weight = factor * &weight;
                if conv.counts_right(x, y) {
                    sojourn += 1;
                }
                positions.push(y);
            }
            PathRecord {
                steps,
                positions,
                weight,
                sojourn,
            }
        })
        .collect();
    Ok(records)
}

/// Aggregated oracle slices at a single time `n`; zero entries are dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct OracleTables<S> {
    pub n: usize,
    pub start: i64,
    /// Unconstrained weight by end position (`Xi_n` when `start == 0`).
    pub xi: BTreeMap<i64, Mat2<S>>,
    /// `Gamma_n(k)`: paths ending at the origin; empty unless `start == 0`.
    pub gamma: BTreeMap<usize, Mat2<S>>,
    /// `Psi_n^{start->y}(k)` keyed by `(y, k)`.
    pub psi: BTreeMap<(i64, usize), Mat2<S>>,
    /// `Psi_n^{start}(k)`.
    pub psi_aggregated: BTreeMap<usize, Mat2<S>>,
    /// `F+_n`, `F-_n` (zero unless `start == 0` and `n` even).
    pub f_plus: Mat2<S>,
    pub f_minus: Mat2<S>,
}

fn add_into<K: Ord, S: Scalar>(map: &mut BTreeMap<K, Mat2<S>>, key: K, m: &Mat2<S>) {
    map.entry(key)
        .and_modify(|acc| acc.add_assign_ref(m))
        .or_insert_with(|| m.clone());
}

fn drop_zeros<K: Ord, S: Scalar>(map: &mut BTreeMap<K, Mat2<S>>) {
    map.retain(|_, m| !m.is_zero());
}

pub fn oracle_tables<S: Scalar>(
    coin: &Mat2<S>,
    n: usize,
    start: i64,
    conv: SojournConvention,
) -> Result<OracleTables<S>> {
    let records = enumerate(coin, n, start, conv)?;
    let mut xi = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    let mut psi = BTreeMap::new();
    let mut psi_aggregated = BTreeMap::new();
    let mut f_plus = <Mat2<S> as Ring>::zero();
    let mut f_minus = <Mat2<S> as Ring>::zero();
    for rec in &records {
        let y = rec.end();
        add_into(&mut xi, y, &rec.weight);
        add_into(&mut psi, (y, rec.sojourn), &rec.weight);
        add_into(&mut psi_aggregated, rec.sojourn, &rec.weight);
        if start == 0 && y == 0 {
            add_into(&mut gamma, rec.sojourn, &rec.weight);
        }
        if start == 0 && rec.is_excursion(1) {
            f_plus.add_assign_ref(&rec.weight);
        }
        if start == 0 && rec.is_excursion(-1) {
            f_minus.add_assign_ref(&rec.weight);
        }
    }
    drop_zeros(&mut xi);
    drop_zeros(&mut gamma);
    drop_zeros(&mut psi);
    drop_zeros(&mut psi_aggregated);
    Ok(OracleTables {
        n,
        start,
        xi,
        gamma,
        psi,
        psi_aggregated,
        f_plus,
        f_minus,
    })
}

/// One table compared at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub n: usize,
    pub start: i64,
    /// `xi`, `gamma`, `psi` or `excursions`.
    pub table: String,
    pub entries: usize,
    /// Largest Frobenius distance between DP and oracle entries.
    pub max_difference: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub max_time: usize,
    pub convention: SojournConvention,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

/// Tolerance for float comparisons in [`audit`].
pub const AUDIT_FLOAT_TOL: f64 = 1e-10;

fn compare<K: Ord + Clone, S: Scalar>(
    dp: &BTreeMap<K, Mat2<S>>,
    oracle: &BTreeMap<K, Mat2<S>>,
) -> (usize, f64, bool) {
    let zero = <Mat2<S> as Ring>::zero();
    let mut keys: Vec<&K> = dp.keys().chain(oracle.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut worst = 0.0f64;
    let mut exact = true;
    for k in &keys {
        let a = dp.get(*k).unwrap_or(&zero);
        let b = oracle.get(*k).unwrap_or(&zero);
        let d = a.sub_ref(b);
        exact &= d.is_zero();
        worst = worst.max(d.frobenius());
    }
    let agree = match S::BACKEND {
        Backend::Exact => exact,
        Backend::Float => worst < AUDIT_FLOAT_TOL,
    };
    (keys.len(), worst, agree)
}

/// Checks every dynamic program against exhaustive enumeration for all
/// `n <= max_time`: `Xi`, `Gamma` and `F+-` from the origin, and `Psi` from
/// each of `starts`.
pub fn audit<S: Scalar>(
    coin: &Mat2<S>,
    max_time: usize,
    conv: SojournConvention,
    starts: &[i64],
) -> Result<AuditReport> {
    if max_time > ORACLE_MAX_STEPS {
        return Err(Error::ResourceLimit {
            requested: max_time,
            ceiling: ORACLE_MAX_STEPS,
        });
    }
    let even = max_time - max_time % 2;
    let xi = evolve_xi(&WalkConfig::new(
        coin.clone(),
        Vec2::default_initial(),
        max_time,
    )?)?;
    let gamma = gamma_table(coin, even, conv)?;
    let exc = first_return_excursions(coin, even)?;
    let psis = starts
        .iter()
        .map(|&s| psi_table(coin, s, max_time, conv))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut push = |n: usize,
                    start: i64,
                    table: &str,
                    (entries, max_difference, agree): (usize, f64, bool)| {
        rows.push(AuditRow {
            n,
            start,
            table: table.to_string(),
            entries,
            max_difference,
            agree,
        })
    };
    for n in 0..=max_time {
        let o = oracle_tables(coin, n, 0, conv)?;
        let dp_xi: BTreeMap<i64, Mat2<S>> = xi
            .slice(n)
            .filter(|(_, m)| !m.is_zero())
            .map(|(x, m)| (x, m.clone()))
            .collect();
        push(n, 0, "xi", compare(&dp_xi, &o.xi));

        let dp_gamma: BTreeMap<usize, Mat2<S>> = gamma
            .iter()
            .filter(|((t, _), _)| *t == n)
            .map(|((_, k), m)| (*k, m.clone()))
            .collect();
        push(n, 0, "gamma", compare(&dp_gamma, &o.gamma));

        let o_f = BTreeMap::from([(1, o.f_plus.clone()), (-1, o.f_minus.clone())]);
        let dp_f = if n % 2 == 0 && n > 0 {
            BTreeMap::from([(1, exc.plus(n / 2)), (-1, exc.minus(n / 2))])
        } else {
            BTreeMap::new()
        };
        push(n, 0, "excursions", compare(&dp_f, &o_f));

        for (psi, &start) in psis.iter().zip(starts) {
            let o = if start == 0 {
                o.clone()
            } else {
                oracle_tables(coin, n, start, conv)?
            };
            let dp_psi: BTreeMap<(i64, usize), Mat2<S>> = psi
                .iter()
                .filter(|((t, _, _), m)| *t == n && !m.is_zero())
                .map(|((_, y, k), m)| ((*y, *k), m.clone()))
                .collect();
            push(n, start, "psi", compare(&dp_psi, &o.psi));
        }
    }
    Ok(AuditReport {
        max_time,
        convention: conv,
        rows,
    })
}
