use num_complex::Complex64;
use qwalk_core::coins::{self, NamedCoin};
use qwalk_core::oracle::audit;
use qwalk_core::sojourn::SojournConvention;
use qwalk_core::ExactComplex;

const CONVENTIONS: [SojournConvention; 2] =
    [SojournConvention::Midpoint, SojournConvention::Endpoint];

#[test]
fn dynamic_programs_match_enumeration_exactly() {
    for coin in [NamedCoin::Grover, NamedCoin::Hadamard, NamedCoin::Identity] {
        for conv in CONVENTIONS {
            let report = audit(&coin.matrix::<ExactComplex>(), 12, conv, &[0, 1, -3]).unwrap();
            if let Some(row) = report.rows.iter().find(|r| !r.agree) {
                panic!("{coin} {conv:?}: {row:?}");
            }
            // 13 times x (xi, gamma, excursions, three psi starts)
            assert_eq!(report.rows.len(), 13 * 6);
        }
    }
}

#[test]
fn float_backend_matches_enumeration() {
    let coins = [
        coins::hadamard::<Complex64>(),
        coins::from_entries([
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            Complex64::new(0.0, 0.8),
            Complex64::new(0.6, 0.0),
        ]),
        coins::off_diagonal(
            Complex64::from_polar(1.0, 0.4),
            Complex64::from_polar(1.0, 2.1),
        ),
    ];
    for coin in &coins {
        for conv in CONVENTIONS {
            let report = audit(coin, 10, conv, &[0, 2]).unwrap();
            assert!(
                report.all_agree(),
                "{:?}",
                report.rows.iter().find(|r| !r.agree)
            );
        }
    }
}

#[test]
fn exact_and_float_backends_agree() {
    use qwalk_core::sojourn::gamma_table;
    let exact = gamma_table(
        &coins::hadamard::<ExactComplex>(),
        30,
        SojournConvention::Midpoint,
    )
    .unwrap();
    let float = gamma_table(
        &coins::hadamard::<Complex64>(),
        30,
        SojournConvention::Midpoint,
    )
    .unwrap();
    let mut compared = 0;
    for (&(n, k), m) in exact.iter() {
        let f = float.get(n, k);
        for (a, b) in m.m.iter().zip(&f.m) {
            assert!(
                (qwalk_core::Scalar::to_c64(a) - b).norm() < 1e-12,
                "n={n} k={k}"
            );
        }
        compared += 1;
    }
    assert!(compared > 100);
}
