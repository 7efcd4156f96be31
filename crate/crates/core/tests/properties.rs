use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use qwalk_core::coins::{self, NamedCoin};
use qwalk_core::genfun::{neumann_inverse_times, symmetrize, BiSeries};
use qwalk_core::{build_basis, decompose, split_coin, ExactComplex, Mat2, Ring, Scalar};

type E = ExactComplex;
type M = Mat2<E>;

fn rational() -> impl Strategy<Value = BigRational> + Clone {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn exact() -> impl Strategy<Value = E> + Clone {
    [rational(), rational(), rational(), rational()].prop_map(E::from_rationals)
}

fn small_exact() -> impl Strategy<Value = E> + Clone {
    (-3i64..=3, -3i64..=3)
        .prop_map(|(a, b)| E::from_i64(a).add_ref(&E::from_i64(b).mul_ref(&E::i())))
}

fn mat(el: impl Strategy<Value = E> + Clone) -> impl Strategy<Value = M> {
    [el.clone(), el.clone(), el.clone(), el].prop_map(|[a, b, c, d]| M::new(a, b, c, d))
}

fn series(nz: usize, nt: usize, density: f64) -> impl Strategy<Value = BiSeries<E>> {
    prop::collection::vec(
        (prop::bool::weighted(density), small_exact()),
        (nz + 1) * (nt + 1),
    )
    .prop_map(move |cells| {
        BiSeries::from_terms(
            nz,
            nt,
            cells
                .into_iter()
                .enumerate()
                .filter(|(_, (keep, _))| *keep)
                .map(|(idx, (_, c))| ((idx / (nt + 1), idx % (nt + 1)), c)),
        )
    })
}

fn matrix_series(nz: usize, nt: usize, density: f64) -> impl Strategy<Value = BiSeries<M>> {
    prop::collection::vec(
        (prop::bool::weighted(density), mat(small_exact())),
        (nz + 1) * (nt + 1),
    )
    .prop_map(move |cells| {
        BiSeries::from_terms(
            nz,
            nt,
            cells
                .into_iter()
                .enumerate()
                .filter(|(idx, (keep, _))| *keep && *idx != 0)
                .map(|(idx, (_, c))| ((idx / (nt + 1), idx % (nt + 1)), c)),
        )
    })
}

/// Dense double-loop convolution, independent of the sparse product.
fn naive_product<C: Ring>(a: &BiSeries<C>, b: &BiSeries<C>) -> BTreeMap<(usize, usize), C> {
    let (nz, nt) = a.orders();
    let mut out = BTreeMap::new();
    for i in 0..=nz {
        for j in 0..=nt {
            let mut acc = C::zero();
            for i1 in 0..=i {
                for j1 in 0..=j {
                    acc.add_assign_ref(&a.coeff(i1, j1).mul_ref(&b.coeff(i - i1, j - j1)));
                }
            }
            if !acc.is_zero() {
                out.insert((i, j), acc);
            }
        }
    }
    out
}

fn as_map<C: Ring>(s: &BiSeries<C>) -> BTreeMap<(usize, usize), C> {
    s.terms().map(|(k, c)| (*k, c.clone())).collect()
}

fn test_coins() -> Vec<M> {
    let h = E::frac_1_sqrt2();
    let ih = h.mul_ref(&E::i());
    vec![
        NamedCoin::Grover.matrix(),
        NamedCoin::Hadamard.matrix(),
        NamedCoin::Identity.matrix(),
        M::new(E::zero(), E::i(), E::i(), E::zero()),
        M::new(E::zero(), E::one(), E::from_i64(-1), E::zero()),
        M::new(h.clone(), ih.clone(), ih, h),
        M::diag(E::one(), E::i()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in exact(), b in exact(), c in exact()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul_ref(&b).conj(), a.conj().mul_ref(&b.conj()));
        match a.inv() {
            Some(inv) => prop_assert_eq!(a.mul_ref(&inv), E::one()),
            None => prop_assert!(a.is_zero()),
        }
        let n = a.norm_sqr();
        prop_assert!(n.is_real() && n.real_sign() != Some(-1));
    }

    #[test]
    fn float_round_trip(re in any::<f64>(), im in any::<f64>()) {
        prop_assume!(re.is_finite() && im.is_finite());
        let z = Complex64::new(re, im);
        let back = E::from_c64(z).to_c64();
        // equal as floats; signed zeros collapse to +0
        prop_assert_eq!(back, z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrix_algebra(a in mat(exact()), b in mat(exact()), c in mat(exact())) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&M::identity() * &a, a.clone());
        prop_assert_eq!(&a * &M::identity(), a.clone());
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
    }

    #[test]
    fn basis_round_trip(m in mat(exact())) {
        for coin in test_coins() {
            let (p, q) = split_coin(&coin).unwrap();
            let basis = build_basis(&p, &q).unwrap();
            prop_assert_eq!(basis.reconstruct(&decompose(&m, &basis)), m.clone());
        }
    }

    #[test]
    fn product_matches_naive_convolution(a in series(16, 16, 0.3), b in series(16, 16, 0.3)) {
        prop_assert_eq!(as_map(&a.mul(&b)), naive_product(&a, &b));
    }

    #[test]
    fn matrix_product_matches_naive_convolution(a in matrix_series(6, 6, 0.4), b in matrix_series(6, 6, 0.4)) {
        prop_assert_eq!(as_map(&a.mul(&b)), naive_product(&a, &b));
    }

    #[test]
    fn zero_and_identity(a in matrix_series(8, 8, 0.3)) {
        prop_assert!(a.mul(&BiSeries::zero(8, 8)).is_zero());
        prop_assert_eq!(a.mul(&BiSeries::identity(8, 8)), a.clone());
        prop_assert_eq!(BiSeries::identity(8, 8).mul(&a), a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symmetrize_keeps_four_times_even_part(s in series(12, 12, 0.5)) {
        let sym = symmetrize(&s);
        let four = E::from_i64(4);
        for i in 0..=12 {
            for j in 0..=12 {
                let expected = if i % 2 == 0 && j % 2 == 0 { s.coeff(i, j).mul_ref(&four) } else { E::zero() };
                prop_assert_eq!(sym.coeff(i, j), expected);
            }
        }
    }

    #[test]
    fn neumann_solves_its_identity(x in matrix_series(6, 6, 0.3)) {
        let y = neumann_inverse_times(&x).unwrap();
        let lhs = y.mul(&BiSeries::identity(6, 6).sub(&x));
        prop_assert_eq!(lhs, x.clone());
        // agrees with the explicit truncated sum of powers
        let mut power = x.clone();
        let mut sum = BiSeries::zero(6, 6);
        while !power.is_zero() {
            sum = sum.add(&power);
            power = power.mul(&x);
        }
        prop_assert_eq!(y, sum);
    }
}

#[test]
fn gram_matrices_are_identity() {
    for coin in test_coins() {
        let (p, q) = split_coin(&coin).unwrap();
        let gram = build_basis(&p, &q).unwrap().gram();
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                assert_eq!(*g, if i == j { E::one() } else { E::zero() }, "{coin:?}");
            }
        }
    }
    let h = coins::hadamard::<Complex64>();
    let (p, q) = split_coin(&h).unwrap();
    assert!(build_basis(&p, &q).is_ok());
}
