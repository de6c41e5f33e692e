use autexcl_core::algebra::{
    charpoly_from_power_sums, hecke_to_frobenius, newton_power_sums, poly_product,
    weil_base_change, weil_validate, IntPolynomial, WeilPolynomial,
};
use autexcl_core::zeta::{point_count, point_count_mod};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 25])
}

fn weil_strategy(max_genus: usize) -> impl Strategy<Value = WeilPolynomial> {
    q_strategy().prop_flat_map(move |q| weil_over(q, max_genus))
}

/// Products of `x^2 - a x + q` with `a^2 <= 4q` are Weil polynomials.
fn weil_over(q: u64, max_genus: usize) -> impl Strategy<Value = WeilPolynomial> {
    (Just(q), 1..=max_genus)
        .prop_flat_map(|(q, g)| {
            let a_max = (4.0 * q as f64).sqrt().floor() as i64;
            (Just(q), prop::collection::vec(-a_max..=a_max, g))
        })
        .prop_map(|(q, traces)| {
            let factors: Vec<WeilPolynomial> = traces
                .iter()
                .map(|&a| WeilPolynomial::from_ascending(q, &[q as i64, -a, 1]).unwrap())
                .collect();
            poly_product(&factors).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn newton_roundtrip(q in weil_strategy(4)) {
        let s = newton_power_sums(&q, q.genus(), None);
        let back = charpoly_from_power_sums(&s, q.q(), q.genus()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn modular_agrees_with_exact(q in weil_strategy(4), m in 2u64..200) {
        let exact = newton_power_sums(&q, 50, None);
        let modular = newton_power_sums(&q, 50, Some(m));
        let mb = BigInt::from(m);
        for (e, r) in exact.iter().zip(&modular) {
            let reduced = ((e % &mb) + &mb) % &mb;
            prop_assert_eq!(&reduced, r);
        }
        for n in [1usize, 7, 30, 50] {
            let c = point_count(&q, n);
            let reduced = ((c % &mb) + &mb) % &mb;
            prop_assert_eq!(reduced, BigInt::from(point_count_mod(&q, n, m)));
        }
    }

    #[test]
    fn products_are_weil((a, b) in q_strategy().prop_flat_map(|q| (weil_over(q, 2), weil_over(q, 2)))) {
        let p = poly_product(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(p.genus(), a.genus() + b.genus());
        prop_assert!(weil_validate(&p, 2 * p.genus()).is_ok());
    }

    #[test]
    fn base_change_composes(q in weil_strategy(3), a in 1u32..4, b in 1u32..4) {
        let step = weil_base_change(&weil_base_change(&q, a).unwrap(), b).unwrap();
        let direct = weil_base_change(&q, a * b).unwrap();
        prop_assert_eq!(&step, &direct);
        prop_assert!(weil_validate(&direct, 2 * direct.genus()).is_ok());
        for n in 1..6usize {
            prop_assert_eq!(point_count(&direct, n), point_count(&q, n * (a * b) as usize));
        }
    }
}

/// `Q_2(x^2) = Q(x) Q(-x)` for even degree.
#[test]
fn quadratic_base_change_by_reflection() {
    let q = WeilPolynomial::from_ascending(2, &[4, 0, 3, 0, 1]).unwrap();
    let reflected: Vec<BigInt> = q
        .poly()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    let prod = q.poly() * &IntPolynomial::new(reflected);
    let k2 = weil_base_change(&q, 2).unwrap();
    for (i, c) in k2.poly().coeffs().iter().enumerate() {
        assert_eq!(&prod.coeff(2 * i), c);
        assert_eq!(prod.coeff(2 * i + 1), BigInt::from(0));
    }
    // alpha^2 runs over the roots of y^2 + 3y + 4 twice
    assert_eq!(
        k2,
        WeilPolynomial::from_ascending(4, &[16, 24, 17, 6, 1]).unwrap()
    );
}

#[test]
fn hecke_spot_values() {
    for ell in [2u64, 3, 5, 7] {
        for a in -2i64..=2 {
            let h = IntPolynomial::from_i64s(&[-a, 1]);
            let w = hecke_to_frobenius(&h, ell, 1).unwrap();
            assert_eq!(
                w,
                WeilPolynomial::from_ascending(ell, &[ell as i64, -a, 1]).unwrap()
            );
        }
        let h = IntPolynomial::from_i64s(&[-5, 0, 1]);
        let l = ell as i64;
        let expected = WeilPolynomial::from_ascending(ell, &[l * l, 0, 2 * l - 5, 0, 1]).unwrap();
        assert_eq!(hecke_to_frobenius(&h, ell, 1).unwrap(), expected);
    }
    let h = IntPolynomial::from_i64s(&[1, 1]);
    let w = hecke_to_frobenius(&h, 3, 2).unwrap();
    assert_eq!(w.genus(), 2);
    assert_eq!(
        w,
        WeilPolynomial::from_ascending(3, &[9, 6, 7, 2, 1]).unwrap()
    );
}

#[test]
fn functional_equation_violation_is_reported() {
    let bad = WeilPolynomial::new(2, 2, IntPolynomial::from_i64s(&[5, 0, 3, 0, 1])).unwrap();
    assert!(weil_validate(&bad, 4).is_err());
}
