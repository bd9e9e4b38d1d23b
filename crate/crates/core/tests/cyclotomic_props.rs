//! Field axioms and Galois action on `Q(ζ_n)`, checked against a
//! floating-point embedding `ζ_n ↦ exp(2πi/n)`.

use geomsig::cyclotomic::{euler_phi, CycloNumber};
use geomsig::{Cyclotomic, Rational};
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn number(n: u32, terms: &[(i64, i64, i64)]) -> Cyclotomic {
    CycloNumber::from_powers(
        n,
        terms
            .iter()
            .map(|&(k, p, q)| (k, Rational::new(p.into(), q.into()))),
    )
}

fn arb_number(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0i64..48, -9i64..10, 1i64..5), 0..6).prop_map(move |t| number(n, &t))
}

fn arb_pair() -> impl Strategy<Value = (u32, Cyclotomic, Cyclotomic, Cyclotomic)> {
    (1u32..=24).prop_flat_map(|n| (Just(n), arb_number(n), arb_number(n), arb_number(n)))
}

fn complex(x: &Cyclotomic) -> Complex64 {
    let n = x.conductor() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n)
                * c.to_f64().unwrap()
        })
        .sum()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-6 * (1.0 + a.norm().max(b.norm()))
}

fn units(n: u32) -> Vec<i64> {
    (1..=n as i64)
        .filter(|&k| num_integer::gcd(k, n as i64) == 1)
        .collect()
}

proptest! {
    #[test]
    fn ring_axioms((_n, a, b, c) in arb_pair()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Cyclotomic::zero());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
    }

    #[test]
    fn inverses((_n, a, _b, _c) in arb_pair()) {
        match a.inverse() {
            None => prop_assert!(a.is_zero()),
            Some(inv) => prop_assert_eq!(&a * &inv, Cyclotomic::one()),
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism((_n, a, b, _c) in arb_pair()) {
        prop_assert!(close(complex(&(&a + &b)), complex(&a) + complex(&b)));
        prop_assert!(close(complex(&(&a * &b)), complex(&a) * complex(&b)));
        prop_assert!(close(complex(&a.conj()), complex(&a).conj()));
    }

    #[test]
    fn mixed_conductors(n in 1u32..=12, m in 1u32..=12, a in prop::collection::vec((0i64..12, -5i64..6, 1i64..4), 0..4), b in prop::collection::vec((0i64..12, -5i64..6, 1i64..4), 0..4)) {
        let (x, y) = (number(n, &a), number(m, &b));
        prop_assert!(close(complex(&(&x * &y)), complex(&x) * complex(&y)));
        prop_assert!(close(complex(&(&x - &y)), complex(&x) - complex(&y)));
        let lcm = num_integer::lcm(n, m);
        prop_assert_eq!(x.embed(lcm), x.clone());
    }

    #[test]
    fn galois_action_is_multiplicative((n, a, b, _c) in arb_pair(), i in 0usize..64, j in 0usize..64) {
        let u = units(n);
        let (k, l) = (u[i % u.len()], u[j % u.len()]);
        let s = |x: &Cyclotomic, k| x.galois_apply(k).unwrap();
        prop_assert_eq!(s(&(&a * &b), k), &s(&a, k) * &s(&b, k));
        prop_assert_eq!(s(&(&a + &b), k), &s(&a, k) + &s(&b, k));
        prop_assert_eq!(s(&s(&a, k), l), s(&a, k * l));
        let expected = Cyclotomic::root_of_unity(n, k);
        prop_assert_eq!(s(&Cyclotomic::root_of_unity(n, 1), k), expected);
    }

    #[test]
    fn fixed_field_is_rational((n, a, _b, _c) in arb_pair()) {
        let u = units(n);
        let fixed = u.iter().all(|&k| a.galois_apply(k).unwrap() == a);
        prop_assert_eq!(fixed, a.is_rational());
        // Traces are always fixed, hence rational.
        let trace: Cyclotomic = u.iter().map(|&k| a.galois_apply(k).unwrap()).sum();
        prop_assert!(trace.is_rational());
        prop_assert!((trace.rational_value().unwrap().to_f64().unwrap() - complex(&trace).re).abs() < 1e-6);
    }

    #[test]
    fn small_rationals_instantiate(n in 1u32..=24, a in prop::collection::vec((0i64..24, -5i64..6), 1..4)) {
        // Elimination can overflow fixed-width rationals, so only ring
        // operations are exercised here.
        let x = CycloNumber::from_powers(n, a.iter().map(|&(k, c)| (k, Ratio::<i128>::from_integer(c.into()))));
        let y = x.galois_apply(-1).unwrap();
        let norm = &x * &y;
        prop_assert!(norm.galois_apply(-1).unwrap() == norm);
        prop_assert!(&x * &CycloNumber::from_rational(Ratio::one()) == x);
    }
}

#[test]
fn basis_size_and_non_units() {
    for n in 1..=24u32 {
        assert_eq!(
            Cyclotomic::root_of_unity(n, 1).coeffs().len(),
            euler_phi(n) as usize
        );
        assert_eq!(Cyclotomic::root_of_unity(n, n as i64), Cyclotomic::one());
    }
    assert!(Cyclotomic::root_of_unity(6, 1).galois_apply(3).is_err());
}
