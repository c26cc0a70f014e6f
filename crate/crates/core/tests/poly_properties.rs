use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use swanson_core::poly::{certify_nodeless, derivative, hermite, pseudo_hermite, real_root_count};
use swanson_core::Polynomial;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Explicit sum `n! sum_k s^k (2x)^{n-2k} / (k! (n-2k)!)` with `s = -1` for
/// Hermite and `s = +1` for pseudo-Hermite.
fn explicit(n: usize, alternating: bool) -> Polynomial {
    let mut c = vec![BigInt::zero(); n + 1];
    for k in 0..=n / 2 {
        let mut term = factorial(n) / (factorial(k) * factorial(n - 2 * k)) * BigInt::from(2).pow((n - 2 * k) as u32);
        if alternating && k % 2 == 1 {
            term = -term;
        }
        c[n - 2 * k] = term;
    }
    Polynomial::new(c)
}

#[test]
fn exact_coefficients_through_forty() {
    for n in 0..=40 {
        assert_eq!(hermite(n), explicit(n, true), "H_{n}");
        assert_eq!(pseudo_hermite(n), explicit(n, false), "pseudo H_{n}");
        assert_eq!(pseudo_hermite(n).leading(), Some(&BigInt::from(2).pow(n as u32)));
    }
    // coefficients past 2^63 are carried exactly
    assert!(pseudo_hermite(40).coeff(0) > BigInt::from(u64::MAX));
}

#[test]
fn derivative_lowers_the_index() {
    for n in 1..=40 {
        let want = hermite(n - 1).scale_by(&BigInt::from(2 * n));
        assert_eq!(derivative(&hermite(n)), want, "H_{n}");
        assert_eq!(derivative(&pseudo_hermite(n)), pseudo_hermite(n - 1).scale_by(&BigInt::from(2 * n)));
    }
}

#[test]
fn pseudo_hermite_equation_holds_exactly() {
    let two_x = Polynomial::from_i64(&[0, 2]);
    for m in 0..=40 {
        let p = pseudo_hermite(m);
        let d1 = derivative(&p);
        let d2 = derivative(&d1);
        let lhs = &(&d2 + &(&two_x * &d1)) - &p.scale_by(&BigInt::from(2 * m));
        assert!(lhs.is_zero(), "m = {m}");
    }
}

#[test]
fn sturm_verdicts_through_twenty() {
    for m in 0..=20 {
        let p = pseudo_hermite(m);
        assert_eq!(certify_nodeless(&p), m % 2 == 0, "m = {m}");
        assert_eq!(real_root_count(&p), m % 2, "m = {m}");
        assert_eq!(real_root_count(&hermite(m)), m, "H_{m}");
    }
    assert!(certify_nodeless(&pseudo_hermite(40)));
}

proptest! {
    #[test]
    fn root_count_of_products_of_linear_factors(roots in proptest::collection::vec(-20i64..=20, 1..8)) {
        let mut p = Polynomial::one();
        for r in &roots {
            p = &p * &Polynomial::from_i64(&[-r, 1]);
        }
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(real_root_count(&p), distinct.len());
    }

    #[test]
    fn positive_squares_plus_constant_are_nodeless(roots in proptest::collection::vec(-9i64..=9, 1..5), c in 1i64..50) {
        let mut p = Polynomial::one();
        for r in &roots {
            let f = Polynomial::from_i64(&[-r, 1]);
            p = &p * &(&f * &f);
        }
        let p = &p + &Polynomial::from_i64(&[c]);
        prop_assert!(certify_nodeless(&p));
    }

    #[test]
    fn scaling_preserves_the_verdict(m in 0usize..=20, k in 1i64..1000) {
        let p = pseudo_hermite(m);
        prop_assert_eq!(certify_nodeless(&p.scale_by(&BigInt::from(-k))), certify_nodeless(&p));
    }
}
