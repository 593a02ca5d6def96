use num_bigint::BigUint;
use proptest::prelude::*;
use torsion_core::arith::{big_rational_to_f64, guarded_loglog, theta};
use torsion_core::residue::{gl_order_bruteforce, gl_order_formula};
use torsion_core::ring::{irreducible_count, poly};
use torsion_core::{enumerate_primes, Budget, FactoredIdeal, Generator, ResidueRing, RingSpec};

fn z(n: u64) -> FactoredIdeal {
    FactoredIdeal::from_generator(RingSpec::Integers, &Generator::Int(n)).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #[test]
    fn gl_order_is_multiplicative(a in 1u64..5000, b in 1u64..5000, r in 1usize..5) {
        prop_assume!(gcd(a, b) == 1);
        let lhs = gl_order_formula(r, &z(a * b));
        prop_assert_eq!(lhs, gl_order_formula(r, &z(a)) * gl_order_formula(r, &z(b)));
    }

    #[test]
    fn theta_depends_on_the_radical_only(n in 1u64..1_000_000) {
        let a = z(n);
        prop_assert_eq!(theta(&a), theta(&a.radical()));
    }

    #[test]
    fn theta_is_multiplicative_on_coprime_ideals(a in 1u64..100_000, b in 1u64..100_000) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(theta(&z(a * b)), theta(&z(a)) * theta(&z(b)));
    }

    #[test]
    fn product_norm_matches_factors(a in 1u64..100_000, b in 1u64..100_000) {
        let ab = z(a).multiply(&z(b)).unwrap();
        prop_assert_eq!(ab.norm(), &BigUint::from(a * b));
        prop_assert_eq!(&ab.recomputed_norm(), ab.norm());
    }

    #[test]
    fn polynomial_moduli_factor_back(coeffs in proptest::collection::vec(0u64..3, 0..6)) {
        let f3 = RingSpec::polynomials_over(3).unwrap();
        let mut monic = coeffs.clone();
        monic.push(1);
        let a = FactoredIdeal::from_generator(f3, &Generator::Poly(monic.clone())).unwrap();
        prop_assert_eq!(a.norm(), &BigUint::from(3u64.pow(coeffs.len() as u32)));
        prop_assert_eq!(a.generator().unwrap(), Generator::Poly(monic));
    }
}

#[test]
fn gl_enumeration_is_multiplicative_on_small_moduli() {
    for (a, b) in [(2u64, 3u64), (3, 4), (2, 5)] {
        for r in [1usize, 2] {
            let count = |n: u64| gl_order_bruteforce(&ResidueRing::new(&z(n)).unwrap(), r, Budget::DEFAULT).unwrap();
            assert_eq!(count(a * b), count(a) * count(b), "Z/{}, r = {r}", a * b);
        }
    }
}

#[test]
fn primes_come_in_strictly_increasing_order() {
    for ring in [RingSpec::Integers, RingSpec::polynomials_over(2).unwrap(), RingSpec::polynomials_over(5).unwrap()] {
        let primes = enumerate_primes(ring, 3125).unwrap();
        assert!(primes.windows(2).all(|w| w[0] < w[1]), "{ring}");
    }
}

#[test]
fn irreducible_counts_match_exhaustive_search() {
    for (q, max_deg) in [(2u64, 8usize), (3, 5), (5, 3)] {
        for d in 1..=max_deg {
            let found = poly::monic_of_degree(d, q).filter(|f| poly::is_irreducible(f, q)).count() as u64;
            assert_eq!(found, irreducible_count(q, d), "q = {q}, d = {d}");
        }
    }
}

#[test]
fn theta_over_loglog_peaks_at_a_primorial() {
    let mut best = (0.0, 0);
    for n in 16..=10_000u64 {
        let ratio = big_rational_to_f64(&theta(&z(n))) / guarded_loglog(n as f64).value;
        if ratio > best.0 {
            best = (ratio, n);
        }
    }
    assert_eq!(best.1, 30);
    assert!((best.0 - 3.0634).abs() < 1e-3, "{best:?}");
}
