mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phieq::arith::modular::{gcd, inv_mod, mul_mod, pow_mod};
use phieq::arith::{euler_phi, factor, is_prime, nu, primes_up_to, tau, totients_up_to};
use phieq::{Effort, Error};

#[test]
fn factor_and_phi_agree_with_sieve_to_one_million() {
    const N: usize = 1_000_000;
    let sieve = totients_up_to(N);
    let primes = primes_up_to(N as u64);
    let mut is_p = vec![false; N + 1];
    for &p in &primes {
        is_p[p as usize] = true;
    }
    let e = Effort::default();
    for n in 1..=N {
        let f = factor(n as u128, &e).unwrap();
        assert_eq!(f.value(), Some(n as u128), "{n}");
        assert!(f.iter().all(|(p, k)| k >= 1 && is_p[p as usize]), "{n}");
        assert_eq!(f.phi(), Some(sieve[n] as u128), "{n}");
        assert_eq!(is_prime(n as u128), is_p[n], "{n}");
    }
    for n in (1..=N as u128).step_by(7) {
        assert_eq!(euler_phi(n, &e).unwrap(), sieve[n as usize] as u128);
    }
}

#[test]
fn sieve_agrees_with_counting_oracle() {
    let sieve = totients_up_to(2000);
    for n in 1..=2000 {
        assert_eq!(sieve[n] as u128, common::naive_phi(n as u128), "{n}");
    }
    let primes = primes_up_to(5000);
    let naive: Vec<u64> = (2..=5000).filter(|&n| common::naive_is_prime(n)).collect();
    assert_eq!(primes, naive);
}

#[test]
fn gauss_identity_to_1e5() {
    const N: usize = 100_000;
    let e = Effort::default();
    let phi: Vec<u128> = (0..=N as u128)
        .map(|n| if n == 0 { 0 } else { euler_phi(n, &e).unwrap() })
        .collect();
    let mut sums = vec![0u128; N + 1];
    for d in 1..=N {
        for k in (d..=N).step_by(d) {
            sums[k] += phi[d];
        }
    }
    for (n, s) in sums.iter().enumerate().skip(1) {
        assert_eq!(*s, n as u128, "{n}");
    }
}

#[test]
fn multiplicativity_on_grid() {
    let e = Effort::default();
    for a in 1..=300u128 {
        for b in 1..=300u128 {
            if gcd(a, b) == 1 {
                let lhs = euler_phi(a * b, &e).unwrap();
                assert_eq!(lhs, euler_phi(a, &e).unwrap() * euler_phi(b, &e).unwrap());
            }
        }
    }
}

#[test]
fn random_128_bit_factorizations_reconstruct() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e = Effort::with_iterations(20_000);
    let mut complete = 0;
    for _ in 0..10_000 {
        let n: u128 = rng.gen::<u128>() | 1;
        match factor(n, &e) {
            Ok(f) => {
                assert_eq!(f.value(), Some(n));
                assert!(f.primes().all(is_prime));
                complete += 1;
            }
            Err(Error::EffortExhausted { partial, cofactor }) => {
                assert!(cofactor > 1 && !is_prime(cofactor), "{n}: cofactor {cofactor}");
                assert_eq!(partial.value().unwrap().checked_mul(cofactor), Some(n));
                assert!(partial.primes().all(is_prime));
            }
            Err(other) => panic!("{n}: {other}"),
        }
    }
    assert!(complete > 5_000, "only {complete} complete");
}

#[test]
fn hard_semiprime_fails_loudly_with_small_budget() {
    let n = 1_000_000_000_000_000_003u128 * 1_000_000_007;
    match factor(n, &Effort::with_iterations(10)) {
        Err(Error::EffortExhausted { partial, cofactor }) => {
            assert!(partial.is_empty());
            assert_eq!(cofactor, n);
        }
        other => panic!("{other:?}"),
    }
    let f = factor(n, &Effort::default()).unwrap();
    assert_eq!(f.primes().collect::<Vec<_>>(), vec![1_000_000_007, 1_000_000_000_000_000_003]);
}

#[test]
fn same_seed_same_outcome() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n: u128 = rng.gen::<u128>() >> 8;
        let e = Effort::with_iterations(500);
        assert_eq!(factor(n, &e), factor(n, &e));
    }
}

#[test]
fn valuations_and_divisor_counts() {
    let e = Effort::default();
    assert_eq!(nu(3, 45), 2);
    assert_eq!(tau(45, &e).unwrap(), 6);
    for n in 1..=3000u128 {
        let brute = (1..=n).filter(|d| n % d == 0).count() as u128;
        assert_eq!(tau(n, &e).unwrap(), brute);
        let mut v = 0;
        let mut k = n;
        while k % 2 == 0 {
            k /= 2;
            v += 1;
        }
        assert_eq!(nu(2, n), v);
    }
}

fn big(v: u128) -> BigUint {
    BigUint::from(v)
}

proptest! {
    #[test]
    fn phi_is_multiplicative(a in 1u128..1_000_000, b in 1u128..1_000_000) {
        prop_assume!(gcd(a, b) == 1);
        let e = Effort::default();
        prop_assert_eq!(
            euler_phi(a * b, &e).unwrap(),
            euler_phi(a, &e).unwrap() * euler_phi(b, &e).unwrap()
        );
    }

    #[test]
    fn mul_and_pow_mod_match_bigint(a: u128, b: u128, exp: u128, m in 2u128..) {
        prop_assert_eq!(big(mul_mod(a, b, m)), big(a) * big(b) % big(m));
        prop_assert_eq!(big(pow_mod(a, exp, m)), big(a).modpow(&big(exp), &big(m)));
    }

    #[test]
    fn inverse_is_an_inverse(a: u128, m in 2u128..=i128::MAX as u128) {
        match inv_mod(a, m) {
            Some(i) => prop_assert_eq!(mul_mod(a % m, i, m), 1),
            None => prop_assert!(gcd(a % m, m) != 1),
        }
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..2_000_000) {
        prop_assert_eq!(is_prime(n as u128), common::naive_is_prime(n));
    }

    #[test]
    fn factorization_with_a_40_bit_factor(a in 2u64..1 << 40, b in 2u64..) {
        let n = a as u128 * b as u128;
        let f = factor(n, &Effort::default()).unwrap();
        prop_assert_eq!(f.value(), Some(n));
        prop_assert!(f.primes().all(is_prime));
    }

    #[test]
    fn any_128_bit_input_is_exact_or_partial(a in 2u64.., b in 2u64..) {
        let n = a as u128 * b as u128;
        match factor(n, &Effort::with_iterations(50_000)) {
            Ok(f) => prop_assert_eq!(f.value(), Some(n)),
            Err(Error::EffortExhausted { partial, cofactor }) => {
                prop_assert!(!is_prime(cofactor));
                prop_assert_eq!(partial.value().unwrap() * cofactor, n);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
