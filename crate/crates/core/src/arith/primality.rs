use super::modular::{pow_mod, Montgomery};
use super::sieve::small_primes;

/// Witnesses proven sufficient for every n < 2^64.
const WITNESSES_U64: [u128; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// The first thirteen primes are sufficient witnesses for n below this bound.
pub const DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;
const WITNESSES_PRIMES_13: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Above [`DETERMINISTIC_LIMIT`] the first twenty primes are used. No
/// counterexample is known for this set, but it is not proven complete.
const WITNESSES_PRIMES_20: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Primality test for any `u128`.
///
/// Exact for `n < 3.317e24` (strong Miller-Rabin with a proven witness set).
/// Larger inputs use a fixed 20-prime witness set; a strong pseudoprime to all
/// twenty bases would be misreported, none is known.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in small_primes() {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // No factor below the trial bound.
    let bound = *small_primes().last().unwrap() as u128;
    if n < bound * bound {
        return true;
    }
    if n <= u64::MAX as u128 {
        miller_rabin_small(n as u64, &WITNESSES_U64)
    } else if n < DETERMINISTIC_LIMIT {
        miller_rabin_wide(n, &WITNESSES_PRIMES_13)
    } else {
        miller_rabin_wide(n, &WITNESSES_PRIMES_20)
    }
}

fn miller_rabin_small(n: u64, witnesses: &[u128]) -> bool {
    let n = n as u128;
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in witnesses {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_wide(n: u128, witnesses: &[u128]) -> bool {
    let mont = Montgomery::new(n);
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let one = mont.one();
    let minus_one = mont.sub(0, one);
    'witness: for &a in witnesses {
        let mut x = mont.pow(mont.to_mont(a), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = mont.mul(x, x);
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u128) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u128;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn unit_is_not_prime() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
    }

    #[test]
    fn small_values_match_trial_division() {
        for n in 0..20_000u128 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn known_primes() {
        assert!(is_prime(661));
        assert!(is_prime(67));
        assert!(is_prime((1 << 31) - 1));
        assert!(trial((1 << 31) - 1));
        assert!(is_prime((1 << 61) - 1));
        assert!(is_prime((1 << 89) - 1));
        assert!(is_prime((1 << 127) - 1));
        assert!(!is_prime((1 << 67) - 1)); // 193707721 * 761838257287
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // Carmichael numbers and classic strong pseudoprimes.
        for n in [561u128, 1105, 1729, 2047, 3215031751, 3825123056546413051] {
            assert!(!is_prime(n), "{n}");
        }
        // psi_12: strong pseudoprime to the first 12 prime bases
        assert!(!is_prime(318665857834031151167461));
        // psi_13, strong pseudoprime to bases 2..37
        assert!(!is_prime(3317044064679887385961981));
    }

    #[test]
    fn semiprime_above_u64() {
        let p = 18446744073709551557u128; // largest prime below 2^64
        let q = 4294967291u128;
        assert!(is_prime(p) && is_prime(q));
        assert!(!is_prime(p * q));
    }
}
