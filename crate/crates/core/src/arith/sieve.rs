use std::sync::OnceLock;

/// Trial-division bound used before Miller-Rabin and Pollard rho.
pub const TRIAL_BOUND: u64 = 1 << 12;

/// Primes below [`TRIAL_BOUND`], computed once.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_BOUND - 1))
}

/// All primes `p <= limit` (Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// The `i`-th prime, 1-indexed (`nth_prime(1) == 2`).
pub fn nth_prime(i: usize) -> u64 {
    assert!(i >= 1);
    let mut limit = 64u64;
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= i {
            return ps[i - 1];
        }
        limit *= 2;
    }
}

/// Euler totient for every `k <= limit` via a linear sieve; index 0 holds 0.
pub fn totients_up_to(limit: usize) -> Vec<u64> {
    let mut phi = vec![0u64; limit + 1];
    if limit >= 1 {
        phi[1] = 1;
    }
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = i as u64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    phi
}
