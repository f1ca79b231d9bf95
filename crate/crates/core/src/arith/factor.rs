use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modular::{gcd, Montgomery};
use super::primality::is_prime;
use super::sieve::small_primes;
use crate::error::{Error, Result};

/// Budget for the randomized part of factoring.
///
/// `rho_iterations` caps the total number of Pollard-Brent steps spent on one
/// call to [`factor`]; `seed` fixes the pseudo-random polynomial choices, so a
/// given `(n, Effort)` always produces the same outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effort {
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Effort {
    pub const DEFAULT_RHO_ITERATIONS: u64 = 1 << 22;
    pub const DEFAULT_SEED: u64 = 0x5eed_0f_70_7e47;

    pub fn with_iterations(rho_iterations: u64) -> Self {
        Effort {
            rho_iterations,
            ..Effort::default()
        }
    }
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            rho_iterations: Self::DEFAULT_RHO_ITERATIONS,
            seed: Self::DEFAULT_SEED,
        }
    }
}

/// Prime factorization: prime -> positive exponent, ordered by prime.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization(BTreeMap<u128, u32>);

impl Factorization {
    pub fn new() -> Self {
        Factorization(BTreeMap::new())
    }

    /// Builds from `(prime, exponent)` pairs, merging repeats. Panics on a
    /// non-prime key or zero exponent.
    pub fn from_pairs<I: IntoIterator<Item = (u128, u32)>>(pairs: I) -> Self {
        let mut f = Factorization::new();
        for (p, e) in pairs {
            assert!(is_prime(p), "{p} is not prime");
            f.insert(p, e);
        }
        f
    }

    pub(crate) fn insert(&mut self, p: u128, e: u32) {
        if e > 0 {
            *self.0.entry(p).or_insert(0) += e;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, p: u128) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, u32)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.0.keys().copied()
    }

    /// Product of `p^e`; `None` on overflow.
    pub fn value(&self) -> Option<u128> {
        self.iter()
            .try_fold(1u128, |acc, (p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// Factorization of the product `self * other`.
    pub fn merged(&self, other: &Factorization) -> Factorization {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.insert(p, e);
        }
        out
    }

    /// Euler totient of the factored integer; `None` on overflow.
    pub fn phi(&self) -> Option<u128> {
        self.iter().try_fold(1u128, |acc, (p, e)| {
            acc.checked_mul(p.checked_pow(e - 1)?.checked_mul(p - 1)?)
        })
    }

    /// Number of positive divisors.
    pub fn tau(&self) -> u128 {
        self.0.values().map(|&e| e as u128 + 1).product()
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.0.len()
    }

    pub fn least_prime(&self) -> Option<u128> {
        self.0.keys().next().copied()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u128> {
        let mut divs = vec![1u128];
        for (p, e) in self.iter() {
            let len = divs.len();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Complete factorization of `n >= 1`.
///
/// Trial division by the primes below 2^12, then Pollard-Brent rho on the
/// remaining composite parts. When the rho budget in `effort` runs out the
/// call fails with [`Error::EffortExhausted`], carrying the primes found so far
/// and the unfactored cofactor.
pub fn factor(n: u128, effort: &Effort) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut found = Factorization::new();
    let mut rest = n;
    for &p in small_primes() {
        let p = p as u128;
        if p * p > rest {
            break;
        }
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        found.insert(p, e);
    }
    if rest == 1 {
        return Ok(found);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(effort.seed ^ (n as u64) ^ ((n >> 64) as u64));
    let mut budget = effort.rho_iterations;
    let mut pending = vec![rest];
    let mut stuck: u128 = 1;
    while let Some(c) = pending.pop() {
        if c == 1 {
            continue;
        }
        if is_prime(c) {
            found.insert(c, 1);
            continue;
        }
        if let Some((root, k)) = perfect_power(c) {
            for _ in 0..k {
                pending.push(root);
            }
            continue;
        }
        match pollard_brent(c, &mut budget, &mut rng) {
            Some(d) => {
                pending.push(d);
                pending.push(c / d);
            }
            None => stuck *= c,
        }
    }
    if stuck == 1 {
        Ok(found)
    } else {
        Err(Error::EffortExhausted {
            partial: found,
            cofactor: stuck,
        })
    }
}

/// Largest `k >= 2` with `n = r^k`, if any.
fn perfect_power(n: u128) -> Option<(u128, u32)> {
    let bits = 128 - n.leading_zeros();
    for k in (2..=bits).rev() {
        let r = integer_root(n, k);
        if r > 1 && r.checked_pow(k) == Some(n) {
            return Some((r, k));
        }
    }
    None
}

/// floor(n^(1/k)) for k >= 2.
fn integer_root(n: u128, k: u32) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u128;
    // Float estimate is within a few units; correct in both directions.
    while r > 0 && r.checked_pow(k).map_or(true, |v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// A nontrivial factor of the odd composite `n`, or `None` once `budget` runs out.
fn pollard_brent(n: u128, budget: &mut u64, rng: &mut ChaCha8Rng) -> Option<u128> {
    const BATCH: u64 = 128;
    let mont = Montgomery::new(n);
    while *budget > 0 {
        let c = mont.to_mont(rng.gen_range(1..n));
        let mut y = mont.to_mont(rng.gen_range(0..n));
        let step = |v: u128| mont.add(mont.mul(v, v), c);

        let mut r: u64 = 1;
        let mut q = mont.one();
        let mut g = 1u128;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let lim = BATCH.min(r - k);
                for _ in 0..lim {
                    y = step(y);
                    q = mont.mul(q, mont.sub(x.max(y), x.min(y)));
                }
                *budget = budget.saturating_sub(lim);
                g = gcd(q, n);
                k += lim;
                if *budget == 0 && g == 1 {
                    return None;
                }
            }
            r *= 2;
        }
        if g == n {
            // Batch overshot; retrace one step at a time.
            loop {
                ys = step(ys);
                g = gcd(mont.sub(x.max(ys), x.min(ys)), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

/// Euler's totient of `n >= 1`, from its factorization.
pub fn euler_phi(n: u128, effort: &Effort) -> Result<u128> {
    factor(n, effort)?
        .phi()
        .ok_or(Error::Overflow("totient"))
}

/// p-adic valuation of a nonzero integer.
pub fn nu(p: u128, n: u128) -> u32 {
    assert!(p >= 2, "valuation base must be at least 2");
    assert!(n != 0, "valuation of zero is undefined");
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

pub fn tau(n: u128, effort: &Effort) -> Result<u128> {
    Ok(factor(n, effort)?.tau())
}

pub fn omega(n: u128, effort: &Effort) -> Result<usize> {
    Ok(factor(n, effort)?.omega())
}

/// Smallest prime divisor of `n >= 2`.
pub fn least_prime_factor(n: u128, effort: &Effort) -> Result<u128> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("{n} has no prime factor")));
    }
    for &p in small_primes() {
        if n % p as u128 == 0 {
            return Ok(p as u128);
        }
    }
    Ok(factor(n, effort)?.least_prime().expect("n >= 2"))
}
