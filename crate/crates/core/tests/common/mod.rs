//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use phieq::EquationId;

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `phi(n)` by counting `1 <= k <= n` coprime to `n`.
pub fn naive_phi(n: u128) -> u128 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u128
}

pub fn naive_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Exponent parity each equation admits.
pub fn parity_ok(eq: EquationId, m: u32, n: u32) -> bool {
    match eq {
        EquationId::E11 | EquationId::E12 | EquationId::E13 => true,
        EquationId::E14 => m % 2 == 1 && n % 2 == 1,
        EquationId::E15 => m % 2 == 0 && n % 2 == 1,
        EquationId::E16 => m % 2 == 1 && n % 2 == 0,
    }
}

/// Both sides of `eq` in `i128`, straight from the defining formulas.
pub fn sides(eq: EquationId, x: i64, y: i64, z: u64, m: u32, n: u32) -> (i128, i128) {
    let (x, y, z) = (x as i128, y as i128, z as i128);
    let p = |k: u32| x.pow(k) + y.pow(k);
    let q = |k: u32| x.pow(k) - y.pow(k);
    match eq {
        EquationId::E11 => (q(m).abs(), q(n).abs()),
        EquationId::E12 => ((q(m) / (x - y)).abs(), (q(n) / (x - y)).abs()),
        EquationId::E13 => (z * q(m) / (x - y), z * q(n) / (x - y)),
        EquationId::E14 => (z * p(m) / (x + y), z * p(n) / (x + y)),
        EquationId::E15 => (z * q(m) / (x + y), z * p(n) / (x + y)),
        EquationId::E16 => (z * p(m) / (x + y), z * q(n) / (x + y)),
    }
}

/// Every solution `(x, y, z, m, n)` in the box, `z = 0` standing for "no z".
/// Returns the solution set and the number of tuples tried.
pub fn naive_sweep(eq: EquationId, x_max: i64, m_max: u32, z_max: u64) -> (BTreeSet<(i64, i64, u64, u32, u32)>, u128) {
    let mut found = BTreeSet::new();
    let mut tried = 0u128;
    let signed = matches!(eq, EquationId::E11 | EquationId::E12);
    let mut pairs = Vec::new();
    if signed {
        for x in -x_max..=x_max {
            for y in -x_max..=x_max {
                if x != 0 && y != 0 && x != y {
                    pairs.push((x, y));
                }
            }
        }
    } else {
        for x in 2..=x_max {
            for y in 1..x {
                pairs.push((x, y));
            }
        }
    }
    let zs: Vec<u64> = if signed { vec![0] } else { (1..=z_max).collect() };
    for &(x, y) in &pairs {
        for m in 1..=m_max {
            for n in 1..=m_max {
                if !parity_ok(eq, m, n) {
                    continue;
                }
                for &z in &zs {
                    tried += 1;
                    let (l, r) = sides(eq, x, y, z.max(1), m, n);
                    if l > 0 && naive_phi(l as u128) == r as u128 {
                        found.insert((x, y, z, m, n));
                    }
                }
            }
        }
    }
    (found, tried)
}

/// `x^k` for `k >= 0` as a sorted set below `limit`.
pub fn powers_below(base: u64, limit: u64) -> Vec<u64> {
    let mut out: Vec<u64> = vec![1];
    if base < 2 {
        return out;
    }
    while let Some(v) = out.last().copied().unwrap_or(1u64).checked_mul(base) {
        if v > limit {
            break;
        }
        out.push(v);
    }
    out
}

/// `{2^b p^s <= limit : b >= b_min, s >= 0}`.
pub fn two_times_p_smooth(p: u64, b_min: u32, limit: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for ps in powers_below(p, limit) {
        for t in powers_below(2, limit) {
            if t.trailing_zeros() >= b_min && ps.checked_mul(t).is_some_and(|v| v <= limit) {
                out.insert(ps * t);
            }
        }
    }
    out
}
