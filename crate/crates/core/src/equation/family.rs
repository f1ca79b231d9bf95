//! Trivial solutions, the stated solution families and the `gcd(m, n)`
//! reduction.

use serde::{Deserialize, Serialize};

use super::{CandidateSolution, EquationId, FamilyTag};
use crate::arith::modular::gcd;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::lucas::lucas_quotient;
use crate::search::{SearchBox, ZRange};

/// Trivial patterns.
///
/// * 1.1: `m = n`. Then `phi(k) = k` forces `k = 1`, i.e. `(a +- 1, a, 1, 1)`.
/// * 1.2: `m = n` (the `(a, b, 1, 1)` shape), and `(+-1, -+1, odd, odd)`.
/// * 1.3 to 1.6: `m = n`, and `m < n` with both quotients equal to 1, where
///   the equation collapses to `phi(z) = z` (e.g. `(a+1, a, 1, 1, 2)` of 1.6).
pub fn is_trivial(c: &CandidateSolution) -> bool {
    if c.m == c.n {
        return true;
    }
    match c.eq {
        EquationId::E11 => false,
        EquationId::E12 => {
            c.x == -c.y && c.x.unsigned_abs() == 1 && c.m % 2 == 1 && c.n % 2 == 1
        }
        _ => {
            if c.m > c.n {
                return false;
            }
            let Some((lk, rk)) = c.eq.quotient_kinds() else {
                return false;
            };
            let (x, y) = (c.x as u64, c.y as u64);
            matches!(
                (lucas_quotient(lk, x, y, c.m), lucas_quotient(rk, x, y, c.n)),
                (Ok(1), Ok(1))
            )
        }
    }
}

/// `q` and `p = (2^q + 1)/3`, both prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyPrime {
    pub q: u32,
    pub p: u128,
}

/// All `(q, p)` with `3 <= q <= q_max`. `2^q + 1` must fit in `u128`, so `q`
/// is capped at 127.
pub fn e16_family_primes(q_max: u32) -> Vec<FamilyPrime> {
    (3..=q_max.min(127))
        .filter(|&q| is_prime(q as u128))
        .filter_map(|q| {
            let p = ((1u128 << q) + 1) / 3;
            is_prime(p).then_some(FamilyPrime { q, p })
        })
        .collect()
}

fn is_power_of(mut v: u128, base: u128) -> bool {
    while v % base == 0 {
        v /= base;
    }
    v == 1
}

/// `z = 2^b * p^s` with `b >= 1`, `s >= 0`.
fn is_two_times_smooth(z: u64, p: u128) -> bool {
    let z = z as u128;
    z % 2 == 0 && is_power_of(z >> z.trailing_zeros(), p)
}

/// The named family of a non-trivial candidate, or `None`.
///
/// `(a +- 1, -a, 1, 2)` appears both as a 1.2 solution and, after the case
/// mapping, as the 1.6 degenerate solution `(a + 1, a, 1, 1, 2)`; it is
/// tagged `T1.2` here.
pub fn family_of(c: &CandidateSolution) -> Option<FamilyTag> {
    let (x, y, m, n) = (c.x, c.y, c.m, c.n);
    match c.eq {
        EquationId::E11 => {
            let (ax, ay) = (x.unsigned_abs(), y.unsigned_abs());
            let sum = ax + ay;
            let hit = (m, n) == (2, 1)
                && (x > 0) != (y > 0)
                && ax.abs_diff(ay) == 2
                && sum >= 4
                && sum.is_power_of_two();
            hit.then_some(FamilyTag::T11)
        }
        EquationId::E12 => {
            let s = (x as i128 + y as i128).unsigned_abs();
            let hit = ((m, n) == (1, 2) && s == 1) || ((m, n) == (2, 1) && (s == 1 || s == 2));
            hit.then_some(FamilyTag::T12)
        }
        EquationId::E13 => None,
        EquationId::E14 => {
            let z = c.z?;
            let hit = (x, y, m, n) == (2, 1, 3, 1) && is_two_times_smooth(z, 3);
            hit.then_some(FamilyTag::T13First)
        }
        EquationId::E15 => {
            let z = c.z? as u128;
            let hit = (m, n) == (2, 1)
                && match x - y {
                    1 => z == 1,
                    2 => z.is_power_of_two(),
                    3 => is_two_times_smooth(z as u64, 3),
                    _ => false,
                };
            hit.then_some(FamilyTag::T13Second)
        }
        EquationId::E16 => {
            let z = c.z?;
            if (x, y) != (2, 1) || n + 1 != m || m > 127 {
                return None;
            }
            let fp = e16_family_primes(m).into_iter().find(|fp| fp.q == m)?;
            is_two_times_smooth(z, fp.p).then_some(FamilyTag::T13Third)
        }
    }
}

fn z_values(bx: &SearchBox, x: u64, y: u64, mut keep: impl FnMut(u64) -> bool) -> Vec<u64> {
    let z_max = match bx.z {
        Some(ZRange::Max(z)) => z,
        Some(ZRange::SumXY) => x + y,
        None => return Vec::new(),
    };
    (1..=z_max).filter(|&z| keep(z)).collect()
}

/// Every member of the equation's stated families lying inside `bx`. For
/// 1.6 the primes `q` are those up to `bx.m_max`.
pub fn known_families(eq: EquationId, bx: &SearchBox) -> Vec<CandidateSolution> {
    let mut out = Vec::new();
    let xm = bx.x_max as i64;
    let mut push = |c: Result<CandidateSolution>| {
        if let Ok(c) = c {
            if bx.contains(&c) {
                out.push(c);
            }
        }
    };
    match eq {
        EquationId::E11 => {
            let mut t = 2u32;
            while (1i64 << (t - 1)) - 1 <= xm {
                let h = 1i64 << (t - 1);
                for (a, b) in [(h + 1, h - 1), (h - 1, h + 1)] {
                    for sign in [1, -1] {
                        push(CandidateSolution::signed(eq, sign * a, -sign * b, 2, 1));
                    }
                }
                t += 1;
            }
        }
        EquationId::E12 => {
            for x in -xm..=xm {
                for (s, m, n) in [(1, 1, 2), (-1, 1, 2), (1, 2, 1), (-1, 2, 1), (2, 2, 1), (-2, 2, 1)] {
                    let y = s - x;
                    if x != 0 && y != 0 && x != y {
                        push(CandidateSolution::signed(eq, x, y, m, n));
                    }
                }
            }
        }
        EquationId::E13 => {}
        EquationId::E14 => {
            for z in z_values(bx, 2, 1, |z| is_two_times_smooth(z, 3)) {
                push(CandidateSolution::with_z(eq, 2, 1, z, 3, 1));
            }
        }
        EquationId::E15 => {
            for y in 1..bx.x_max {
                for d in 1..=3u64 {
                    let x = y + d;
                    if x > bx.x_max {
                        continue;
                    }
                    let zs = z_values(bx, x, y, |z| match d {
                        1 => z == 1,
                        2 => z.is_power_of_two(),
                        _ => is_two_times_smooth(z, 3),
                    });
                    for z in zs {
                        push(CandidateSolution::with_z(eq, x, y, z, 2, 1));
                    }
                }
            }
        }
        EquationId::E16 => {
            for fp in e16_family_primes(bx.m_max) {
                for z in z_values(bx, 2, 1, |z| is_two_times_smooth(z, fp.p)) {
                    push(CandidateSolution::with_z(eq, 2, 1, z, fp.q, fp.q - 1));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Replaces `(x, y, z, m, n)` by `(x^d, y^d, z0, m/d, n/d)` with
/// `d = gcd(m, n)`. Both sides of the equation are unchanged as integers.
pub fn reduce_to_coprime_exponents(c: &CandidateSolution) -> Result<CandidateSolution> {
    c.validate()?;
    if c.eq.is_signed() {
        return Err(Error::InvalidInput(format!(
            "exponent reduction applies to 1.3-1.6, not {}",
            c.eq
        )));
    }
    let d0 = gcd(c.m as u128, c.n as u128) as u32;
    if d0 == 1 {
        return Ok(*c);
    }
    let plus_form = c.eq != EquationId::E13;
    if plus_form && d0 % 2 == 0 {
        return Err(Error::ParityViolation {
            context: "gcd(m, n) must be odd for 1.4-1.6",
            exponent: d0,
        });
    }
    let (x, y) = (c.x as u64, c.y as u64);
    let xd = (x as u128).checked_pow(d0).ok_or(Error::Overflow("x^d0"))?;
    let yd = (y as u128).checked_pow(d0).ok_or(Error::Overflow("y^d0"))?;
    let multiplier = if plus_form {
        (xd + yd) / (x as u128 + y as u128)
    } else {
        (xd - yd) / (x as u128 - y as u128)
    };
    let z0 = (c.z.expect("validated") as u128)
        .checked_mul(multiplier)
        .and_then(|v| u64::try_from(v).ok())
        .ok_or(Error::Overflow("z0"))?;
    let x0 = u64::try_from(xd).map_err(|_| Error::Overflow("x0"))?;
    let y0 = u64::try_from(yd).map_err(|_| Error::Overflow("y0"))?;
    CandidateSolution::with_z(c.eq, x0, y0, z0, c.m / d0, c.n / d0)
}
