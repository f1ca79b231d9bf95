//! Lucas-type quotients `(x^m +- y^m)/(x +- y)`, the gcd reduction of the
//! base pair, rank of apparition and primitive prime divisors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::modular::{gcd, inv_mod, pow_mod};
use crate::arith::{factor, Effort};
use crate::error::{Error, Result};

/// `x = d1 * x1`, `y = d1 * y1` with `gcd(x1, y1) = 1` and `x1 > y1 >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedPair {
    pub d1: u64,
    pub x1: u64,
    pub y1: u64,
}

pub fn reduce_pair(x: u64, y: u64) -> Result<ReducedPair> {
    if !(x > y && y >= 1) {
        return Err(Error::InvalidInput(format!("need x > y >= 1, got ({x}, {y})")));
    }
    let d1 = gcd(x as u128, y as u128) as u64;
    Ok(ReducedPair {
        d1,
        x1: x / d1,
        y1: y / d1,
    })
}

/// The three quotient shapes that occur in the equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientKind {
    /// `(x^m - y^m)/(x - y)`, any `m`.
    MinusOverMinus,
    /// `(x^m + y^m)/(x + y)`, odd `m`.
    PlusOverPlus,
    /// `(x^m - y^m)/(x + y)`, even `m`.
    MinusOverPlus,
}

impl QuotientKind {
    pub fn check_parity(self, m: u32) -> Result<()> {
        let ok = match self {
            QuotientKind::MinusOverMinus => true,
            QuotientKind::PlusOverPlus => m % 2 == 1,
            QuotientKind::MinusOverPlus => m % 2 == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParityViolation {
                context: match self {
                    QuotientKind::PlusOverPlus => "(x^m+y^m)/(x+y), m must be odd",
                    QuotientKind::MinusOverPlus => "(x^m-y^m)/(x+y), m must be even",
                    QuotientKind::MinusOverMinus => unreachable!(),
                },
                exponent: m,
            })
        }
    }

    pub fn denominator(self, x: u128, y: u128) -> u128 {
        match self {
            QuotientKind::MinusOverMinus => x - y,
            QuotientKind::PlusOverPlus | QuotientKind::MinusOverPlus => x + y,
        }
    }
}

/// Exact quotient for `x > y >= 1`, `m >= 1`.
pub fn lucas_quotient(kind: QuotientKind, x: u64, y: u64, m: u32) -> Result<u128> {
    if !(x > y && y >= 1 && m >= 1) {
        return Err(Error::InvalidInput(format!(
            "need x > y >= 1 and m >= 1, got ({x}, {y}, {m})"
        )));
    }
    kind.check_parity(m)?;
    let (x, y) = (x as u128, y as u128);
    let xm = x.checked_pow(m).ok_or(Error::Overflow("x^m"))?;
    let ym = y.checked_pow(m).ok_or(Error::Overflow("y^m"))?;
    let numerator = match kind {
        QuotientKind::PlusOverPlus => xm.checked_add(ym).ok_or(Error::Overflow("x^m + y^m"))?,
        _ => xm - ym,
    };
    let den = kind.denominator(x, y);
    debug_assert_eq!(numerator % den, 0);
    Ok(numerator / den)
}

/// Below this bound the rank is found by scanning exponents; above it by
/// descending through the divisors of `p - 1`.
pub const RANK_SCAN_LIMIT: u128 = 10_000;

/// Least `l >= 1` with `p | x1^l - y1^l`. Always divides `p - 1`.
pub fn rank_of_apparition(x1: u64, y1: u64, p: u128) -> Result<u64> {
    rank_of_apparition_with(x1, y1, p, &Effort::default())
}

pub fn rank_of_apparition_with(x1: u64, y1: u64, p: u128, effort: &Effort) -> Result<u64> {
    let ratio = base_ratio(x1, y1, p)?;
    if p <= RANK_SCAN_LIMIT {
        Ok(rank_by_scan(ratio, p))
    } else {
        rank_by_order(ratio, p, effort)
    }
}

/// `x1 * y1^{-1} mod p`; rank of apparition equals its multiplicative order.
fn base_ratio(x1: u64, y1: u64, p: u128) -> Result<u128> {
    if p < 2 {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let (x, y) = (x1 as u128 % p, y1 as u128 % p);
    if x == 0 || y == 0 {
        return Err(Error::DividesBase { p });
    }
    let y_inv = inv_mod(y, p).ok_or(Error::DividesBase { p })?;
    Ok(crate::arith::modular::mul_mod(x, y_inv, p))
}

pub(crate) fn rank_by_scan(ratio: u128, p: u128) -> u64 {
    let mut acc = ratio;
    let mut l = 1u64;
    while acc != 1 {
        acc = acc * ratio % p;
        l += 1;
    }
    l
}

pub(crate) fn rank_by_order(ratio: u128, p: u128, effort: &Effort) -> Result<u64> {
    let mut l = p - 1;
    for (q, _) in factor(p - 1, effort)?.iter() {
        while l % q == 0 && pow_mod(ratio, l / q, p) == 1 {
            l /= q;
        }
    }
    u64::try_from(l).map_err(|_| Error::Overflow("rank above 2^64"))
}

/// Which of `x^m - y^m` / `x^m + y^m` a primitive divisor is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Minus,
    Plus,
}

/// Primes `p | x1^m - y1^m` with `l_p = m` (minus side), or `p | x1^m + y1^m`
/// with `l_p = 2m` (plus side). Empty for the Zsigmondy exceptions.
pub fn primitive_prime_divisors(
    x1: u64,
    y1: u64,
    m: u32,
    side: Side,
    effort: &Effort,
) -> Result<BTreeSet<u128>> {
    if !(x1 > y1 && y1 >= 1 && m >= 1) {
        return Err(Error::InvalidInput(format!(
            "need x1 > y1 >= 1 and m >= 1, got ({x1}, {y1}, {m})"
        )));
    }
    if gcd(x1 as u128, y1 as u128) != 1 {
        return Err(Error::InvalidInput(format!("({x1}, {y1}) not coprime")));
    }
    let (x, y) = (x1 as u128, y1 as u128);
    let xm = x.checked_pow(m).ok_or(Error::Overflow("x1^m"))?;
    let ym = y.checked_pow(m).ok_or(Error::Overflow("y1^m"))?;
    let (value, target) = match side {
        Side::Minus => (xm - ym, m as u64),
        Side::Plus => (
            xm.checked_add(ym).ok_or(Error::Overflow("x1^m + y1^m"))?,
            2 * m as u64,
        ),
    };
    let mut out = BTreeSet::new();
    for (p, _) in factor(value, effort)?.iter() {
        if rank_of_apparition_with(x1, y1, p, effort)? == target {
            out.insert(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_pair(2, 1).unwrap(), ReducedPair { d1: 1, x1: 2, y1: 1 });
        assert_eq!(reduce_pair(6, 2).unwrap(), ReducedPair { d1: 2, x1: 3, y1: 1 });
        assert_eq!(reduce_pair(15, 9).unwrap(), ReducedPair { d1: 3, x1: 5, y1: 3 });
        assert!(reduce_pair(2, 2).is_err());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(lucas_quotient(QuotientKind::PlusOverPlus, 2, 1, 3).unwrap(), 3);
        assert_eq!(lucas_quotient(QuotientKind::MinusOverMinus, 9, 4, 1).unwrap(), 1);
        assert_eq!(lucas_quotient(QuotientKind::MinusOverPlus, 3, 1, 2).unwrap(), 2);
        assert_eq!(lucas_quotient(QuotientKind::PlusOverPlus, 2, 1, 5).unwrap(), 11);
    }

    #[test]
    fn quotient_parity_is_enforced() {
        assert!(matches!(
            lucas_quotient(QuotientKind::PlusOverPlus, 2, 1, 4),
            Err(Error::ParityViolation { exponent: 4, .. })
        ));
        assert!(matches!(
            lucas_quotient(QuotientKind::MinusOverPlus, 2, 1, 3),
            Err(Error::ParityViolation { exponent: 3, .. })
        ));
    }

    #[test]
    fn quotient_overflow_is_reported() {
        assert!(matches!(
            lucas_quotient(QuotientKind::MinusOverMinus, 1000, 1, 20),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of_apparition(2, 1, 7).unwrap(), 3);
        assert_eq!(rank_of_apparition(8, 3, 5).unwrap(), 1);
        assert_eq!(rank_of_apparition(3, 1, 11).unwrap(), 5);
        assert_eq!(rank_of_apparition(3, 1, 67).unwrap(), 22);
        assert_eq!(rank_of_apparition(3, 1, 661).unwrap(), 22);
        assert!(matches!(rank_of_apparition(3, 1, 3), Err(Error::DividesBase { p: 3 })));
    }

    #[test]
    fn rank_routes_agree_near_threshold() {
        for p in crate::arith::primes_up_to(12_000).into_iter().filter(|&p| p >= 3) {
            let p = p as u128;
            for (x1, y1) in [(2u64, 1u64), (3, 1), (5, 3), (7, 2)] {
                if (x1 as u128 * y1 as u128) % p == 0 {
                    continue;
                }
                let r = base_ratio(x1, y1, p).unwrap();
                let scan = rank_by_scan(r, p);
                let order = rank_by_order(r, p, &Effort::default()).unwrap();
                assert_eq!(scan, order, "({x1},{y1}) mod {p}");
            }
        }
    }

    #[test]
    fn rank_above_scan_limit() {
        // ord_1093(2) = 364
        assert_eq!(rank_of_apparition(2, 1, 1093).unwrap(), 364);
        let big = 1_000_000_007u128;
        let l = rank_of_apparition(2, 1, big).unwrap();
        assert_eq!((big - 1) % l as u128, 0);
        assert_eq!(pow_mod(2, l as u128, big), 1);
    }

    #[test]
    fn primitive_divisor_examples() {
        let e = Effort::default();
        assert!(primitive_prime_divisors(2, 1, 6, Side::Minus, &e).unwrap().is_empty());
        assert_eq!(
            primitive_prime_divisors(2, 1, 5, Side::Plus, &e).unwrap(),
            BTreeSet::from([11])
        );
        assert_eq!(
            primitive_prime_divisors(3, 1, 11, Side::Plus, &e).unwrap(),
            BTreeSet::from([67, 661])
        );
        // 2^3 + 1 = 9: rank of 3 is 2, not 6
        assert!(primitive_prime_divisors(2, 1, 3, Side::Plus, &e).unwrap().is_empty());
    }
}
