//! Finite computer searches and exact identities used by the proofs.
//!
//! Every scan works modulo `q^k` with `k` small, never with the full
//! `x1^(q-1)` values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::modular::{gcd, pow_mod};
use crate::arith::{euler_phi, factor, nu, primes_up_to, tau, Effort, Factorization};
use crate::error::{Error, Result};
use crate::lucas::{primitive_prime_divisors, rank_of_apparition, Side};

/// Valuations above this are reported as this value.
pub const SCAN_EXPONENT_CAP: u32 = 16;

/// `q^k | x1^(q-1) - y1^(q-1)` with `q` not dividing `x1 - y1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScanHit {
    pub x1: u64,
    pub y1: u64,
    pub q: u64,
    /// `nu_q(x1^(q-1) - y1^(q-1))`, capped at [`SCAN_EXPONENT_CAP`].
    pub exponent_reached: u32,
}

/// `nu_q(a^e - b^e)` capped at `cap`, computed modulo `q^cap`. The cap is
/// lowered further if `q^cap` would not stay below `2^127`.
pub fn capped_valuation(a: u64, b: u64, e: u64, q: u64, cap: u32) -> u32 {
    let mut cap = cap;
    while (q as u128).checked_pow(cap).map_or(true, |v| v >= 1 << 127) {
        cap -= 1;
    }
    let modulus = (q as u128).pow(cap);
    let lhs = pow_mod(a as u128 % modulus, e as u128, modulus);
    let rhs = pow_mod(b as u128 % modulus, e as u128, modulus);
    let diff = (lhs + modulus - rhs) % modulus;
    if diff == 0 {
        cap
    } else {
        nu(q as u128, diff)
    }
}

/// All `(x1, y1, q)` with `x1` in `x1_range`, `1 <= y1 < x1`, both odd and
/// coprime, `q` an odd prime below `q_max` dividing neither `x1 - y1` nor
/// `x1 y1`, and `q^k | x1^(q-1) - y1^(q-1)`.
pub fn lemma36_scan(x1_range: RangeInclusive<u64>, q_max: u64, k: u32) -> Vec<ScanHit> {
    assert!(k >= 1 && k <= SCAN_EXPONENT_CAP);
    let primes: Vec<u64> = primes_up_to(q_max.saturating_sub(1))
        .into_iter()
        .filter(|&q| q >= 3)
        .collect();
    let mut hits = Vec::new();
    for x1 in x1_range.filter(|v| v % 2 == 1) {
        for y1 in (1..x1).step_by(2) {
            if gcd(x1 as u128, y1 as u128) != 1 {
                continue;
            }
            for &q in &primes {
                if (x1 - y1) % q == 0 || x1 % q == 0 || y1 % q == 0 {
                    continue;
                }
                let v = capped_valuation(x1, y1, q - 1, q, SCAN_EXPONENT_CAP);
                if v >= k {
                    hits.push(ScanHit {
                        x1,
                        y1,
                        q,
                        exponent_reached: v,
                    });
                }
            }
        }
    }
    hits
}

/// Largest number of distinct hit primes for one `(x1, y1)`, with the pairs
/// attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMaximum {
    pub max_primes: usize,
    pub argmax: Vec<(u64, u64)>,
}

pub fn max_primes_per_pair(hits: &[ScanHit]) -> PairMaximum {
    let mut per_pair: BTreeMap<(u64, u64), BTreeSet<u64>> = BTreeMap::new();
    for h in hits {
        per_pair.entry((h.x1, h.y1)).or_default().insert(h.q);
    }
    let max_primes = per_pair.values().map(BTreeSet::len).max().unwrap_or(0);
    let argmax = per_pair
        .into_iter()
        .filter(|(_, qs)| qs.len() == max_primes && max_primes > 0)
        .map(|(pair, _)| pair)
        .collect();
    PairMaximum { max_primes, argmax }
}

/// Odd primes `q < q_max` with `q^2 | bx^(q-1) - by^(q-1)`.
pub fn wieferich_scan(bx: u64, by: u64, q_max: u64) -> Vec<u64> {
    primes_up_to(q_max.saturating_sub(1))
        .into_iter()
        .filter(|&q| q >= 3)
        .filter(|&q| capped_valuation(bx, by, q - 1, q, 2) >= 2)
        .collect()
}

/// One exact check with its expected and computed values as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogItem {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl CatalogItem {
    fn new(id: &str, expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        CatalogItem {
            id: id.to_string(),
            pass: expected == computed,
            expected,
            computed,
        }
    }
}

fn show_factorization(f: &Factorization) -> String {
    let parts: Vec<String> = f
        .iter()
        .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    parts.join(" * ")
}

fn show_set<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `{z < limit : phi(c z) = z}` by direct evaluation.
pub fn phi_multiple_solutions(c: u64, limit: u64, effort: &Effort) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for z in 1..limit {
        if euler_phi(c as u128 * z as u128, effort)? == z as u128 {
            out.push(z);
        }
    }
    Ok(out)
}

/// The identities: `3^11 + 1`, `3^5 - 1`, `l_67 = l_661 = 22` for `(3, 1)`,
/// the primes of rank 22, and the solution sets of `phi(3z) = z` and
/// `phi(2z) = z` below `10^4`.
pub fn identity_catalog() -> Result<Vec<CatalogItem>> {
    let e = Effort::default();
    let mut items = Vec::new();

    let f = factor(3u128.pow(11) + 1, &e)?;
    items.push(CatalogItem::new("3^11+1", "2^2 * 67 * 661", show_factorization(&f)));
    let f = factor(3u128.pow(5) - 1, &e)?;
    items.push(CatalogItem::new("3^5-1", "2 * 11^2", show_factorization(&f)));
    items.push(CatalogItem::new("l_67(3,1)", 22, rank_of_apparition(3, 1, 67)?));
    items.push(CatalogItem::new("l_661(3,1)", 22, rank_of_apparition(3, 1, 661)?));
    let prim = primitive_prime_divisors(3, 1, 11, Side::Plus, &e)?;
    items.push(CatalogItem::new("rank-22 primes of 3^11+1", "{67, 661}", show_set(prim)));

    let limit = 10_000u64;
    let closed: Vec<u64> = (1..limit)
        .filter(|&z| z % 2 == 0 && is_smooth_23(z))
        .collect();
    items.push(CatalogItem::new(
        "phi(3z)=z, z<10^4",
        show_set(closed),
        show_set(phi_multiple_solutions(3, limit, &e)?),
    ));
    let closed: Vec<u64> = (1..limit).filter(|z| z.is_power_of_two()).collect();
    items.push(CatalogItem::new(
        "phi(2z)=z, z<10^4",
        show_set(closed),
        show_set(phi_multiple_solutions(2, limit, &e)?),
    ));
    Ok(items)
}

fn is_smooth_23(mut z: u64) -> bool {
    for p in [2, 3] {
        while z % p == 0 {
            z /= p;
        }
    }
    z == 1
}

/// Raw truth of `2 nu_q(x1^(q-1) - y1^(q-1)) >= nu_q(m) tau(m) - 2`, i.e.
/// `q^(nu_q(m) tau(m)/2 - 1)` dividing the difference. The divisibility is
/// only proved for exponents coming from a solution, so `false` is a
/// legitimate answer on arbitrary input.
pub fn lemma31_divisibility_check(x1: u64, y1: u64, q: u64, m: u64) -> Result<bool> {
    if gcd(x1 as u128, y1 as u128) != 1 || x1 <= y1 || y1 == 0 {
        return Err(Error::InvalidInput(format!("need coprime x1 > y1 >= 1, got ({x1}, {y1})")));
    }
    if !crate::arith::is_prime(q as u128) || m % q != 0 {
        return Err(Error::InvalidInput(format!("need prime q | m, got q = {q}, m = {m}")));
    }
    let needed = nu(q as u128, m as u128) as i64 * tau(m as u128, &Effort::default())? as i64 - 2;
    let have = 2 * capped_valuation(x1, y1, q - 1, q, SCAN_EXPONENT_CAP) as i64;
    Ok(have >= needed)
}

/// The concrete valuations and divisor counts the divisibility lemma is
/// assembled from.
pub fn lemma31_blocks() -> Result<Vec<CatalogItem>> {
    let e = Effort::default();
    Ok(vec![
        CatalogItem::new("nu_3(45)", 2, nu(3, 45)),
        CatalogItem::new("tau(45)", 6, tau(45, &e)?),
        CatalogItem::new("nu_3(4^2-1)", 1, nu(3, 15)),
        CatalogItem::new("nu_11(3^10-1)", 2, nu(11, 3u128.pow(10) - 1)),
        CatalogItem::new("nu_11(3^5-1)", 2, nu(11, 242)),
    ])
}

/// Addressable lemma checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "3.6-k6")]
    Scan36K6,
    #[serde(rename = "3.6-k3")]
    Scan36K3,
    #[serde(rename = "3.7-wieferich")]
    Wieferich37,
    #[serde(rename = "catalog")]
    Catalog,
    #[serde(rename = "3.1-blocks")]
    Blocks31,
}

impl LemmaId {
    pub const ALL: [LemmaId; 5] = [
        LemmaId::Scan36K6,
        LemmaId::Scan36K3,
        LemmaId::Wieferich37,
        LemmaId::Catalog,
        LemmaId::Blocks31,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LemmaId::Scan36K6 => "3.6-k6",
            LemmaId::Scan36K3 => "3.6-k3",
            LemmaId::Wieferich37 => "3.7-wieferich",
            LemmaId::Catalog => "catalog",
            LemmaId::Blocks31 => "3.1-blocks",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.label() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown lemma id '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaDetail {
    Scan {
        hits: Vec<ScanHit>,
        per_pair: Option<PairMaximum>,
    },
    Primes {
        primes: Vec<u64>,
        cross_check: Vec<u64>,
    },
    Items {
        items: Vec<CatalogItem>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub id: LemmaId,
    pub claim: String,
    pub reproduced: bool,
    pub detail: LemmaDetail,
}

pub const LEMMA36_X1_MAX: u64 = 73;
pub const LEMMA36_Q_MAX: u64 = 173;

/// Runs one check and compares it with the stated claim.
pub fn verify_lemma(id: LemmaId) -> Result<LemmaOutcome> {
    let out = match id {
        LemmaId::Scan36K6 => {
            let hits = lemma36_scan(1..=LEMMA36_X1_MAX, LEMMA36_Q_MAX, 6);
            LemmaOutcome {
                id,
                claim: "no q^6 | x1^(q-1) - y1^(q-1) for odd coprime y1 < x1 <= 73, 3 <= q < 173".into(),
                reproduced: hits.is_empty(),
                detail: LemmaDetail::Scan { hits, per_pair: None },
            }
        }
        LemmaId::Scan36K3 => {
            let low = lemma36_scan(1..=9, LEMMA36_Q_MAX, 3);
            let high = lemma36_scan(10..=LEMMA36_X1_MAX, LEMMA36_Q_MAX, 3);
            let per_pair = max_primes_per_pair(&high);
            let reproduced = low.is_empty() && per_pair.max_primes <= 2;
            let mut hits = low;
            hits.extend(high);
            LemmaOutcome {
                id,
                claim: "q^3 hits: none for x1 <= 9, at most two primes per pair for 10 <= x1 <= 73".into(),
                reproduced,
                detail: LemmaDetail::Scan {
                    hits,
                    per_pair: Some(per_pair),
                },
            }
        }
        LemmaId::Wieferich37 => {
            let primes = wieferich_scan(3, 1, LEMMA36_Q_MAX);
            let cross_check = wieferich_scan(2, 1, 1100);
            LemmaOutcome {
                id,
                claim: "{q < 173 : q^2 | 3^(q-1) - 1} = {11}; base 2 below 1100 gives {1093}".into(),
                reproduced: primes == [11] && cross_check == [1093],
                detail: LemmaDetail::Primes { primes, cross_check },
            }
        }
        LemmaId::Catalog => {
            let items = identity_catalog()?;
            LemmaOutcome {
                id,
                claim: "identity catalog".into(),
                reproduced: items.iter().all(|i| i.pass),
                detail: LemmaDetail::Items { items },
            }
        }
        LemmaId::Blocks31 => {
            let items = lemma31_blocks()?;
            LemmaOutcome {
                id,
                claim: "valuation and divisor-count building blocks".into(),
                reproduced: items.iter().all(|i| i.pass),
                detail: LemmaDetail::Items { items },
            }
        }
    };
    Ok(out)
}
