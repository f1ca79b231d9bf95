use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

use phieq::arith::primes_up_to;
use phieq::lemma::{
    capped_valuation, identity_catalog, lemma36_scan, max_primes_per_pair, phi_multiple_solutions, verify_lemma,
    wieferich_scan, LemmaDetail, LemmaId, ScanHit, SCAN_EXPONENT_CAP,
};
use phieq::Effort;

/// `nu_q(a^e - b^e)` on full integers, `a > b`.
fn exact_valuation(a: u64, b: u64, e: u32, q: u64) -> u32 {
    let mut v = BigUint::from(a).pow(e) - BigUint::from(b).pow(e);
    let q = BigUint::from(q);
    let mut k = 0;
    while !v.is_zero() && (&v % &q).is_zero() {
        v /= &q;
        k += 1;
    }
    k
}

fn key(h: &ScanHit) -> (u64, u64, u64) {
    (h.x1, h.y1, h.q)
}

#[test]
fn capped_valuation_matches_full_integers() {
    for a in 2..=25u64 {
        for b in 1..a {
            for q in primes_up_to(60).into_iter().filter(|&q| q >= 3) {
                let exact = exact_valuation(a, b, (q - 1) as u32, q);
                for cap in [1, 2, 3, 6, SCAN_EXPONENT_CAP] {
                    assert_eq!(capped_valuation(a, b, q - 1, q, cap), exact.min(cap), "({a}, {b}) q={q}");
                }
            }
        }
    }
}

#[test]
fn scan_matches_full_integer_recount() {
    for k in [2, 3] {
        let hits: BTreeSet<_> = lemma36_scan(1..=25, 60, k).iter().map(key).collect();
        let mut expect = BTreeSet::new();
        for x1 in (1..=25u64).filter(|v| v % 2 == 1) {
            for y1 in (1..x1).step_by(2) {
                if num_integer_gcd(x1, y1) != 1 {
                    continue;
                }
                for q in primes_up_to(59).into_iter().filter(|&q| q >= 3) {
                    if (x1 - y1) % q == 0 || x1 % q == 0 || y1 % q == 0 {
                        continue;
                    }
                    if exact_valuation(x1, y1, (q - 1) as u32, q) >= k {
                        expect.insert((x1, y1, q));
                    }
                }
            }
        }
        assert_eq!(hits, expect, "k={k}");
    }
}

fn num_integer_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_integer_gcd(b, a % b)
    }
}

#[test]
fn scan_is_monotone() {
    let k2: BTreeSet<_> = lemma36_scan(1..=73, 173, 2).iter().map(key).collect();
    let k3: BTreeSet<_> = lemma36_scan(1..=73, 173, 3).iter().map(key).collect();
    let k3_small: BTreeSet<_> = lemma36_scan(1..=40, 173, 3).iter().map(key).collect();
    let k3_fewer_q: BTreeSet<_> = lemma36_scan(1..=73, 100, 3).iter().map(key).collect();
    assert!(k3.is_subset(&k2));
    assert!(k3_small.is_subset(&k3));
    assert!(k3_fewer_q.is_subset(&k3));
    assert!(lemma36_scan(1..=73, 173, 6).is_empty());
    assert!(k3.len() < k2.len());
}

#[test]
fn pair_maximum_is_two_at_exponent_three() {
    let hits = lemma36_scan(10..=73, 173, 3);
    let pm = max_primes_per_pair(&hits);
    assert_eq!(pm.max_primes, 2);
    assert_eq!(pm.argmax, vec![(37, 17), (61, 47)]);
    for h in &hits {
        assert!(h.exponent_reached >= 3);
        assert_eq!(exact_valuation(h.x1, h.y1, (h.q - 1) as u32, h.q).min(SCAN_EXPONENT_CAP), h.exponent_reached);
    }
}

#[test]
fn wieferich_scan_matches_full_integers() {
    let primes: Vec<u64> = primes_up_to(172).into_iter().filter(|&q| q >= 3).collect();
    let expect: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&q| exact_valuation(3, 1, (q - 1) as u32, q) >= 2)
        .collect();
    assert_eq!(wieferich_scan(3, 1, 173), expect);
    assert_eq!(expect, vec![11]);
    assert_eq!(wieferich_scan(2, 1, 1100), vec![1093]);
    assert_eq!(wieferich_scan(2, 1, 3600), vec![1093, 3511]);
}

#[test]
fn phi_multiple_sets_have_closed_forms() {
    let e = Effort::default();
    let three = phi_multiple_solutions(3, 10_000, &e).unwrap();
    for z in 1..10_000u64 {
        let mut r = z;
        let b = r.trailing_zeros();
        r >>= b;
        while r % 3 == 0 {
            r /= 3;
        }
        assert_eq!(three.contains(&z), b >= 1 && r == 1, "{z}");
    }
    let two = phi_multiple_solutions(2, 10_000, &e).unwrap();
    let pow2: Vec<u64> = (0..14).map(|k| 1u64 << k).collect();
    assert_eq!(two, pow2);
    assert_eq!(phi_multiple_solutions(1, 10_000, &e).unwrap(), vec![1]);
}

#[test]
fn catalog_and_lemma_outcomes() {
    assert!(identity_catalog().unwrap().iter().all(|i| i.pass));
    for id in LemmaId::ALL {
        let o = verify_lemma(id).unwrap();
        assert!(o.reproduced, "{id}");
    }
    match verify_lemma(LemmaId::Wieferich37).unwrap().detail {
        LemmaDetail::Primes { primes, cross_check } => {
            assert_eq!(primes, vec![11]);
            assert_eq!(cross_check, vec![1093]);
        }
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn capped_valuation_random(a in 2u64..200, b in 1u64..200, qi in 1usize..25, cap in 1u32..=8) {
        prop_assume!(a > b);
        let q = primes_up_to(100)[qi];
        let exact = exact_valuation(a, b, (q - 1) as u32, q);
        prop_assert_eq!(capped_valuation(a, b, q - 1, q, cap), exact.min(cap));
    }
}
