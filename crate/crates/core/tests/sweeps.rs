mod common;

use std::collections::BTreeSet;

use phieq::search::{sweep, Filters, Nu2Filter, ZRange};
use phieq::{Effort, EquationId, SearchBox, Verdict};

fn found_set(r: &phieq::CertificationReport) -> BTreeSet<(i64, i64, u64, u32, u32)> {
    r.found
        .iter()
        .map(|s| {
            let c = s.candidate;
            (c.x, c.y, c.z.unwrap_or(0), c.m, c.n)
        })
        .collect()
}

#[test]
fn micro_box_sweeps_match_counting_oracle() {
    let cases = [
        (EquationId::E11, 4, 4, 0),
        (EquationId::E12, 4, 4, 0),
        (EquationId::E13, 4, 3, 10),
        (EquationId::E14, 5, 3, 10),
        (EquationId::E15, 5, 4, 10),
        (EquationId::E16, 4, 5, 12),
    ];
    for (eq, x_max, m_max, z_max) in cases {
        let bx = if z_max == 0 {
            SearchBox::signed(x_max as u64, m_max)
        } else {
            SearchBox::with_z(x_max as u64, m_max, ZRange::Max(z_max))
        };
        let report = sweep(eq, &bx, 2).unwrap();
        let (oracle, tried) = common::naive_sweep(eq, x_max, m_max, z_max);
        assert_eq!(found_set(&report), oracle, "{eq}");
        assert_eq!(report.cardinality, tried, "{eq}");
        assert_eq!(report.checked, tried, "{eq}");
        assert!(report.unresolved.is_empty());
    }
}

#[test]
fn report_is_independent_of_worker_count() {
    let boxes = [
        (EquationId::E11, SearchBox::signed(7, 5)),
        (EquationId::E14, SearchBox::with_z(6, 5, ZRange::Max(40))),
        (EquationId::E16, SearchBox::with_z(8, 7, ZRange::SumXY).excluding_z(2)),
        (EquationId::E14, SearchBox::with_z(40, 7, ZRange::Max(3)).with_effort(Effort::with_iterations(1))),
    ];
    for (eq, bx) in boxes {
        let base = sweep(eq, &bx, 1).unwrap();
        for workers in [2, 3, 7, 64] {
            assert_eq!(sweep(eq, &bx, workers).unwrap(), base, "{eq} workers={workers}");
        }
    }
}

#[test]
fn checked_plus_unresolved_is_cardinality() {
    for effort in [Effort::with_iterations(1), Effort::with_iterations(50), Effort::default()] {
        let bx = SearchBox::with_z(40, 7, ZRange::Max(3)).with_effort(effort);
        let r = sweep(EquationId::E14, &bx, 4).unwrap();
        assert_eq!(r.checked + r.unresolved.len() as u128, r.cardinality);
        if !r.unresolved.is_empty() {
            assert_eq!(r.verdict, Verdict::Incomplete);
        }
    }
    let bx = SearchBox::with_z(40, 7, ZRange::Max(3)).with_effort(Effort::with_iterations(1));
    assert!(!sweep(EquationId::E14, &bx, 1).unwrap().unresolved.is_empty());
}

#[test]
fn filters_restrict_the_grid() {
    let full = SearchBox::with_z(6, 6, ZRange::Max(10));
    let coprime = full.clone().with_filters(Filters {
        coprime_exponents: true,
        ..Filters::default()
    });
    let below = full.clone().with_filters(Filters {
        n_below_m: true,
        ..Filters::default()
    });
    let eq = EquationId::E13;
    let r_full = sweep(eq, &full, 1).unwrap();
    for bx in [coprime, below] {
        let r = sweep(eq, &bx, 1).unwrap();
        assert!(r.cardinality < r_full.cardinality);
        assert!(found_set(&r).is_subset(&found_set(&r_full)));
        assert!(r.found.iter().all(|s| bx.contains(&s.candidate)));
    }
    let equal = full.clone().with_filters(Filters {
        nu2: Nu2Filter::Equal,
        ..Filters::default()
    });
    let distinct = full.with_filters(Filters {
        nu2: Nu2Filter::Distinct,
        ..Filters::default()
    });
    let (a, b) = (sweep(eq, &equal, 1).unwrap(), sweep(eq, &distinct, 1).unwrap());
    assert_eq!(a.cardinality + b.cardinality, r_full.cardinality);
    let union: BTreeSet<_> = found_set(&a).union(&found_set(&b)).copied().collect();
    assert_eq!(union, found_set(&r_full));
}

#[test]
fn z_exclusion_and_sum_rule() {
    let bx = SearchBox::with_z(5, 3, ZRange::SumXY).excluding_z(2);
    let r = sweep(EquationId::E14, &bx, 1).unwrap();
    for s in &r.found {
        let c = s.candidate;
        let z = c.z.unwrap();
        assert!(z != 2 && z as i64 <= c.x + c.y);
    }
    let with_two = sweep(EquationId::E14, &SearchBox::with_z(5, 3, ZRange::SumXY), 1).unwrap();
    assert!(with_two.found.iter().any(|s| s.candidate.z == Some(2)));
    assert!(r.cardinality < with_two.cardinality);
}

#[test]
fn invalid_boxes_are_rejected() {
    assert!(sweep(EquationId::E14, &SearchBox::with_z(2, 3, ZRange::Max(0)), 1).is_err());
    assert!(sweep(EquationId::E14, &SearchBox::signed(4, 3), 1).is_err());
    assert!(sweep(EquationId::E11, &SearchBox::with_z(4, 3, ZRange::Max(5)), 1).is_err());
    assert!(sweep(EquationId::E11, &SearchBox::signed(1, 3), 1).is_err());
    assert!(sweep(EquationId::E11, &SearchBox::signed(4, 3).with_effort(Effort::with_iterations(0)), 1).is_err());
}
