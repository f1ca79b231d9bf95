//! Exhaustive sweeps of a bounded box and the certification verdict.
//!
//! The `(x, y)` grid is cut into contiguous blocks, one per worker; each
//! worker walks its block, then `(m, n)`, then `z`. Results are merged and
//! sorted, so the report does not depend on the worker count.

use std::collections::BTreeSet;
use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::arith::modular::gcd;
use crate::arith::{factor, nu, Effort, Factorization};
use crate::equation::{
    check_solution, e16_family_primes, known_families, CandidateSolution, EquationId,
    FamilyPrime, SolutionRecord,
};
use crate::error::{Error, Result};
use crate::lucas::lucas_quotient;

/// Upper end of the `z` scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZRange {
    #[serde(rename = "max")]
    Max(u64),
    /// `1 <= z <= x + y`.
    #[serde(rename = "x+y")]
    SumXY,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nu2Filter {
    #[default]
    Any,
    Equal,
    Distinct,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    /// Only `gcd(m, n) = 1`.
    pub coprime_exponents: bool,
    /// Restrict on `nu_2(x)` versus `nu_2(y)`.
    pub nu2: Nu2Filter,
    /// Only `n < m`.
    pub n_below_m: bool,
}

/// A certification region. `|x|, |y| <= x_max` and `1 <= m, n <= m_max`;
/// `z` is present exactly for equations 1.3 to 1.6.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub x_max: u64,
    pub m_max: u32,
    pub z: Option<ZRange>,
    pub z_exclusions: BTreeSet<u64>,
    pub effort: Effort,
    pub filters: Filters,
}

impl SearchBox {
    /// Box for 1.1 / 1.2.
    pub fn signed(x_max: u64, m_max: u32) -> Self {
        SearchBox {
            x_max,
            m_max,
            z: None,
            z_exclusions: BTreeSet::new(),
            effort: Effort::default(),
            filters: Filters::default(),
        }
    }

    /// Box for 1.3 to 1.6.
    pub fn with_z(x_max: u64, m_max: u32, z: ZRange) -> Self {
        SearchBox {
            z: Some(z),
            ..SearchBox::signed(x_max, m_max)
        }
    }

    pub fn excluding_z(mut self, z: u64) -> Self {
        self.z_exclusions.insert(z);
        self
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    pub fn with_effort(mut self, effort: Effort) -> Self {
        self.effort = effort;
        self
    }

    pub fn validate(&self, eq: EquationId) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(msg.to_string()));
        if self.x_max < 2 {
            return bad("x_max must be at least 2");
        }
        if self.m_max < 2 {
            return bad("m_max must be at least 2");
        }
        if self.x_max > i64::MAX as u64 / 2 {
            return bad("x_max too large");
        }
        if self.effort.rho_iterations == 0 {
            return bad("effort cap must be positive");
        }
        match (eq.is_signed(), self.z) {
            (true, Some(_)) => bad("equations 1.1 and 1.2 take no z range"),
            (false, None) => bad("equations 1.3 to 1.6 need a z range"),
            (false, Some(ZRange::Max(0))) => bad("z_max must be positive"),
            _ => Ok(()),
        }
    }

    fn z_max_for(&self, x: u64, y: u64) -> u64 {
        match self.z {
            Some(ZRange::Max(z)) => z,
            Some(ZRange::SumXY) => x + y,
            None => 0,
        }
    }

    fn pair_allowed(&self, x: i64, y: i64) -> bool {
        match self.filters.nu2 {
            Nu2Filter::Any => true,
            f => {
                let vx = nu(2, x.unsigned_abs() as u128);
                let vy = nu(2, y.unsigned_abs() as u128);
                (vx == vy) == (f == Nu2Filter::Equal)
            }
        }
    }

    fn exponents_allowed(&self, eq: EquationId, m: u32, n: u32) -> bool {
        (1..=self.m_max).contains(&m)
            && (1..=self.m_max).contains(&n)
            && eq.exponents_allowed(m, n)
            && (!self.filters.coprime_exponents || gcd(m as u128, n as u128) == 1)
            && (!self.filters.n_below_m || n < m)
    }

    /// Whether `c` is one of the tuples this box enumerates for `c.eq`.
    pub fn contains(&self, c: &CandidateSolution) -> bool {
        let xm = self.x_max;
        if c.x.unsigned_abs() > xm || c.y.unsigned_abs() > xm {
            return false;
        }
        if c.validate().is_err() || !self.pair_allowed(c.x, c.y) {
            return false;
        }
        if !self.exponents_allowed(c.eq, c.m, c.n) {
            return false;
        }
        match c.z {
            None => c.eq.is_signed() && self.z.is_none(),
            Some(z) => {
                self.z.is_some()
                    && z <= self.z_max_for(c.x as u64, c.y as u64)
                    && !self.z_exclusions.contains(&z)
            }
        }
    }

    fn pairs(&self, eq: EquationId) -> Vec<(i64, i64)> {
        let xm = self.x_max as i64;
        let mut out = Vec::new();
        if eq.is_signed() {
            for x in (-xm..=xm).filter(|&v| v != 0) {
                for y in (-xm..=xm).filter(|&v| v != 0 && v != x) {
                    out.push((x, y));
                }
            }
        } else {
            for x in 2..=xm {
                for y in 1..x {
                    out.push((x, y));
                }
            }
        }
        out.retain(|&(x, y)| self.pair_allowed(x, y));
        out
    }

    fn exponent_pairs(&self, eq: EquationId) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for m in 1..=self.m_max {
            for n in 1..=self.m_max {
                if self.exponents_allowed(eq, m, n) {
                    out.push((m, n));
                }
            }
        }
        out
    }

    fn z_count(&self, x: u64, y: u64) -> u64 {
        let z_max = self.z_max_for(x, y);
        let excluded = self.z_exclusions.range(1..=z_max).count() as u64;
        z_max - excluded
    }

    /// Number of tuples in the box, counted without enumerating `(m, n, z)`.
    pub fn cardinality(&self, eq: EquationId) -> u128 {
        let exps = self.exponent_pairs(eq).len() as u128;
        let pairs = self.pairs(eq);
        if eq.is_signed() {
            return pairs.len() as u128 * exps;
        }
        let zs: u128 = pairs
            .iter()
            .map(|&(x, y)| self.z_count(x as u64, y as u64) as u128)
            .sum();
        zs * exps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "UNEXPECTED_SOLUTION")]
    UnexpectedSolution,
    /// A stated family member inside the box was not found.
    #[serde(rename = "MISSING_KNOWN")]
    MissingKnown,
    #[serde(rename = "INCOMPLETE")]
    Incomplete,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::UnexpectedSolution => "UNEXPECTED_SOLUTION",
            Verdict::MissingKnown => "MISSING_KNOWN",
            Verdict::Incomplete => "INCOMPLETE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub eq: EquationId,
    pub bx: SearchBox,
    /// Tuples decided exactly.
    pub checked: u128,
    /// Tuples in the box; `checked + unresolved.len() == cardinality`.
    pub cardinality: u128,
    /// Solutions, sorted by `(eq, x, y, z, m, n)`.
    pub found: Vec<SolutionRecord>,
    /// Tuples whose check ran out of effort or overflowed.
    pub unresolved: Vec<CandidateSolution>,
    /// Non-trivial solutions outside the stated families.
    pub unexpected: Vec<CandidateSolution>,
    /// Stated family members inside the box that were not found.
    pub missing: Vec<CandidateSolution>,
    /// For 1.6: every odd prime `q <= m_max` whose `(2^q + 1)/3` was tested.
    pub tested_q: Vec<u32>,
    /// For 1.6: the `(q, p)` that passed.
    pub family_primes: Vec<FamilyPrime>,
    pub verdict: Verdict,
}

impl CertificationReport {
    pub fn nontrivial(&self) -> impl Iterator<Item = &SolutionRecord> {
        self.found.iter().filter(|r| !r.trivial)
    }
}

/// Solutions of `phi(z a) = z b` among `zs`, plus the `z` that could not be
/// decided.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ZSolve {
    pub solutions: Vec<u64>,
    pub unresolved: Vec<u64>,
}

/// Scans `zs` for `phi(z a) = z b`, factoring `a` once.
pub fn solve_phi_linear(
    a: u128,
    b: u128,
    zs: impl IntoIterator<Item = u64>,
    effort: &Effort,
) -> Result<ZSolve> {
    let mut out = ZSolve::default();
    if a == 0 || b == 0 || b > a {
        // phi(z a) <= z a < z b
        return Ok(out);
    }
    if a == b {
        // phi(k) = k only for k = 1
        out.solutions.extend(zs.into_iter().filter(|&z| z == 1 && a == 1));
        return Ok(out);
    }
    let fa = factor(a, effort)?;
    for z in zs {
        match phi_of_product(&fa, z, effort) {
            Ok(Some(phi)) => {
                if Some(phi) == b.checked_mul(z as u128) {
                    out.solutions.push(z);
                }
            }
            Ok(None) => out.unresolved.push(z),
            Err(e) if e.is_resource_limit() => out.unresolved.push(z),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn phi_of_product(fa: &Factorization, z: u64, effort: &Effort) -> Result<Option<u128>> {
    let fz = factor(z as u128, effort)?;
    Ok(fa.merged(&fz).phi())
}

/// All `z` in `zs` solving equation `eq` at `(x, y, m, n)`.
pub fn z_solve(
    eq: EquationId,
    x: u64,
    y: u64,
    m: u32,
    n: u32,
    zs: impl IntoIterator<Item = u64>,
    effort: &Effort,
) -> Result<ZSolve> {
    let (lk, rk) = eq
        .quotient_kinds()
        .ok_or_else(|| Error::InvalidInput(format!("equation {eq} has no z")))?;
    let a = lucas_quotient(lk, x, y, m)?;
    let b = lucas_quotient(rk, x, y, n)?;
    solve_phi_linear(a, b, zs, effort)
}

#[derive(Default)]
struct Partial {
    checked: u128,
    found: Vec<SolutionRecord>,
    unresolved: Vec<CandidateSolution>,
}

fn sweep_block(eq: EquationId, bx: &SearchBox, pairs: &[(i64, i64)], exps: &[(u32, u32)]) -> Partial {
    let mut part = Partial::default();
    let effort = &bx.effort;
    for &(x, y) in pairs {
        for &(m, n) in exps {
            if eq.is_signed() {
                let c = CandidateSolution::signed(eq, x, y, m, n).expect("box tuple is well formed");
                match check_solution(&c, effort) {
                    Ok(true) => {
                        part.checked += 1;
                        part.found.push(SolutionRecord::classify(c));
                    }
                    Ok(false) => part.checked += 1,
                    Err(_) => part.unresolved.push(c),
                }
                continue;
            }
            let (ux, uy) = (x as u64, y as u64);
            let zs: Vec<u64> = (1..=bx.z_max_for(ux, uy))
                .filter(|z| !bx.z_exclusions.contains(z))
                .collect();
            let total = zs.len() as u128;
            let mk = |z| CandidateSolution::with_z(eq, ux, uy, z, m, n).expect("box tuple is well formed");
            match z_solve(eq, ux, uy, m, n, zs.iter().copied(), effort) {
                Ok(res) => {
                    part.checked += total - res.unresolved.len() as u128;
                    part.unresolved.extend(res.unresolved.into_iter().map(mk));
                    part.found
                        .extend(res.solutions.into_iter().map(|z| SolutionRecord::classify(mk(z))));
                }
                Err(_) => part.unresolved.extend(zs.into_iter().map(mk)),
            }
        }
    }
    part
}

/// Sweeps `bx` for equation `eq` on `workers` threads (at least one).
pub fn sweep(eq: EquationId, bx: &SearchBox, workers: usize) -> Result<CertificationReport> {
    bx.validate(eq)?;
    let pairs = bx.pairs(eq);
    let exps = bx.exponent_pairs(eq);
    let workers = workers.max(1);
    let chunk = pairs.len().div_ceil(workers).max(1);

    let parts: Vec<Partial> = if workers == 1 {
        vec![sweep_block(eq, bx, &pairs, &exps)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = pairs
                .chunks(chunk)
                .map(|block| s.spawn(|| sweep_block(eq, bx, block, &exps)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut report = CertificationReport {
        eq,
        bx: bx.clone(),
        checked: 0,
        cardinality: bx.cardinality(eq),
        found: Vec::new(),
        unresolved: Vec::new(),
        unexpected: Vec::new(),
        missing: Vec::new(),
        tested_q: Vec::new(),
        family_primes: Vec::new(),
        verdict: Verdict::Incomplete,
    };
    for p in parts {
        report.checked += p.checked;
        report.found.extend(p.found);
        report.unresolved.extend(p.unresolved);
    }
    report.found.sort();
    report.unresolved.sort();
    if eq == EquationId::E16 {
        let q_max = bx.m_max.min(127);
        report.tested_q = (3..=q_max)
            .filter(|&q| crate::arith::is_prime(q as u128))
            .collect();
        report.family_primes = e16_family_primes(q_max);
    }
    report.verdict = compare_to_known(&mut report);
    Ok(report)
}

/// Compares the non-trivial solutions of `report` with the stated families
/// inside its box, fills `unexpected` and `missing`, and returns the verdict.
pub fn compare_to_known(report: &mut CertificationReport) -> Verdict {
    let known: BTreeSet<CandidateSolution> = known_families(report.eq, &report.bx).into_iter().collect();
    let found: BTreeSet<CandidateSolution> = report.nontrivial().map(|r| r.candidate).collect();
    let unresolved: BTreeSet<CandidateSolution> = report.unresolved.iter().copied().collect();
    report.unexpected = found.difference(&known).copied().collect();
    report.missing = known
        .difference(&found)
        .filter(|c| !unresolved.contains(c))
        .copied()
        .collect();
    if !report.unexpected.is_empty() {
        Verdict::UnexpectedSolution
    } else if !report.unresolved.is_empty() {
        Verdict::Incomplete
    } else if !report.missing.is_empty() {
        Verdict::MissingKnown
    } else {
        Verdict::Match
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_linear_examples() {
        let e = Effort::default();
        let r = solve_phi_linear(3, 1, 1..=20, &e).unwrap();
        assert_eq!(r.solutions, vec![2, 4, 6, 8, 12, 16, 18]);
        let r = solve_phi_linear(1, 1, 1..=10, &e).unwrap();
        assert_eq!(r.solutions, vec![1]);
        let r = solve_phi_linear(11, 5, 1..=12, &e).unwrap();
        assert_eq!(r.solutions, vec![2, 4, 8]);
    }

    #[test]
    fn z_solve_matches_equation() {
        let e = Effort::default();
        let r = z_solve(EquationId::E14, 2, 1, 3, 1, 1..=20, &e).unwrap();
        assert_eq!(r.solutions, vec![2, 4, 6, 8, 12, 16, 18]);
    }

    #[test]
    fn box_validation() {
        assert!(SearchBox::signed(1, 3).validate(EquationId::E11).is_err());
        assert!(SearchBox::signed(5, 3).validate(EquationId::E14).is_err());
        assert!(SearchBox::with_z(5, 3, ZRange::Max(0)).validate(EquationId::E14).is_err());
        assert!(SearchBox::with_z(5, 3, ZRange::SumXY).validate(EquationId::E16).is_ok());
    }

    #[test]
    fn small_e14_sweep() {
        let bx = SearchBox::with_z(6, 7, ZRange::Max(30));
        let r = sweep(EquationId::E14, &bx, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Match);
        let zs: Vec<u64> = r.nontrivial().map(|s| s.candidate.z.unwrap()).collect();
        assert_eq!(zs, vec![2, 4, 6, 8, 12, 16, 18, 24]);
        assert_eq!(r.checked, r.cardinality);
    }

    #[test]
    fn exhausted_effort_is_incomplete() {
        let bx = SearchBox::with_z(40, 7, ZRange::Max(3)).with_effort(Effort::with_iterations(1));
        let r = sweep(EquationId::E14, &bx, 2).unwrap();
        assert!(!r.unresolved.is_empty());
        assert_eq!(r.checked + r.unresolved.len() as u128, r.cardinality);
        assert_eq!(r.verdict, Verdict::Incomplete);
    }
}
