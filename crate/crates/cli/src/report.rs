//! Report rendering: JSONL records, plain tables and the CSV summary.

use std::io::{self, Write};

use serde::Serialize;

use phieq::bounds::BoundReport;
use phieq::lemma::{LemmaDetail, LemmaOutcome};
use phieq::search::{Filters, ZRange};
use phieq::{CandidateSolution, CertificationReport, Effort, EquationId, FamilyTag, SolutionRecord};

use crate::{Format, SweepArgs};

/// Run configuration plus tool version.
#[derive(Serialize)]
pub struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    format: Format,
    #[serde(flatten)]
    args: &'a SweepArgs,
}

impl<'a> Manifest<'a> {
    pub fn new(format: Format, args: &'a SweepArgs) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: "sweep",
            format,
            args,
        }
    }
}

/// One solution line. The key set is a stable interface.
#[derive(Serialize)]
struct Record {
    eq: EquationId,
    x: i64,
    y: i64,
    z: Option<u64>,
    m: u32,
    n: u32,
    trivial: bool,
    family: FamilyTag,
}

impl From<&SolutionRecord> for Record {
    fn from(r: &SolutionRecord) -> Self {
        let c = r.candidate;
        Record {
            eq: c.eq,
            x: c.x,
            y: c.y,
            z: c.z,
            m: c.m,
            n: c.n,
            trivial: r.trivial,
            family: r.family,
        }
    }
}

#[derive(Serialize)]
struct BoxExtent {
    x_max: u64,
    m_max: u32,
    z: Option<ZRange>,
    z_exclusions: Vec<u64>,
    filters: Filters,
    effort: Effort,
}

#[derive(Serialize)]
struct Summary<'a> {
    verdict: &'static str,
    eq: EquationId,
    #[serde(rename = "box")]
    extent: BoxExtent,
    checked: u128,
    cardinality: u128,
    solutions: usize,
    nontrivial: usize,
    unresolved: usize,
    unexpected: &'a [CandidateSolution],
    missing: &'a [CandidateSolution],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    tested_q: Vec<u32>,
}

impl<'a> Summary<'a> {
    fn new(r: &'a CertificationReport) -> Self {
        Summary {
            verdict: r.verdict.label(),
            eq: r.eq,
            extent: BoxExtent {
                x_max: r.bx.x_max,
                m_max: r.bx.m_max,
                z: r.bx.z,
                z_exclusions: r.bx.z_exclusions.iter().copied().collect(),
                filters: r.bx.filters,
                effort: r.bx.effort,
            },
            checked: r.checked,
            cardinality: r.cardinality,
            solutions: r.found.len(),
            nontrivial: r.nontrivial().count(),
            unresolved: r.unresolved.len(),
            unexpected: &r.unexpected,
            missing: &r.missing,
            tested_q: r.tested_q.clone(),
        }
    }
}

pub fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)
}

#[derive(Serialize)]
struct Keyed<'a, T: Serialize> {
    #[serde(flatten)]
    inner: KeyedInner<'a, T>,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum KeyedInner<'a, T: Serialize> {
    Manifest(&'a T),
    Unresolved(&'a T),
    Verdict(&'a T),
}

fn keyed<T: Serialize>(inner: KeyedInner<'_, T>) -> Keyed<'_, T> {
    Keyed { inner }
}

/// Unexpected solutions first, then the rest in sorted order.
fn ordered(r: &CertificationReport) -> Vec<&SolutionRecord> {
    let (mut head, tail): (Vec<_>, Vec<_>) = r.found.iter().partition(|s| s.family == FamilyTag::Unexpected);
    head.extend(tail);
    head
}

pub fn sweep_jsonl(out: &mut dyn Write, manifest: Option<&Manifest>, r: &CertificationReport) -> io::Result<()> {
    if let Some(m) = manifest {
        json_line(out, &keyed(KeyedInner::Manifest(m)))?;
    }
    for s in ordered(r) {
        json_line(out, &Record::from(s))?;
    }
    for c in &r.unresolved {
        json_line(out, &keyed(KeyedInner::Unresolved(c)))?;
    }
    json_line(out, &keyed(KeyedInner::Verdict(&Summary::new(r))))
}

fn fmt_z(z: Option<u64>) -> String {
    z.map_or_else(|| "-".into(), |z| z.to_string())
}

pub fn sweep_table(out: &mut dyn Write, manifest: Option<&Manifest>, r: &CertificationReport) -> io::Result<()> {
    if let Some(m) = manifest {
        writeln!(out, "# {}", serde_json::to_string(m)?)?;
    }
    writeln!(out, "{:>4} {:>8} {:>8} {:>10} {:>4} {:>4} {:>7}  family", "eq", "x", "y", "z", "m", "n", "trivial")?;
    for s in ordered(r) {
        let c = s.candidate;
        writeln!(
            out,
            "{:>4} {:>8} {:>8} {:>10} {:>4} {:>4} {:>7}  {}",
            c.eq.label(),
            c.x,
            c.y,
            fmt_z(c.z),
            c.m,
            c.n,
            s.trivial,
            s.family.label()
        )?;
    }
    for c in &r.unresolved {
        writeln!(out, "unresolved {c}")?;
    }
    for c in &r.missing {
        writeln!(out, "missing {c}")?;
    }
    let z = match r.bx.z {
        None => String::new(),
        Some(ZRange::Max(z)) => format!(" z<={z}"),
        Some(ZRange::SumXY) => " z<=x+y".into(),
    };
    writeln!(
        out,
        "verdict {} eq {} box x<={} m<={}{} checked {}/{} solutions {} nontrivial {} unexpected {} missing {} unresolved {}",
        r.verdict,
        r.eq,
        r.bx.x_max,
        r.bx.m_max,
        z,
        r.checked,
        r.cardinality,
        r.found.len(),
        r.nontrivial().count(),
        r.unexpected.len(),
        r.missing.len(),
        r.unresolved.len()
    )
}

pub fn sweep_csv(out: &mut dyn Write, r: &CertificationReport) -> io::Result<()> {
    let z = match r.bx.z {
        None => String::new(),
        Some(ZRange::Max(z)) => z.to_string(),
        Some(ZRange::SumXY) => "x+y".into(),
    };
    writeln!(out, "eq,x_max,m_max,z,checked,cardinality,solutions,nontrivial,unexpected,missing,unresolved,verdict")?;
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.eq,
        r.bx.x_max,
        r.bx.m_max,
        z,
        r.checked,
        r.cardinality,
        r.found.len(),
        r.nontrivial().count(),
        r.unexpected.len(),
        r.missing.len(),
        r.unresolved.len(),
        r.verdict
    )
}

fn braces(v: &[u64]) -> String {
    let inner: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn lemma_table(out: &mut dyn Write, o: &LemmaOutcome) -> io::Result<()> {
    writeln!(out, "{} {}", o.id, if o.reproduced { "REPRODUCED" } else { "NOT REPRODUCED" })?;
    writeln!(out, "claim: {}", o.claim)?;
    match &o.detail {
        LemmaDetail::Scan { hits, per_pair } => {
            let hit_text: Vec<String> = hits
                .iter()
                .map(|h| format!("({}, {}, q={})", h.x1, h.y1, h.q))
                .collect();
            writeln!(out, "hits: {{{}}}", hit_text.join(", "))?;
            if let Some(p) = per_pair {
                writeln!(out, "max primes per pair: {} at {:?}", p.max_primes, p.argmax)?;
            }
        }
        LemmaDetail::Primes { primes, cross_check } => {
            writeln!(out, "primes: {}", braces(primes))?;
            writeln!(out, "cross-check: {}", braces(cross_check))?;
        }
        LemmaDetail::Items { items } => {
            for i in items {
                writeln!(
                    out,
                    "{} {}: expected {}, computed {}",
                    if i.pass { "ok  " } else { "FAIL" },
                    i.id,
                    i.expected,
                    i.computed
                )?;
            }
        }
    }
    Ok(())
}

pub fn bounds_table(out: &mut dyn Write, items: &[BoundReport]) -> io::Result<()> {
    for r in items {
        writeln!(
            out,
            "{} {:<28} {} {} {}  margin {:.3e}  {}",
            if r.pass { "ok  " } else { "FAIL" },
            r.bound_id,
            r.computed,
            r.relation.symbol(),
            r.claimed,
            r.margin,
            r.description
        )?;
    }
    let failed = items.iter().filter(|r| !r.pass).count();
    writeln!(out, "{} items, {} failed", items.len(), failed)
}
