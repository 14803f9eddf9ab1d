//! Benchmark records, CSV output, and survival-plot data.
//!
//! Survival data follows the usual construction: drop abnormal runs, sort the
//! remaining times `t1 ≤ t2 ≤ …` and emit `(t1, 1), (t1 + t2, 2), …`.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use crate::ba::Buchi;
use crate::engine::{decide_inclusion, EngineOptions, Verdict};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Timeout,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub name: String,
    /// Present iff `status` is `Ok`.
    pub verdict: Option<Verdict>,
    pub time_ms: f64,
    pub queries: usize,
    pub stem_basis: usize,
    pub period_basis: usize,
    pub status: Status,
}

impl BenchRecord {
    pub fn failed(name: impl Into<String>, status: Status, elapsed: Duration) -> Self {
        BenchRecord {
            name: name.into(),
            verdict: None,
            time_ms: millis(elapsed),
            queries: 0,
            stem_basis: 0,
            period_basis: 0,
            status,
        }
    }
}

/// Milliseconds rounded to the microsecond.
pub fn millis(d: Duration) -> f64 {
    d.as_micros() as f64 / 1000.0
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Included => "included",
        Verdict::NotIncluded => "not_included",
    }
}

/// Runs one inclusion check with a fresh deadline.
pub fn run_pair(name: &str, a: &Buchi, b: &Buchi, timeout: Option<Duration>) -> BenchRecord {
    let start = Instant::now();
    let opts = EngineOptions {
        deadline: timeout.map(|t| start + t),
        ..EngineOptions::default()
    };
    match decide_inclusion(a, b, &opts) {
        Ok(r) => BenchRecord {
            name: name.to_string(),
            verdict: Some(r.verdict),
            time_ms: millis(start.elapsed()),
            queries: r.stats.membership_queries,
            stem_basis: r.stats.stem_basis_max,
            period_basis: r.stats.period_basis_max,
            status: Status::Ok,
        },
        Err(Error::Timeout) => BenchRecord::failed(name, Status::Timeout, start.elapsed()),
        Err(_) => BenchRecord::failed(name, Status::Error, start.elapsed()),
    }
}

/// Points `(cumulative time, solved count)` over successful records.
pub fn survival(records: &[BenchRecord]) -> Vec<(f64, usize)> {
    let mut times: Vec<f64> = records
        .iter()
        .filter(|r| r.status == Status::Ok)
        .map(|r| r.time_ms)
        .collect();
    times.sort_by(f64::total_cmp);
    let mut total = 0.0;
    times
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            total += t;
            ((total * 1000.0).round() / 1000.0, i + 1)
        })
        .collect()
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["name", "verdict", "time_ms", "queries", "stem_basis", "period_basis", "status"])?;
    for r in records {
        w.write_record([
            r.name.clone(),
            r.verdict.map(verdict_str).unwrap_or("").to_string(),
            r.time_ms.to_string(),
            r.queries.to_string(),
            r.stem_basis.to_string(),
            r.period_basis.to_string(),
            r.status.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_survival<W: Write>(mut out: W, points: &[(f64, usize)]) -> io::Result<()> {
    for (t, k) in points {
        writeln!(out, "{t} {k}")?;
    }
    Ok(())
}

/// Manifest lines `name A.ba B.ba`; blank lines and `#` comments are skipped.
pub fn parse_manifest(text: &str) -> Result<Vec<(String, String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [name, a, b] => out.push((name.to_string(), a.to_string(), b.to_string())),
            _ => return Err(format!("line {}: expected `name A.ba B.ba`", i + 1)),
        }
    }
    Ok(out)
}
