//! Grid tables over `(q, n, d)`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::Value;
use whitlab::{Error, Result};

use crate::compute::{self, WhitneyMethod};
use crate::record::{params, Cache, ResultRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Whitney,
    Charpoly,
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "kind,q,n,d,index,method,value";

/// Parse `a..b`, `a-b` or a single integer.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected `a..b`, `a-b` or `a`, got `{s}`");
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = match s.split_once("..").or_else(|| s.split_once('-')) {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

pub struct Grid {
    pub kind: TableKind,
    pub method: WhitneyMethod,
    pub qs: Vec<u64>,
    pub ns: RangeInclusive<usize>,
    pub ds: RangeInclusive<usize>,
}

impl Grid {
    /// Cells in output order: `q` in list order, then `n`, then `d <= n`.
    pub fn cells(&self) -> Vec<(u64, usize, usize)> {
        let mut v = Vec::new();
        for &q in &self.qs {
            for n in self.ns.clone() {
                for d in self.ds.clone().filter(|&d| d <= n) {
                    v.push((q, n, d));
                }
            }
        }
        v
    }

    fn method_name(&self) -> String {
        match self.kind {
            TableKind::Whitney | TableKind::Charpoly => compute::method_name(self.method),
            TableKind::Alpha => "transform".into(),
            TableKind::Beta => "complement".into(),
        }
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            TableKind::Whitney => "whitney",
            TableKind::Charpoly => "charpoly",
            TableKind::Alpha => "alpha",
            TableKind::Beta => "beta",
        }
    }

    fn compute_cell(&self, q: u64, n: usize, d: usize) -> Result<Vec<String>> {
        let all: Vec<usize> = (0..=n).collect();
        let vals = match self.kind {
            TableKind::Whitney | TableKind::Charpoly => compute::whitney(q, n, d, &all, self.method)?,
            TableKind::Alpha => {
                all.iter().map(|&k| compute::alpha(q, n, d, k, compute::AlphaArg::Transform)).collect::<Result<_>>()?
            }
            TableKind::Beta => {
                all.iter().map(|&k| compute::beta(q, n, d, k, compute::BetaArg::Complement)).collect::<Result<_>>()?
            }
        };
        Ok(vals.iter().map(ToString::to_string).collect())
    }

    /// One record per cell, in grid order. Cached cells are not recomputed.
    pub fn run(&self, cache: Option<&Cache>) -> Result<(Vec<ResultRecord>, usize)> {
        let cells = self.cells();
        let method = self.method_name();
        let results: Vec<Result<(ResultRecord, bool)>> = cells
            .par_iter()
            .map(|&(q, n, d)| {
                let mut rec = ResultRecord::new(
                    self.kind_name(),
                    params([("q", q), ("n", n as u64), ("d", d as u64)]),
                    Vec::new(),
                    &method,
                );
                if let Some(hit) = cache.and_then(|c| c.get(&rec)) {
                    return Ok((hit, true));
                }
                rec.values = self.compute_cell(q, n, d)?;
                if let Some(c) = cache {
                    if let Err(e) = c.put(&rec) {
                        eprintln!("warning: could not write cache entry: {e}");
                    }
                }
                Ok((rec, false))
            })
            .collect();
        let mut records = Vec::with_capacity(results.len());
        let mut hits = 0;
        for r in results {
            let (rec, hit) = r?;
            hits += hit as usize;
            records.push(rec);
        }
        Ok((records, hits))
    }
}

pub fn render(records: &[ResultRecord], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in records {
                let p = |k: &str| r.params.get(k).and_then(Value::as_u64).unwrap_or_default();
                let (q, n, d) = (p("q"), p("n"), p("d"));
                if r.kind == "charpoly" {
                    // one row, coefficients from λ^n down to λ^0
                    let _ = writeln!(s, "{},{q},{n},{d},{n},{},{}", r.kind, r.method, r.values.join(" "));
                } else {
                    for (i, v) in r.values.iter().enumerate() {
                        let _ = writeln!(s, "{},{q},{n},{d},{i},{},{v}", r.kind, r.method);
                    }
                }
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert_eq!(parse_range("3-4").unwrap(), 3..=4);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn cell_order() {
        let g = Grid { kind: TableKind::Whitney, method: WhitneyMethod::Exact, qs: vec![3, 2], ns: 1..=2, ds: 1..=2 };
        assert_eq!(g.cells(), vec![(3, 1, 1), (3, 2, 1), (3, 2, 2), (2, 1, 1), (2, 2, 1), (2, 2, 2)]);
    }
}
