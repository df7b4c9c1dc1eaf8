//! Sweep execution and tabulation: CSV plus a grouped text table.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::runner::run::{run, RunReport};
use crate::runner::spec::RunSpec;

pub const CSV_HEADER: &str =
    "domain,variant,N,algorithm,iterations,backups_per_state,value_at_start,eps,runtime_ms";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub domain: String,
    pub variant: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub algorithm: String,
    pub iterations: usize,
    pub backups_per_state: f64,
    pub value_at_start: f64,
    pub eps: f64,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug)]
pub struct BenchTable {
    pub rows: Vec<BenchRow>,
    pub csv: String,
    pub text: String,
    pub any_failed: bool,
}

/// Runs every spec (sorted for order-stable output) and renders the table.
/// A run that fails to converge keeps its row, marked by a `!` suffix on
/// the algorithm name, and flips `any_failed`.
pub fn bench_table(specs: &[RunSpec]) -> Result<BenchTable> {
    if specs.is_empty() {
        return Err(Error::InvalidConfig("empty spec list".into()));
    }
    let mut ordered: Vec<&RunSpec> = specs.iter().collect();
    ordered.sort_by_key(|s| s.sort_key());

    let mut rows = Vec::with_capacity(ordered.len());
    let mut any_failed = false;
    for spec in ordered {
        let report = run(spec)?;
        if !report.converged {
            any_failed = true;
        }
        rows.push(to_row(&report));
    }
    let csv = render_csv(&rows)?;
    let text = render_text(&rows);
    Ok(BenchTable {
        rows,
        csv,
        text,
        any_failed,
    })
}

fn to_row(report: &RunReport) -> BenchRow {
    let mut algorithm = report.algorithm.clone();
    if !report.converged {
        algorithm.push('!');
    }
    BenchRow {
        domain: report.domain.clone(),
        variant: report.variant.clone(),
        n: report.size,
        algorithm,
        iterations: report.iterations,
        backups_per_state: report.backups_per_state,
        value_at_start: report.value_at_start,
        eps: report.eps,
        runtime_ms: report.runtime_ms,
    }
}

pub fn render_csv(rows: &[BenchRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Parses CSV produced by `render_csv` (used for lossless round-trips).
pub fn parse_bench_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        rows.push(record?);
    }
    Ok(rows)
}

/// Drops the trailing runtime column, leaving the deterministic part.
pub fn csv_without_runtime(csv: &str) -> String {
    csv.lines()
        .map(|line| match line.rfind(',') {
            Some(pos) => &line[..pos],
            None => line,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// A text table grouped like the benchmark summary: one block per
/// (domain, variant), one line per size, iteration and backup columns per
/// algorithm.
fn render_text(rows: &[BenchRow]) -> String {
    let mut groups: BTreeMap<(String, String), BTreeMap<usize, Vec<&BenchRow>>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.domain.clone(), row.variant.clone()))
            .or_default()
            .entry(row.n)
            .or_default()
            .push(row);
    }
    let mut out = String::new();
    for ((domain, variant), sizes) in groups {
        out.push_str(&format!("== {domain} ({variant}) ==\n"));
        out.push_str(&format!(
            "{:>4} {:>22} {:>22} {:>22}\n",
            "N", "apmi iters/backs", "aopmi iters/backs", "oomi iters/backs"
        ));
        for (n, entries) in sizes {
            let cell = |name: &str| -> String {
                entries
                    .iter()
                    .find(|r| r.algorithm.trim_end_matches('!') == name)
                    .map(|r| {
                        let mark = if r.algorithm.ends_with('!') { "*" } else { "" };
                        format!("{}{} / {:.1}", r.iterations, mark, r.backups_per_state)
                    })
                    .unwrap_or_else(|| "-".into())
            };
            out.push_str(&format!(
                "{:>4} {:>22} {:>22} {:>22}\n",
                n,
                cell("apmi"),
                cell("aopmi"),
                cell("oomi")
            ));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::spec::{Algorithm, Domain, Variant};

    #[test]
    fn empty_spec_list_is_an_error() {
        assert!(bench_table(&[]).is_err());
    }

    #[test]
    fn csv_round_trips_losslessly() {
        let specs = vec![
            RunSpec::new(Domain::Hanoi, 2, Variant::Deterministic, Algorithm::Apmi),
            RunSpec::new(Domain::Hanoi, 1, Variant::Deterministic, Algorithm::Oomi),
        ];
        let table = bench_table(&specs).unwrap();
        let parsed = parse_bench_csv(&table.csv).unwrap();
        assert_eq!(parsed, table.rows);
        assert!(!table.any_failed);
        // Sorted by (domain, variant, size, algorithm): N=1 first.
        assert_eq!(parsed[0].n, 1);
        assert!(table.csv.starts_with(CSV_HEADER));
    }

    #[test]
    fn deterministic_output_excluding_runtime() {
        let specs = vec![RunSpec::new(
            Domain::NineRooms,
            1,
            Variant::Deterministic,
            Algorithm::Apmi,
        )];
        let a = bench_table(&specs).unwrap();
        let b = bench_table(&specs).unwrap();
        assert_eq!(csv_without_runtime(&a.csv), csv_without_runtime(&b.csv));
    }

    #[test]
    fn text_table_groups_by_domain() {
        let specs = vec![
            RunSpec::new(Domain::Hanoi, 1, Variant::Deterministic, Algorithm::Apmi),
            RunSpec::new(Domain::Hanoi, 1, Variant::Deterministic, Algorithm::Oomi),
        ];
        let table = bench_table(&specs).unwrap();
        assert!(table.text.contains("== hanoi (det) =="));
        assert!(table.text.contains("apmi"));
    }
}
