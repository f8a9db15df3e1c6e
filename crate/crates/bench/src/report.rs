//! Report rows, aggregates, metric-mode summaries and the CSV format.
//!
//! Quantiles use linear interpolation between order statistics
//! (Hyndman-Fan type 7): for sorted `x_0..x_{m-1}` the `p`-quantile is
//! `x_j + (h - j)(x_{j+1} - x_j)` with `h = (m - 1) p`, `j = floor(h)`.

use std::io::{BufRead, Write};
use std::path::Path;

use ldml::format::fmt_f64;
use ldml::linalg::quantile_sorted;

use crate::error::{BenchError, Result};
use crate::experiment::MetricMode;

pub const CSV_HEADER: &str = "algorithm,params,seed,list_size,worst_error,per_cluster_errors,runtime_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub algorithm: String,
    /// Space-separated `key=value` pairs, starting with `attack=<name>`.
    pub params: String,
    pub seed: u64,
    pub list_size: usize,
    pub worst_error: f64,
    pub per_cluster_errors: Vec<f64>,
    pub runtime_ms: f64,
}

impl Row {
    /// Value of one `key=value` pair in `params`.
    pub fn param(&self, key: &str) -> Option<&str> {
        param_of(&self.params, key)
    }
}

pub fn param_of<'a>(params: &'a str, key: &str) -> Option<&'a str> {
    params
        .split_whitespace()
        .find_map(|kv| kv.split_once('=').filter(|(k, _)| *k == key).map(|(_, v)| v))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantiles {
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
}

impl Quantiles {
    /// `None` for an empty sample.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut s = values.to_vec();
        s.sort_by(f64::total_cmp);
        Some(Self {
            q25: quantile_sorted(&s, 0.25),
            median: quantile_sorted(&s, 0.5),
            q75: quantile_sorted(&s, 0.75),
        })
    }
}

/// Quantiles of one `(algorithm, params)` setting over its seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub algorithm: String,
    pub params: String,
    pub runs: usize,
    pub worst_error: Quantiles,
    pub list_size: Quantiles,
    pub runtime_ms: Quantiles,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<Row>,
    /// One entry per `(algorithm, params)`, in order of first appearance.
    pub aggregates: Vec<Aggregate>,
}

impl ExperimentReport {
    pub fn new(rows: Vec<Row>) -> Self {
        let mut keys: Vec<(&str, &str)> = Vec::new();
        for r in &rows {
            if !keys.contains(&(r.algorithm.as_str(), r.params.as_str())) {
                keys.push((&r.algorithm, &r.params));
            }
        }
        let aggregates = keys
            .iter()
            .map(|&(alg, params)| {
                let group: Vec<&Row> = rows.iter().filter(|r| r.algorithm == alg && r.params == params).collect();
                let q = |f: fn(&Row) -> f64| Quantiles::of(&group.iter().map(|r| f(r)).collect::<Vec<_>>()).expect("non-empty group");
                Aggregate {
                    algorithm: alg.to_string(),
                    params: params.to_string(),
                    runs: group.len(),
                    worst_error: q(|r| r.worst_error),
                    list_size: q(|r| r.list_size as f64),
                    runtime_ms: q(|r| r.runtime_ms),
                }
            })
            .collect();
        Self { rows, aggregates }
    }

    pub fn aggregate(&self, algorithm: &str, params: &str) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.algorithm == algorithm && a.params == params)
    }

    /// Rows of one setting.
    pub fn rows_of<'a>(&'a self, algorithm: &'a str, params: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.algorithm == algorithm && r.params == params)
    }
}

/// Plot/summary group of a row: its attack, plus `w_low` when the report
/// sweeps over several values.
fn group_key(row: &Row, sweep_w_low: bool) -> String {
    let attack = row.param("attack").unwrap_or("all").to_string();
    match (sweep_w_low, row.param("w_low")) {
        (true, Some(w)) => format!("{attack} w_low={w}"),
        _ => attack,
    }
}

/// The params of a row with the group keys removed.
fn setting_of(row: &Row, sweep_w_low: bool) -> String {
    row.params
        .split_whitespace()
        .filter(|kv| !kv.starts_with("attack=") && !(sweep_w_low && kv.starts_with("w_low=")))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// The chosen setting and the quantiles of the reported metric.
    Value { setting: String, runs: usize, q: Quantiles },
    /// No setting meets the constraint.
    NotAvailable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryCell {
    pub group: String,
    pub algorithm: String,
    pub outcome: Outcome,
}

/// Best setting per `(group, algorithm)` under a metric mode.
///
/// `FixListSize(L)`: worst errors of the runs with `list_size <= L`; the
/// setting with the lowest median wins. `FixError(x)`: among settings whose
/// median worst error is at most `x`, the one with the smallest median list
/// size; its list-size quantiles are reported.
pub fn summarize(report: &ExperimentReport, mode: MetricMode) -> Vec<SummaryCell> {
    let mut w_lows: Vec<&str> = report.rows.iter().filter_map(|r| r.param("w_low")).collect();
    w_lows.sort_unstable();
    w_lows.dedup();
    let sweep = w_lows.len() > 1;

    let mut cells: Vec<(String, String)> = Vec::new();
    for r in &report.rows {
        let key = (group_key(r, sweep), r.algorithm.clone());
        if !cells.contains(&key) {
            cells.push(key);
        }
    }
    cells
        .into_iter()
        .map(|(group, algorithm)| {
            let rows: Vec<&Row> = report
                .rows
                .iter()
                .filter(|r| r.algorithm == algorithm && group_key(r, sweep) == group)
                .collect();
            let mut settings: Vec<String> = Vec::new();
            for r in &rows {
                let s = setting_of(r, sweep);
                if !settings.contains(&s) {
                    settings.push(s);
                }
            }
            let mut best: Option<(String, usize, Quantiles, f64)> = None;
            for s in settings {
                let runs: Vec<&Row> = rows.iter().copied().filter(|r| setting_of(r, sweep) == s).collect();
                let candidate = match mode {
                    MetricMode::FixListSize(l) => {
                        let errs: Vec<f64> = runs.iter().filter(|r| r.list_size <= l).map(|r| r.worst_error).collect();
                        Quantiles::of(&errs).map(|q| (errs.len(), q, q.median))
                    }
                    MetricMode::FixError(x) => {
                        let errs: Vec<f64> = runs.iter().map(|r| r.worst_error).collect();
                        let sizes: Vec<f64> = runs.iter().map(|r| r.list_size as f64).collect();
                        match Quantiles::of(&errs) {
                            Some(e) if e.median <= x => Quantiles::of(&sizes).map(|q| (runs.len(), q, q.median)),
                            _ => None,
                        }
                    }
                };
                if let Some((n, q, score)) = candidate {
                    if best.as_ref().is_none_or(|b| score < b.3) {
                        best = Some((s, n, q, score));
                    }
                }
            }
            let outcome = match best {
                Some((setting, runs, q, _)) => Outcome::Value { setting, runs, q },
                None => Outcome::NotAvailable,
            };
            SummaryCell {
                group,
                algorithm,
                outcome,
            }
        })
        .collect()
}

fn fmt_errors(errors: &[f64]) -> String {
    errors.iter().map(|&e| fmt_f64(e)).collect::<Vec<_>>().join(";")
}

pub fn write_csv<W: Write>(report: &ExperimentReport, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.algorithm,
            r.params,
            r.seed,
            r.list_size,
            fmt_f64(r.worst_error),
            fmt_errors(&r.per_cluster_errors),
            fmt_f64(r.runtime_ms)
        )?;
    }
    out.flush()
}

pub fn emit_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_csv(report, std::io::BufWriter::new(file)).map_err(|e| BenchError::io(path, e))
}

pub fn read_csv<R: BufRead>(input: R) -> Result<ExperimentReport> {
    let mut lines = input.lines();
    let bad = |line: usize, msg: String| BenchError::Data(format!("csv line {line}: {msg}"));
    match lines.next() {
        Some(Ok(h)) if h == CSV_HEADER => {}
        Some(Ok(h)) => return Err(bad(1, format!("unexpected header `{h}`"))),
        Some(Err(e)) => return Err(bad(1, e.to_string())),
        None => return Err(bad(1, "missing header".into())),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let no = i + 2;
        let line = line.map_err(|e| bad(no, e.to_string()))?;
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(bad(no, format!("expected 7 fields, got {}", f.len())));
        }
        let num = |s: &str, what: &str| -> Result<f64> { s.parse().map_err(|_| bad(no, format!("bad {what} `{s}`"))) };
        let per_cluster_errors = if f[5].is_empty() {
            Vec::new()
        } else {
            f[5].split(';').map(|s| num(s, "per-cluster error")).collect::<Result<_>>()?
        };
        rows.push(Row {
            algorithm: f[0].to_string(),
            params: f[1].to_string(),
            seed: f[2].parse().map_err(|_| bad(no, format!("bad seed `{}`", f[2])))?,
            list_size: f[3].parse().map_err(|_| bad(no, format!("bad list size `{}`", f[3])))?,
            worst_error: num(f[4], "worst error")?,
            per_cluster_errors,
            runtime_ms: num(f[6], "runtime")?,
        });
    }
    Ok(ExperimentReport::new(rows))
}

pub fn load_csv(path: &Path) -> Result<ExperimentReport> {
    let file = std::fs::File::open(path).map_err(|e| BenchError::io(path, e))?;
    read_csv(std::io::BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(alg: &str, params: &str, seed: u64, list: usize, err: f64) -> Row {
        Row {
            algorithm: alg.into(),
            params: params.into(),
            seed,
            list_size: list,
            worst_error: err,
            per_cluster_errors: vec![err, 0.5 * err],
            runtime_ms: 0.0,
        }
    }

    #[test]
    fn quantiles_interpolate_linearly() {
        let q = Quantiles::of(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!((q.q25, q.median, q.q75), (1.5, 2.0, 2.5));
        let q = Quantiles::of(&[4.0]).unwrap();
        assert_eq!((q.q25, q.median, q.q75), (4.0, 4.0, 4.0));
        assert!(Quantiles::of(&[]).is_none());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut r = row("ours", "attack=none w_low=0.1", 3, 4, 0.1 + 0.2);
        r.per_cluster_errors = vec![f64::INFINITY, 1e-300, 0.1];
        r.runtime_ms = 12.5;
        let report = ExperimentReport::new(vec![r, row("kmeans", "attack=none k=3", 0, 3, 7.0)]);
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, report);
        let mut again = Vec::new();
        write_csv(&back, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn empty_report_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&ExperimentReport::default(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
        assert!(read_csv("bogus\n".as_bytes()).is_err());
    }

    #[test]
    fn fix_list_size_restricts_runs() {
        let report = ExperimentReport::new(vec![
            row("a", "attack=x p=1", 0, 5, 1.0),
            row("a", "attack=x p=1", 1, 20, 0.1),
            row("a", "attack=x p=2", 0, 50, 0.01),
        ]);
        let s = summarize(&report, MetricMode::FixListSize(10));
        assert_eq!(s.len(), 1);
        match &s[0].outcome {
            Outcome::Value { setting, runs, q } => {
                assert_eq!(setting, "p=1");
                assert_eq!(*runs, 1);
                assert_eq!(q.median, 1.0);
            }
            Outcome::NotAvailable => panic!("expected a value"),
        }
        let s = summarize(&report, MetricMode::FixListSize(2));
        assert_eq!(s[0].outcome, Outcome::NotAvailable);
    }

    #[test]
    fn fix_error_picks_the_shortest_qualifying_list() {
        let report = ExperimentReport::new(vec![
            row("a", "attack=x p=1", 0, 3, 5.0),
            row("a", "attack=x p=2", 0, 8, 1.0),
            row("a", "attack=x p=3", 0, 20, 0.2),
        ]);
        let size = |x: f64| match &summarize(&report, MetricMode::FixError(x))[0].outcome {
            Outcome::Value { q, .. } => Some(q.median),
            Outcome::NotAvailable => None,
        };
        assert_eq!(size(0.1), None);
        assert_eq!(size(0.2), Some(20.0));
        assert_eq!(size(1.0), Some(8.0));
        assert_eq!(size(10.0), Some(3.0));
    }

    #[test]
    fn sweeps_split_groups_by_w_low() {
        let report = ExperimentReport::new(vec![
            row("ours", "attack=x w_low=0.1", 0, 3, 1.0),
            row("ours", "attack=x w_low=0.2", 0, 3, 2.0),
        ]);
        let s = summarize(&report, MetricMode::FixListSize(10));
        let groups: Vec<&str> = s.iter().map(|c| c.group.as_str()).collect();
        assert_eq!(groups, ["x w_low=0.1", "x w_low=0.2"]);
    }
}
