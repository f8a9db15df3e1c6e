//! The `ldml-v1` plain-text data set format.
//!
//! ```text
//! ldml-v1 <n> <d> <has_labels:0|1>
//! x_1 ... x_d [label]
//! ```
//!
//! Coordinates are written with 17 significant digits so that reading a
//! written file reproduces every `f64` bit for bit. Label `-1` marks an
//! adversarial point.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{LdmlError, Result};
use crate::types::{DataSet, Label};

pub const MAGIC: &str = "ldml-v1";

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_dataset<W: Write>(ds: &DataSet, mut out: W) -> std::io::Result<()> {
    let labels = ds.labels();
    writeln!(out, "{MAGIC} {} {} {}", ds.len(), ds.dim(), u8::from(labels.is_some()))?;
    let mut line = String::new();
    for (i, p) in ds.points().enumerate() {
        line.clear();
        for (j, x) in p.iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(&fmt_f64(*x));
        }
        if let Some(l) = labels {
            line.push(' ');
            line.push_str(&l[i].to_code().to_string());
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}

fn format_err(line: usize, msg: impl Into<String>) -> LdmlError {
    LdmlError::Format { line, msg: msg.into() }
}

pub fn read_dataset<R: BufRead>(input: R) -> Result<DataSet> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => l.map_err(|e| format_err(1, e.to_string()))?,
        None => return Err(format_err(1, "missing header")),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != MAGIC {
        return Err(format_err(1, format!("expected `{MAGIC} <n> <d> <has_labels>`")));
    }
    let parse_usize = |s: &str, what: &str| s.parse::<usize>().map_err(|_| format_err(1, format!("bad {what} `{s}`")));
    let n = parse_usize(fields[1], "n")?;
    let d = parse_usize(fields[2], "d")?;
    let has_labels = match fields[3] {
        "0" => false,
        "1" => true,
        other => return Err(format_err(1, format!("has_labels must be 0 or 1, got `{other}`"))),
    };
    if d == 0 {
        return Err(format_err(1, "d must be >= 1"));
    }
    let mut coords = Vec::with_capacity(n * d);
    let mut labels = has_labels.then(|| Vec::with_capacity(n));
    let mut rows = 0;
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.map_err(|e| format_err(lineno, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        if rows == n {
            return Err(format_err(lineno, "more rows than declared"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let want = d + usize::from(has_labels);
        if toks.len() != want {
            return Err(format_err(lineno, format!("expected {want} fields, got {}", toks.len())));
        }
        for t in &toks[..d] {
            let x: f64 = t.parse().map_err(|_| format_err(lineno, format!("bad float `{t}`")))?;
            if !x.is_finite() {
                return Err(format_err(lineno, "non-finite coordinate"));
            }
            coords.push(x);
        }
        if let Some(ls) = labels.as_mut() {
            let code: i64 = toks[d]
                .parse()
                .map_err(|_| format_err(lineno, format!("bad label `{}`", toks[d])))?;
            ls.push(Label::from_code(code).ok_or_else(|| format_err(lineno, format!("bad label {code}")))?);
        }
        rows += 1;
    }
    if rows != n {
        return Err(format_err(n + 1, format!("declared {n} rows, found {rows}")));
    }
    DataSet::new(d, coords, labels)
}

pub fn save(ds: &DataSet, path: &Path) -> Result<()> {
    let io = |source| LdmlError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    write_dataset(ds, BufWriter::new(file)).map_err(io)
}

pub fn load(path: &Path) -> Result<DataSet> {
    let file = File::open(path).map_err(|source| LdmlError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_dataset(BufReader::new(file))
}
