//! Long-form dataset CSV and chain CSV.
//!
//! Dataset schema: header `table_id,category,m,x`, one row per
//! (table, category). Categories must appear in the same order in every
//! table; rows of one table are consecutive. UTF-8, decimal point only.
//!
//! Chain schema: header `iter,w_1,..,w_K,log_post`, one row per retained
//! iteration.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::dataset::{Binding, Dataset, Table};
use crate::error::{Error, Result};
use crate::swm::Chain;
use crate::urn::{DrawOutcome, UrnSpec};

use super::json::format_float;

const HEADER: [&str; 4] = ["table_id", "category", "m", "x"];

/// Reads and validates a dataset file.
pub fn parse_dataset(path: &Path, binding: Binding) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Validation(format!("cannot open {}: {e}", path.display())))?;

    {
        let headers = reader
            .headers()
            .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
        let got: Vec<&str> = headers.iter().collect();
        if got != HEADER {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header {:?}, got {:?}", HEADER.join(","), got.join(",")),
            });
        }
    }

    struct PendingTable {
        id: String,
        labels: Vec<String>,
        m: Vec<u64>,
        x: Vec<u64>,
        lines: Vec<u64>,
    }

    let mut groups: Vec<PendingTable> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 4 {
            return Err(Error::Parse {
                line,
                message: format!("expected 4 fields, got {}", record.len()),
            });
        }
        let id = record[0].to_string();
        let category = record[1].to_string();
        if id.is_empty() || category.is_empty() {
            return Err(Error::Parse { line, message: "empty table_id or category".into() });
        }
        let m: u64 = record[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("m is not a nonnegative integer: {:?}", &record[2]),
        })?;
        let x: u64 = record[3].parse().map_err(|_| Error::Parse {
            line,
            message: format!("x is not a nonnegative integer: {:?}", &record[3]),
        })?;

        match groups.last_mut() {
            Some(g) if g.id == id => {
                g.labels.push(category);
                g.m.push(m);
                g.x.push(x);
                g.lines.push(line);
            }
            _ => {
                if groups.iter().any(|g| g.id == id) {
                    return Err(Error::Validation(format!(
                        "line {line}: duplicate table_id {id:?} (rows of one table must be consecutive)"
                    )));
                }
                groups.push(PendingTable {
                    id,
                    labels: vec![category],
                    m: vec![m],
                    x: vec![x],
                    lines: vec![line],
                });
            }
        }
    }

    if groups.is_empty() {
        return Err(Error::Validation("dataset file has no data rows".into()));
    }

    let reference = groups[0].labels.clone();
    let mut tables = Vec::with_capacity(groups.len());
    for g in groups {
        if g.labels != reference {
            return Err(Error::Validation(format!(
                "table {:?} lists categories {:?}, expected {:?} in the same order",
                g.id, g.labels, reference
            )));
        }
        for (i, (&xi, &mi)) in g.x.iter().zip(&g.m).enumerate() {
            if xi > mi {
                return Err(Error::Validation(format!(
                    "line {}: table {:?} category {:?}: x = {xi} exceeds m = {mi}",
                    g.lines[i], g.id, g.labels[i]
                )));
            }
        }
        let urn = UrnSpec::new(g.m, g.labels)
            .map_err(|e| Error::Validation(format!("table {:?}: {e}", g.id)))?;
        tables.push(Table::new(g.id, urn, DrawOutcome::new(g.x))?);
    }
    Dataset::new(tables, binding)
}

/// Writes a dataset in the long-form schema; `parse_dataset` reads it back
/// field-for-field.
pub fn write_dataset(dataset: &Dataset, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{}", HEADER.join(","))?;
    for t in dataset.tables() {
        for ((label, &m), &x) in t
            .urn
            .labels()
            .iter()
            .zip(t.urn.counts())
            .zip(t.outcome.counts())
        {
            writeln!(out, "{},{},{},{}", t.id, label, m, x)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes one row per retained iteration: index, weight components, log
/// posterior. Floats use the canonical 12-significant-digit format.
pub fn write_chain_csv(chain: &Chain, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    let k = chain.k();
    let mut header = String::from("iter");
    for i in 1..=k {
        header.push_str(&format!(",w_{i}"));
    }
    header.push_str(",log_post");
    writeln!(out, "{header}")?;
    for (i, (w, lp)) in chain.samples.iter().zip(&chain.log_posterior).enumerate() {
        let mut row = format!("{}", i + 1);
        for &c in w.components() {
            row.push(',');
            row.push_str(&format_float(c));
        }
        row.push(',');
        row.push_str(&format_float(*lp));
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    Ok(())
}
