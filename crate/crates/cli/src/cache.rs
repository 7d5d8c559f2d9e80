//! On-disk cache of built tables, one file per (ruleset, bound, format
//! version, output format).

use std::fs;
use std::path::{Path, PathBuf};

use ecn_core::solver::{read_dump, write_csv, write_dump, DUMP_FORMAT_VERSION};
use ecn_core::{Budget, GrundyTable, Ruleset};

use crate::{Failure, TableFormat};

/// File name for a cached table. Ruleset punctuation is spelled out so
/// distinct rulesets never share a name.
pub fn file_name(r: &Ruleset, bound: u64, format: TableFormat) -> String {
    let name: String = r
        .to_string()
        .chars()
        .map(|c| match c {
            '(' | ')' => 'p',
            '{' | '}' => 'b',
            ',' => 'c',
            '_' => 'u',
            ';' => 's',
            c if c.is_ascii_alphanumeric() => c,
            _ => 'x',
        })
        .collect();
    let ext = match format {
        TableFormat::Bin => "ecnt",
        TableFormat::Csv => "csv",
    };
    format!("{name}-b{bound}-v{DUMP_FORMAT_VERSION}.{ext}")
}

fn build(r: &Ruleset, bound: u64, budget: Budget, format: TableFormat) -> Result<Vec<u8>, Failure> {
    let table = GrundyTable::uniform(r, bound, budget)?;
    let mut buf = Vec::new();
    match format {
        TableFormat::Bin => write_dump(&table, &mut buf)?,
        TableFormat::Csv => write_csv(&table, &mut buf)?,
    }
    Ok(buf)
}

/// A cached binary file is only trusted if its header names the same
/// ruleset and bound.
fn valid(bytes: &[u8], r: &Ruleset, bound: u64, format: TableFormat) -> bool {
    match format {
        TableFormat::Bin => read_dump(bytes).is_ok_and(|d| d.ruleset == r.to_string() && d.bound == bound),
        TableFormat::Csv => bytes.starts_with(b"position,outcome,grundy"),
    }
}

pub fn table_bytes(
    r: &Ruleset,
    bound: u64,
    budget: Budget,
    format: TableFormat,
    dir: Option<&Path>,
) -> Result<Vec<u8>, Failure> {
    let Some(dir) = dir else {
        return build(r, bound, budget, format);
    };
    let path: PathBuf = dir.join(file_name(r, bound, format));
    if let Ok(bytes) = fs::read(&path) {
        if valid(&bytes, r, bound, format) {
            return Ok(bytes);
        }
    }
    let bytes = build(r, bound, budget, format)?;
    fs::create_dir_all(dir)?;
    fs::write(&path, &bytes)?;
    Ok(bytes)
}
