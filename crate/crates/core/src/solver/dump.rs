//! Table export: a little-endian binary dump and CSV.
//!
//! Binary layout: `b"ECNT"`, format version `u32`, ruleset string (`u32`
//! byte length then UTF-8), bound `u64`, entry count `u64`, then one
//! `(position index u64, Grundy value u32)` record per entry in index order.

use std::io::{Read, Write};

use super::{GrundyTable, Outcome};
use crate::error::{Error, Result};
use crate::game::Position;

pub const DUMP_FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"ECNT";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDump {
    pub ruleset: String,
    pub bound: u64,
    pub entries: Vec<(u64, u32)>,
}

fn io(e: std::io::Error) -> Error {
    Error::Dump(e.to_string())
}

fn uniform_bound(table: &GrundyTable) -> Result<u64> {
    table
        .shape()
        .uniform_bound()
        .ok_or_else(|| Error::Dump("only uniform-bound tables can be exported".into()))
}

pub fn write_dump<W: Write>(table: &GrundyTable, mut w: W) -> Result<()> {
    let bound = uniform_bound(table)?;
    let name = table.ruleset().to_string();
    w.write_all(MAGIC).map_err(io)?;
    w.write_all(&DUMP_FORMAT_VERSION.to_le_bytes()).map_err(io)?;
    w.write_all(&(name.len() as u32).to_le_bytes()).map_err(io)?;
    w.write_all(name.as_bytes()).map_err(io)?;
    w.write_all(&bound.to_le_bytes()).map_err(io)?;
    w.write_all(&(table.values().len() as u64).to_le_bytes()).map_err(io)?;
    for (i, &g) in table.values().iter().enumerate() {
        w.write_all(&(i as u64).to_le_bytes()).map_err(io)?;
        w.write_all(&g.to_le_bytes()).map_err(io)?;
    }
    w.flush().map_err(io)
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(io)?;
    Ok(buf)
}

pub fn read_dump<R: Read>(mut r: R) -> Result<TableDump> {
    if &read_array::<4, _>(&mut r)? != MAGIC {
        return Err(Error::Dump("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != DUMP_FORMAT_VERSION {
        return Err(Error::Dump(format!("unsupported format version {version}")));
    }
    let len = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let mut name = vec![0u8; len];
    r.read_exact(&mut name).map_err(io)?;
    let ruleset = String::from_utf8(name).map_err(|e| Error::Dump(e.to_string()))?;
    let bound = u64::from_le_bytes(read_array(&mut r)?);
    let count = u64::from_le_bytes(read_array(&mut r)?);
    let mut entries = Vec::with_capacity(count.min(1 << 24) as usize);
    for _ in 0..count {
        let idx = u64::from_le_bytes(read_array(&mut r)?);
        let g = u32::from_le_bytes(read_array(&mut r)?);
        entries.push((idx, g));
    }
    Ok(TableDump {
        ruleset,
        bound,
        entries,
    })
}

/// CSV with header `position,outcome,grundy`; positions are quoted.
pub fn write_csv<W: Write>(table: &GrundyTable, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| Error::Dump(e.to_string());
    out.write_record(["position", "outcome", "grundy"]).map_err(csv_err)?;
    let mut err = None;
    table.shape().for_each(|i, piles| {
        if err.is_some() {
            return;
        }
        let g = table.values()[i];
        let row = [
            Position::new(piles.to_vec()).to_string(),
            Outcome::from_grundy(g).to_string(),
            g.to_string(),
        ];
        if let Err(e) = out.write_record(&row) {
            err = Some(csv_err(e));
        }
    });
    match err {
        Some(e) => Err(e),
        None => out.flush().map_err(io),
    }
}
