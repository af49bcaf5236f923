use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::Failure;

/// Writes `bytes` to `path`, or to standard output.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

/// CSV with a header row, even when `rows` is empty.
pub fn csv_bytes<T: Serialize>(header: &[&str], rows: &[T]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Failure::Usage(e.to_string()))
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}
