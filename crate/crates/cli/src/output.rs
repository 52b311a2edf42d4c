use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

/// A record that can go out as a CSV line as well as a JSON object.
pub trait Row: Serialize {
    const HEADER: &'static str;
    fn csv_line(&self) -> String;
}

/// 17 significant digits, enough to round-trip any f64.
pub fn float17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

pub fn write_rows<R: Row>(rows: &[R], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", R::HEADER)?;
            for r in rows {
                writeln!(out, "{}", r.csv_line())?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    out.flush()
}
