//! CSV and JSON emission. CSV files start with a `# config-sha256 <hash>`
//! comment followed by the header row.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Open `path`, or standard output when absent.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

pub fn hash_comment(hash: &str) -> String {
    format!("config-sha256 {hash}")
}

/// Write a CSV table with the hash comment and a header row.
pub fn write_csv<W: Write>(out: W, hash: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let mut out = out;
    writeln!(out, "# {}", hash_comment(hash))?;
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io(io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r.iter().map(|x| format!("{x:.17e}"))).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize>(out: W, value: &T) -> Result<(), CliError> {
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::Io(io::Error::other(e)))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_comment_and_header() {
        let mut buf = Vec::new();
        write_csv(&mut buf, "abc", &["nu", "value"], &[vec![1e-6, 0.5]]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# config-sha256 abc");
        assert_eq!(lines[1], "nu,value");
        assert_eq!(lines.len(), 3);
    }
}
