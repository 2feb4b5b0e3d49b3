//! Deterministic CSV and text output: `.` decimal separator, LF endings,
//! floats as `{:.16e}`.

use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

pub fn real(v: f64) -> String {
    // Negative zero prints as zero.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// CSV text built in memory, written in one step.
#[derive(Debug, Default)]
pub struct Table {
    buf: Vec<u8>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        let mut t = Table::default();
        t.row(header);
        t
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut self.buf);
        w.write_record(fields.iter().map(|f| f.as_ref())).expect("in-memory write");
        w.flush().expect("in-memory flush");
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.buf
    }
}

pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    let path = dir.join(name);
    let wrap = |source| CliError::Write {
        path: path.clone(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(wrap)?;
    std::fs::write(&path, bytes).map_err(wrap)?;
    Ok(path)
}
