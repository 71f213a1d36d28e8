use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::Utc;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Where reports go: a file given by `--out`, else stdout.
pub struct Sink {
    format: Format,
    writer: Box<dyn Write>,
}

impl Sink {
    pub fn open(format: Format, out: Option<&Path>) -> Result<Sink, CliError> {
        let writer: Box<dyn Write> = match out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink { format, writer })
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// One record: pretty JSON, a one-row CSV, or the given text.
    pub fn document<T: Serialize>(&mut self, record: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut self.writer, record)?;
                writeln!(self.writer)?;
            }
            Format::Csv => self.csv_rows(std::slice::from_ref(record))?,
            Format::Text => write!(self.writer, "{}", text())?,
        }
        self.writer.flush()?;
        Ok(())
    }

    /// Many records: JSON lines, CSV with a header, or the given text.
    pub fn records<T: Serialize>(&mut self, rows: &[T], text: impl FnOnce() -> String) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                for row in rows {
                    serde_json::to_writer(&mut self.writer, row)?;
                    writeln!(self.writer)?;
                }
            }
            Format::Csv => self.csv_rows(rows)?,
            Format::Text => write!(self.writer, "{}", text())?,
        }
        self.writer.flush()?;
        Ok(())
    }

    fn csv_rows<T: Serialize>(&mut self, rows: &[T]) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(&mut self.writer);
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// JSON-lines log of one invocation, named by UTC start time and command.
pub struct RunLog {
    file: Option<BufWriter<File>>,
    path: Option<PathBuf>,
}

impl RunLog {
    pub fn disabled() -> RunLog {
        RunLog { file: None, path: None }
    }

    pub fn create(dir: &Path, command: &str, args: Value) -> Result<RunLog, CliError> {
        fs::create_dir_all(dir)?;
        let now = Utc::now();
        let path = dir.join(format!("{}-{command}.jsonl", now.format("%Y%m%dT%H%M%S%.3fZ")));
        let file = BufWriter::new(File::create(&path)?);
        let mut log = RunLog { file: Some(file), path: Some(path) };
        log.event(&json!({ "event": "start", "command": command, "utc": now.to_rfc3339(), "args": args }))?;
        Ok(log)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn event(&mut self, value: &Value) -> Result<(), CliError> {
        if let Some(f) = self.file.as_mut() {
            serde_json::to_writer(&mut *f, value)?;
            writeln!(f)?;
        }
        Ok(())
    }

    pub fn cases<T: Serialize>(&mut self, suite: &str, rows: &[T]) -> Result<(), CliError> {
        if self.file.is_none() {
            return Ok(());
        }
        for row in rows {
            let mut v = serde_json::to_value(row)?;
            if let Value::Object(map) = &mut v {
                map.insert("event".into(), json!("case"));
                map.insert("suite".into(), json!(suite));
            }
            self.event(&v)?;
        }
        Ok(())
    }

    pub fn finish(&mut self, status: &str, elapsed_ms: u128) -> Result<(), CliError> {
        self.event(&json!({ "event": "end", "status": status, "elapsed_ms": elapsed_ms as u64 }))?;
        if let Some(f) = self.file.as_mut() {
            f.flush()?;
        }
        Ok(())
    }
}
