use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;

/// Row sink: CSV with a `# config` comment line, or JSON lines whose first
/// object is `{"config": ...}`. Rows are written as they arrive.
pub struct Emitter {
    inner: Sink,
}

enum Sink {
    Csv(Box<csv::Writer<Box<dyn Write>>>),
    Json(Box<dyn Write>),
}

impl Emitter {
    pub fn open(format: Format, out: Option<&Path>, config: &serde_json::Value) -> io::Result<Self> {
        let mut w: Box<dyn Write> = match out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        let inner = match format {
            Format::Csv => {
                writeln!(w, "# config {config}")?;
                Sink::Csv(Box::new(csv::Writer::from_writer(w)))
            }
            Format::Json => {
                serde_json::to_writer(&mut w, &serde_json::json!({ "config": config }))?;
                writeln!(w)?;
                Sink::Json(w)
            }
        };
        Ok(Self { inner })
    }

    pub fn row<R: Serialize>(&mut self, row: &R) -> io::Result<()> {
        match &mut self.inner {
            Sink::Csv(w) => w.serialize(row).map_err(io::Error::other),
            Sink::Json(w) => {
                serde_json::to_writer(&mut *w, row)?;
                writeln!(w)
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self.inner {
            Sink::Csv(mut w) => w.flush(),
            Sink::Json(mut w) => w.flush(),
        }
    }
}
