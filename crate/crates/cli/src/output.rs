use std::io::{self, Write};

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str =
    "j,k,n,method,value,std_error,lower_bound,upper_bound,asymptotic,samples,seed";

/// One row of `eval` or `simulate` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub j: u32,
    pub k: u32,
    pub n: u32,
    pub method: String,
    pub value: Option<f64>,
    pub std_error: Option<f64>,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub asymptotic: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

impl OutputRecord {
    /// CSV fields in header order; floats use the same shortest round-trip
    /// text as the JSON encoding.
    pub fn csv_line(&self) -> String {
        fn real(v: Option<f64>) -> String {
            v.map(|x| serde_json::to_string(&x).expect("finite float"))
                .unwrap_or_default()
        }
        fn int(v: Option<u64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        [
            self.j.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.method.clone(),
            real(self.value),
            real(self.std_error),
            real(self.lower_bound),
            real(self.upper_bound),
            real(self.asymptotic),
            int(self.samples),
            int(self.seed),
        ]
        .join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes records as they arrive, flushing after each one.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    written: usize,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut out: W, format: Format) -> io::Result<Self> {
        match format {
            Format::Csv => writeln!(out, "{CSV_HEADER}")?,
            Format::Json => write!(out, "[")?,
        }
        out.flush()?;
        Ok(Self {
            out,
            format,
            written: 0,
        })
    }

    pub fn write(&mut self, record: &OutputRecord) -> io::Result<()> {
        match self.format {
            Format::Csv => writeln!(self.out, "{}", record.csv_line())?,
            Format::Json => {
                let sep = if self.written == 0 { "\n" } else { ",\n" };
                let body = serde_json::to_string(record).map_err(io::Error::other)?;
                write!(self.out, "{sep}{body}")?;
            }
        }
        self.written += 1;
        self.out.flush()
    }

    pub fn finish(mut self) -> io::Result<()> {
        if self.format == Format::Json {
            writeln!(self.out, "\n]")?;
        }
        self.out.flush()
    }
}
