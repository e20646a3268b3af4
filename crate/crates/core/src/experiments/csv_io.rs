use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use serde::Deserialize;

use super::{ExperimentError, SweepRow};
use crate::model::linear_to_db;

pub const CSV_HEADER: [&str; 17] = [
    "scenario_id",
    "axis_value",
    "h01",
    "h02",
    "h12",
    "h13",
    "h23",
    "p0_db",
    "p1_db",
    "p2_db",
    "scheme",
    "rate_bpcu",
    "t1",
    "t2",
    "t3",
    "t4",
    "alloc_params",
];

fn num(v: f64) -> String {
    format!("{v:.9}")
}

struct Counting<W> {
    inner: W,
    bytes: usize,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Writes the rows as CSV with `\n` line endings and nine decimals, returning
/// the byte count.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<usize, ExperimentError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Counting { inner: out, bytes: 0 });
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let g = &r.gains;
        let b = &r.budget;
        let params: Vec<String> = r.report.allocation.params().iter().map(|(k, v)| format!("{k}={}", num(*v))).collect();
        let mut rec = vec![r.scenario_id.to_string(), num(r.axis_value)];
        rec.extend([g.h01, g.h02, g.h12, g.h13, g.h23].map(num));
        rec.extend([b.p0, b.p1, b.p2].map(|p| num(linear_to_db(p))));
        rec.push(r.name().to_string());
        rec.push(num(r.rate()));
        rec.extend(r.report.allocation.times().map(num));
        rec.push(params.join(";"));
        w.write_record(&rec)?;
    }
    w.flush()?;
    let counting = w.into_inner().map_err(|e| e.into_error())?;
    Ok(counting.bytes)
}

pub fn write_csv_file(rows: &[SweepRow], path: &Path) -> Result<usize, ExperimentError> {
    let n = write_csv(rows, BufWriter::new(File::create(path)?))?;
    Ok(n)
}

/// One parsed CSV line.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CsvRecord {
    pub scenario_id: usize,
    pub axis_value: f64,
    pub h01: f64,
    pub h02: f64,
    pub h12: f64,
    pub h13: f64,
    pub h23: f64,
    pub p0_db: f64,
    pub p1_db: f64,
    pub p2_db: f64,
    pub scheme: String,
    pub rate_bpcu: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub alloc_params: String,
}

impl CsvRecord {
    /// The `key=value` pairs of `alloc_params`.
    pub fn params(&self) -> Result<Vec<(String, f64)>, ExperimentError> {
        if self.alloc_params.is_empty() {
            return Ok(Vec::new());
        }
        self.alloc_params
            .split(';')
            .map(|kv| {
                let bad = || ExperimentError::AllocParams(kv.to_string());
                let (k, v) = kv.split_once('=').ok_or_else(bad)?;
                Ok((k.to_string(), v.parse().map_err(|_| bad())?))
            })
            .collect()
    }
}

/// Reads CSV produced by [`write_csv`]; the header must match exactly.
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<CsvRecord>, ExperimentError> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(CSV_HEADER) {
        return Err(ExperimentError::Csv(csv::Error::from(io::Error::new(
            io::ErrorKind::InvalidData,
            "unexpected header",
        ))));
    }
    Ok(r.deserialize().collect::<Result<Vec<CsvRecord>, _>>()?)
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRecord>, ExperimentError> {
    parse_csv(File::open(path)?)
}
