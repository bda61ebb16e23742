//! CSV and JSON writers for distributions and run reports.
//!
//! Floats are written as `{:.16e}` (17 significant digits), which round-trips
//! every `f64` exactly.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use fcstat_core::fcs::Atom;
use fcstat_core::FcsDistribution;

use crate::runner::RunReport;

pub const DISTRIBUTION_HEADER: [&str; 2] = ["delta_e", "prob"];

pub const REPORT_HEADER: [&str; 9] = [
    "t",
    "mean",
    "mean_over_t",
    "exp_moment",
    "theorem_bound",
    "theorem_pass",
    "tail_empirical",
    "tail_bound",
    "tail_pass",
];

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, e)
}

/// `distribution_{k}_t{t}.csv`, with `k` the position in `t_values`.
pub fn distribution_file_name(index: usize, t: f64) -> String {
    format!("distribution_{index:03}_t{t}.csv")
}

pub fn emit_distribution(d: &FcsDistribution, path: &Path) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    w.write_record(DISTRIBUTION_HEADER).map_err(csv_error)?;
    for a in d.atoms() {
        w.write_record([format_float(a.delta_e), format_float(a.prob)])
            .map_err(csv_error)?;
    }
    w.flush()
}

/// Reads atoms back from a file written by [`emit_distribution`].
pub fn read_distribution(path: &Path) -> io::Result<Vec<Atom>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_error)?;
    if r.headers()
        .map_err(csv_error)?
        .iter()
        .ne(DISTRIBUTION_HEADER)
    {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            "unexpected distribution header",
        ));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    };
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            Ok(Atom {
                delta_e: parse(&rec[0])?,
                prob: parse(&rec[1])?,
            })
        })
        .collect()
}

/// One row per time with the columns of [`REPORT_HEADER`].
pub fn emit_report(report: &RunReport, path: &Path) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    w.write_record(REPORT_HEADER).map_err(csv_error)?;
    for r in &report.records {
        w.write_record([
            format_float(r.t),
            format_float(r.mean),
            format_float(r.mean_over_t),
            format_float(r.exp_moment),
            format_float(r.theorem_bound),
            r.theorem_pass.to_string(),
            format_float(r.tail.empirical),
            format_float(r.tail.bound),
            r.tail.pass.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()
}

pub fn emit_report_json(report: &RunReport, path: &Path) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, report)?;
    w.write_all(b"\n")?;
    w.flush()
}

pub fn read_report_json(path: &Path) -> io::Result<RunReport> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(io::Error::from)
}
