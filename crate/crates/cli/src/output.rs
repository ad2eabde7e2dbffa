//! Machine-readable records: JSON Lines or CSV.

use std::io::{self, Write};

use chowseries::dsl::CommandResult;
use chowseries::{ComparisonReport, TruncatedSeries, TruncationSpec};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct Coefficient {
    pub deg: Vec<i64>,
    pub c: String,
}

#[derive(Debug, Serialize)]
pub struct SeriesRecord {
    pub kind: &'static str,
    pub rank: usize,
    pub functional: Vec<i64>,
    pub order: i64,
    pub complete: bool,
    pub coefficients: Vec<Coefficient>,
    /// In-region degrees whose coefficient is not certified exact.
    pub incomplete: Vec<Vec<i64>>,
}

impl SeriesRecord {
    pub fn new(series: &TruncatedSeries) -> Self {
        let spec = series.spec();
        SeriesRecord {
            kind: "series",
            rank: series.rank(),
            functional: spec.functional().weights().to_vec(),
            order: spec.bound(),
            complete: series.is_complete(),
            coefficients: series
                .iter()
                .map(|(m, c)| Coefficient { deg: m.components().to_vec(), c: c.to_string() })
                .collect(),
            incomplete: series.incomplete().iter().map(|m| m.components().to_vec()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Diff {
    pub deg: Vec<i64>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Serialize)]
pub struct CompareRecord {
    pub kind: &'static str,
    pub equal: bool,
    pub diffs: Vec<Diff>,
}

impl CompareRecord {
    pub fn new(report: &ComparisonReport) -> Self {
        CompareRecord {
            kind: "compare",
            equal: report.is_equal(),
            diffs: report
                .diffs
                .iter()
                .map(|d| Diff {
                    deg: d.degree.components().to_vec(),
                    left: d.left.to_string(),
                    right: d.right.to_string(),
                })
                .collect(),
        }
    }
}

fn degree_header(rank: usize) -> Vec<String> {
    (0..rank).map(|i| format!("d{i}")).collect()
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn write_series(out: &mut impl Write, series: &TruncatedSeries, format: Format) -> io::Result<()> {
    let record = SeriesRecord::new(series);
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &record)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = degree_header(record.rank);
            header.push("coefficient".into());
            w.write_record(&header).map_err(csv_error)?;
            for c in &record.coefficients {
                let mut row: Vec<String> = c.deg.iter().map(i64::to_string).collect();
                row.push(c.c.clone());
                w.write_record(&row).map_err(csv_error)?;
            }
            w.flush()
        }
    }
}

pub fn write_compare(
    out: &mut impl Write,
    spec: &TruncationSpec,
    report: &ComparisonReport,
    format: Format,
) -> io::Result<()> {
    let record = CompareRecord::new(report);
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &record)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = degree_header(spec.rank());
            header.extend(["left".to_string(), "right".to_string()]);
            w.write_record(&header).map_err(csv_error)?;
            for d in &record.diffs {
                let mut row: Vec<String> = d.deg.iter().map(i64::to_string).collect();
                row.extend([d.left.clone(), d.right.clone()]);
                w.write_record(&row).map_err(csv_error)?;
            }
            w.flush()
        }
    }
}

pub fn write_result(out: &mut impl Write, result: &CommandResult, format: Format) -> io::Result<()> {
    match result {
        CommandResult::Series { series, .. } => write_series(out, series, format),
        CommandResult::Compare { spec, report, .. } => write_compare(out, spec, report, format),
    }
}
