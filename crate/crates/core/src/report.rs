//! Results files: CSV tail tables and full JSON reports.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::channel::{BranchStats, ExperimentResult, Mode, TailPoint};
use crate::robust_gray::{CodeParams, RobustGrayCode};

/// One data row of the CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub t: u64,
    pub tail_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl From<&TailPoint> for CsvRow {
    fn from(p: &TailPoint) -> Self {
        CsvRow {
            t: p.t,
            tail_estimate: p.tail_estimate,
            ci_low: p.ci_low,
            ci_high: p.ci_high,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub d: usize,
    pub size: u64,
    pub rate: f64,
    pub inner_min_distance: usize,
    pub inner_generator: Vec<String>,
}

impl From<&RobustGrayCode> for CodeSummary {
    fn from(code: &RobustGrayCode) -> Self {
        let inner = code.base().inner();
        CodeSummary {
            d: code.len(),
            size: code.size(),
            rate: code.rate(),
            inner_min_distance: inner.min_distance(),
            inner_generator: inner.to_text().lines().map(str::to_owned).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub params: CodeParams,
    pub seed: u64,
    pub mode: Mode,
    pub code: CodeSummary,
    pub trials: u64,
    pub tails: Vec<TailPoint>,
    pub stats: BranchStats,
    pub mean_deviation: f64,
    pub failure_rate: f64,
    pub mean_noise_weight: f64,
}

impl SimulationReport {
    pub fn new(code: &RobustGrayCode, seed: u64, mode: Mode, result: ExperimentResult) -> Self {
        SimulationReport {
            params: *code.params(),
            seed,
            mode,
            code: code.into(),
            trials: result.trials,
            tails: result.tails,
            stats: result.stats,
            mean_deviation: result.mean_deviation,
            failure_rate: result.failure_rate,
            mean_noise_weight: result.mean_noise_weight,
        }
    }

    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.tails.iter().map(CsvRow::from).collect()
    }
}

pub fn write_csv<W: Write>(rows: &[CsvRow], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> csv::Result<Vec<CsvRow>> {
    csv::Reader::from_reader(r).deserialize().collect()
}

pub fn write_json<W: Write>(report: &SimulationReport, mut w: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, report)?;
    w.write_all(b"\n")
}

pub fn read_json<R: Read>(r: R) -> serde_json::Result<SimulationReport> {
    serde_json::from_reader(r)
}
