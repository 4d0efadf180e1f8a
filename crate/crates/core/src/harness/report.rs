use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{HarnessError, OutputFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Merkle,
    Verkle,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Merkle => "merkle",
            Structure::Verkle => "verkle",
        })
    }
}

pub const REPORT_COLUMNS: [&str; 10] = [
    "structure",
    "capacity",
    "levels",
    "build_ms",
    "prove_ms_mean",
    "verify_ms_mean",
    "proof_bytes_compact",
    "proof_bytes_word",
    "calldata_gas",
    "total_gas",
];

/// One (structure, capacity) cell. Timings are wall-clock milliseconds;
/// everything else is deterministic for a given config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub structure: Structure,
    pub capacity: u64,
    pub levels: u32,
    pub build_ms: f64,
    pub prove_ms_mean: f64,
    pub verify_ms_mean: f64,
    pub proof_bytes_compact: usize,
    pub proof_bytes_word: usize,
    pub calldata_gas: u64,
    pub total_gas: u64,
    /// Openings or sibling digests per proof (Verkle counts the leaf opening).
    pub proof_components: usize,
    pub samples: usize,
    /// Addresses whose derived key was overwritten by a later address.
    pub shadowed_keys: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

fn ms(v: f64) -> String {
    format!("{v:.3}")
}

pub fn write_report_csv<W: Write>(report: &BenchReport, w: W) -> Result<(), HarnessError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(REPORT_COLUMNS)?;
    for r in &report.rows {
        out.write_record([
            r.structure.to_string(),
            r.capacity.to_string(),
            r.levels.to_string(),
            ms(r.build_ms),
            ms(r.prove_ms_mean),
            ms(r.verify_ms_mean),
            r.proof_bytes_compact.to_string(),
            r.proof_bytes_word.to_string(),
            r.calldata_gas.to_string(),
            r.total_gas.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_report_json<W: Write>(report: &BenchReport, mut w: W) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(&mut w, report)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn write_report<W: Write>(report: &BenchReport, format: OutputFormat, w: W) -> Result<(), HarnessError> {
    match format {
        OutputFormat::Csv => write_report_csv(report, w),
        OutputFormat::Json => write_report_json(report, w),
    }
}
