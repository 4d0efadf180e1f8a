//! Desk-scale reproduction of the Verkle vs Merkle membership experiment:
//! seeded address sets, tree construction, proof sampling with local
//! verification, proof-size measurement and modeled gas.

mod bench;
mod dataset;
mod report;

pub use bench::{run_benchmark, BenchConfig, OutputFormat, DEFAULT_CAPACITIES, LARGE_CAPACITY};
pub use dataset::{generate_dataset, Address};
pub use report::{write_report, write_report_csv, write_report_json, BenchReport, BenchRow, Structure, REPORT_COLUMNS};

use thiserror::Error;

use crate::gas::GasError;
use crate::merkle::MerkleError;
use crate::pc::KzgError;
use crate::verkle::VerkleError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid benchmark config: {0}")]
    Config(String),
    #[error("{structure} proof failed to verify (capacity {capacity}, sample {sample})")]
    Verification { structure: Structure, capacity: u64, sample: usize },
    #[error("{structure} proof size varied across samples at capacity {capacity}")]
    UnstableProofSize { structure: Structure, capacity: u64 },
    #[error(transparent)]
    Verkle(#[from] VerkleError),
    #[error(transparent)]
    Merkle(#[from] MerkleError),
    #[error(transparent)]
    Kzg(#[from] KzgError),
    #[error(transparent)]
    Gas(#[from] GasError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}
