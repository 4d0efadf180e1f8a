//! Verkle and Merkle membership proofs with an EVM gas cost model.
//!
//! * [`pc`]: BN254 field/group types and KZG commitments.
//! * [`verkle`]: fixed-depth 256-ary Verkle tree, proofs and codecs.
//! * [`merkle`]: binary Merkle tree with sorted-pair hashing.
//! * [`gas`]: closed-form and byte-level verification cost estimates.
//! * [`harness`]: seeded datasets, benchmark runs and report export.

pub mod exec;
pub mod gas;
pub mod harness;
pub mod hash;
pub mod merkle;
pub mod pc;
pub mod verkle;

pub use exec::Exec;
