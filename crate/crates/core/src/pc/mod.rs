//! Field, group and KZG polynomial-commitment primitives over BN254.
//!
//! BN254 is the curve behind the EVM `ecAdd`/`ecMul`/`ecPairing`
//! precompiles: scalars fit in 32 bytes and G1 points serialize to 64
//! uncompressed bytes, which is what the calldata accounting in
//! [`crate::gas`] assumes.

mod group;
mod kzg;
mod lagrange;
mod polynomial;
mod scalar;
mod setup;

pub use group::{G1Point, G2Point, G1_BYTES, G2_BYTES};
pub use kzg::{commit, commitment_to_scalar, open_at, verify_opening, verify_opening_bytes, Commitment, OpeningProof};
pub use lagrange::VectorCommitter;
pub use polynomial::Polynomial;
pub use scalar::{Scalar, SCALAR_BYTES};
pub use setup::{TrustedSetup, MAX_SETUP_DEGREE};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("expected {expected} bytes, got {actual}")]
    Length { expected: usize, actual: usize },
    #[error("scalar is not canonical (>= field modulus)")]
    NonCanonicalScalar,
    #[error("coordinate is not a canonical base field element")]
    NonCanonicalCoordinate,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is not in the prime-order subgroup")]
    NotInSubgroup,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported version {0}")]
    BadVersion(u8),
    #[error("{0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KzgError {
    #[error("interpolation needs at least one value")]
    EmptyInput,
    #[error("polynomial degree {degree} exceeds setup max degree {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("requested max degree {requested} outside supported range 1..={limit}")]
    SetupSize { requested: usize, limit: usize },
    #[error("vector of length {len} does not fit domain of width {width}")]
    DomainMismatch { len: usize, width: usize },
    #[error("seed derives a degenerate secret; choose another seed")]
    DegenerateSeed,
    #[error(transparent)]
    Decode(#[from] DecodeError),
}
