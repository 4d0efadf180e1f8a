//! Fixed-depth 256-ary Verkle tree over KZG vector commitments.
//!
//! A key is a `stem` of `stem_width` bytes plus a one-byte leaf index. Each
//! stem byte picks a child in one internal layer; the final leaf node holds
//! up to 256 values. Every node commits to its 256-slot vector (absent slots
//! are zero); an internal node's slot `i` holds
//! [`commitment_to_scalar`](crate::pc::commitment_to_scalar) of child `i`.

mod proof;
mod tree;

pub use proof::{verify_proof_local, VerkleProof, COMPACT_MAGIC, COMPACT_VERSION};
pub use tree::VerkleTree;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hash::keccak256;
use crate::pc::{DecodeError, KzgError};

pub const BRANCHING_FACTOR: usize = 256;
/// Stems are cut from a 32-byte digest that also supplies the leaf index.
pub const MAX_STEM_WIDTH: usize = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerkleError {
    #[error("unsupported branching factor {0} (only 256)")]
    BranchingFactor(usize),
    #[error("stem width {0} outside 1..={MAX_STEM_WIDTH}")]
    StemWidth(usize),
    #[error("key stem has {actual} bytes, tree expects {expected}")]
    KeyWidth { expected: usize, actual: usize },
    #[error("zero is reserved for empty slots")]
    ZeroValue,
    #[error("key not present")]
    NotFound,
    #[error("tree changed since the last commit")]
    NotCommitted,
    #[error("malformed proof: {0}")]
    MalformedProof(String),
    #[error("setup too small: {0}")]
    Setup(#[from] KzgError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeConfig {
    pub branching_factor: usize,
    pub stem_width: usize,
}

impl TreeConfig {
    pub fn new(stem_width: usize) -> Result<Self, VerkleError> {
        let c = TreeConfig { branching_factor: BRANCHING_FACTOR, stem_width };
        c.validate()?;
        Ok(c)
    }

    /// Narrowest tree whose capacity covers `n` keys (stem width at least 1).
    pub fn for_capacity(n: u64) -> Self {
        let mut w = 1;
        while w < MAX_STEM_WIDTH && (256u128).pow(w as u32 + 1) < n as u128 {
            w += 1;
        }
        TreeConfig { branching_factor: BRANCHING_FACTOR, stem_width: w }
    }

    pub fn validate(&self) -> Result<(), VerkleError> {
        if self.branching_factor != BRANCHING_FACTOR {
            return Err(VerkleError::BranchingFactor(self.branching_factor));
        }
        if self.stem_width == 0 || self.stem_width > MAX_STEM_WIDTH {
            return Err(VerkleError::StemWidth(self.stem_width));
        }
        Ok(())
    }

    /// Commitment layers including the leaf layer.
    pub fn levels(&self) -> usize {
        self.stem_width + 1
    }

    /// `256^(stem_width + 1)`; saturates at `u128::MAX` for very wide stems.
    pub fn capacity(&self) -> u128 {
        (256u128).checked_pow(self.levels() as u32).unwrap_or(u128::MAX)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VerkleKey {
    pub stem: Vec<u8>,
    pub leaf_index: u8,
}

impl VerkleKey {
    pub fn new(stem: Vec<u8>, leaf_index: u8) -> Self {
        VerkleKey { stem, leaf_index }
    }

    /// `keccak256(raw)`: the first `stem_width` bytes form the stem and the
    /// next byte is the leaf index.
    pub fn derive(raw: &[u8], config: &TreeConfig) -> Self {
        let digest = keccak256(raw);
        let w = config.stem_width;
        VerkleKey { stem: digest[..w].to_vec(), leaf_index: digest[w] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacities() {
        assert_eq!(TreeConfig::new(1).unwrap().capacity(), 65_536);
        assert_eq!(TreeConfig::new(5).unwrap().capacity(), 1u128 << 48);
        assert_eq!(TreeConfig::new(5).unwrap().levels(), 6);
        assert_eq!(TreeConfig::new(0), Err(VerkleError::StemWidth(0)));
        assert_eq!(TreeConfig::new(32), Err(VerkleError::StemWidth(32)));
        let bad = TreeConfig { branching_factor: 16, stem_width: 1 };
        assert_eq!(bad.validate(), Err(VerkleError::BranchingFactor(16)));
    }

    #[test]
    fn width_for_capacity() {
        assert_eq!(TreeConfig::for_capacity(8).stem_width, 1);
        assert_eq!(TreeConfig::for_capacity(1 << 15).stem_width, 1);
        assert_eq!(TreeConfig::for_capacity(1 << 16).stem_width, 1);
        assert_eq!(TreeConfig::for_capacity((1 << 16) + 1).stem_width, 2);
        assert_eq!(TreeConfig::for_capacity(1 << 20).stem_width, 2);
    }

    #[test]
    fn key_derivation() {
        let cfg = TreeConfig::new(3).unwrap();
        let addr = [0x11u8; 20];
        let a = VerkleKey::derive(&addr, &cfg);
        assert_eq!(a, VerkleKey::derive(&addr, &cfg));
        assert_eq!(a.stem.len(), 3);
        let d = keccak256(&addr);
        assert_eq!(a.stem, d[..3]);
        assert_eq!(a.leaf_index, d[3]);
    }
}
