//! Binary Merkle tree baseline.
//!
//! Leaves are double-hashed (`H(H(raw))`) and interior nodes use commutative
//! pair hashing `H(min(a, b) || max(a, b))`, so proofs are a bare list of
//! sibling digests with no direction bits. An unpaired node at the end of a
//! level is promoted unchanged.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::hash::{keccak256, sha256};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HashAlgorithm {
    #[default]
    Keccak256,
    Sha256,
}

impl HashAlgorithm {
    pub fn digest(self, data: &[u8]) -> Digest32 {
        Digest32(match self {
            HashAlgorithm::Keccak256 => keccak256(data),
            HashAlgorithm::Sha256 => sha256(data),
        })
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest32(pub [u8; 32]);

impl Digest32 {
    pub fn from_slice(bytes: &[u8]) -> Result<Self, MerkleError> {
        let arr: [u8; 32] = bytes.try_into().map_err(|_| MerkleError::BadLength(bytes.len()))?;
        Ok(Digest32(arr))
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl fmt::Debug for Digest32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", hex::encode(self.0))
    }
}

impl fmt::Display for Digest32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MerkleError {
    #[error("tree needs at least one leaf")]
    Empty,
    #[error("leaf {0} is empty")]
    EmptyLeaf(usize),
    #[error("leaf index {index} out of range for {len} leaves")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("proof length {0} is not a multiple of 32")]
    BadLength(usize),
}

pub fn hash_leaf(algo: HashAlgorithm, raw: &[u8]) -> Digest32 {
    algo.digest(&algo.digest(raw).0)
}

pub fn hash_pair(algo: HashAlgorithm, a: &Digest32, b: &Digest32) -> Digest32 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut buf = [0u8; 64];
    buf[..32].copy_from_slice(&lo.0);
    buf[32..].copy_from_slice(&hi.0);
    algo.digest(&buf)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MerkleTree {
    algo: HashAlgorithm,
    /// `levels[0]` holds leaf digests, the last level holds the root.
    levels: Vec<Vec<Digest32>>,
    pair_hashes: usize,
}

impl MerkleTree {
    pub fn build<T: AsRef<[u8]> + Sync>(algo: HashAlgorithm, leaves: &[T]) -> Result<Self, MerkleError> {
        Self::build_with(algo, leaves, Exec::default())
    }

    pub fn build_with<T: AsRef<[u8]> + Sync>(
        algo: HashAlgorithm,
        leaves: &[T],
        exec: Exec,
    ) -> Result<Self, MerkleError> {
        if leaves.is_empty() {
            return Err(MerkleError::Empty);
        }
        if let Some(i) = leaves.iter().position(|l| l.as_ref().is_empty()) {
            return Err(MerkleError::EmptyLeaf(i));
        }
        let mut levels = vec![exec.map(leaves, |l| hash_leaf(algo, l.as_ref()))];
        let mut pair_hashes = 0;
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let pairs: Vec<&[Digest32]> = prev.chunks(2).collect();
            pair_hashes += prev.len() / 2;
            let next = exec.map(&pairs, |c| match c {
                [a, b] => hash_pair(algo, a, b),
                [a] => *a,
                _ => unreachable!(),
            });
            levels.push(next);
        }
        Ok(MerkleTree { algo, levels, pair_hashes })
    }

    pub fn root(&self) -> Digest32 {
        self.levels.last().unwrap()[0]
    }

    pub fn algorithm(&self) -> HashAlgorithm {
        self.algo
    }

    pub fn leaf_count(&self) -> usize {
        self.levels[0].len()
    }

    pub fn levels(&self) -> &[Vec<Digest32>] {
        &self.levels
    }

    /// Number of `hash_pair` calls made while building.
    pub fn pair_hash_count(&self) -> usize {
        self.pair_hashes
    }

    pub fn proof(&self, index: usize) -> Result<MerkleProof, MerkleError> {
        if index >= self.leaf_count() {
            return Err(MerkleError::IndexOutOfRange { index, len: self.leaf_count() });
        }
        let mut siblings = Vec::new();
        let mut i = index;
        for level in &self.levels[..self.levels.len() - 1] {
            let sib = i ^ 1;
            if sib < level.len() {
                siblings.push(level[sib]);
            }
            i /= 2;
        }
        Ok(MerkleProof { siblings })
    }

    /// Leaf digests as concatenated 32-byte records.
    pub fn export_leaves(&self) -> Vec<u8> {
        self.levels[0].iter().flat_map(|d| d.0).collect()
    }
}

/// Sibling digests, leaf-adjacent first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MerkleProof {
    pub siblings: Vec<Digest32>,
}

impl MerkleProof {
    pub fn depth(&self) -> usize {
        self.siblings.len()
    }

    pub fn encode(&self) -> Vec<u8> {
        self.siblings.iter().flat_map(|d| d.0).collect()
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, MerkleError> {
        if !bytes.len().is_multiple_of(32) {
            return Err(MerkleError::BadLength(bytes.len()));
        }
        let siblings = bytes.chunks_exact(32).map(|c| Digest32(c.try_into().unwrap())).collect();
        Ok(MerkleProof { siblings })
    }
}

pub fn verify_proof(algo: HashAlgorithm, root: &Digest32, leaf: &[u8], proof: &MerkleProof) -> bool {
    let computed = proof
        .siblings
        .iter()
        .fold(hash_leaf(algo, leaf), |acc, sib| hash_pair(algo, &acc, sib));
    computed == *root
}
