//! JSON tree description written by `build` and consumed by `prove`.
//!
//! Only the inputs are stored, plus the root for a consistency check; trees
//! are rebuilt on load.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use verkle_gas::merkle::{HashAlgorithm, MerkleTree};
use verkle_gas::pc::{Scalar, TrustedSetup};
use verkle_gas::verkle::{TreeConfig, VerkleKey, VerkleTree};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Verkle,
    Merkle,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeFile {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem_width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hash: Option<HashAlgorithm>,
    pub root: String,
    pub items: Vec<String>,
}

pub enum Built {
    Verkle(VerkleTree),
    Merkle(MerkleTree),
}

impl Built {
    pub fn root_hex(&self) -> String {
        match self {
            Built::Verkle(t) => hex::encode(t.root_commitment().expect("committed").to_bytes()),
            Built::Merkle(t) => hex::encode(t.root().as_bytes()),
        }
    }
}

/// Value stored for a raw item in a Verkle tree.
pub fn item_value(item: &[u8]) -> Scalar {
    Scalar::hash_to_scalar(item)
}

pub fn build_verkle(items: &[Vec<u8>], config: TreeConfig, setup: Arc<TrustedSetup>) -> Result<VerkleTree, CliError> {
    let mut tree = VerkleTree::create(config, setup)?;
    for item in items {
        tree.insert(&VerkleKey::derive(item, &config), item_value(item))?;
    }
    tree.commit();
    Ok(tree)
}

impl TreeFile {
    pub fn decode_items(&self) -> Result<Vec<Vec<u8>>, CliError> {
        self.items.iter().map(|s| parse_hex(s)).collect()
    }

    /// Rebuild the tree and confirm it reproduces the recorded root.
    pub fn rebuild(&self, setup: impl FnOnce() -> Result<Arc<TrustedSetup>, CliError>) -> Result<Built, CliError> {
        let items = self.decode_items()?;
        let built = match self.kind {
            Kind::Verkle => {
                let width = self.stem_width.ok_or_else(|| CliError::malformed("verkle tree file lacks stem_width"))?;
                Built::Verkle(build_verkle(&items, TreeConfig::new(width)?, setup()?)?)
            }
            Kind::Merkle => Built::Merkle(MerkleTree::build(self.hash.unwrap_or_default(), &items)?),
        };
        let root = built.root_hex();
        if !root.eq_ignore_ascii_case(self.root.trim_start_matches("0x")) {
            return Err(CliError::malformed(format!(
                "rebuilt root {root} does not match recorded root {} (different setup?)",
                self.root
            )));
        }
        Ok(built)
    }
}

pub fn parse_hex(s: &str) -> Result<Vec<u8>, CliError> {
    let s = s.trim();
    let s = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    hex::decode(s).map_err(|e| CliError::malformed(format!("bad hex {s:?}: {e}")))
}

/// One hex item per line; blank lines and `#` comments are skipped.
pub fn parse_item_list(text: &str) -> Result<Vec<Vec<u8>>, CliError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_hex)
        .collect()
}
