use super::{VerkleError, VerkleKey, MAX_STEM_WIDTH};
use crate::pc::{
    commitment_to_scalar, verify_opening, Commitment, DecodeError, OpeningProof, Scalar, TrustedSetup, G1_BYTES,
};

pub const COMPACT_MAGIC: u8 = 0x56;
pub const COMPACT_VERSION: u8 = 0x01;

const WORD: usize = 32;
const LEVEL_COMPACT: usize = 1 + 2 * G1_BYTES;
const LEVEL_WORD: usize = WORD + 2 * G1_BYTES;

/// Path proof for one key: an opening per internal level plus the leaf
/// opening.
///
/// `indices` duplicates `stem` (one byte per level); both are carried and
/// the verifier requires them to agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerkleProof {
    pub stem: Vec<u8>,
    pub leaf_index: u8,
    pub indices: Vec<u8>,
    pub internal_proofs: Vec<OpeningProof>,
    pub internal_child_commitments: Vec<Commitment>,
    pub leaf_proof: OpeningProof,
}

impl VerkleProof {
    /// Number of internal levels.
    pub fn depth(&self) -> usize {
        self.internal_proofs.len()
    }

    fn check_shape(&self) -> Result<(), VerkleError> {
        let w = self.stem.len();
        if w == 0 || w > MAX_STEM_WIDTH {
            return Err(VerkleError::MalformedProof(format!("stem length {w}")));
        }
        if self.indices.len() != w || self.internal_proofs.len() != w || self.internal_child_commitments.len() != w {
            return Err(VerkleError::MalformedProof(format!(
                "stem {w}, indices {}, proofs {}, commitments {}",
                self.indices.len(),
                self.internal_proofs.len(),
                self.internal_child_commitments.len()
            )));
        }
        Ok(())
    }

    /// `0x56 || 0x01 || stem_len || stem || leaf_index ||
    /// (index || child commitment || opening)* || leaf opening`.
    pub fn encode_compact(&self) -> Vec<u8> {
        let w = self.stem.len();
        let mut out = Vec::with_capacity(4 + w + w * LEVEL_COMPACT + G1_BYTES);
        out.push(COMPACT_MAGIC);
        out.push(COMPACT_VERSION);
        out.push(w as u8);
        out.extend_from_slice(&self.stem);
        out.push(self.leaf_index);
        for ((idx, c), p) in self.indices.iter().zip(&self.internal_child_commitments).zip(&self.internal_proofs) {
            out.push(*idx);
            out.extend_from_slice(&c.to_bytes());
            out.extend_from_slice(&p.to_bytes());
        }
        out.extend_from_slice(&self.leaf_proof.to_bytes());
        out
    }

    pub fn decode_compact(bytes: &[u8]) -> Result<Self, DecodeError> {
        if bytes.len() < 3 {
            return Err(DecodeError::Malformed("truncated header".into()));
        }
        if bytes[0] != COMPACT_MAGIC {
            return Err(DecodeError::BadMagic);
        }
        if bytes[1] != COMPACT_VERSION {
            return Err(DecodeError::BadVersion(bytes[1]));
        }
        let w = bytes[2] as usize;
        if w == 0 || w > MAX_STEM_WIDTH {
            return Err(DecodeError::Malformed(format!("stem length {w}")));
        }
        let expected = 3 + w + 1 + w * LEVEL_COMPACT + G1_BYTES;
        if bytes.len() != expected {
            return Err(DecodeError::Length { expected, actual: bytes.len() });
        }
        let stem = bytes[3..3 + w].to_vec();
        let leaf_index = bytes[3 + w];
        let mut indices = Vec::with_capacity(w);
        let mut internal_child_commitments = Vec::with_capacity(w);
        let mut internal_proofs = Vec::with_capacity(w);
        let levels = &bytes[4 + w..4 + w + w * LEVEL_COMPACT];
        for level in levels.chunks_exact(LEVEL_COMPACT) {
            indices.push(level[0]);
            internal_child_commitments.push(Commitment::from_bytes(&level[1..1 + G1_BYTES])?);
            internal_proofs.push(OpeningProof::from_bytes(&level[1 + G1_BYTES..])?);
        }
        let leaf_proof = OpeningProof::from_bytes(&bytes[expected - G1_BYTES..])?;
        Ok(VerkleProof { stem, leaf_index, indices, internal_proofs, internal_child_commitments, leaf_proof })
    }

    /// ABI-style layout: every integer padded to a 32-byte word.
    ///
    /// `stem word || leaf_index word || (index word || commitment || opening)*
    /// || leaf opening`, i.e. `128 + 160 * stem_len` bytes. The stem is
    /// right-aligned in its word.
    pub fn encode_word_aligned(&self) -> Vec<u8> {
        let w = self.stem.len();
        let mut out = vec![0u8; 2 * WORD];
        out[WORD - w..WORD].copy_from_slice(&self.stem);
        out[2 * WORD - 1] = self.leaf_index;
        for ((idx, c), p) in self.indices.iter().zip(&self.internal_child_commitments).zip(&self.internal_proofs) {
            let mut word = [0u8; WORD];
            word[WORD - 1] = *idx;
            out.extend_from_slice(&word);
            out.extend_from_slice(&c.to_bytes());
            out.extend_from_slice(&p.to_bytes());
        }
        out.extend_from_slice(&self.leaf_proof.to_bytes());
        out
    }

    pub fn decode_word_aligned(bytes: &[u8]) -> Result<Self, DecodeError> {
        let fixed = 2 * WORD + G1_BYTES;
        if bytes.len() < fixed + LEVEL_WORD || !(bytes.len() - fixed).is_multiple_of(LEVEL_WORD) {
            return Err(DecodeError::Malformed(format!("word-aligned proof of {} bytes", bytes.len())));
        }
        let w = (bytes.len() - fixed) / LEVEL_WORD;
        if w > MAX_STEM_WIDTH {
            return Err(DecodeError::Malformed(format!("stem length {w}")));
        }
        let padded = |word: &[u8], used: usize| -> Result<(), DecodeError> {
            if word[..WORD - used].iter().any(|b| *b != 0) {
                return Err(DecodeError::Malformed("nonzero word padding".into()));
            }
            Ok(())
        };
        padded(&bytes[..WORD], w)?;
        padded(&bytes[WORD..2 * WORD], 1)?;
        let stem = bytes[WORD - w..WORD].to_vec();
        let leaf_index = bytes[2 * WORD - 1];
        let mut indices = Vec::with_capacity(w);
        let mut internal_child_commitments = Vec::with_capacity(w);
        let mut internal_proofs = Vec::with_capacity(w);
        for level in bytes[2 * WORD..bytes.len() - G1_BYTES].chunks_exact(LEVEL_WORD) {
            padded(&level[..WORD], 1)?;
            indices.push(level[WORD - 1]);
            internal_child_commitments.push(Commitment::from_bytes(&level[WORD..WORD + G1_BYTES])?);
            internal_proofs.push(OpeningProof::from_bytes(&level[WORD + G1_BYTES..])?);
        }
        let leaf_proof = OpeningProof::from_bytes(&bytes[bytes.len() - G1_BYTES..])?;
        Ok(VerkleProof { stem, leaf_index, indices, internal_proofs, internal_child_commitments, leaf_proof })
    }

    /// Accepts either encoding; compact proofs start with the magic byte,
    /// word-aligned ones with stem padding.
    pub fn decode_any(bytes: &[u8]) -> Result<Self, DecodeError> {
        match bytes.first() {
            Some(&COMPACT_MAGIC) => Self::decode_compact(bytes),
            _ => Self::decode_word_aligned(bytes),
        }
    }
}

/// Checks `proof` against `root` for `(key, value)` using only the public
/// reference string.
///
/// Walks root to leaf: at level `i` the parent commitment must open at
/// `indices[i]` to the hashed child commitment, and the last child must open
/// at `leaf_index` to `value`. A structurally inconsistent proof is an error;
/// a well-formed proof that does not check out is `Ok(false)`.
pub fn verify_proof_local(
    setup: &TrustedSetup,
    root: &Commitment,
    key: &VerkleKey,
    value: &Scalar,
    proof: &VerkleProof,
) -> Result<bool, VerkleError> {
    proof.check_shape()?;
    if proof.stem != key.stem || proof.leaf_index != key.leaf_index || proof.indices != proof.stem {
        return Ok(false);
    }
    let mut parent = root;
    for ((idx, child), opening) in proof.indices.iter().zip(&proof.internal_child_commitments).zip(&proof.internal_proofs) {
        let z = Scalar::from_u64(*idx as u64);
        if !verify_opening(setup, parent, &z, &commitment_to_scalar(child), opening) {
            return Ok(false);
        }
        parent = child;
    }
    let z = Scalar::from_u64(proof.leaf_index as u64);
    Ok(verify_opening(setup, parent, &z, value, &proof.leaf_proof))
}
