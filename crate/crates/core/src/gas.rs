//! Gas cost model for on-chain membership verification.
//!
//! Totals use the fitted linear-in-levels models
//! `ceil(log_k C) * 147_560 + 200_900` (Verkle) and
//! `ceil(log_2 C) * 1_342 + 24_300` (Merkle). Calldata follows the EVM
//! intrinsic rule: 16 gas per nonzero byte, 4 per zero byte.
//!
//! The slopes and intercepts were fitted at k = 256 only. Results for other
//! branching factors are extrapolations.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GasError {
    #[error("invalid capacity range [{min}, {max}]: need 2 <= min <= max")]
    Range { min: u64, max: u64 },
    #[error("line {line}: {msg}")]
    Params { line: usize, msg: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GasParams {
    pub nonzero_byte_cost: u64,
    pub zero_byte_cost: u64,
    pub base_tx_cost: u64,
    pub verkle_slope: u64,
    pub verkle_intercept: u64,
    pub merkle_slope: u64,
    pub merkle_intercept: u64,
    /// Calldata not explained by the proof bytes: 25_210 - 2 * 2_560.
    pub verkle_calldata_overhead: u64,
    /// 2_816 - 3 * 512.
    pub merkle_calldata_overhead: u64,
}

impl Default for GasParams {
    fn default() -> Self {
        GasParams {
            nonzero_byte_cost: 16,
            zero_byte_cost: 4,
            base_tx_cost: 21_000,
            verkle_slope: 147_560,
            verkle_intercept: 200_900,
            merkle_slope: 1_342,
            merkle_intercept: 24_300,
            verkle_calldata_overhead: 20_090,
            merkle_calldata_overhead: 1_280,
        }
    }
}

impl GasParams {
    /// Parses flat `name = value` lines. Blank lines and `#` comments are
    /// skipped; fields not mentioned keep their defaults.
    pub fn from_kv_str(text: &str) -> Result<Self, GasError> {
        let mut p = GasParams::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GasError::Params { line: n + 1, msg };
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected name = value".into()))?;
            let value: u64 = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|e| err(format!("{}: {e}", value.trim())))?;
            let slot = match key.trim() {
                "nonzero_byte_cost" => &mut p.nonzero_byte_cost,
                "zero_byte_cost" => &mut p.zero_byte_cost,
                "base_tx_cost" => &mut p.base_tx_cost,
                "verkle_slope" => &mut p.verkle_slope,
                "verkle_intercept" => &mut p.verkle_intercept,
                "merkle_slope" => &mut p.merkle_slope,
                "merkle_intercept" => &mut p.merkle_intercept,
                "verkle_calldata_overhead" => &mut p.verkle_calldata_overhead,
                "merkle_calldata_overhead" => &mut p.merkle_calldata_overhead,
                other => return Err(err(format!("unknown parameter `{other}`"))),
            };
            *slot = value;
        }
        Ok(p)
    }

    pub fn to_kv_string(&self) -> String {
        format!(
            "nonzero_byte_cost = {}\nzero_byte_cost = {}\nbase_tx_cost = {}\nverkle_slope = {}\n\
             verkle_intercept = {}\nmerkle_slope = {}\nmerkle_intercept = {}\n\
             verkle_calldata_overhead = {}\nmerkle_calldata_overhead = {}\n",
            self.nonzero_byte_cost,
            self.zero_byte_cost,
            self.base_tx_cost,
            self.verkle_slope,
            self.verkle_intercept,
            self.merkle_slope,
            self.merkle_intercept,
            self.verkle_calldata_overhead,
            self.merkle_calldata_overhead,
        )
    }
}

/// Smallest `L` with `base^L >= capacity`, in exact integer arithmetic.
pub fn ceil_log(capacity: u64, base: u64) -> u32 {
    assert!(base >= 2, "log base must be >= 2");
    let (cap, base) = (capacity as u128, base as u128);
    let mut levels = 0;
    let mut reach: u128 = 1;
    while reach < cap {
        reach *= base;
        levels += 1;
    }
    levels
}

pub fn verkle_total_gas(capacity: u64, k: u64, params: &GasParams) -> u64 {
    ceil_log(capacity, k) as u64 * params.verkle_slope + params.verkle_intercept
}

pub fn merkle_total_gas(capacity: u64, params: &GasParams) -> u64 {
    ceil_log(capacity, 2) as u64 * params.merkle_slope + params.merkle_intercept
}

/// Commitment layers in a Verkle tree holding `capacity` keys. A tree always
/// has a root and a leaf layer, so this never drops below 2.
pub fn verkle_tree_levels(capacity: u64, k: u64) -> u32 {
    ceil_log(capacity, k).max(2)
}

pub fn calldata_gas(payload: &[u8], include_base: bool, params: &GasParams) -> u64 {
    let zeros = payload.iter().filter(|b| **b == 0).count() as u64;
    let nonzeros = payload.len() as u64 - zeros;
    let base = if include_base { params.base_tx_cost } else { 0 };
    nonzeros * params.nonzero_byte_cost + zeros * params.zero_byte_cost + base
}

/// Bytes a Verkle proof adds per internal level in the word-aligned
/// encoding (index word, child commitment, opening proof).
pub const VERKLE_BYTES_PER_LEVEL: u64 = 32 + 64 + 64;
/// Bytes a Merkle proof adds per level (one sibling digest).
pub const MERKLE_BYTES_PER_LEVEL: u64 = 32;

pub fn estimate_verkle_calldata(levels: u32, params: &GasParams) -> u64 {
    params.verkle_calldata_overhead + levels as u64 * VERKLE_BYTES_PER_LEVEL * params.nonzero_byte_cost
}

pub fn estimate_merkle_calldata(levels: u32, params: &GasParams) -> u64 {
    params.merkle_calldata_overhead + levels as u64 * MERKLE_BYTES_PER_LEVEL * params.nonzero_byte_cost
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelSource {
    ClosedForm,
    ByteLevel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GasEstimate {
    pub levels: u32,
    pub calldata_gas: u64,
    pub total_gas: u64,
    pub model_source: ModelSource,
}

impl GasEstimate {
    pub fn verkle(levels: u32, params: &GasParams) -> Self {
        GasEstimate {
            levels,
            calldata_gas: estimate_verkle_calldata(levels, params),
            total_gas: levels as u64 * params.verkle_slope + params.verkle_intercept,
            model_source: ModelSource::ClosedForm,
        }
    }

    pub fn merkle(levels: u32, params: &GasParams) -> Self {
        GasEstimate {
            levels,
            calldata_gas: estimate_merkle_calldata(levels, params),
            total_gas: levels as u64 * params.merkle_slope + params.merkle_intercept,
            model_source: ModelSource::ClosedForm,
        }
    }

    /// Calldata priced from an actual word-aligned proof encoding. Framing
    /// outside the proof is charged as in the closed form, so an all-nonzero
    /// payload reproduces [`estimate_verkle_calldata`] exactly and each zero
    /// byte saves `nonzero_byte_cost - zero_byte_cost`.
    pub fn verkle_from_payload(levels: u32, payload: &[u8], params: &GasParams) -> Self {
        let all_nonzero = payload.len() as u64 * params.nonzero_byte_cost;
        let closed = estimate_verkle_calldata(levels, params);
        GasEstimate {
            levels,
            calldata_gas: closed - all_nonzero + calldata_gas(payload, false, params),
            total_gas: levels as u64 * params.verkle_slope + params.verkle_intercept,
            model_source: ModelSource::ByteLevel,
        }
    }

    /// Calldata priced from the concatenated sibling digests.
    pub fn merkle_from_payload(levels: u32, payload: &[u8], params: &GasParams) -> Self {
        GasEstimate {
            levels,
            calldata_gas: params.merkle_calldata_overhead + calldata_gas(payload, false, params),
            total_gas: levels as u64 * params.merkle_slope + params.merkle_intercept,
            model_source: ModelSource::ByteLevel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofKind {
    MerkleBinary,
    MerkleKary,
    Verkle,
}

/// Proof size in bytes for a structure of the given capacity.
///
/// Merkle sizes count 32-byte digests (`k - 1` siblings per level for k-ary
/// trees); the Verkle size is the word-aligned encoding,
/// `160 * (L - 1) + 128` with `L = ceil(log_k C)`.
pub fn proof_size_bytes(kind: ProofKind, capacity: u64, k: u64) -> u64 {
    match kind {
        ProofKind::MerkleBinary => 32 * ceil_log(capacity, 2) as u64,
        ProofKind::MerkleKary => 32 * (k - 1) * ceil_log(capacity, k) as u64,
        ProofKind::Verkle => {
            let levels = ceil_log(capacity, k) as u64;
            VERKLE_BYTES_PER_LEVEL * levels.saturating_sub(1) + 128
        }
    }
}

/// True when each doubling of capacity costs a Verkle tree more (amortized
/// over the `log2 k` doublings per level) than one Merkle level, in which
/// case the Verkle/Merkle gap never shrinks. `k` must be a power of two.
pub fn verkle_gap_nondecreasing(k: u64, params: &GasParams) -> bool {
    assert!(k.is_power_of_two() && k >= 2);
    let bits = k.trailing_zeros() as u64;
    params.verkle_slope > params.merkle_slope * bits
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub capacity: u64,
    pub merkle_total_gas: u64,
    pub verkle_total_gas: u64,
    pub ratio: f64,
}

/// One row per power-of-two capacity in `[cap_min, cap_max]` (or the single
/// capacity when the bounds coincide). The Verkle column uses
/// [`verkle_tree_levels`], matching what a built tree would pay.
pub fn crossover_series(cap_min: u64, cap_max: u64, k: u64, params: &GasParams) -> Result<Vec<ComparisonRow>, GasError> {
    if cap_min < 2 || cap_min > cap_max {
        return Err(GasError::Range { min: cap_min, max: cap_max });
    }
    let capacities: Vec<u64> = if cap_min == cap_max {
        vec![cap_min]
    } else {
        (1..64).map(|b| 1u64 << b).filter(|c| (cap_min..=cap_max).contains(c)).collect()
    };
    Ok(capacities
        .into_iter()
        .map(|capacity| {
            let merkle = merkle_total_gas(capacity, params);
            let levels = verkle_tree_levels(capacity, k);
            let verkle = levels as u64 * params.verkle_slope + params.verkle_intercept;
            ComparisonRow {
                capacity,
                merkle_total_gas: merkle,
                verkle_total_gas: verkle,
                ratio: verkle as f64 / merkle as f64,
            }
        })
        .collect())
}

pub fn write_crossover_csv<W: Write>(rows: &[ComparisonRow], w: W) -> Result<(), GasError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["capacity", "merkle_total_gas", "verkle_total_gas", "ratio"])?;
    for r in rows {
        out.write_record([
            r.capacity.to_string(),
            r.merkle_total_gas.to_string(),
            r.verkle_total_gas.to_string(),
            r.ratio.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_crossover_json<W: Write>(rows: &[ComparisonRow], mut w: W) -> Result<(), GasError> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    w.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_log_boundaries() {
        assert_eq!(ceil_log(1, 2), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(3, 2), 2);
        assert_eq!(ceil_log(1 << 20, 2), 20);
        assert_eq!(ceil_log((1 << 20) + 1, 2), 21);
        assert_eq!(ceil_log(256, 256), 1);
        assert_eq!(ceil_log(257, 256), 2);
        assert_eq!(ceil_log(1 << 48, 256), 6);
        assert_eq!(ceil_log(u64::MAX, 256), 8);
    }

    #[test]
    fn zero_level_totals_are_intercepts() {
        let p = GasParams::default();
        assert_eq!(verkle_total_gas(1, 256, &p), 200_900);
        assert_eq!(merkle_total_gas(1, &p), 24_300);
    }

    #[test]
    fn calldata_rule() {
        let p = GasParams::default();
        assert_eq!(calldata_gas(&[], true, &p), 21_000);
        assert_eq!(calldata_gas(&[0u8; 32], false, &p), 128);
        assert_eq!(calldata_gas(&[1u8; 160], false, &p), 2_560);
        assert_eq!(calldata_gas(&[0, 1, 0, 2], true, &p), 21_000 + 40);
    }

    #[test]
    fn kary_degenerates_to_binary() {
        for c in [2u64, 3, 8, 1000, 1 << 30] {
            assert_eq!(
                proof_size_bytes(ProofKind::MerkleKary, c, 2),
                proof_size_bytes(ProofKind::MerkleBinary, c, 2)
            );
        }
        assert_eq!(proof_size_bytes(ProofKind::MerkleBinary, 1 << 30, 2), 960);
        assert_eq!(proof_size_bytes(ProofKind::Verkle, 1 << 16, 256), 288);
    }

    #[test]
    fn byte_level_matches_closed_form_for_nonzero_payloads() {
        let p = GasParams::default();
        for levels in 2..=6u32 {
            let payload = vec![0xabu8; (160 * (levels as usize - 1)) + 128];
            let est = GasEstimate::verkle_from_payload(levels, &payload, &p);
            assert_eq!(est.calldata_gas, estimate_verkle_calldata(levels, &p));
            assert_eq!(est.model_source, ModelSource::ByteLevel);
        }
        let mut payload = vec![0xabu8; 288];
        payload[0] = 0;
        payload[1] = 0;
        assert_eq!(GasEstimate::verkle_from_payload(2, &payload, &p).calldata_gas, 25_210 - 24);
    }

    #[test]
    fn params_file() {
        let p = GasParams::from_kv_str("# comment\nverkle_slope = 1\n\nmerkle_intercept=2_000 # trailing\n").unwrap();
        assert_eq!(p.verkle_slope, 1);
        assert_eq!(p.merkle_intercept, 2000);
        assert_eq!(p.base_tx_cost, 21_000);
        assert!(GasParams::from_kv_str("bogus = 3").is_err());
        assert!(GasParams::from_kv_str("verkle_slope 3").is_err());
        assert!(GasParams::from_kv_str("verkle_slope = -3").is_err());
        let d = GasParams::default();
        assert_eq!(GasParams::from_kv_str(&d.to_kv_string()).unwrap(), d);
    }

    #[test]
    fn crossover_shapes() {
        let p = GasParams::default();
        assert_eq!(crossover_series(8, 1 << 20, 256, &p).unwrap().len(), 18);
        assert_eq!(crossover_series(100, 100, 256, &p).unwrap().len(), 1);
        assert!(crossover_series(1, 8, 256, &p).is_err());
        assert!(crossover_series(16, 8, 256, &p).is_err());
    }

    #[test]
    fn empty_series_csv_is_header_only() {
        let mut buf = Vec::new();
        write_crossover_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "capacity,merkle_total_gas,verkle_total_gas,ratio\n");
    }
}
