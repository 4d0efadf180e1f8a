use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{generate_dataset, Address, BenchReport, BenchRow, HarnessError, Structure};
use crate::exec::Exec;
use crate::gas::{ceil_log, estimate_merkle_calldata, estimate_verkle_calldata, merkle_total_gas, verkle_total_gas, GasParams};
use crate::merkle::{verify_proof, HashAlgorithm, MerkleTree};
use crate::pc::{Scalar, VectorCommitter};
use crate::verkle::{verify_proof_local, TreeConfig, VerkleError, VerkleKey, VerkleProof, VerkleTree};

pub const DEFAULT_CAPACITIES: [u64; 4] = [1 << 3, 1 << 7, 1 << 10, 1 << 15];
/// Added by `include_large`. Builds ~10^6 leaf entries; expect minutes.
pub const LARGE_CAPACITY: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub capacities: Vec<u64>,
    pub include_large: bool,
    /// Per-capacity stem width override, parallel to `capacities`. When
    /// absent the narrowest tree covering the capacity is used.
    pub stem_widths: Option<Vec<usize>>,
    pub seed: u64,
    pub samples_per_capacity: usize,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub merkle_hash: HashAlgorithm,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            capacities: DEFAULT_CAPACITIES.to_vec(),
            include_large: false,
            stem_widths: None,
            seed: 0x5eed,
            samples_per_capacity: 20,
            output_path: None,
            output_format: OutputFormat::Csv,
            merkle_hash: HashAlgorithm::Keccak256,
        }
    }
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let c: BenchConfig = toml::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.samples_per_capacity == 0 {
            return Err(HarnessError::Config("samples_per_capacity must be >= 1".into()));
        }
        if self.capacities.contains(&0) {
            return Err(HarnessError::Config("capacities must be >= 1".into()));
        }
        if self.capacities.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HarnessError::Config("capacities must be strictly ascending".into()));
        }
        if let Some(ws) = &self.stem_widths {
            if ws.len() != self.capacities.len() {
                return Err(HarnessError::Config("stem_widths must match capacities".into()));
            }
            for w in ws {
                TreeConfig::new(*w)?;
            }
        }
        Ok(())
    }

    /// Capacities to run, with the large one appended when requested.
    pub fn effective_capacities(&self) -> Vec<(u64, TreeConfig)> {
        let mut out: Vec<(u64, TreeConfig)> = self
            .capacities
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let cfg = match &self.stem_widths {
                    Some(ws) => TreeConfig::new(ws[i]).expect("validated"),
                    None => TreeConfig::for_capacity(*c),
                };
                (*c, cfg)
            })
            .collect();
        if self.include_large && !self.capacities.contains(&LARGE_CAPACITY) {
            out.push((LARGE_CAPACITY, TreeConfig::for_capacity(LARGE_CAPACITY)));
            out.sort_by_key(|(c, _)| *c);
        }
        out
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

fn sample_indices(population: usize, count: usize, seed: u64, capacity: u64, salt: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ capacity.rotate_left(17) ^ salt);
    (0..count).map(|_| rng.gen_range(0..population)).collect()
}

/// Builds both structures for every configured capacity, samples members,
/// proves and verifies each sample, and attaches modeled gas.
///
/// Capacity cells run in parallel under [`Exec::Parallel`]; so does proof
/// sampling within a cell once the tree is committed. Any failed
/// verification aborts the run.
pub fn run_benchmark(
    config: &BenchConfig,
    params: &GasParams,
    committer: &Arc<VectorCommitter>,
    exec: Exec,
) -> Result<BenchReport, HarnessError> {
    config.validate()?;
    let cells = config.effective_capacities();
    let results = exec.map(&cells, |(capacity, tree_cfg)| {
        let data = generate_dataset(*capacity as usize, config.seed);
        let merkle = merkle_cell(config, params, *capacity, &data, exec)?;
        let verkle = verkle_cell(config, params, *capacity, *tree_cfg, &data, committer, exec)?;
        Ok::<_, HarnessError>([merkle, verkle])
    });
    let mut rows = Vec::with_capacity(cells.len() * 2);
    for r in results {
        rows.extend(r?);
    }
    Ok(BenchReport { seed: config.seed, rows })
}

fn merkle_cell(
    config: &BenchConfig,
    params: &GasParams,
    capacity: u64,
    data: &[Address],
    exec: Exec,
) -> Result<BenchRow, HarnessError> {
    let algo = config.merkle_hash;
    let start = Instant::now();
    let tree = MerkleTree::build_with(algo, data, exec)?;
    let build_ms = elapsed_ms(start);
    let root = tree.root();

    let picks = sample_indices(data.len(), config.samples_per_capacity, config.seed, capacity, 0x4d);
    let outcomes = exec.map(&picks, |&i| {
        let t = Instant::now();
        let proof = tree.proof(i)?;
        let encoded = proof.encode();
        let prove_ms = elapsed_ms(t);
        let t = Instant::now();
        let ok = verify_proof(algo, &root, &data[i], &proof);
        Ok::<_, HarnessError>((prove_ms, elapsed_ms(t), ok, encoded.len(), proof.depth()))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    if let Some(sample) = outcomes.iter().position(|o| !o.2) {
        return Err(HarnessError::Verification { structure: Structure::Merkle, capacity, sample });
    }
    let levels = ceil_log(capacity, 2);
    let bytes = outcomes.iter().map(|o| o.3).max().unwrap_or(0);
    Ok(BenchRow {
        structure: Structure::Merkle,
        capacity,
        levels,
        build_ms,
        prove_ms_mean: mean(outcomes.iter().map(|o| o.0)),
        verify_ms_mean: mean(outcomes.iter().map(|o| o.1)),
        proof_bytes_compact: bytes,
        proof_bytes_word: bytes,
        calldata_gas: estimate_merkle_calldata(levels, params),
        total_gas: merkle_total_gas(capacity, params),
        proof_components: outcomes.iter().map(|o| o.4).max().unwrap_or(0),
        samples: outcomes.len(),
        shadowed_keys: 0,
    })
}

fn verkle_cell(
    config: &BenchConfig,
    params: &GasParams,
    capacity: u64,
    tree_cfg: TreeConfig,
    data: &[Address],
    committer: &Arc<VectorCommitter>,
    exec: Exec,
) -> Result<BenchRow, HarnessError> {
    let start = Instant::now();
    let mut tree = VerkleTree::with_committer(tree_cfg, committer.clone())?.with_exec(exec);
    let mut owner: HashMap<VerkleKey, usize> = HashMap::with_capacity(data.len());
    let mut members = Vec::with_capacity(data.len());
    for (i, addr) in data.iter().enumerate() {
        let key = VerkleKey::derive(addr, &tree_cfg);
        tree.insert(&key, Scalar::hash_to_scalar(addr))?;
        owner.insert(key.clone(), i);
        members.push(key);
    }
    let root = tree.commit();
    let build_ms = elapsed_ms(start);

    // Later addresses overwrite earlier ones that hash to the same key.
    let live: Vec<usize> = (0..data.len()).filter(|i| owner[&members[*i]] == *i).collect();
    let shadowed = data.len() - live.len();

    let picks = sample_indices(live.len(), config.samples_per_capacity, config.seed, capacity, 0x56);
    let setup = tree.setup().clone();
    let outcomes = exec.map(&picks, |&p| {
        let i = live[p];
        let key = &members[i];
        let t = Instant::now();
        let proof = tree.generate_proof(key)?;
        let word = proof.encode_word_aligned();
        let compact = proof.encode_compact();
        let prove_ms = elapsed_ms(t);
        let t = Instant::now();
        let decoded = VerkleProof::decode_word_aligned(&word).map_err(VerkleError::from)?;
        let ok = verify_proof_local(&setup, &root, key, &Scalar::hash_to_scalar(&data[i]), &decoded)?;
        let components = proof.internal_proofs.len() + 1;
        Ok::<_, HarnessError>((prove_ms, elapsed_ms(t), ok, compact.len(), word.len(), components))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    if let Some(sample) = outcomes.iter().position(|o| !o.2) {
        return Err(HarnessError::Verification { structure: Structure::Verkle, capacity, sample });
    }
    let first = outcomes[0];
    if outcomes.iter().any(|o| (o.3, o.4, o.5) != (first.3, first.4, first.5)) {
        return Err(HarnessError::UnstableProofSize { structure: Structure::Verkle, capacity });
    }
    let levels = tree_cfg.levels() as u32;
    Ok(BenchRow {
        structure: Structure::Verkle,
        capacity,
        levels,
        build_ms,
        prove_ms_mean: mean(outcomes.iter().map(|o| o.0)),
        verify_ms_mean: mean(outcomes.iter().map(|o| o.1)),
        proof_bytes_compact: first.3,
        proof_bytes_word: first.4,
        calldata_gas: estimate_verkle_calldata(levels, params),
        total_gas: verkle_total_gas(256u64.pow(levels), 256, params),
        proof_components: first.5,
        samples: outcomes.len(),
        shadowed_keys: shadowed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(BenchConfig::default().validate().is_ok());
        let mut c = BenchConfig { samples_per_capacity: 0, ..Default::default() };
        assert!(c.validate().is_err());
        c = BenchConfig { capacities: vec![8, 8], ..Default::default() };
        assert!(c.validate().is_err());
        c = BenchConfig { stem_widths: Some(vec![1]), ..Default::default() };
        assert!(c.validate().is_err());
        c = BenchConfig { capacities: vec![8], stem_widths: Some(vec![0]), ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn toml_config() {
        let c = BenchConfig::from_toml(
            "capacities = [8, 1024]\nseed = 7\nsamples_per_capacity = 3\noutput_format = \"json\"\nstem_widths = [1, 2]\n",
        )
        .unwrap();
        assert_eq!(c.capacities, vec![8, 1024]);
        assert_eq!(c.output_format, OutputFormat::Json);
        let eff = c.effective_capacities();
        assert_eq!(eff[1].1.stem_width, 2);
        assert!(BenchConfig::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn large_capacity_opt_in() {
        let c = BenchConfig { include_large: true, ..Default::default() };
        let eff = c.effective_capacities();
        assert_eq!(eff.last().unwrap().0, LARGE_CAPACITY);
        assert_eq!(eff.last().unwrap().1.stem_width, 2);
        assert_eq!(BenchConfig::default().effective_capacities().len(), 4);
    }
}
