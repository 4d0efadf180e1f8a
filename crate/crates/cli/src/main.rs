//! `verkle-gas`: build, prove, verify and benchmark Verkle and Merkle trees.
//!
//! Exit codes: 0 success / verified, 1 proof rejected, 2 malformed input or
//! usage error, 3 I/O failure.

mod error;
mod tree_file;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use verkle_gas::gas::{crossover_series, write_crossover_csv, write_crossover_json, GasParams};
use verkle_gas::harness::{generate_dataset, run_benchmark, write_report, BenchConfig};
use verkle_gas::merkle::{hash_leaf, verify_proof, HashAlgorithm, MerkleProof, MerkleTree};
use verkle_gas::pc::{Commitment, Scalar, TrustedSetup, VectorCommitter};
use verkle_gas::verkle::{verify_proof_local, TreeConfig, VerkleKey, VerkleProof, BRANCHING_FACTOR};
use verkle_gas::{hash::keccak256, Exec};

use error::CliError;
use tree_file::{build_verkle, item_value, parse_hex, parse_item_list, Built, Kind, TreeFile};

const DEFAULT_SEED: &str = "verkle-gas";
const TREE_SETUP_DEGREE: usize = BRANCHING_FACTOR - 1;

#[derive(Parser)]
#[command(name = "verkle-gas", version, about)]
struct Cli {
    /// Seed string. Used verbatim for trusted-setup generation; as a 64-bit
    /// integer (or its Keccak prefix if not numeric) for datasets and benches.
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Gas parameter file (flat `key = value` lines).
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Trusted setup file; generated from the seed when omitted.
    #[arg(long, global = true)]
    setup: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    Compact,
    Word,
}

#[derive(Clone, Copy, ValueEnum)]
enum HashArg {
    Keccak256,
    Sha256,
}

impl From<HashArg> for HashAlgorithm {
    fn from(h: HashArg) -> Self {
        match h {
            HashArg::Keccak256 => HashAlgorithm::Keccak256,
            HashArg::Sha256 => HashAlgorithm::Sha256,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a trusted setup file.
    Setup {
        #[arg(long, default_value_t = TREE_SETUP_DEGREE)]
        max_degree: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a tree from a hex item list or `generated:<n>`.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        input: String,
        /// Verkle stem width; defaults to the narrowest tree covering the input.
        #[arg(long)]
        stem_width: Option<usize>,
        #[arg(long, value_enum, default_value = "keccak256")]
        hash: HashArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Produce a membership proof for an item of a built tree.
    Prove {
        #[arg(long)]
        tree: PathBuf,
        /// Raw item bytes, hex.
        #[arg(long)]
        key: String,
        #[arg(long, value_enum, default_value = "compact")]
        encoding: Encoding,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a proof. The structure is inferred from the root length.
    Verify {
        #[arg(long)]
        root: String,
        #[arg(long)]
        key: String,
        /// Verkle: the 32-byte stored scalar. Merkle: the 32-byte leaf digest.
        #[arg(long)]
        value: String,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long, value_enum, default_value = "keccak256")]
        hash: HashArg,
    },
    /// Run the benchmark harness from a TOML config.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
    /// Export the modeled gas comparison over power-of-two capacities.
    Crossover {
        #[arg(long, default_value_t = 8)]
        min: u64,
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

struct Ctx {
    seed: Option<String>,
    params: Option<PathBuf>,
    setup: Option<PathBuf>,
}

impl Ctx {
    fn setup_seed(&self) -> &[u8] {
        self.seed.as_deref().unwrap_or(DEFAULT_SEED).as_bytes()
    }

    fn numeric_seed(&self) -> Option<u64> {
        self.seed.as_deref().map(|s| {
            let parsed = match s.strip_prefix("0x") {
                Some(h) => u64::from_str_radix(h, 16).ok(),
                None => s.parse().ok(),
            };
            parsed.unwrap_or_else(|| u64::from_be_bytes(keccak256(s.as_bytes())[..8].try_into().unwrap()))
        })
    }

    fn gas_params(&self) -> Result<GasParams, CliError> {
        match &self.params {
            None => Ok(GasParams::default()),
            Some(p) => Ok(GasParams::from_kv_str(&read_text(p)?)?),
        }
    }

    fn trusted_setup(&self) -> Result<Arc<TrustedSetup>, CliError> {
        let setup = match &self.setup {
            Some(p) => TrustedSetup::from_bytes(&fs::read(p).map_err(|e| CliError::io(p, e))?)?,
            None => TrustedSetup::generate(self.setup_seed(), TREE_SETUP_DEGREE)?,
        };
        Ok(Arc::new(setup))
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

/// Write to `path`, or stdout when absent.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, bytes),
        None => Ok(io::stdout().write_all(bytes)?),
    }
}

fn load_items(ctx: &Ctx, input: &str) -> Result<Vec<Vec<u8>>, CliError> {
    if let Some(n) = input.strip_prefix("generated:") {
        let n: usize = n.parse().map_err(|_| CliError::malformed(format!("bad item count in {input:?}")))?;
        if n == 0 {
            return Err(CliError::malformed("generated dataset must be non-empty"));
        }
        let seed = ctx.numeric_seed().unwrap_or(BenchConfig::default().seed);
        return Ok(generate_dataset(n, seed).into_iter().map(|a| a.to_vec()).collect());
    }
    let items = parse_item_list(&read_text(Path::new(input))?)?;
    if items.is_empty() {
        return Err(CliError::malformed(format!("{input}: no items")));
    }
    Ok(items)
}

fn cmd_build(
    ctx: &Ctx,
    kind: Kind,
    input: &str,
    stem_width: Option<usize>,
    hash: HashAlgorithm,
    out: &Path,
) -> Result<(), CliError> {
    let items = load_items(ctx, input)?;
    let file = match kind {
        Kind::Verkle => {
            let config = match stem_width {
                Some(w) => TreeConfig::new(w)?,
                None => TreeConfig::for_capacity(items.len() as u64),
            };
            let tree = build_verkle(&items, config, ctx.trusted_setup()?)?;
            TreeFile {
                kind,
                stem_width: Some(config.stem_width),
                hash: None,
                root: Built::Verkle(tree).root_hex(),
                items: items.iter().map(hex::encode).collect(),
            }
        }
        Kind::Merkle => {
            let tree = MerkleTree::build(hash, &items)?;
            TreeFile {
                kind,
                stem_width: None,
                hash: Some(hash),
                root: Built::Merkle(tree).root_hex(),
                items: items.iter().map(hex::encode).collect(),
            }
        }
    };
    let mut json = serde_json::to_vec_pretty(&file)?;
    json.push(b'\n');
    write_file(out, &json)?;
    println!("root {}", file.root);
    println!("items {}", file.items.len());
    Ok(())
}

fn cmd_prove(ctx: &Ctx, tree: &Path, key: &str, encoding: Encoding, out: &Path) -> Result<(), CliError> {
    let file: TreeFile = serde_json::from_str(&read_text(tree)?)?;
    let item = parse_hex(key)?;
    let (bytes, value) = match file.rebuild(|| ctx.trusted_setup())? {
        Built::Verkle(t) => {
            let vk = VerkleKey::derive(&item, t.config());
            let proof = t.generate_proof(&vk)?;
            let value = t.get(&vk).expect("proof implies membership");
            if value != item_value(&item) {
                eprintln!("note: key collides with a later item; proving the stored value");
            }
            let bytes = match encoding {
                Encoding::Compact => proof.encode_compact(),
                Encoding::Word => proof.encode_word_aligned(),
            };
            (bytes, hex::encode(value.to_bytes()))
        }
        Built::Merkle(t) => {
            let index = file
                .decode_items()?
                .iter()
                .position(|i| *i == item)
                .ok_or_else(|| CliError::malformed("key is not a member of the tree"))?;
            (t.proof(index)?.encode(), hex::encode(hash_leaf(t.algorithm(), &item).as_bytes()))
        }
    };
    write_file(out, &bytes)?;
    println!("root {}", file.root.trim_start_matches("0x"));
    println!("value {value}");
    println!("proof_bytes {}", bytes.len());
    Ok(())
}

fn cmd_verify(ctx: &Ctx, root: &str, key: &str, value: &str, proof: &Path, hash: HashAlgorithm) -> Result<bool, CliError> {
    let root = parse_hex(root)?;
    let item = parse_hex(key)?;
    let value = parse_hex(value)?;
    let proof_bytes = fs::read(proof).map_err(|e| CliError::io(proof, e))?;
    match root.len() {
        64 => {
            let root = Commitment::from_bytes(&root)?;
            let value = Scalar::from_bytes(&value)?;
            let proof = VerkleProof::decode_any(&proof_bytes)?;
            let key = VerkleKey::derive(&item, &TreeConfig::new(proof.depth())?);
            Ok(verify_proof_local(&*ctx.trusted_setup()?, &root, &key, &value, &proof)?)
        }
        32 => {
            let root = verkle_gas::merkle::Digest32::from_slice(&root)?;
            if value.len() != 32 {
                return Err(CliError::malformed("merkle value must be a 32-byte leaf digest"));
            }
            let proof = MerkleProof::decode(&proof_bytes)?;
            Ok(hash_leaf(hash, &item).as_bytes()[..] == value[..] && verify_proof(hash, &root, &item, &proof))
        }
        n => Err(CliError::malformed(format!(
            "root must be 64 bytes (verkle) or 32 bytes (merkle), got {n}"
        ))),
    }
}

fn cmd_bench(ctx: &Ctx, config: &Path) -> Result<(), CliError> {
    let mut cfg = BenchConfig::from_toml(&read_text(config)?)?;
    if let Some(seed) = ctx.numeric_seed() {
        cfg.seed = seed;
    }
    let committer = Arc::new(VectorCommitter::new(ctx.trusted_setup()?, BRANCHING_FACTOR)?);
    let report = run_benchmark(&cfg, &ctx.gas_params()?, &committer, Exec::Parallel)?;
    let mut buf = Vec::new();
    write_report(&report, cfg.output_format, &mut buf)?;
    emit(cfg.output_path.as_deref(), &buf)
}

fn cmd_crossover(ctx: &Ctx, min: u64, max: u64, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let rows = crossover_series(min, max, BRANCHING_FACTOR as u64, &ctx.gas_params()?)?;
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_crossover_csv(&rows, &mut buf)?,
        Format::Json => write_crossover_json(&rows, &mut buf)?,
    }
    emit(out, &buf)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let ctx = Ctx { seed: cli.seed, params: cli.params, setup: cli.setup };
    match cli.command {
        Command::Setup { max_degree, out } => {
            let setup = TrustedSetup::generate(ctx.setup_seed(), max_degree)?;
            write_file(&out, &setup.to_bytes())?;
        }
        Command::Build { kind, input, stem_width, hash, out } => {
            cmd_build(&ctx, kind, &input, stem_width, hash.into(), &out)?
        }
        Command::Prove { tree, key, encoding, out } => cmd_prove(&ctx, &tree, &key, encoding, &out)?,
        Command::Verify { root, key, value, proof, hash } => {
            return Ok(if cmd_verify(&ctx, &root, &key, &value, &proof, hash.into())? {
                println!("verified");
                ExitCode::SUCCESS
            } else {
                println!("not verified");
                ExitCode::from(1)
            });
        }
        Command::Bench { config } => cmd_bench(&ctx, &config)?,
        Command::Crossover { min, max, out, format } => cmd_crossover(&ctx, min, max, out.as_deref(), format)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
