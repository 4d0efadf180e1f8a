use std::io::{Read, Write};

use ark_bn254::{Bn254, Fr, G1Projective, G2Projective};
use ark_ec::{pairing::Pairing, CurveGroup, PrimeGroup};
use ark_ff::Zero;

use super::{DecodeError, G1Point, G2Point, KzgError, Scalar, G1_BYTES, G2_BYTES};
use crate::exec::Exec;

/// Upper bound on `max_degree` accepted by [`TrustedSetup::generate`].
pub const MAX_SETUP_DEGREE: usize = 1 << 16;

const MAGIC: &[u8; 4] = b"KZGS";
const VERSION: u8 = 1;

/// Powers-of-tau reference string: `[tau^0]G1 .. [tau^d]G1`, `G2` and
/// `[tau]G2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrustedSetup {
    g1_powers: Vec<G1Point>,
    g2_generator: G2Point,
    g2_tau: G2Point,
}

impl TrustedSetup {
    /// Deterministic test-grade ceremony: `tau = keccak256(seed) mod r`.
    ///
    /// Anyone holding the seed can forge openings, so this is only for
    /// reproducible experiments. `tau` is dropped on return.
    pub fn generate(seed: &[u8], max_degree: usize) -> Result<Self, KzgError> {
        Self::generate_with(seed, max_degree, Exec::default())
    }

    pub fn generate_with(seed: &[u8], max_degree: usize, exec: Exec) -> Result<Self, KzgError> {
        if max_degree == 0 || max_degree > MAX_SETUP_DEGREE {
            return Err(KzgError::SetupSize { requested: max_degree, limit: MAX_SETUP_DEGREE });
        }
        let tau = Scalar::hash_to_scalar(seed).0;
        if tau.is_zero() {
            return Err(KzgError::DegenerateSeed);
        }
        let mut powers = Vec::with_capacity(max_degree + 1);
        let mut acc = Fr::from(1u64);
        for _ in 0..=max_degree {
            powers.push(acc);
            acc *= tau;
        }
        let g1 = G1Projective::generator();
        let projective = exec.map(&powers, |p| g1 * p);
        let g1_powers = G1Projective::normalize_batch(&projective).into_iter().map(G1Point).collect();
        let g2 = G2Projective::generator();
        Ok(TrustedSetup {
            g1_powers,
            g2_generator: G2Point::from(g2),
            g2_tau: G2Point::from(g2 * tau),
        })
    }

    pub fn max_degree(&self) -> usize {
        self.g1_powers.len() - 1
    }

    pub fn g1_powers(&self) -> &[G1Point] {
        &self.g1_powers
    }

    pub fn g1_generator(&self) -> G1Point {
        self.g1_powers[0]
    }

    pub fn g2_generator(&self) -> G2Point {
        self.g2_generator
    }

    pub fn g2_tau(&self) -> G2Point {
        self.g2_tau
    }

    /// `e([tau]G1, G2) == e(G1, [tau]G2)`.
    pub fn is_consistent(&self) -> bool {
        if self.g1_powers.len() < 2 {
            return false;
        }
        let lhs = Bn254::pairing(self.g1_powers[1].0, self.g2_generator.0);
        let rhs = Bn254::pairing(self.g1_powers[0].0, self.g2_tau.0);
        lhs == rhs
    }

    /// `"KZGS" || version || max_degree (u32 BE) || g1 powers || G2 || [tau]G2`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(9 + self.g1_powers.len() * G1_BYTES + 2 * G2_BYTES);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.max_degree() as u32).to_be_bytes());
        for p in &self.g1_powers {
            out.extend_from_slice(&p.to_bytes());
        }
        out.extend_from_slice(&self.g2_generator.to_bytes());
        out.extend_from_slice(&self.g2_tau.to_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, KzgError> {
        if bytes.len() < 9 {
            return Err(DecodeError::Length { expected: 9, actual: bytes.len() }.into());
        }
        if &bytes[..4] != MAGIC {
            return Err(DecodeError::BadMagic.into());
        }
        if bytes[4] != VERSION {
            return Err(DecodeError::BadVersion(bytes[4]).into());
        }
        let max_degree = u32::from_be_bytes(bytes[5..9].try_into().unwrap()) as usize;
        if max_degree == 0 || max_degree > MAX_SETUP_DEGREE {
            return Err(KzgError::SetupSize { requested: max_degree, limit: MAX_SETUP_DEGREE });
        }
        let expected = 9 + (max_degree + 1) * G1_BYTES + 2 * G2_BYTES;
        if bytes.len() != expected {
            return Err(DecodeError::Length { expected, actual: bytes.len() }.into());
        }
        let body = &bytes[9..];
        let g1_end = (max_degree + 1) * G1_BYTES;
        let g1_powers = body[..g1_end]
            .chunks_exact(G1_BYTES)
            .map(G1Point::from_bytes)
            .collect::<Result<Vec<_>, _>>()?;
        let g2_generator = G2Point::from_bytes(&body[g1_end..g1_end + G2_BYTES])?;
        let g2_tau = G2Point::from_bytes(&body[g1_end + G2_BYTES..])?;
        let setup = TrustedSetup { g1_powers, g2_generator, g2_tau };
        if !setup.is_consistent() {
            return Err(DecodeError::Malformed("setup fails pairing consistency check".into()).into());
        }
        Ok(setup)
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        w.write_all(&self.to_bytes())
    }

    pub fn read_from(mut r: impl Read) -> std::io::Result<Result<Self, KzgError>> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Ok(Self::from_bytes(&buf))
    }
}
