use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use ark_bn254::Fr;
use ark_ff::{BigInteger, Field, PrimeField, Zero};

use super::DecodeError;
use crate::hash::keccak256;

pub const SCALAR_BYTES: usize = 32;

/// Element of the BN254 scalar field, always kept reduced.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(pub(crate) Fr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Fr::zero())
    }

    pub fn one() -> Self {
        Scalar(Fr::from(1u64))
    }

    pub fn from_u64(v: u64) -> Self {
        Scalar(Fr::from(v))
    }

    /// Interprets `bytes` as a big-endian integer and reduces it mod r.
    pub fn from_be_bytes_mod_order(bytes: &[u8]) -> Self {
        Scalar(Fr::from_be_bytes_mod_order(bytes))
    }

    /// Keccak-256 of `data`, read big-endian and reduced mod r.
    ///
    /// The reduction carries a small modulo bias (r is ~2^254); callers only
    /// rely on determinism and collision resistance.
    pub fn hash_to_scalar(data: &[u8]) -> Self {
        Self::from_be_bytes_mod_order(&keccak256(data))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        self.0.inverse().map(Scalar)
    }

    pub fn to_bytes(&self) -> [u8; SCALAR_BYTES] {
        let mut out = [0u8; SCALAR_BYTES];
        out.copy_from_slice(&self.0.into_bigint().to_bytes_be());
        out
    }

    /// Decodes 32 big-endian bytes, rejecting values >= r.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        if bytes.len() != SCALAR_BYTES {
            return Err(DecodeError::Length { expected: SCALAR_BYTES, actual: bytes.len() });
        }
        let s = Self::from_be_bytes_mod_order(bytes);
        if s.to_bytes()[..] != *bytes {
            return Err(DecodeError::NonCanonicalScalar);
        }
        Ok(s)
    }

    pub fn inner(&self) -> Fr {
        self.0
    }
}

impl From<Fr> for Scalar {
    fn from(f: Fr) -> Self {
        Scalar(f)
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar::from_u64(v)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar(0x{})", hex::encode(self.to_bytes()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.to_bytes()))
    }
}
