use std::fmt;

use ark_bn254::{Fq, Fq2, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::{AffineRepr, CurveGroup};
use ark_ff::{BigInteger, PrimeField};

use super::{DecodeError, Scalar};

pub const G1_BYTES: usize = 64;
pub const G2_BYTES: usize = 128;

/// Point in BN254 G1. Serialized as `x || y`, 32-byte big-endian
/// coordinates, with the identity encoded as 64 zero bytes (the EVM
/// precompile convention).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct G1Point(pub(crate) G1Affine);

/// Point in BN254 G2. Serialized as `x.c1 || x.c0 || y.c1 || y.c0`
/// (imaginary part first, as the EVM pairing precompile expects).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct G2Point(pub(crate) G2Affine);

fn fq_to_bytes(f: &Fq, out: &mut [u8]) {
    out.copy_from_slice(&f.into_bigint().to_bytes_be());
}

fn fq_from_bytes(bytes: &[u8]) -> Result<Fq, DecodeError> {
    let f = Fq::from_be_bytes_mod_order(bytes);
    if f.into_bigint().to_bytes_be() != bytes {
        return Err(DecodeError::NonCanonicalCoordinate);
    }
    Ok(f)
}

impl G1Point {
    pub fn identity() -> Self {
        G1Point(G1Affine::identity())
    }

    pub fn generator() -> Self {
        G1Point(G1Affine::generator())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul(&self, s: &Scalar) -> Self {
        G1Point((self.0 * s.0).into_affine())
    }

    pub fn add(&self, other: &Self) -> Self {
        G1Point((self.0 + other.0).into_affine())
    }

    pub fn to_bytes(&self) -> [u8; G1_BYTES] {
        let mut out = [0u8; G1_BYTES];
        if let Some((x, y)) = self.0.xy() {
            fq_to_bytes(&x, &mut out[..32]);
            fq_to_bytes(&y, &mut out[32..]);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        if bytes.len() != G1_BYTES {
            return Err(DecodeError::Length { expected: G1_BYTES, actual: bytes.len() });
        }
        if bytes.iter().all(|b| *b == 0) {
            return Ok(Self::identity());
        }
        let x = fq_from_bytes(&bytes[..32])?;
        let y = fq_from_bytes(&bytes[32..])?;
        let p = G1Affine::new_unchecked(x, y);
        if !p.is_on_curve() {
            return Err(DecodeError::NotOnCurve);
        }
        if !p.is_in_correct_subgroup_assuming_on_curve() {
            return Err(DecodeError::NotInSubgroup);
        }
        Ok(G1Point(p))
    }

    pub fn inner(&self) -> G1Affine {
        self.0
    }
}

impl From<G1Projective> for G1Point {
    fn from(p: G1Projective) -> Self {
        G1Point(p.into_affine())
    }
}

impl G2Point {
    pub fn generator() -> Self {
        G2Point(G2Affine::generator())
    }

    pub fn mul(&self, s: &Scalar) -> Self {
        G2Point((self.0 * s.0).into_affine())
    }

    pub fn to_bytes(&self) -> [u8; G2_BYTES] {
        let mut out = [0u8; G2_BYTES];
        if let Some((x, y)) = self.0.xy() {
            fq_to_bytes(&x.c1, &mut out[..32]);
            fq_to_bytes(&x.c0, &mut out[32..64]);
            fq_to_bytes(&y.c1, &mut out[64..96]);
            fq_to_bytes(&y.c0, &mut out[96..]);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        if bytes.len() != G2_BYTES {
            return Err(DecodeError::Length { expected: G2_BYTES, actual: bytes.len() });
        }
        if bytes.iter().all(|b| *b == 0) {
            return Ok(G2Point(G2Affine::identity()));
        }
        let x = Fq2::new(fq_from_bytes(&bytes[32..64])?, fq_from_bytes(&bytes[..32])?);
        let y = Fq2::new(fq_from_bytes(&bytes[96..])?, fq_from_bytes(&bytes[64..96])?);
        let p = G2Affine::new_unchecked(x, y);
        if !p.is_on_curve() {
            return Err(DecodeError::NotOnCurve);
        }
        if !p.is_in_correct_subgroup_assuming_on_curve() {
            return Err(DecodeError::NotInSubgroup);
        }
        Ok(G2Point(p))
    }

    pub fn inner(&self) -> G2Affine {
        self.0
    }
}

impl From<G2Projective> for G2Point {
    fn from(p: G2Projective) -> Self {
        G2Point(p.into_affine())
    }
}

impl fmt::Debug for G1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G1(0x{})", hex::encode(self.to_bytes()))
    }
}

impl fmt::Debug for G2Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G2(0x{})", hex::encode(self.to_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_encoding_matches_precompile_constants() {
        let g = G1Point::generator().to_bytes();
        assert_eq!(g[31], 1);
        assert_eq!(g[63], 2);
        // Generator of G2 as listed in EIP-197.
        let g2 = hex::encode(G2Point::generator().to_bytes());
        assert_eq!(
            g2,
            "198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2\
             1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed\
             090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b\
             12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa"
        );
        assert_eq!(G2Point::from_bytes(&G2Point::generator().to_bytes()).unwrap(), G2Point::generator());
    }

    #[test]
    fn identity_is_all_zero() {
        assert_eq!(G1Point::identity().to_bytes(), [0u8; 64]);
        assert!(G1Point::from_bytes(&[0u8; 64]).unwrap().is_identity());
    }

    #[test]
    fn rejects_off_curve_and_noncanonical() {
        let mut b = G1Point::generator().to_bytes();
        b[63] = 3;
        assert_eq!(G1Point::from_bytes(&b), Err(DecodeError::NotOnCurve));
        let b = [0xffu8; 64];
        assert_eq!(G1Point::from_bytes(&b), Err(DecodeError::NonCanonicalCoordinate));
        assert!(matches!(G1Point::from_bytes(&[1u8; 10]), Err(DecodeError::Length { .. })));
    }

    #[test]
    fn g2_rejects_non_subgroup_point() {
        // Most points on the twist lie outside the r-torsion.
        let mut found = false;
        for i in 1u64..200 {
            let x = Fq2::new(Fq::from(i), Fq::from(1u64));
            if let Some(p) = G2Affine::get_point_from_x_unchecked(x, false) {
                if !p.is_in_correct_subgroup_assuming_on_curve() {
                    let bytes = G2Point(p).to_bytes();
                    assert_eq!(G2Point::from_bytes(&bytes), Err(DecodeError::NotInSubgroup));
                    found = true;
                    break;
                }
            }
        }
        assert!(found);
    }
}
