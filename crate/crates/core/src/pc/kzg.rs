use ark_bn254::{Bn254, Fr, G1Affine, G1Projective, G2Projective};
use ark_ec::{pairing::Pairing, AffineRepr, VariableBaseMSM};

use super::{DecodeError, G1Point, KzgError, Polynomial, Scalar, TrustedSetup};
use crate::hash::keccak256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Commitment(pub G1Point);

/// Commitment to the quotient `(f(X) - f(z)) / (X - z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OpeningProof {
    pub witness: G1Point,
}

impl Commitment {
    pub fn identity() -> Self {
        Commitment(G1Point::identity())
    }

    pub fn to_bytes(&self) -> [u8; 64] {
        self.0.to_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        G1Point::from_bytes(bytes).map(Commitment)
    }

    pub fn add(&self, other: &Commitment) -> Commitment {
        Commitment(self.0.add(&other.0))
    }
}

impl OpeningProof {
    pub fn to_bytes(&self) -> [u8; 64] {
        self.witness.to_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        G1Point::from_bytes(bytes).map(|witness| OpeningProof { witness })
    }
}

pub(crate) fn msm(bases: &[G1Affine], scalars: &[Fr]) -> G1Point {
    debug_assert_eq!(bases.len(), scalars.len());
    G1Point::from(G1Projective::msm_unchecked(bases, scalars))
}

fn check_degree(setup: &TrustedSetup, poly: &Polynomial) -> Result<usize, KzgError> {
    let len = poly.degree().map_or(0, |d| d + 1);
    if len > setup.g1_powers().len() {
        return Err(KzgError::DegreeTooLarge { degree: len - 1, max: setup.max_degree() });
    }
    Ok(len)
}

/// `sum_k coeffs[k] * [tau^k]G1`.
pub fn commit(setup: &TrustedSetup, poly: &Polynomial) -> Result<Commitment, KzgError> {
    let len = check_degree(setup, poly)?;
    let bases: Vec<G1Affine> = setup.g1_powers()[..len].iter().map(|p| p.0).collect();
    let scalars: Vec<Fr> = poly.coeffs()[..len].iter().map(|c| c.0).collect();
    Ok(Commitment(msm(&bases, &scalars)))
}

/// Single-point KZG opening of `poly` at `z`.
pub fn open_at(setup: &TrustedSetup, poly: &Polynomial, z: &Scalar) -> Result<OpeningProof, KzgError> {
    check_degree(setup, poly)?;
    let y = poly.evaluate(z);
    let mut shifted = poly.coeffs().to_vec();
    if shifted.is_empty() {
        shifted.push(Scalar::zero());
    }
    shifted[0] = shifted[0] - y;
    let (quotient, remainder) = Polynomial::new(shifted).divide_by_linear(z);
    assert!(remainder.is_zero(), "f(X) - f(z) must vanish at z");
    let witness = commit(setup, &quotient)?.0;
    Ok(OpeningProof { witness })
}

/// Checks `e(C - [y]G1, G2) == e(W, [tau]G2 - [z]G2)`.
pub fn verify_opening(
    setup: &TrustedSetup,
    commitment: &Commitment,
    z: &Scalar,
    y: &Scalar,
    proof: &OpeningProof,
) -> bool {
    let g1 = setup.g1_generator().0;
    let g2 = setup.g2_generator().0;
    let lhs_g1 = commitment.0 .0.into_group() - g1 * y.0;
    let rhs_g2 = setup.g2_tau().0.into_group() - G2Projective::from(g2) * z.0;
    // e(lhs, G2) * e(-W, [tau - z]G2) == 1
    let out = Bn254::multi_pairing(
        [G1Projective::from(lhs_g1), -proof.witness.0.into_group()],
        [G2Projective::from(g2), rhs_g2],
    );
    out.0 == <Bn254 as Pairing>::TargetField::from(1u64)
}

/// [`verify_opening`] over raw encodings. Malformed input is an error, not
/// a failed verification.
pub fn verify_opening_bytes(
    setup: &TrustedSetup,
    commitment: &[u8],
    z: &[u8],
    y: &[u8],
    proof: &[u8],
) -> Result<bool, DecodeError> {
    let c = Commitment::from_bytes(commitment)?;
    let z = Scalar::from_bytes(z)?;
    let y = Scalar::from_bytes(y)?;
    let w = OpeningProof::from_bytes(proof)?;
    Ok(verify_opening(setup, &c, &z, &y, &w))
}

/// Keccak-256 of the 64-byte encoding, reduced mod r. Used to place a child
/// commitment into its parent's vector.
pub fn commitment_to_scalar(c: &Commitment) -> Scalar {
    Scalar::from_be_bytes_mod_order(&keccak256(&c.to_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> TrustedSetup {
        TrustedSetup::generate(b"kzg-unit", 8).unwrap()
    }

    fn s(v: u64) -> Scalar {
        Scalar::from_u64(v)
    }

    #[test]
    fn zero_polynomial_commits_to_identity() {
        let c = commit(&setup(), &Polynomial::zero()).unwrap();
        assert!(c.0.is_identity());
    }

    #[test]
    fn constant_commits_to_scaled_generator() {
        let st = setup();
        let c = commit(&st, &Polynomial::new(vec![s(9)])).unwrap();
        assert_eq!(c.0, st.g1_powers()[0].mul(&s(9)));
    }

    #[test]
    fn degree_overflow() {
        let st = setup();
        let p = Polynomial::new(vec![s(1); 10]);
        assert_eq!(commit(&st, &p), Err(KzgError::DegreeTooLarge { degree: 9, max: 8 }));
        assert!(open_at(&st, &p, &s(0)).is_err());
        // trailing zeros do not count toward the degree
        let mut c = vec![s(1)];
        c.resize(20, s(0));
        assert!(commit(&st, &Polynomial::new(c)).is_ok());
    }

    #[test]
    fn constant_opening_has_identity_witness() {
        let st = setup();
        let f = Polynomial::new(vec![s(5)]);
        let w = open_at(&st, &f, &s(77)).unwrap();
        assert!(w.witness.is_identity());
        let c = commit(&st, &f).unwrap();
        assert!(verify_opening(&st, &c, &s(77), &s(5), &w));
        assert!(!verify_opening(&st, &c, &s(77), &s(6), &w));
    }

    #[test]
    fn identity_poly_at_zero_has_generator_witness() {
        let st = setup();
        let f = Polynomial::new(vec![s(0), s(1)]);
        let w = open_at(&st, &f, &s(0)).unwrap();
        assert_eq!(w.witness, st.g1_powers()[0]);
    }

    #[test]
    fn open_verify_small() {
        let st = setup();
        let f = Polynomial::new(vec![s(3), s(1), s(4), s(1), s(5)]);
        let c = commit(&st, &f).unwrap();
        for z in 0..6 {
            let z = s(z);
            let w = open_at(&st, &f, &z).unwrap();
            let y = f.evaluate(&z);
            assert!(verify_opening(&st, &c, &z, &y, &w));
            assert!(!verify_opening(&st, &c, &z, &(y + s(1)), &w));
            assert!(!verify_opening(&st, &c, &(z + s(1)), &y, &w));
        }
    }

    #[test]
    fn byte_level_verify_distinguishes_malformed() {
        let st = setup();
        let f = Polynomial::new(vec![s(2), s(7)]);
        let c = commit(&st, &f).unwrap();
        let w = open_at(&st, &f, &s(1)).unwrap();
        let ok = verify_opening_bytes(&st, &c.to_bytes(), &s(1).to_bytes(), &s(9).to_bytes(), &w.to_bytes());
        assert_eq!(ok, Ok(true));
        let wrong = verify_opening_bytes(&st, &c.to_bytes(), &s(1).to_bytes(), &s(8).to_bytes(), &w.to_bytes());
        assert_eq!(wrong, Ok(false));
        let mut junk = w.to_bytes();
        junk[10] ^= 1;
        assert!(verify_opening_bytes(&st, &c.to_bytes(), &s(1).to_bytes(), &s(9).to_bytes(), &junk).is_err());
        assert!(verify_opening_bytes(&st, &c.to_bytes()[..63], &s(1).to_bytes(), &s(9).to_bytes(), &w.to_bytes()).is_err());
    }

    #[test]
    fn commitment_scalar_of_identity() {
        // keccak256(64 zero bytes) mod r
        let v = commitment_to_scalar(&Commitment::identity());
        assert_eq!(
            v.to_string(),
            "1c053d5dd362f3501993d420ba93e87eb29b2bb845ddeefe74b26929c7ba5fb2"
        );
    }
}
