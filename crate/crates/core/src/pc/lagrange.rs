use std::sync::Arc;

use ark_bn254::{Fr, G1Affine, G1Projective};
use ark_ec::{AffineRepr, CurveGroup};
use ark_ff::{batch_inversion, Zero};

use super::kzg::msm;
use super::polynomial::{barycentric_denominators, vanishing_poly};
use super::{Commitment, KzgError, OpeningProof, Scalar, TrustedSetup};
use crate::exec::Exec;

/// Commits to and opens vectors over the integer domain `{0, .., width-1}`
/// without materializing coefficient form.
///
/// Holds the Lagrange-basis reference string `[L_i(tau)]G1`, derived from
/// the monomial powers, so that `commit_sparse(v)` equals
/// `commit(interpolate(v))` and costs one scalar multiplication per nonzero
/// entry.
#[derive(Debug)]
pub struct VectorCommitter {
    setup: Arc<TrustedSetup>,
    lagrange_g1: Vec<G1Affine>,
    // A'(i) for the domain
    derivs: Vec<Fr>,
    derivs_inv: Vec<Fr>,
    // 1/d for d in 0..width (index 0 unused)
    inv_small: Vec<Fr>,
}

impl VectorCommitter {
    pub fn new(setup: Arc<TrustedSetup>, width: usize) -> Result<Self, KzgError> {
        Self::with_exec(setup, width, Exec::default())
    }

    pub fn with_exec(setup: Arc<TrustedSetup>, width: usize, exec: Exec) -> Result<Self, KzgError> {
        if width == 0 {
            return Err(KzgError::EmptyInput);
        }
        if width > setup.g1_powers().len() {
            return Err(KzgError::DegreeTooLarge { degree: width - 1, max: setup.max_degree() });
        }
        let vanishing = vanishing_poly(width);
        let derivs = barycentric_denominators(width);
        let mut derivs_inv = derivs.clone();
        batch_inversion(&mut derivs_inv);

        let bases: Vec<G1Affine> = setup.g1_powers()[..width].iter().map(|p| p.0).collect();
        let lagrange = exec.map_range(width, |i| {
            // L_i(X) = A(X) / ((X - i) A'(i))
            let root = Fr::from(i as u64);
            let mut coeffs = vec![Fr::zero(); width];
            let mut carry = Fr::zero();
            for k in (0..width).rev() {
                carry = vanishing[k + 1] + carry * root;
                coeffs[k] = carry * derivs_inv[i];
            }
            msm(&bases, &coeffs).0.into_group()
        });
        let lagrange_g1 = G1Projective::normalize_batch(&lagrange);

        let mut inv_small: Vec<Fr> = (0..width as u64).map(Fr::from).collect();
        batch_inversion(&mut inv_small[1..]);

        Ok(VectorCommitter { setup, lagrange_g1, derivs, derivs_inv, inv_small })
    }

    pub fn width(&self) -> usize {
        self.lagrange_g1.len()
    }

    pub fn setup(&self) -> &Arc<TrustedSetup> {
        &self.setup
    }

    /// Commitment to the vector whose listed slots hold the given values and
    /// whose other slots are zero.
    pub fn commit_sparse<I>(&self, entries: I) -> Commitment
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let (bases, scalars): (Vec<G1Affine>, Vec<Fr>) = entries
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (self.lagrange_g1[i], v.0))
            .unzip();
        Commitment(msm(&bases, &scalars))
    }

    pub fn commit_dense(&self, values: &[Scalar]) -> Result<Commitment, KzgError> {
        self.check_len(values)?;
        Ok(self.commit_sparse(values.iter().copied().enumerate()))
    }

    /// Opening of the vector's polynomial at domain point `index`, computed
    /// from the Lagrange-form quotient
    /// `q_i = (v_i - v_m) / (i - m)` for `i != m` and
    /// `q_m = -sum_{i != m} q_i A'(m) / A'(i)`.
    pub fn open(&self, values: &[Scalar], index: usize) -> Result<OpeningProof, KzgError> {
        self.check_len(values)?;
        let width = self.width();
        if index >= width {
            return Err(KzgError::DomainMismatch { len: index + 1, width });
        }
        let vm = values[index].0;
        let mut q = vec![Fr::zero(); width];
        let mut qm = Fr::zero();
        for (i, v) in values.iter().enumerate() {
            if i == index {
                continue;
            }
            let diff = v.0 - vm;
            if diff.is_zero() {
                continue;
            }
            let qi = if i > index {
                diff * self.inv_small[i - index]
            } else {
                -(diff * self.inv_small[index - i])
            };
            q[i] = qi;
            qm -= qi * self.derivs_inv[i];
        }
        q[index] = qm * self.derivs[index];
        Ok(OpeningProof { witness: msm(&self.lagrange_g1, &q) })
    }

    fn check_len(&self, values: &[Scalar]) -> Result<(), KzgError> {
        if values.len() != self.width() {
            return Err(KzgError::DomainMismatch { len: values.len(), width: self.width() });
        }
        Ok(())
    }
}
