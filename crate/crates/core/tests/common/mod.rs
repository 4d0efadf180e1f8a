#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use verkle_gas::pc::{Polynomial, Scalar, TrustedSetup, VectorCommitter};

pub const SETUP_SEED: &[u8] = b"verkle-gas-tests";

pub fn committer() -> Arc<VectorCommitter> {
    static VC: OnceLock<Arc<VectorCommitter>> = OnceLock::new();
    VC.get_or_init(|| {
        let setup = Arc::new(TrustedSetup::generate(SETUP_SEED, 255).unwrap());
        Arc::new(VectorCommitter::new(setup, 256).unwrap())
    })
    .clone()
}

pub fn setup() -> Arc<TrustedSetup> {
    committer().setup().clone()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut impl RngCore) -> Scalar {
    let mut b = [0u8; 32];
    rng.fill_bytes(&mut b);
    Scalar::from_be_bytes_mod_order(&b)
}

pub fn random_poly(rng: &mut impl RngCore, max_degree: usize) -> Polynomial {
    let len = rng.gen_range(1..=max_degree + 1);
    Polynomial::new((0..len).map(|_| random_scalar(rng)).collect())
}

/// Direct Lagrange-basis evaluation at `x` over the domain `0..n`,
/// independent of the interpolation code.
pub fn lagrange_eval(values: &[Scalar], x: &Scalar) -> Scalar {
    let n = values.len();
    let mut acc = Scalar::zero();
    for (i, v) in values.iter().enumerate() {
        let mut num = Scalar::one();
        let mut den = Scalar::one();
        for j in 0..n {
            if j != i {
                num = num * (*x - Scalar::from_u64(j as u64));
                den = den * (Scalar::from_u64(i as u64) - Scalar::from_u64(j as u64));
            }
        }
        acc += *v * num * den.inverse().unwrap();
    }
    acc
}
