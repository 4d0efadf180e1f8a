use std::collections::HashSet;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 20-byte account address.
pub type Address = [u8; 20];

/// `n` distinct pseudo-random addresses drawn from ChaCha8 seeded with
/// `seed`. Same `(n, seed)` always yields the same list, and a longer list
/// extends a shorter one with the same seed.
pub fn generate_dataset(n: usize, seed: u64) -> Vec<Address> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut a = [0u8; 20];
        rng.fill_bytes(&mut a);
        if seen.insert(a) {
            out.push(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_seed_sensitive() {
        assert_eq!(generate_dataset(8, 1), generate_dataset(8, 1));
        assert_ne!(generate_dataset(8, 1), generate_dataset(8, 2));
        assert_eq!(generate_dataset(16, 5)[..8], generate_dataset(8, 5)[..]);
    }

    #[test]
    fn distinct() {
        let d = generate_dataset(1 << 14, 9);
        let set: HashSet<_> = d.iter().collect();
        assert_eq!(set.len(), d.len());
    }
}
