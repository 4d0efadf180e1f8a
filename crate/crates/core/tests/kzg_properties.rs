mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use verkle_gas::pc::*;

// Oracle values from tests/oracle/compute_vectors.py (py_ecc, pycryptodome).
const ORACLE_SEED: &[u8] = b"verkle-oracle-seed";
const ORACLE_POWERS: [&str; 3] = [
    "00000000000000000000000000000000000000000000000000000000000000010000000000000000000000000000000000000000000000000000000000000002",
    "089fa9b5a6e9bf21a727ec45c1ae3c69a82d2610ca2813dc2596e935d672ab5f0248c1088ffc7bd07a661265fae3150d557d68ad3bc41143408c13caf36f6b2a",
    "22950ee3362b657b0298d0f81f128d2334c216f1560082fb7619a27aed381acd0cdda70cb929d566fd15d72ffa0ab4b7d10b679e162400935e6018a326217ac8",
];

#[test]
fn setup_powers_match_independent_oracle() {
    let s = TrustedSetup::generate(ORACLE_SEED, 300).unwrap();
    assert_eq!(s.max_degree(), 300);
    for (k, expected) in ORACLE_POWERS.iter().enumerate() {
        assert_eq!(hex::encode(s.g1_powers()[k].to_bytes()), *expected, "power {k}");
    }
    assert!(s.is_consistent());
}

#[test]
fn completeness_small_degrees() {
    let st = setup();
    let mut r = rng(1);
    for d in 0..=16usize {
        let f = Polynomial::new((0..=d).map(|_| random_scalar(&mut r)).collect());
        let c = commit(&st, &f).unwrap();
        for z in 0..=d as u64 {
            let z = Scalar::from_u64(z);
            let w = open_at(&st, &f, &z).unwrap();
            assert!(verify_opening(&st, &c, &z, &f.evaluate(&z), &w));
        }
    }
}

#[test]
fn random_degree_seven_open_at_three() {
    let st = setup();
    let mut r = rng(7);
    let f = Polynomial::new((0..8).map(|_| random_scalar(&mut r)).collect());
    let c = commit(&st, &f).unwrap();
    let z = Scalar::from_u64(3);
    let w = open_at(&st, &f, &z).unwrap();
    assert!(verify_opening(&st, &c, &z, &f.evaluate(&z), &w));
}

#[test]
fn tamper_rejection() {
    let st = setup();
    let mut r = rng(2);
    for trial in 0..120 {
        let f = random_poly(&mut r, 16);
        let c = commit(&st, &f).unwrap();
        let z = Scalar::from_u64(r.gen_range(0..256));
        let y = f.evaluate(&z);
        let w = open_at(&st, &f, &z).unwrap();
        match trial % 3 {
            0 => assert!(!verify_opening(&st, &c, &z, &(y + Scalar::one()), &w)),
            1 => {
                // a constant polynomial legitimately opens to y everywhere
                let z2 = z + Scalar::one();
                let honest = f.evaluate(&z2) == y;
                assert_eq!(verify_opening(&st, &c, &z2, &y, &w), honest);
            }
            _ => {
                let mut bytes = w.to_bytes();
                let pos = r.gen_range(0..64);
                bytes[pos] ^= 1 << r.gen_range(0..8);
                let res = verify_opening_bytes(&st, &c.to_bytes(), &z.to_bytes(), &y.to_bytes(), &bytes);
                assert_ne!(res, Ok(true), "trial {trial}");
            }
        }
    }
}

#[test]
fn additive_homomorphism() {
    let st = setup();
    let mut r = rng(3);
    for _ in 0..50 {
        let f = random_poly(&mut r, 40);
        let g = random_poly(&mut r, 40);
        let lhs = commit(&st, &f).unwrap().add(&commit(&st, &g).unwrap());
        assert_eq!(lhs, commit(&st, &(&f + &g)).unwrap());
    }
}

#[test]
fn commit_matches_naive_sum() {
    let st = setup();
    let mut r = rng(4);
    let f = random_poly(&mut r, 12);
    let naive = f
        .coeffs()
        .iter()
        .zip(st.g1_powers())
        .fold(G1Point::identity(), |acc, (c, p)| acc.add(&p.mul(c)));
    assert_eq!(commit(&st, &f).unwrap().0, naive);
}

#[test]
fn interpolation_against_lagrange_oracle() {
    let mut r = rng(5);
    for n in [1usize, 2, 8, 33, 256] {
        let v: Vec<Scalar> = (0..n).map(|_| random_scalar(&mut r)).collect();
        let f = Polynomial::interpolate(&v).unwrap();
        assert!(f.coeffs().len() <= n);
        for (i, vi) in v.iter().enumerate() {
            assert_eq!(f.evaluate(&Scalar::from_u64(i as u64)), *vi);
        }
        let x = random_scalar(&mut r);
        assert_eq!(f.evaluate(&x), lagrange_eval(&v, &x), "n = {n}");
    }
}

#[test]
fn commitment_scalars_distinct() {
    let st = setup();
    let mut r = rng(6);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..64 {
        let c = commit(&st, &random_poly(&mut r, 4)).unwrap();
        assert_eq!(commitment_to_scalar(&c), commitment_to_scalar(&c));
        assert!(seen.insert(commitment_to_scalar(&c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn codec_roundtrip(seed in any::<[u8; 32]>(), k in 1u64..1000) {
        let s = Scalar::from_be_bytes_mod_order(&seed);
        prop_assert_eq!(Scalar::from_bytes(&s.to_bytes()).unwrap(), s);
        let p = G1Point::generator().mul(&s).mul(&Scalar::from_u64(k));
        prop_assert_eq!(G1Point::from_bytes(&p.to_bytes()).unwrap(), p);
        let c = Commitment(p);
        prop_assert_eq!(Commitment::from_bytes(&c.to_bytes()).unwrap(), c);
        let w = OpeningProof { witness: p };
        prop_assert_eq!(OpeningProof::from_bytes(&w.to_bytes()).unwrap(), w);
        let g2 = G2Point::generator().mul(&s);
        prop_assert_eq!(G2Point::from_bytes(&g2.to_bytes()).unwrap(), g2);
    }

    #[test]
    fn interpolate_evaluate_roundtrip(vals in prop::collection::vec(any::<u64>(), 1..40)) {
        let v: Vec<Scalar> = vals.iter().map(|x| Scalar::from_u64(*x)).collect();
        let f = Polynomial::interpolate(&v).unwrap();
        for (i, vi) in v.iter().enumerate() {
            prop_assert_eq!(f.evaluate(&Scalar::from_u64(i as u64)), *vi);
        }
    }
}
