use hua_radon::clifford::{Blade, Frame};
use hua_radon::fischer::{fischer_decompose, monogenic_component};
use hua_radon::identities::{appendix_b_inner_sum, pascal_sum, roy_sum};
use hua_radon::poly::Block;
use hua_radon::scalar::rat;
use hua_radon::suites::random_homogeneous;
use hua_radon::{GaussianRational, Multivector};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-9i64..10, 1i64..5, -9i64..10, 1i64..5).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

fn element(m: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0..(1u32 << m), gaussian()), 0..6).prop_map(move |terms| {
        let mut x = Multivector::zero(m);
        for (b, c) in terms {
            x.add_term(Blade(b), c);
        }
        x
    })
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (2usize..6).prop_flat_map(|m| (element(m), element(m), element(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        let left = (&a * &b).geometric_product(&c).unwrap();
        let right = a.geometric_product(&(&b * &c)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn conjugation_reverses_products((a, b, _) in triple()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.hermitian_conjugate(), &b.hermitian_conjugate() * &a.hermitian_conjugate());
        prop_assert_eq!(a.hermitian_conjugate().hermitian_conjugate(), a);
    }

    #[test]
    fn rotated_frames_are_isotropic(m in 2usize..7, seed in any::<u64>()) {
        let frame = Frame::rotated(m, seed).unwrap();
        let (t, td) = (frame.tau(), frame.tau_dagger());
        let four = GaussianRational::int(4);
        prop_assert!((&t * &t).is_zero());
        prop_assert_eq!(&(&t * &td) * &t, t.scale(&four));
        prop_assert_eq!((&t * &td).scalar_part() + (&td * &t).scalar_part(), four);
    }

    #[test]
    fn pascal_sums_are_one(s in 0u32..30, k in 0u32..15) {
        prop_assert_eq!(pascal_sum(s, k), BigRational::one());
    }

    #[test]
    fn gamma_ratio_sums_hold(s in 0u32..10, k in 0u32..10, m in 3usize..11) {
        let (l, r) = roy_sum(s, k, m);
        prop_assert_eq!(l, r);
        for j in 0..=s {
            prop_assert_eq!(appendix_b_inner_sum(j, s, k, m).unwrap(), BigRational::one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fischer_parts_reassemble(m in 3usize..6, degree in 0u32..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_homogeneous(m, degree, &mut rng, 3);
        let dec = fischer_decompose(&p).unwrap();
        prop_assert_eq!(dec.reassemble(m), p.clone());
        for (j, part) in &dec.parts {
            prop_assert!(part.dirac(Block::Z).is_zero(), "part {} not monogenic", j);
        }
        let head = monogenic_component(&p, 0).unwrap();
        prop_assert_eq!(dec.part(0).cloned().unwrap_or_else(|| hua_radon::Poly::zero(m)), head);
    }
}
