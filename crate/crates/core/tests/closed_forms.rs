//! Library values against closed forms evaluated here with plain integer
//! arithmetic.

use hua_radon::identities::{appendix_b_outer_sum, chu_vandermonde};
use hua_radon::integrate::{sphere_mean_monomial, theta_integral};
use hua_radon::scalar::{rat, unit_sphere_area, HalfInt};
use hua_radon::zonal_dual::vartheta;
use hua_radon::{GaussianRational, PiScalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fact(n: i64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn double_fact(n: i64) -> BigInt {
    (1..=n).rev().step_by(2).map(BigInt::from).product()
}

/// Rising factorial of `twice/2` in exact rationals.
fn rising(twice: i64, n: u32) -> BigRational {
    (0..n as i64).map(|i| BigRational::new((twice + 2 * i).into(), 2.into())).product()
}

#[test]
fn sphere_area() {
    for m in 2..=12i64 {
        let n = m / 2;
        let want = if m % 2 == 0 {
            PiScalar::monomial(GaussianRational::real(BigRational::new(2.into(), fact(n - 1))), m)
        } else {
            let c = BigRational::new(BigInt::from(2) * BigInt::from(4).pow(n as u32) * fact(n), fact(2 * n));
            PiScalar::monomial(GaussianRational::real(c), 2 * n)
        };
        assert_eq!(unit_sphere_area(m as usize).unwrap(), want, "m = {m}");
    }
}

#[test]
fn sphere_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let m = rng.gen_range(2..8usize);
        let exps: Vec<u32> = (0..m).map(|_| rng.gen_range(0..5)).collect();
        let total: u32 = exps.iter().sum();
        let want = if exps.iter().any(|e| e % 2 == 1) {
            BigRational::zero()
        } else {
            let num: BigInt = exps.iter().map(|&e| double_fact(e as i64 - 1)).product();
            let den: BigInt = (0..total as i64 / 2).map(|i| BigInt::from(m as i64 + 2 * i)).product();
            BigRational::new(num, den)
        };
        assert_eq!(sphere_mean_monomial(&exps, m), want, "{exps:?} on S^{}", m - 1);
    }
}

#[test]
fn phase_integrals() {
    assert_eq!(theta_integral(0), PiScalar::pi_pow(2));
    for n in 1..9i64 {
        // (e^(i n pi) - 1) / (i n)
        let want = if n % 2 == 0 {
            PiScalar::zero()
        } else {
            PiScalar::gaussian(GaussianRational::new(BigRational::zero(), rat(2, n)))
        };
        assert_eq!(theta_integral(n), want);
        assert_eq!(theta_integral(-n), -want.clone());
    }
}

#[test]
fn dual_constants() {
    for m in 3..9i64 {
        for l in 0..7i64 {
            let want = BigRational::new(fact(l + 1) * fact(m - 2), BigInt::from(2) * fact(l + m - 2));
            for j in 0..3 {
                assert_eq!(vartheta(j, l as u32, m as usize).unwrap(), want);
            }
        }
        assert_eq!(vartheta(0, 0, m as usize).unwrap(), rat(1, 2));
    }
    assert_eq!(vartheta(0, 1, 4).unwrap(), rat(1, 3));
}

#[test]
fn terminating_hypergeometric_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut seen = 0;
    while seen < 20 {
        let b = rng.gen_range(-12..12i64);
        let c = rng.gen_range(-12..12i64);
        let n = rng.gen_range(0..8u32);
        if (0..n as i64).any(|i| c + 2 * i == 0) {
            assert!(chu_vandermonde(HalfInt::from_twice(b), HalfInt::from_twice(c), n).is_err());
            continue;
        }
        let mut series = BigRational::zero();
        for l in 0..=n {
            series += rising(-2 * n as i64, l) * rising(b, l) / (rising(c, l) * BigRational::from_integer(fact(l as i64)));
        }
        let closed = rising(c - b, n) / rising(c, n);
        let (lhs, rhs) = chu_vandermonde(HalfInt::from_twice(b), HalfInt::from_twice(c), n).unwrap();
        assert_eq!(lhs, series);
        assert_eq!(rhs, closed);
        assert_eq!(lhs, rhs, "b = {b}/2, c = {c}/2, n = {n}");
        seen += 1;
    }
}

#[test]
fn outer_sum_small_cases() {
    // s = 0: Gamma(m/2+k)/k! on both sides
    for m in 3..8usize {
        for k in 0..4u32 {
            let want = rising(m as i64, k) / BigRational::from_integer(fact(k as i64));
            assert_eq!(appendix_b_outer_sum(0, k, m).unwrap(), (want.clone(), want));
        }
    }
}
