//! Brute-force evaluation of the terminating sums behind the kernel and
//! zonal constants, and the two-dimensional degeneracy of the projections.
//!
//! Every sum is evaluated term by term in exact arithmetic; no
//! transformation formula is used on the summation side.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::clifford::Frame;
use crate::error::{Error, Result};
use crate::fischer::monogenic_component;
use crate::huaradon::psi;
use crate::poly::FrameSpec;
use crate::scalar::{binomial, factorial, gamma_ratio, pochhammer, HalfInt};

fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn fact(n: i64) -> BigRational {
    int(factorial(n as u64))
}

fn sign(l: i64) -> BigRational {
    if l % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// One exact comparison. `pass` is always `lhs == rhs` on the exact values;
/// the sides are kept as canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn compare<T: PartialEq + Display>(name: &str, params: Params, lhs: &T, rhs: &T) -> Self {
        IdentityCheck {
            name: name.to_string(),
            params: params.0,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }

    /// A check whose right side is a property rather than a value, recorded
    /// as failed.
    pub fn unmatched(name: &str, params: Params, lhs: String, rhs: String) -> Self {
        IdentityCheck { name: name.to_string(), params: params.0, lhs, rhs, pass: false }
    }
}

/// Ordered parameter assignment for a check.
#[derive(Clone, Debug, Default)]
pub struct Params(BTreeMap<String, serde_json::Value>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }
}

/// `sum_(l=0)^s (-1)^l C(s,l) C(2s+k-l, s+k-l)`; equal to 1.
pub fn pascal_sum(s: u32, k: u32) -> BigRational {
    let (s, k) = (s as i64, k as i64);
    let mut acc = BigInt::zero();
    for l in 0..=s {
        let term = binomial(s, l) * binomial(2 * s + k - l, s + k - l);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    int(acc)
}

/// `(lhs, rhs)` of
/// `sum_(l=0)^(s-1) (-1)^l s/(m/2+2s+k-l-1) C(s-1,l) C(2s+k-l, s+k-l)
///  = 1 - (m/2-1)_s / (m/2+s+k)_s`.
pub fn roy_sum(s: u32, k: u32, m: usize) -> (BigRational, BigRational) {
    let h = HalfInt::half(m as i64);
    let (si, ki) = (s as i64, k as i64);
    let mut lhs = BigRational::zero();
    for l in 0..si {
        let den = (h + (2 * si + ki - l - 1)).to_rational();
        lhs += sign(l) * BigRational::from_integer(BigInt::from(si)) / den
            * int(binomial(si - 1, l))
            * int(binomial(2 * si + ki - l, si + ki - l));
    }
    let rhs = BigRational::one() - pochhammer(h - 1, s) / pochhammer(h + (si + ki), s);
    (lhs, rhs)
}

/// `sum_(l=0)^s (-1)^l Gamma(m/2+2s+k-l) Gamma(2s-j-l+k+1)
///  / (l! (s-l)! (s+k-l)! Gamma(2s-j-l+k+m/2))`; equal to 1 for `j <= s`.
pub fn appendix_b_inner_sum(j: u32, s: u32, k: u32, m: usize) -> Result<BigRational> {
    if j > s {
        return Err(Error::Domain(format!("inner sum needs j <= s, got j = {j}, s = {s}")));
    }
    let h = HalfInt::half(m as i64);
    let (j, s, k) = (j as i64, s as i64, k as i64);
    let mut acc = BigRational::zero();
    for l in 0..=s {
        let top = h + (2 * s + k - l);
        let bottom = h + (2 * s - j - l + k);
        acc += sign(l) * gamma_ratio(top, bottom)? * fact(2 * s - j - l + k) / (fact(l) * fact(s - l) * fact(s + k - l));
    }
    Ok(acc)
}

/// `(lhs, rhs)` of
/// `sum_j (-1)^j Gamma(m/2+2s+k-j) / (j! (s-j)! (s+k-j)!)
///  = Gamma(m/2+s) Gamma(m/2+s+k) / (s! (s+k)! Gamma(m/2))`,
/// both sides divided by `Gamma(m/2)` so that they are rational.
pub fn appendix_b_outer_sum(s: u32, k: u32, m: usize) -> Result<(BigRational, BigRational)> {
    let h = HalfInt::half(m as i64);
    let (s, k) = (s as i64, k as i64);
    let mut lhs = BigRational::zero();
    for j in 0..=s {
        lhs += sign(j) * gamma_ratio(h + (2 * s + k - j), h)? / (fact(j) * fact(s - j) * fact(s + k - j));
    }
    let rhs = gamma_ratio(h + s, h)? * gamma_ratio(h + (s + k), h)? / (fact(s) * fact(s + k));
    Ok((lhs, rhs))
}

/// `(lhs, rhs)` of `2F1([-n, b], [c]; 1) = (c-b)_n / (c)_n`, the left side by
/// direct summation.
pub fn chu_vandermonde(b: HalfInt, c: HalfInt, n: u32) -> Result<(BigRational, BigRational)> {
    if (0..n as i64).any(|i| (c + i).twice() == 0) {
        return Err(Error::Domain(format!("2F1 with c = {c} hits a zero denominator before the series stops at n = {n}")));
    }
    let minus_n = HalfInt::int(-(n as i64));
    let mut lhs = BigRational::zero();
    for l in 0..=n {
        lhs += pochhammer(minus_n, l) * pochhammer(b, l) / (pochhammer(c, l) * fact(l as i64));
    }
    let c_minus_b = HalfInt::from_twice(c.twice() - b.twice());
    let rhs = pochhammer(c_minus_b, n) / pochhammer(c, n);
    Ok((lhs, rhs))
}

/// Monogenic projections of `psi_(tau,2s,k)` and `psi_(tau,2s+1,k)` for
/// `m = 2`, frame `(e_1, e_2)`; both vanish for `s >= 1`.
pub fn m2_degeneracy(s: u32, k: u32) -> Result<IdentityCheck> {
    let m = 2;
    let frame = FrameSpec::Concrete(Frame::canonical(m)?);
    let even = monogenic_component(&psi(&frame, 2 * s, k, m), 0)?;
    let odd = monogenic_component(&psi(&frame, 2 * s + 1, k, m), 0)?;
    let params = Params::new().with("s", s).with("k", k);
    Ok(IdentityCheck {
        name: "m2-degeneracy".into(),
        params: params.0,
        lhs: format!("{even}; {odd}"),
        rhs: "0; 0".into(),
        pass: even.is_zero() && odd.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn pascal_examples() {
        for k in 0..6 {
            assert_eq!(pascal_sum(0, k), rat(1, 1));
        }
        assert_eq!(pascal_sum(2, 1), rat(1, 1));
        assert_eq!(pascal_sum(40, 7), rat(1, 1));
    }

    #[test]
    fn roy_examples() {
        let (l, r) = roy_sum(1, 0, 4);
        assert_eq!((l.clone(), r), (rat(2, 3), rat(2, 3)));
        for m in 3..8usize {
            for k in 0..5u32 {
                let (l, r) = roy_sum(1, k, m);
                let expected = rat(k as i64 + 2, 1) / (HalfInt::half(m as i64) + (k as i64 + 1)).to_rational();
                assert_eq!(l, expected);
                assert_eq!(r, expected);
            }
        }
        let (l, r) = roy_sum(5, 3, 5);
        assert_eq!(l, r);
    }

    #[test]
    fn inner_sum_examples() {
        for m in 3..6 {
            assert_eq!(appendix_b_inner_sum(0, 0, 2, m).unwrap(), rat(1, 1));
        }
        assert_eq!(appendix_b_inner_sum(1, 2, 0, 5).unwrap(), rat(1, 1));
        assert_eq!(appendix_b_inner_sum(3, 3, 2, 4).unwrap(), rat(1, 1));
        assert!(appendix_b_inner_sum(2, 1, 0, 4).is_err());
    }

    #[test]
    fn outer_sum_examples() {
        // 6 - 2 on the left, Gamma(3)^2 / Gamma(2) on the right
        assert_eq!(appendix_b_outer_sum(1, 0, 4).unwrap(), (rat(4, 1), rat(4, 1)));
        let (l, r) = appendix_b_outer_sum(4, 2, 7).unwrap();
        assert_eq!(l, r);
        let (l, r) = appendix_b_outer_sum(0, 3, 5).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn chu_vandermonde_examples() {
        let (l, r) = chu_vandermonde(HalfInt::from_twice(3), HalfInt::from_twice(5), 0).unwrap();
        assert_eq!((l.clone(), r), (rat(1, 1), rat(1, 1)));
        // 2F1([-s, -s-k], [-2s-k]; 1) = s! (s+k)! / (2s+k)! at s = 2, k = 1
        let (l, r) = chu_vandermonde(HalfInt::int(-3), HalfInt::int(-5), 2).unwrap();
        assert_eq!(l, rat(2 * 6, 120));
        assert_eq!(r, rat(2 * 6, 120));
        assert!(chu_vandermonde(HalfInt::int(1), HalfInt::int(-1), 3).is_err());
    }

    #[test]
    fn m2_examples() {
        assert!(m2_degeneracy(1, 0).unwrap().pass);
        assert!(m2_degeneracy(2, 1).unwrap().pass);
        let control = m2_degeneracy(0, 1).unwrap();
        assert!(!control.pass);
    }

    #[test]
    fn check_serializes() {
        let c = IdentityCheck::compare("pascal", Params::new().with("s", 2).with("k", 1), &pascal_sum(2, 1), &rat(1, 1));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<IdentityCheck>(&text).unwrap(), c);
        assert!(c.pass);
    }
}
