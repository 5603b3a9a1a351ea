//! Exact scalars: Gaussian rationals, half-integers, and the ring of Gaussian
//! rationals extended by integer powers of `pi^(1/2)`.
//!
//! Every closed-form constant the library produces (sphere areas, Pizzetti
//! weights, kernel and dual-transform normalizations) lives in [`PiScalar`],
//! because `Gamma(k + m/2)` contributes at most one factor of `sqrt(pi)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring used by Clifford elements and polynomials.
///
/// The algebra in [`crate::clifford`] and [`crate::poly`] is written once
/// against this trait and instantiated with exact scalars
/// ([`GaussianRational`], [`PiScalar`]) or with `Complex<f64>` for quick
/// floating-point spot checks.
pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Send + Sync + Zero + One + Neg<Output = Self>
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Complex conjugation of the coefficient.
    fn conj(&self) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn imag_unit() -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// `(re + i*im) / den` over a shared positive denominator. Products are
/// reduced to lowest terms; sums over an equal denominator are not, so
/// equality compares cross products.
#[derive(Clone)]
pub struct GaussianRational {
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

fn gcd_into(g: &mut BigInt, x: &BigInt) {
    if !g.is_one() && !x.is_zero() {
        *g = g.gcd(x);
    }
}

impl GaussianRational {
    fn from_parts(mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Self {
        if re.is_zero() && im.is_zero() {
            return GaussianRational { re, im, den: BigInt::one() };
        }
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        if !den.is_one() {
            let mut g = den.clone();
            gcd_into(&mut g, &re);
            gcd_into(&mut g, &im);
            if !g.is_one() {
                re /= &g;
                im /= &g;
                den /= &g;
            }
        }
        GaussianRational { re, im, den }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let a = re.numer() * (&den / re.denom());
        let b = im.numer() * (&den / im.denom());
        Self::from_parts(a, b, den)
    }

    pub fn real(re: BigRational) -> Self {
        let (n, d) = re.into();
        GaussianRational { re: n, im: BigInt::zero(), den: d }
    }

    pub fn int(n: i64) -> Self {
        GaussianRational { re: BigInt::from(n), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn i() -> Self {
        GaussianRational { re: BigInt::zero(), im: BigInt::one(), den: BigInt::one() }
    }

    pub fn re(&self) -> BigRational {
        BigRational::new(self.re.clone(), self.den.clone())
    }

    pub fn im(&self) -> BigRational {
        BigRational::new(self.im.clone(), self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im, den: self.den.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        BigRational::new(&self.re * &self.re + &self.im * &self.im, &self.den * &self.den)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // den (re - i im) / (re^2 + im^2)
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Self::from_parts(&self.den * &self.re, -(&self.den * &self.im), n))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_parts(&self.re * q.numer(), &self.im * q.numer(), &self.den * q.denom())
    }

    pub fn to_complex(&self) -> Complex<f64> {
        Complex::new(
            self.re().to_f64().unwrap_or(f64::NAN),
            self.im().to_f64().unwrap_or(f64::NAN),
        )
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let (b_re, b_im) = if negate { (-&rhs.re, -&rhs.im) } else { (rhs.re.clone(), rhs.im.clone()) };
        if self.den == rhs.den {
            let (re, im) = (&self.re + b_re, &self.im + b_im);
            let den = if re.is_zero() && im.is_zero() { BigInt::one() } else { self.den.clone() };
            return GaussianRational { re, im, den };
        }
        Self::from_parts(
            &self.re * &rhs.den + b_re * &self.den,
            &self.im * &rhs.den + b_im * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::real(q)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl PartialEq for GaussianRational {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.re == other.re && self.im == other.im;
        }
        &self.re * &other.den == &other.re * &self.den && &self.im * &other.den == &other.im * &self.den
    }
}

impl Eq for GaussianRational {}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::int(0)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re(), self.im());
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&re)),
            (true, false) => write!(f, "{}i", fmt_rational(&im)),
            (false, false) => {
                let sign = if im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", fmt_rational(&re), sign, fmt_rational(&im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        let den = &self.den * &rhs.den;
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_parts(&self.re * &rhs.re, BigInt::zero(), den);
        }
        GaussianRational::from_parts(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
            den,
        )
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> Self {
        &self * &rhs.inverse().expect("division by zero Gaussian rational")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im, den: self.den }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        *self = self.combine(rhs, false);
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::int(0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Scalar for GaussianRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::real(q.clone())
    }
    fn imag_unit() -> Self {
        Self::i()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Scalar for Complex<f64> {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn imag_unit() -> Self {
        Complex::i()
    }
}

// ---------------------------------------------------------------------------
// Half-integers

/// Exact `n/2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// `m/2` for a dimension `m`.
    pub const fn half(m: i64) -> Self {
        HalfInt { twice: m }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn is_positive(self) -> bool {
        self.twice > 0
    }

    pub fn to_rational(self) -> BigRational {
        rat(self.twice, 2)
    }

    pub fn plus(self, n: i64) -> Self {
        HalfInt { twice: self.twice + 2 * n }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, n: i64) -> HalfInt {
        self.plus(n)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, n: i64) -> HalfInt {
        self.plus(-n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

// ---------------------------------------------------------------------------
// PiScalar

/// Finite sum `sum_p q_p * pi^(p/2)` with Gaussian-rational `q_p`.
///
/// Keys are the exponent in units of `pi^(1/2)`. Zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PiScalar {
    terms: BTreeMap<i64, GaussianRational>,
}

impl PiScalar {
    /// `q * pi^(half_power/2)`.
    pub fn monomial(q: GaussianRational, half_power: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(half_power, q);
        }
        PiScalar { terms }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::monomial(GaussianRational::real(q), 0)
    }

    pub fn gaussian(q: GaussianRational) -> Self {
        Self::monomial(q, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat_int(n))
    }

    /// `pi^(half_power/2)`.
    pub fn pi_pow(half_power: i64) -> Self {
        Self::monomial(GaussianRational::one(), half_power)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(p, q)| (*p, q))
    }

    /// True when the only exponent present is 0 (the zero element counts).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&p| p == 0)
    }

    /// The Gaussian-rational value when no transcendental factor is present.
    pub fn to_gaussian(&self) -> Option<GaussianRational> {
        if !self.is_rational() {
            return None;
        }
        Some(self.terms.get(&0).cloned().unwrap_or_default())
    }

    /// Single-term view `(q, p)` with `self = q * pi^(p/2)`.
    pub fn as_monomial(&self) -> Option<(&GaussianRational, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(p, q)| (q, *p))
    }

    /// Inverse of a single-term element.
    pub fn inverse(&self) -> Option<PiScalar> {
        let (q, p) = self.as_monomial()?;
        Some(PiScalar::monomial(q.inverse()?, -p))
    }

    /// Exact quotient by a single-term divisor.
    pub fn checked_div(&self, rhs: &PiScalar) -> Option<PiScalar> {
        Some(self * &rhs.inverse()?)
    }

    pub fn scale(&self, q: &GaussianRational) -> PiScalar {
        let mut out = PiScalar::default();
        for (p, c) in &self.terms {
            out.add_term(*p, c * q);
        }
        out
    }

    fn add_term(&mut self, p: i64, q: GaussianRational) {
        if q.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(p).or_default();
            *slot += &q;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&p);
        }
    }

    pub fn to_complex(&self) -> Complex<f64> {
        self.terms
            .iter()
            .map(|(p, q)| q.to_complex() * std::f64::consts::PI.powf(*p as f64 / 2.0))
            .sum()
    }
}

impl From<GaussianRational> for PiScalar {
    fn from(q: GaussianRational) -> Self {
        PiScalar::gaussian(q)
    }
}

impl From<BigRational> for PiScalar {
    fn from(q: BigRational) -> Self {
        PiScalar::rational(q)
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(p, q)| format!("{} * pi^({}/2)", q, p)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: &PiScalar) -> PiScalar {
        let mut out = self.clone();
        for (p, q) in &rhs.terms {
            out.add_term(*p, q.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: &PiScalar) -> PiScalar {
        let mut out = self.clone();
        for (p, q) in &rhs.terms {
            out.add_term(*p, -q.clone());
        }
        out
    }
}

impl<'a> Mul<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        let mut out = PiScalar::default();
        for (p, a) in &self.terms {
            for (r, b) in &rhs.terms {
                out.add_term(p + r, a * b);
            }
        }
        out
    }
}

impl Add for PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> Self {
        PiScalar { terms: self.terms.into_iter().map(|(p, q)| (p, -q)).collect() }
    }
}

impl Zero for PiScalar {
    fn zero() -> Self {
        PiScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PiScalar {
    fn one() -> Self {
        PiScalar::int(1)
    }
}

impl Scalar for PiScalar {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        PiScalar { terms: self.terms.iter().map(|(p, q)| (*p, q.conjugate())).collect() }
    }
    fn from_rational(q: &BigRational) -> Self {
        PiScalar::rational(q.clone())
    }
    fn imag_unit() -> Self {
        PiScalar::gaussian(GaussianRational::i())
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (p, q) in &rhs.terms {
            self.add_term(*p, q.clone());
        }
    }
}

// ---------------------------------------------------------------------------
// Gamma, Pochhammer, binomials

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: HalfInt, n: u32) -> BigRational {
    (0..n as i64).fold(BigRational::one(), |acc, i| acc * a.plus(i).to_rational())
}

/// `Gamma(a)` for positive half-integers.
///
/// Integer arguments give `(a-1)!`; half-odd arguments `n + 1/2` give
/// `(2n)! / (4^n n!) * sqrt(pi)`.
pub fn gamma_half(a: HalfInt) -> Result<PiScalar> {
    if !a.is_positive() {
        return Err(Error::Domain(format!("Gamma({a}) requires a positive argument")));
    }
    if a.is_integer() {
        let n = (a.twice() / 2 - 1) as u64;
        return Ok(PiScalar::rational(BigRational::from_integer(factorial(n))));
    }
    let n = ((a.twice() - 1) / 2) as u64;
    let num = factorial(2 * n);
    let den = BigInt::from(4u32).pow(n as u32) * factorial(n);
    Ok(PiScalar::monomial(GaussianRational::real(BigRational::new(num, den)), 1))
}

/// `Gamma(a) / Gamma(b)` when `a - b` is an integer; rational.
pub fn gamma_ratio(a: HalfInt, b: HalfInt) -> Result<BigRational> {
    if (a.twice() - b.twice()) % 2 != 0 {
        return Err(Error::Domain(format!("Gamma({a})/Gamma({b}) is not rational")));
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Domain(format!("Gamma({a})/Gamma({b}) needs positive arguments")));
    }
    let steps = (a.twice() - b.twice()) / 2;
    Ok(if steps >= 0 {
        pochhammer(b, steps as u32)
    } else {
        pochhammer(a, (-steps) as u32).recip()
    })
}

/// Area of the unit sphere `S^(m-1)`: `2 pi^(m/2) / Gamma(m/2)`.
pub fn unit_sphere_area(m: usize) -> Result<PiScalar> {
    if m < 1 {
        return Err(Error::Domain("unit sphere area needs m >= 1".into()));
    }
    let g = gamma_half(HalfInt::half(m as i64))?;
    Ok((&PiScalar::int(2) * &PiScalar::pi_pow(m as i64)).checked_div(&g).expect("Gamma is a monomial"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt_pi() -> PiScalar {
        PiScalar::pi_pow(1)
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_half(HalfInt::int(3)).unwrap(), PiScalar::int(2));
        assert_eq!(gamma_half(HalfInt::from_twice(1)).unwrap(), sqrt_pi());
        assert_eq!(
            gamma_half(HalfInt::from_twice(5)).unwrap(),
            PiScalar::monomial(rat(3, 4).into(), 1)
        );
        assert!(gamma_half(HalfInt::int(0)).is_err());
        assert!(gamma_half(HalfInt::from_twice(-1)).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(HalfInt::int(7), 0), rat_int(1));
        assert_eq!(pochhammer(HalfInt::from_twice(3), 2), rat(15, 4));
        assert_eq!(pochhammer(HalfInt::int(-2), 3), rat_int(0));
    }

    #[test]
    fn sphere_areas() {
        assert_eq!(unit_sphere_area(2).unwrap(), PiScalar::monomial(2.into(), 2));
        assert_eq!(unit_sphere_area(3).unwrap(), PiScalar::monomial(4.into(), 2));
        assert_eq!(unit_sphere_area(4).unwrap(), PiScalar::monomial(2.into(), 4));
        assert!(unit_sphere_area(0).is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        let x = &PiScalar::monomial(rat(-1, 2).into(), 3) + &PiScalar::int(2);
        assert_eq!(x.to_string(), "2 * pi^(0/2) + -1/2 * pi^(3/2)");
        let z = PiScalar::gaussian(GaussianRational::new(rat(1, 3), rat(-2, 1)));
        assert_eq!(z.to_string(), "(1/3-2i) * pi^(0/2)");
        assert_eq!(PiScalar::zero().to_string(), "0");
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = PiScalar::monomial(3.into(), 1);
        assert!((&a - &a).is_zero());
        assert!((&a - &a).is_rational());
    }

    fn half_int() -> impl Strategy<Value = HalfInt> {
        (1i64..40).prop_map(HalfInt::from_twice)
    }

    fn pi_scalar() -> impl Strategy<Value = PiScalar> {
        prop::collection::vec((-3i64..4, -9i64..10, 1i64..7, -9i64..10), 0..4).prop_map(|v| {
            v.into_iter().fold(PiScalar::zero(), |acc, (p, n, d, im)| {
                &acc + &PiScalar::monomial(GaussianRational::new(rat(n, d), rat(im, d)), p)
            })
        })
    }

    proptest! {
        #[test]
        fn gamma_recurrence(a in half_int()) {
            let lhs = gamma_half(a.plus(1)).unwrap();
            let rhs = gamma_half(a).unwrap().scale(&a.to_rational().into());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pochhammer_splits(t in -20i64..20, n in 0u32..20, k in 0u32..20) {
            let a = HalfInt::from_twice(t);
            let lhs = pochhammer(a, n) * pochhammer(a.plus(n as i64), k);
            prop_assert_eq!(lhs, pochhammer(a, n + k));
        }

        #[test]
        fn pi_scalar_ring_laws(a in pi_scalar(), b in pi_scalar(), c in pi_scalar()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn rational_times_rational_is_rational(n in -50i64..50, d in 1i64..50, e in -50i64..50) {
            let p = &PiScalar::rational(rat(n, d)) * &PiScalar::rational(rat(e, d));
            prop_assert!(p.is_rational());
        }
    }
}
