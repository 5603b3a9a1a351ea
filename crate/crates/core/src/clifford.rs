//! The complex Clifford algebra `C_m`: blades, geometric and wedge products,
//! Hermitian conjugation, and rational orthonormal frames `tau = t + i s`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{rat_int, GaussianRational, Scalar};

/// Basis blade `e_A`, `A` an increasing subset of `{1, ..., m}` stored as a
/// bit set (bit `j-1` for `e_j`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    /// `e_j`, 1-based.
    pub fn basis(j: usize) -> Blade {
        Blade(1 << (j - 1))
    }

    pub fn from_indices(indices: &[usize]) -> Blade {
        Blade(indices.iter().fold(0, |acc, &j| acc | (1 << (j - 1))))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// `e_A e_B = sign * e_(A xor B)`; sign from the transposition count of
    /// merging the two index lists, and `e_j^2 = -1` for every shared index.
    pub fn product(self, rhs: Blade) -> (Blade, bool) {
        let mut swaps = 0u32;
        let mut b = rhs.0;
        while b != 0 {
            let low = b.trailing_zeros();
            // generators of self with a larger index must pass over e_low
            swaps += (self.0 >> (low + 1)).count_ones();
            b &= b - 1;
        }
        swaps += (self.0 & rhs.0).count_ones();
        (Blade(self.0 ^ rhs.0), swaps % 2 == 1)
    }

    /// Sign picked up by reversing the generator order: `(-1)^(k(k-1)/2)`.
    pub fn reversion_negates(self) -> bool {
        let k = self.grade();
        (k * k.saturating_sub(1) / 2) % 2 == 1
    }

    fn lex_cmp(&self, other: &Blade) -> std::cmp::Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|j| j.to_string()).collect();
        write!(f, "e{{{}}}", idx.join(","))
    }
}

/// Element `sum_A alpha_A e_A` of `C_m` with no stored zero coefficients.
#[derive(Clone, PartialEq)]
pub struct CliffordElement<S> {
    m: usize,
    coeffs: BTreeMap<Blade, S>,
}

impl<S: Scalar> CliffordElement<S> {
    pub fn zero(m: usize) -> Self {
        CliffordElement { m, coeffs: BTreeMap::new() }
    }

    pub fn scalar(m: usize, value: S) -> Self {
        Self::blade(m, Blade::UNIT, value)
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, S::one())
    }

    pub fn blade(m: usize, blade: Blade, value: S) -> Self {
        assert!(blade.max_index() <= m, "blade {blade} outside C_{m}");
        let mut out = Self::zero(m);
        if !value.is_zero() {
            out.coeffs.insert(blade, value);
        }
        out
    }

    /// `e_j`, 1-based.
    pub fn basis(m: usize, j: usize) -> Self {
        Self::blade(m, Blade::basis(j), S::one())
    }

    /// The 1-vector `sum_j v_j e_j`.
    pub fn vector(components: &[S]) -> Self {
        let m = components.len();
        let mut out = Self::zero(m);
        for (j, c) in components.iter().enumerate() {
            out.add_term(Blade::basis(j + 1), c.clone());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, blade: Blade) -> S {
        self.coeffs.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    /// `[alpha]_0`.
    pub fn scalar_part(&self) -> S {
        self.coeff(Blade::UNIT)
    }

    pub fn grade_part(&self, k: u32) -> Self {
        CliffordElement {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn is_grade(&self, k: u32) -> bool {
        self.coeffs.keys().all(|b| b.grade() == k)
    }

    /// Components `(v_1, ..., v_m)` of a 1-vector.
    pub fn vector_components(&self) -> Result<Vec<S>> {
        if !self.is_grade(1) {
            return Err(Error::NotVector);
        }
        Ok((1..=self.m).map(|j| self.coeff(Blade::basis(j))).collect())
    }

    pub fn add_term(&mut self, blade: Blade, value: S) {
        if value.is_zero() {
            return;
        }
        debug_assert!(blade.max_index() <= self.m);
        let remove = {
            let slot = self.coeffs.entry(blade).or_insert_with(S::zero);
            slot.add_assign_ref(&value);
            slot.is_zero()
        };
        if remove {
            self.coeffs.remove(&blade);
        }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (b, c) in &rhs.coeffs {
            self.add_term(*b, c.clone());
        }
    }

    /// Adds `value * rhs`.
    pub fn add_scaled(&mut self, rhs: &Self, value: &S) {
        for (b, c) in &rhs.coeffs {
            self.add_term(*b, c.mul_ref(value));
        }
    }

    pub fn scale(&self, value: &S) -> Self {
        let mut out = Self::zero(self.m);
        out.add_scaled(self, value);
        out
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CliffordElement<T> {
        let mut out = CliffordElement::zero(self.m);
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c));
        }
        out
    }

    pub fn try_map_scalars<T: Scalar>(
        &self,
        f: impl Fn(&S) -> Option<T>,
    ) -> Option<CliffordElement<T>> {
        let mut out = CliffordElement::zero(self.m);
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c)?);
        }
        Some(out)
    }

    /// Geometric product under `e_j^2 = -1`, `e_j e_k = -e_k e_j`.
    pub fn geometric_product(&self, rhs: &Self) -> Result<Self> {
        if self.m != rhs.m {
            return Err(Error::DimensionMismatch { left: self.m, right: rhs.m });
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                let (blade, negate) = a.product(*b);
                let v = x.mul_ref(y);
                out.add_term(blade, if negate { -v } else { v });
            }
        }
        out
    }

    /// Hermitian conjugation: anti-automorphism with `e_j^dagger = -e_j` and
    /// complex conjugation of the coefficients.
    pub fn hermitian_conjugate(&self) -> Self {
        self.bar_with(|c| c.conj())
    }

    /// Clifford conjugation `alpha -> alpha-bar` (same blade signs as the
    /// Hermitian conjugate, coefficients untouched).
    pub fn bar(&self) -> Self {
        self.bar_with(|c| c.clone())
    }

    fn bar_with(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = Self::zero(self.m);
        for (b, c) in &self.coeffs {
            // reversal sign times (-1)^grade
            let negate = b.reversion_negates() ^ (b.grade() % 2 == 1);
            let v = f(c);
            out.add_term(*b, if negate { -v } else { v });
        }
        out
    }

    /// `u ^ v = sum_{i<j} (u_i v_j - u_j v_i) e_i e_j` for 1-vectors.
    pub fn wedge(&self, rhs: &Self) -> Result<Self> {
        if self.m != rhs.m {
            return Err(Error::DimensionMismatch { left: self.m, right: rhs.m });
        }
        let u = self.vector_components()?;
        let v = rhs.vector_components()?;
        let mut out = Self::zero(self.m);
        for i in 0..self.m {
            for j in i + 1..self.m {
                let c = u[i].mul_ref(&v[j]).sub_ref(&u[j].mul_ref(&v[i]));
                out.add_term(Blade::from_indices(&[i + 1, j + 1]), c);
            }
        }
        Ok(out)
    }

    /// Bilinear (not sesquilinear) pairing `<u, v> = sum_j u_j v_j`.
    pub fn dot(&self, rhs: &Self) -> Result<S> {
        let u = self.vector_components()?;
        let v = rhs.vector_components()?;
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch { left: u.len(), right: v.len() });
        }
        Ok(u.iter().zip(&v).fold(S::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b))))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for CliffordElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut blades: Vec<&Blade> = self.coeffs.keys().collect();
        blades.sort_by(|a, b| a.lex_cmp(b));
        let parts: Vec<String> =
            blades.iter().map(|b| format!("[{}]{}", self.coeffs[b], b)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for CliffordElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, S: Scalar> Add<&'a CliffordElement<S>> for &'a CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn add(self, rhs: &CliffordElement<S>) -> CliffordElement<S> {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a, S: Scalar> Sub<&'a CliffordElement<S>> for &'a CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn sub(self, rhs: &CliffordElement<S>) -> CliffordElement<S> {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<'a, S: Scalar> Mul<&'a CliffordElement<S>> for &'a CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn mul(self, rhs: &CliffordElement<S>) -> CliffordElement<S> {
        self.geometric_product(rhs).expect("dimension mismatch")
    }
}

impl<S: Scalar> Neg for CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn neg(self) -> Self {
        self.scale(&-S::one())
    }
}

// ---------------------------------------------------------------------------
// Frames

/// Exact orthonormal pair `(t, s)` representing `tau = t + i s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frame {
    t: Vec<BigRational>,
    s: Vec<BigRational>,
}

impl Frame {
    pub fn new(t: Vec<BigRational>, s: Vec<BigRational>) -> Result<Self> {
        if t.len() != s.len() {
            return Err(Error::DimensionMismatch { left: t.len(), right: s.len() });
        }
        if t.len() < 2 {
            return Err(Error::InvalidFrame("a frame needs m >= 2".into()));
        }
        let dot = |a: &[BigRational], b: &[BigRational]| {
            a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
        };
        if !dot(&t, &t).is_one() || !dot(&s, &s).is_one() || !dot(&t, &s).is_zero() {
            return Err(Error::InvalidFrame("t and s must be orthonormal".into()));
        }
        Ok(Frame { t, s })
    }

    /// `tau = e_1 + i e_2`.
    pub fn canonical(m: usize) -> Result<Self> {
        let mut t = vec![BigRational::zero(); m];
        let mut s = vec![BigRational::zero(); m];
        if m < 2 {
            return Err(Error::InvalidFrame("a frame needs m >= 2".into()));
        }
        t[0] = BigRational::one();
        s[1] = BigRational::one();
        Frame::new(t, s)
    }

    /// `Q e_1, Q e_2` where `Q = (I - A)(I + A)^(-1)` is the Cayley transform
    /// of a seeded random antisymmetric rational matrix `A`.
    pub fn rotated(m: usize, seed: u64) -> Result<Self> {
        let q = cayley_rotation(m, seed);
        let col = |j: usize| (0..m).map(|i| q[i][j].clone()).collect::<Vec<_>>();
        Frame::new(col(0), col(1))
    }

    /// Frame rotated by an explicit orthogonal matrix.
    pub fn rotate(&self, q: &[Vec<BigRational>]) -> Result<Self> {
        let apply = |v: &[BigRational]| -> Vec<BigRational> {
            q.iter()
                .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
                .collect()
        };
        Frame::new(apply(&self.t), apply(&self.s))
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[BigRational] {
        &self.t
    }

    pub fn s(&self) -> &[BigRational] {
        &self.s
    }

    /// Components `t_j + i s_j`.
    pub fn tau_components(&self) -> Vec<GaussianRational> {
        self.t
            .iter()
            .zip(&self.s)
            .map(|(t, s)| GaussianRational::new(t.clone(), s.clone()))
            .collect()
    }

    pub fn tau(&self) -> CliffordElement<GaussianRational> {
        CliffordElement::vector(&self.tau_components())
    }

    /// `tau^dagger = -t + i s`.
    pub fn tau_dagger(&self) -> CliffordElement<GaussianRational> {
        self.tau().hermitian_conjugate()
    }
}

/// Rational orthogonal matrix from the Cayley transform of a seeded random
/// antisymmetric matrix with small rational entries.
pub fn cayley_rotation(m: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![vec![BigRational::zero(); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let num: i64 = rng.gen_range(-3..=3);
            let den: i64 = rng.gen_range(1..=3);
            a[i][j] = BigRational::new(BigInt::from(num), BigInt::from(den));
            a[j][i] = -a[i][j].clone();
        }
    }
    let ident = |i: usize, j: usize| if i == j { BigRational::one() } else { BigRational::zero() };
    let minus: Vec<Vec<BigRational>> =
        (0..m).map(|i| (0..m).map(|j| ident(i, j) - &a[i][j]).collect()).collect();
    let plus: Vec<Vec<BigRational>> =
        (0..m).map(|i| (0..m).map(|j| ident(i, j) + &a[i][j]).collect()).collect();
    let inv = invert_matrix(&plus).expect("I + A is invertible for antisymmetric A");
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).fold(BigRational::zero(), |acc, k| acc + &minus[i][k] * &inv[k][j]))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse over the rationals.
pub fn invert_matrix(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { rat_int(1) } else { rat_int(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    type Mv = CliffordElement<GaussianRational>;

    fn e(m: usize, j: usize) -> Mv {
        Mv::basis(m, j)
    }

    fn gi() -> GaussianRational {
        GaussianRational::i()
    }

    #[test]
    fn defining_relations() {
        let m = 3;
        assert_eq!(&e(m, 1) * &e(m, 1), Mv::scalar(m, (-1).into()));
        let e12 = Mv::blade(m, Blade::from_indices(&[1, 2]), 1.into());
        assert_eq!(&e(m, 1) * &e(m, 2), e12);
        assert_eq!(&e(m, 2) * &e(m, 1), -e12.clone());
        let tau = &e(m, 1) + &e(m, 2).scale(&gi());
        assert!((&tau * &tau).is_zero());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(e(3, 1).geometric_product(&e(4, 1)).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let m = 2;
        assert_eq!(e(m, 1).hermitian_conjugate(), -e(m, 1));
        assert_eq!(Mv::scalar(m, gi()).hermitian_conjugate(), Mv::scalar(m, -gi()));
        let e12 = &e(m, 1) * &e(m, 2);
        assert_eq!(e12.hermitian_conjugate(), -e12);
    }

    #[test]
    fn wedge_examples() {
        let m = 3;
        let e12 = Mv::blade(m, Blade::from_indices(&[1, 2]), 1.into());
        assert_eq!(e(m, 1).wedge(&e(m, 2)).unwrap(), e12);
        assert!(e(m, 1).wedge(&e(m, 1)).unwrap().is_zero());
        let f = Frame::canonical(m).unwrap();
        assert_eq!(f.tau().wedge(&f.tau_dagger()).unwrap(), e12.scale(&GaussianRational::new(rat(0, 1), rat(2, 1))));
        assert_eq!(e(m, 1).wedge(&e12), Err(Error::NotVector));
    }

    #[test]
    fn scalar_parts() {
        let m = 2;
        let x = &(&Mv::scalar(m, 3.into()) + &e(m, 1).scale(&2.into())) + &(&e(m, 1) * &e(m, 2));
        assert_eq!(x.scalar_part(), 3.into());
        assert_eq!((&e(m, 1) * &e(m, 2)).scalar_part(), 0.into());
        for seed in 0..5 {
            let f = Frame::rotated(4, seed).unwrap();
            assert_eq!((&f.tau() * &f.tau_dagger()).scalar_part(), 2.into());
        }
    }

    #[test]
    fn display_is_lexicographic() {
        let m = 3;
        let x = &(&e(m, 2) + &Mv::blade(m, Blade::from_indices(&[1, 3]), 1.into()))
            + &Mv::scalar(m, 5.into());
        assert_eq!(x.to_string(), "[5]e{} + [1]e{1,3} + [1]e{2}");
    }

    #[test]
    fn rotated_frames_are_orthonormal_and_deterministic() {
        for m in 2..7 {
            for seed in 0..10 {
                let a = Frame::rotated(m, seed).unwrap();
                assert_eq!(a, Frame::rotated(m, seed).unwrap());
            }
        }
        assert_ne!(Frame::rotated(4, 1).unwrap(), Frame::canonical(4).unwrap());
        assert!(Frame::new(vec![rat(1, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn tau_identities_on_many_frames() {
        for m in 3..7 {
            for seed in 0..10 {
                let f = Frame::rotated(m, seed).unwrap();
                let (t, td) = (f.tau(), f.tau_dagger());
                assert_eq!(&(&t * &td) * &t, t.scale(&4.into()));
                assert!((&t * &t).is_zero());
                assert!((&td * &td).is_zero());
                assert_eq!(&(&t * &td) + &(&td * &t), Mv::scalar(m, 4.into()));
                let w = t.wedge(&td).unwrap();
                assert!(w.is_grade(2));
                assert_eq!(&t * &td, &Mv::scalar(m, 2.into()) + &w);
            }
        }
    }

    #[test]
    fn float_instantiation_agrees() {
        use num_complex::Complex;
        let f = Frame::rotated(4, 3).unwrap();
        let tau = f.tau().map_scalars(|c| c.to_complex());
        let td = tau.hermitian_conjugate();
        let prod = &(&tau * &td) * &tau;
        let expect = tau.scale(&Complex::new(4.0, 0.0));
        for (b, c) in prod.terms() {
            assert!((c - expect.coeff(b)).norm() < 1e-12);
        }
    }

    fn gauss() -> impl Strategy<Value = GaussianRational> {
        (-6i64..7, -6i64..7, 1i64..5).prop_map(|(a, b, d)| GaussianRational::new(rat(a, d), rat(b, d)))
    }

    fn element(m: usize) -> impl Strategy<Value = Mv> {
        prop::collection::vec((0u32..(1 << m), gauss()), 0..6).prop_map(move |v| {
            let mut x = Mv::zero(m);
            for (b, c) in v {
                x.add_term(Blade(b), c);
            }
            x
        })
    }

    fn vector(m: usize) -> impl Strategy<Value = Mv> {
        prop::collection::vec(gauss(), m).prop_map(|v| Mv::vector(&v))
    }

    proptest! {
        #[test]
        fn anticommutator_of_vectors(u in vector(4), v in vector(4)) {
            let lhs = &(&u * &v) + &(&v * &u);
            let dot = u.dot(&v).unwrap();
            prop_assert_eq!(lhs, Mv::scalar(4, dot.mul_ref(&(-2).into())));
            let rhs = &Mv::scalar(4, -dot) + &u.wedge(&v).unwrap();
            prop_assert_eq!(&u * &v, rhs);
        }

        #[test]
        fn conjugation_is_involutive_anti_automorphism(a in element(4), b in element(4)) {
            prop_assert_eq!(a.hermitian_conjugate().hermitian_conjugate(), a.clone());
            prop_assert_eq!((&a * &b).hermitian_conjugate(), &b.hermitian_conjugate() * &a.hermitian_conjugate());
            prop_assert_eq!((&a * &b).bar(), &b.bar() * &a.bar());
        }

        #[test]
        fn product_is_associative(a in element(4), b in element(4), c in element(4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
