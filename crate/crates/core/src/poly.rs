//! Polynomials in vector-variable blocks with Clifford coefficients, and the
//! differential operators acting on them.
//!
//! A term is a commuting monomial times a Clifford coefficient; coefficients
//! are kept to the right of the monomial. Blocks:
//!
//! * `Z` the function argument, `Y` an auxiliary second argument,
//! * `T`, `S` the real frame `tau = t + i s`,
//! * `U`, `V` holomorphic frame coordinates `u = t + i s`, `v = t - i s`.
//!
//! On real points `conj(u) = v`, which is how [`CPoly::hermitian_conjugate`]
//! treats the `U`/`V` blocks.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::clifford::{Blade, CliffordElement, Frame};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Z,
    Y,
    T,
    S,
    U,
    V,
}

impl Block {
    pub const ALL: [Block; 6] = [Block::Z, Block::Y, Block::T, Block::S, Block::U, Block::V];

    pub fn letter(self) -> char {
        match self {
            Block::Z => 'z',
            Block::Y => 'y',
            Block::T => 't',
            Block::S => 's',
            Block::U => 'u',
            Block::V => 'v',
        }
    }

    pub fn from_letter(c: char) -> Option<Block> {
        Block::ALL.into_iter().find(|b| b.letter() == c)
    }

    /// Image under complex conjugation of real points.
    pub fn conjugate(self) -> Block {
        match self {
            Block::U => Block::V,
            Block::V => Block::U,
            b => b,
        }
    }
}

/// Indeterminate `block_index` (index 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub block: Block,
    pub index: u8,
}

impl Var {
    pub fn new(block: Block, index: usize) -> Var {
        Var { block, index: index as u8 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.block.letter(), self.index)
    }
}

/// Commuting monomial; sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Monomial {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by_key(|(v, _)| *v);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    /// Monomial `prod_j block_j^exps[j]`.
    pub fn from_exponents(block: Block, exps: &[u32]) -> Monomial {
        Monomial::from_pairs(
            exps.iter().enumerate().map(|(j, &e)| (Var::new(block, j + 1), e)).collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, block: Block) -> u32 {
        self.0.iter().filter(|(v, _)| v.block == block).map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    /// Exponent vector of one block, length `m`.
    pub fn exponents_in(&self, block: Block, m: usize) -> Vec<u32> {
        let mut out = vec![0; m];
        for (v, e) in &self.0 {
            if v.block == block {
                out[v.index as usize - 1] = *e;
            }
        }
        out
    }

    pub fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        self.0.iter().map(|(v, _)| v.block)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `d/dv` as `(multiplier, monomial)`, `None` when the result is zero.
    pub fn derivative(&self, v: Var) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|(w, _)| *w == v)?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    /// Splits into the part in `block` and the rest.
    pub fn split(&self, block: Block) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| v.block == block);
        (Monomial(a), Monomial(b))
    }

    pub fn map_blocks(&self, f: impl Fn(Block) -> Block) -> Monomial {
        Monomial::from_pairs(
            self.0.iter().map(|(v, e)| (Var { block: f(v.block), index: v.index }, *e)).collect(),
        )
    }

    fn canonical_key(&self) -> (u32, &[(Var, u32)]) {
        (self.degree(), &self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Polynomial with Clifford coefficients over scalar `S`.
#[derive(Clone, PartialEq)]
pub struct CPoly<S> {
    m: usize,
    terms: BTreeMap<Monomial, CliffordElement<S>>,
}

impl<S: Scalar> CPoly<S> {
    pub fn zero(m: usize) -> Self {
        CPoly { m, terms: BTreeMap::new() }
    }

    pub fn constant(value: CliffordElement<S>) -> Self {
        Self::term(Monomial::one(), value)
    }

    pub fn scalar(m: usize, value: S) -> Self {
        Self::constant(CliffordElement::scalar(m, value))
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, S::one())
    }

    pub fn term(mono: Monomial, value: CliffordElement<S>) -> Self {
        let mut out = Self::zero(value.dim());
        out.add_term(mono, value);
        out
    }

    /// The scalar indeterminate `block_j`.
    pub fn var(m: usize, block: Block, j: usize) -> Self {
        Self::term(Monomial::var(Var::new(block, j)), CliffordElement::one(m))
    }

    /// The vector variable `sum_j e_j block_j`.
    pub fn vector_variable(m: usize, block: Block) -> Self {
        let mut out = Self::zero(m);
        for j in 1..=m {
            out.add_term(Monomial::var(Var::new(block, j)), CliffordElement::basis(m, j));
        }
        out
    }

    /// Scalar polynomial `sum_j c_j block_j`.
    pub fn linear_form(block: Block, c: &[S]) -> Self {
        let m = c.len();
        let mut out = Self::zero(m);
        for (j, cj) in c.iter().enumerate() {
            out.add_term(Monomial::var(Var::new(block, j + 1)), CliffordElement::scalar(m, cj.clone()));
        }
        out
    }

    /// Scalar polynomial `sum_j a_j b_j`.
    pub fn pairing(m: usize, a: Block, b: Block) -> Self {
        let mut out = Self::zero(m);
        for j in 1..=m {
            out.add_term(
                Monomial::from_pairs(vec![(Var::new(a, j), 1), (Var::new(b, j), 1)]),
                CliffordElement::one(m),
            );
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CliffordElement<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> CliffordElement<S> {
        self.terms.get(mono).cloned().unwrap_or_else(|| CliffordElement::zero(self.m))
    }

    pub fn add_term(&mut self, mono: Monomial, value: CliffordElement<S>) {
        if value.is_zero() {
            return;
        }
        debug_assert_eq!(value.dim(), self.m);
        match self.terms.get_mut(&mono) {
            Some(slot) => {
                slot.add_assign(&value);
                if slot.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, value);
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (mono, c) in &rhs.terms {
            self.add_term(mono.clone(), c.clone());
        }
    }

    pub fn scale(&self, value: &S) -> Self {
        self.map_coeffs(|c| c.scale(value))
    }

    pub fn map_coeffs(&self, f: impl Fn(&CliffordElement<S>) -> CliffordElement<S>) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), f(c));
        }
        out
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CPoly<T> {
        let mut out = CPoly::zero(self.m);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), c.map_scalars(&f));
        }
        out
    }

    pub fn try_map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> Option<T>) -> Option<CPoly<T>> {
        let mut out = CPoly::zero(self.m);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), c.try_map_scalars(&f)?);
        }
        Some(out)
    }

    /// `a f` with `a` a constant on the left.
    pub fn left_mul(&self, a: &CliffordElement<S>) -> Self {
        self.map_coeffs(|c| a.mul_unchecked(c))
    }

    /// `f a` with `a` a constant on the right.
    pub fn right_mul(&self, a: &CliffordElement<S>) -> Self {
        self.map_coeffs(|c| c.mul_unchecked(a))
    }

    pub fn mul_poly(&self, rhs: &Self) -> Result<Self> {
        if self.m != rhs.m {
            return Err(Error::DimensionMismatch { left: self.m, right: rhs.m });
        }
        let mut out = Self::zero(self.m);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), a.mul_unchecked(b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.m);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            if let Some((e, rest)) = mono.derivative(v) {
                out.add_term(rest, c.scale(&S::from_i64(e as i64)));
            }
        }
        out
    }

    /// Left Dirac operator `sum_j e_j d/d(block_j) f`.
    pub fn dirac(&self, block: Block) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            for &(v, e) in mono.factors() {
                if v.block != block {
                    continue;
                }
                let (_, rest) = mono.derivative(v).expect("factor present");
                let ej = CliffordElement::basis(self.m, v.index as usize);
                out.add_term(rest, ej.mul_unchecked(c).scale(&S::from_i64(e as i64)));
            }
        }
        out
    }

    /// Right Dirac operator `sum_j (d/d(block_j) f) e_j`.
    pub fn dirac_right(&self, block: Block) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            for &(v, e) in mono.factors() {
                if v.block != block {
                    continue;
                }
                let (_, rest) = mono.derivative(v).expect("factor present");
                let ej = CliffordElement::basis(self.m, v.index as usize);
                out.add_term(rest, c.mul_unchecked(&ej).scale(&S::from_i64(e as i64)));
            }
        }
        out
    }

    pub fn laplacian(&self, block: Block) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            for &(v, e) in mono.factors() {
                if v.block != block || e < 2 {
                    continue;
                }
                let (_, r1) = mono.derivative(v).expect("factor present");
                let (_, r2) = r1.derivative(v).expect("factor present");
                out.add_term(r2, c.scale(&S::from_i64((e * (e - 1)) as i64)));
            }
        }
        out
    }

    /// `Gamma_z = -sum_{i<j} e_i e_j (z_i d_j - z_j d_i)` in block `Z`.
    pub fn gamma_operator(&self) -> Result<Self> {
        self.require_only(Block::Z)?;
        let m = self.m;
        let mut out = Self::zero(m);
        for i in 1..=m {
            for j in i + 1..=m {
                let zi = Self::var(m, Block::Z, i);
                let zj = Self::var(m, Block::Z, j);
                let l = &(&zi * &self.partial(Var::new(Block::Z, j)))
                    - &(&zj * &self.partial(Var::new(Block::Z, i)));
                let eij = CliffordElement::blade(m, Blade::from_indices(&[i, j]), -S::one());
                out.add_assign(&l.left_mul(&eij));
            }
        }
        Ok(out)
    }

    pub fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<Block> = self.terms.keys().flat_map(|mo| mo.blocks()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Errors unless every variable belongs to `block`.
    pub fn require_only(&self, block: Block) -> Result<()> {
        match self.blocks().into_iter().find(|b| *b != block) {
            Some(found) => Err(Error::MixedBlocks { expected: block, found }),
            None => Ok(()),
        }
    }

    pub fn degree_in(&self, block: Block) -> u32 {
        self.terms.keys().map(|mo| mo.degree_in(block)).max().unwrap_or(0)
    }

    /// The common degree in `block`, or `None` if not homogeneous. The zero
    /// polynomial is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self, block: Block) -> Option<u32> {
        let mut degs = self.terms.keys().map(|mo| mo.degree_in(block));
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    pub fn require_homogeneous(&self, block: Block) -> Result<u32> {
        self.homogeneous_degree(block).ok_or(Error::NotHomogeneous(block))
    }

    /// Split by total degree in `block`, ascending; zero parts omitted.
    pub fn homogeneous_components(&self, block: Block) -> Vec<(u32, Self)> {
        let mut parts: BTreeMap<u32, Self> = BTreeMap::new();
        for (mono, c) in &self.terms {
            parts
                .entry(mono.degree_in(block))
                .or_insert_with(|| Self::zero(self.m))
                .add_term(mono.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// Substitutes values for every indeterminate of the given blocks.
    pub fn evaluate(&self, points: &[(Block, Vec<S>)]) -> Result<CliffordElement<S>> {
        let p = self.evaluate_partial(points)?;
        if let Some(b) = p.blocks().first() {
            return Err(Error::MissingAssignment(*b));
        }
        Ok(p.coeff(&Monomial::one()))
    }

    /// Substitutes values for the listed blocks, keeping the others symbolic.
    pub fn evaluate_partial(&self, points: &[(Block, Vec<S>)]) -> Result<Self> {
        for (_, p) in points {
            if p.len() != self.m {
                return Err(Error::DimensionMismatch { left: self.m, right: p.len() });
            }
        }
        let lookup = |v: Var| {
            points.iter().find(|(b, _)| *b == v.block).map(|(_, p)| &p[v.index as usize - 1])
        };
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            let mut value = S::one();
            let mut keep = Vec::new();
            for &(v, e) in mono.factors() {
                match lookup(v) {
                    Some(x) => {
                        for _ in 0..e {
                            value = value.mul_ref(x);
                        }
                    }
                    None => keep.push((v, e)),
                }
            }
            out.add_term(Monomial(keep), c.scale(&value));
        }
        Ok(out)
    }

    /// Linear change of variables `block -> R block`, `R` an `m x m` matrix.
    pub fn substitute_linear(&self, block: Block, r: &[Vec<S>]) -> Self {
        let m = self.m;
        let images: Vec<Self> = (0..m)
            .map(|i| Self::linear_form(block, &r[i]))
            .collect();
        let mut out = Self::zero(m);
        for (mono, c) in &self.terms {
            let (inside, rest) = mono.split(block);
            let mut acc = Self::term(rest, c.clone());
            for &(v, e) in inside.factors() {
                acc = &images[v.index as usize - 1].pow(e) * &acc;
            }
            out.add_assign(&acc);
        }
        out
    }

    pub fn rename_block(&self, from: Block, to: Block) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            out.add_term(mono.map_blocks(|b| if b == from { to } else { b }), c.clone());
        }
        out
    }

    /// Conjugate on real points: Hermitian conjugate of the coefficients and
    /// `u <-> v`.
    pub fn hermitian_conjugate(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            out.add_term(mono.map_blocks(Block::conjugate), c.hermitian_conjugate());
        }
        out
    }

    /// Terms sorted by degree then lexicographic monomial.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &CliffordElement<S>)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.canonical_key().cmp(&b.0.canonical_key()));
        v
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for CPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .canonical_terms()
            .into_iter()
            .map(|(mono, c)| format!("{mono} * ({c})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for CPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, S: Scalar> Add<&'a CPoly<S>> for &'a CPoly<S> {
    type Output = CPoly<S>;
    fn add(self, rhs: &CPoly<S>) -> CPoly<S> {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a, S: Scalar> Sub<&'a CPoly<S>> for &'a CPoly<S> {
    type Output = CPoly<S>;
    fn sub(self, rhs: &CPoly<S>) -> CPoly<S> {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(mono.clone(), c.scale(&-S::one()));
        }
        out
    }
}

impl<'a, S: Scalar> Mul<&'a CPoly<S>> for &'a CPoly<S> {
    type Output = CPoly<S>;
    fn mul(self, rhs: &CPoly<S>) -> CPoly<S> {
        self.mul_poly(rhs).expect("dimension mismatch")
    }
}

impl<S: Scalar> Neg for CPoly<S> {
    type Output = CPoly<S>;
    fn neg(self) -> CPoly<S> {
        self.scale(&-S::one())
    }
}

// ---------------------------------------------------------------------------
// Frame polynomials

/// A frame as it enters polynomial formulas: concrete rational values, or
/// the symbolic holomorphic coordinates `u = t + i s`, `v = t - i s`.
#[derive(Clone, Debug, PartialEq)]
pub enum FrameSpec {
    Concrete(Frame),
    Symbolic,
}

impl FrameSpec {
    /// `tau` as a constant or as `sum_j e_j u_j`.
    pub fn tau(&self, m: usize) -> CPoly<GaussianRational> {
        match self {
            FrameSpec::Concrete(f) => CPoly::constant(f.tau()),
            FrameSpec::Symbolic => CPoly::vector_variable(m, Block::U),
        }
    }

    /// `tau^dagger = -t + i s`, symbolically `-sum_j e_j v_j`.
    pub fn tau_dagger(&self, m: usize) -> CPoly<GaussianRational> {
        match self {
            FrameSpec::Concrete(f) => CPoly::constant(f.tau_dagger()),
            FrameSpec::Symbolic => -CPoly::vector_variable(m, Block::V),
        }
    }

    /// `<z, tau>`.
    pub fn z_dot_tau(&self, m: usize) -> CPoly<GaussianRational> {
        match self {
            FrameSpec::Concrete(f) => CPoly::linear_form(Block::Z, &f.tau_components()),
            FrameSpec::Symbolic => CPoly::pairing(m, Block::Z, Block::U),
        }
    }

    /// `<z, tau^dagger>`.
    pub fn z_dot_tau_dagger(&self, m: usize) -> CPoly<GaussianRational> {
        match self {
            FrameSpec::Concrete(f) => {
                let c: Vec<_> = f.tau_components().iter().map(|x| -x.conjugate()).collect();
                CPoly::linear_form(Block::Z, &c)
            }
            FrameSpec::Symbolic => -CPoly::pairing(m, Block::Z, Block::V),
        }
    }
}

// ---------------------------------------------------------------------------
// Text form parser (Gaussian-rational coefficients)

/// Parses the canonical text form produced by `Display`.
pub fn parse_poly(m: usize, text: &str) -> Result<CPoly<GaussianRational>> {
    let text = text.trim();
    let mut out = CPoly::zero(m);
    if text == "0" {
        return Ok(out);
    }
    let mut rest = text;
    loop {
        let star = rest.find(" * (").ok_or_else(|| Error::Parse(format!("missing ` * (` in `{rest}`")))?;
        let mono = parse_monomial(&rest[..star], m)?;
        let body_start = star + 4;
        let close = matching_paren(rest, body_start - 1)?;
        let elem = parse_element(m, &rest[body_start..close])?;
        out.add_term(mono, elem);
        rest = &rest[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(" + ")
            .ok_or_else(|| Error::Parse(format!("expected ` + ` before `{rest}`")))?;
    }
    Ok(out)
}

fn matching_paren(s: &str, open: usize) -> Result<usize> {
    let mut depth = 0i32;
    for (i, ch) in s[open..].char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(open + i);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse("unbalanced parentheses".into()))
}

fn parse_monomial(s: &str, m: usize) -> Result<Monomial> {
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::one());
    }
    let mut pairs = Vec::new();
    for factor in s.split('*') {
        let mut chars = factor.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty factor".into()))?;
        let block =
            Block::from_letter(letter).ok_or_else(|| Error::Parse(format!("unknown block `{letter}`")))?;
        let body = chars.as_str();
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?),
            None => (body, 1),
        };
        let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad index in `{factor}`")))?;
        if idx == 0 || idx > m {
            return Err(Error::OutOfRange(format!("variable index {idx} with m = {m}")));
        }
        pairs.push((Var::new(block, idx), exp));
    }
    Ok(Monomial::from_pairs(pairs))
}

/// Parses `[c]e{...} + [c]e{...}` or `0`.
pub fn parse_element(m: usize, s: &str) -> Result<CliffordElement<GaussianRational>> {
    let s = s.trim();
    let mut out = CliffordElement::zero(m);
    if s == "0" {
        return Ok(out);
    }
    let mut rest = s;
    loop {
        rest = rest.strip_prefix('[').ok_or_else(|| Error::Parse(format!("expected `[` in `{rest}`")))?;
        let close = rest.find(']').ok_or_else(|| Error::Parse("missing `]`".into()))?;
        let coeff = parse_gaussian(&rest[..close])?;
        rest = rest[close + 1..]
            .strip_prefix("e{")
            .ok_or_else(|| Error::Parse("expected `e{`".into()))?;
        let end = rest.find('}').ok_or_else(|| Error::Parse("missing `}`".into()))?;
        let idx: Vec<usize> = if rest[..end].is_empty() {
            Vec::new()
        } else {
            rest[..end]
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?
        };
        if idx.iter().any(|&j| j == 0 || j > m) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("bad blade indices {idx:?}")));
        }
        out.add_term(Blade::from_indices(&idx), coeff);
        rest = &rest[end + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(" + ")
            .ok_or_else(|| Error::Parse(format!("expected ` + ` before `{rest}`")))?;
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let int = |x: &str| x.parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(n)?, d))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}

/// Parses `q`, `qi`, or `(a+bi)` / `(a-bi)`.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|x| x.strip_suffix("i)")) {
        // split at the sign that separates the real and imaginary parts
        let pos = inner
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::Parse(format!("bad complex `{s}`")))?;
        let re = parse_rational(&inner[..pos])?;
        let im = parse_rational(inner[pos..].trim_start_matches('+'))?;
        return Ok(GaussianRational::new(re, im));
    }
    if let Some(im) = s.strip_suffix('i') {
        return Ok(GaussianRational::new(BigRational::zero(), parse_rational(im)?));
    }
    Ok(GaussianRational::real(parse_rational(s)?))
}

/// Rational helper used by tests and suites: `|x|^2` for a block.
pub fn norm_squared(m: usize, block: Block) -> CPoly<GaussianRational> {
    CPoly::pairing(m, block, block)
}

/// `x^n` for the vector variable of `block`, using `x^2 = -|x|^2`.
pub fn vector_power(m: usize, block: Block, n: u32) -> CPoly<GaussianRational> {
    let sq = -norm_squared(m, block);
    let base = sq.pow(n / 2);
    if n % 2 == 1 {
        &CPoly::vector_variable(m, block) * &base
    } else {
        base
    }
}

impl CPoly<GaussianRational> {
    pub fn constant_term(&self) -> CliffordElement<GaussianRational> {
        self.coeff(&Monomial::one())
    }
}
