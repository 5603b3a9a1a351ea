//! Exact integration of polynomials: Pizzetti's formula on `S^(m-1)`, the
//! same formula on the great sphere orthogonal to `t`, the phase integral on
//! `[0, pi)`, the `OL^2` pairing on the Lie sphere, and the normalized
//! average over orthonormal frames `(t, s)`.
//!
//! Integrals over `S^(m-1)` of polynomials are always `A_m` times a rational
//! combination, so most routines work with normalized means and attach the
//! transcendental factor at the end.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford::CliffordElement;
use crate::error::{Error, Result};
use crate::poly::{Block, CPoly, Monomial, Var};
use crate::scalar::{factorial, pochhammer, unit_sphere_area, GaussianRational, HalfInt, PiScalar};

/// Mean of `x^a` over `S^(m-1)` via Pizzetti: only the `k = |a|/2` term of
/// `sum_k (Delta^k x^a)(0) / (4^k k! (m/2)_k)` survives, with
/// `(Delta^k x^a)(0) = a! k! / prod (a_i/2)!`.
pub fn sphere_mean_monomial(exps: &[u32], m: usize) -> BigRational {
    if exps.iter().any(|e| e % 2 == 1) {
        return BigRational::zero();
    }
    let k: u32 = exps.iter().sum::<u32>() / 2;
    let mut num = BigInt::one();
    for &e in exps {
        num *= factorial(e as u64) / factorial((e / 2) as u64);
    }
    let den = BigRational::from_integer(BigInt::from(4).pow(k)) * pochhammer(HalfInt::half(m as i64), k);
    BigRational::from_integer(num) / den
}

/// Normalized integral over the `block` variable on `S^(m-1)`; the other
/// blocks pass through.
pub fn sphere_mean(f: &CPoly<GaussianRational>, block: Block) -> CPoly<GaussianRational> {
    let m = f.dim();
    let mut out = CPoly::zero(m);
    for (mono, c) in f.terms() {
        let (inside, rest) = mono.split(block);
        let w = sphere_mean_monomial(&inside.exponents_in(block, m), m);
        if !w.is_zero() {
            out.add_term(rest, c.scale(&w.into()));
        }
    }
    out
}

/// `int_{S^(m-1)} f dS` over the `block` variable.
pub fn sphere_integral(f: &CPoly<GaussianRational>, block: Block) -> Result<CPoly<PiScalar>> {
    let area = unit_sphere_area(f.dim())?;
    Ok(sphere_mean(f, block).map_scalars(|c| area.scale(c)))
}

/// `int_{S^(m-1)} f dS` for `f` depending on one block only.
pub fn sphere_integral_element(f: &CPoly<GaussianRational>) -> Result<CliffordElement<PiScalar>> {
    let blocks = f.blocks();
    if blocks.len() > 1 {
        return Err(Error::MixedBlocks { expected: blocks[0], found: blocks[1] });
    }
    let block = blocks.first().copied().unwrap_or(Block::Z);
    Ok(sphere_integral(f, block)?.map_scalars(|c| c.clone()).coeff(&Monomial::one()))
}

/// Normalized mean of the product `g f` over the `block` variable, without
/// materializing the product.
pub fn sphere_mean_of_product(
    g: &CPoly<GaussianRational>,
    f: &CPoly<GaussianRational>,
    block: Block,
) -> CPoly<GaussianRational> {
    let m = f.dim();
    let gs: Vec<_> = g.terms().map(|(mo, c)| (mo.split(block), c)).collect();
    let fs: Vec<_> = f.terms().map(|(mo, c)| (mo.split(block), c)).collect();
    let mut out = CPoly::zero(m);
    for ((gi, gr), gc) in &gs {
        for ((fi, fr), fc) in &fs {
            let w = sphere_mean_monomial(&gi.mul(fi).exponents_in(block, m), m);
            if w.is_zero() {
                continue;
            }
            let c = gc.mul_unchecked(fc).scale(&w.into());
            out.add_term(gr.mul(fr), c);
        }
    }
    out
}

/// `int_0^pi e^(i n theta) d theta`.
pub fn theta_integral(n: i64) -> PiScalar {
    if n == 0 {
        PiScalar::pi_pow(2)
    } else if n % 2 == 0 {
        PiScalar::zero()
    } else {
        PiScalar::gaussian(GaussianRational::new(BigRational::zero(), BigRational::new(2.into(), n.into())))
    }
}

/// `<g, f> = int_{S^(m-1)} int_0^pi g(e^(i theta) w)^dagger f(e^(i theta) w)`,
/// phase by phase over the homogeneous components in `Z`. Other blocks
/// (a symbolic frame) pass through.
pub fn ol2_pairing_poly(
    g: &CPoly<GaussianRational>,
    f: &CPoly<GaussianRational>,
) -> Result<CPoly<PiScalar>> {
    let m = f.dim();
    let area = unit_sphere_area(m)?;
    let gc = g.hermitian_conjugate().homogeneous_components(Block::Z);
    let fc = f.homogeneous_components(Block::Z);
    let mut out = CPoly::zero(m);
    for (a, ga) in &gc {
        for (b, fb) in &fc {
            let theta = theta_integral(*b as i64 - *a as i64);
            if theta.is_zero() {
                continue;
            }
            let weight = &theta * &area;
            let mean = sphere_mean_of_product(ga, fb, Block::Z);
            out.add_assign(&mean.map_scalars(|c| weight.scale(c)));
        }
    }
    Ok(out)
}

/// [`ol2_pairing_poly`] for functions of `z` alone.
pub fn ol2_pairing(
    g: &CPoly<GaussianRational>,
    f: &CPoly<GaussianRational>,
) -> Result<CliffordElement<PiScalar>> {
    g.require_only(Block::Z)?;
    f.require_only(Block::Z)?;
    Ok(ol2_pairing_poly(g, f)?.coeff(&Monomial::one()))
}

/// The pairing divided by `pi A_m`, keeping only equal-degree components.
/// Components of different degree in `z` cancel in the full pairing (odd
/// phase differences meet odd integrands), so this agrees with
/// [`ol2_pairing_poly`] up to the constant factor.
pub fn ol2_pairing_reduced(
    g: &CPoly<GaussianRational>,
    f: &CPoly<GaussianRational>,
) -> CPoly<GaussianRational> {
    let m = f.dim();
    let gc = g.hermitian_conjugate().homogeneous_components(Block::Z);
    let fc: HashMap<u32, CPoly<GaussianRational>> = f.homogeneous_components(Block::Z).into_iter().collect();
    let mut out = CPoly::zero(m);
    for (a, ga) in &gc {
        if let Some(fa) = fc.get(a) {
            out.add_assign(&sphere_mean_of_product(ga, fa, Block::Z));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Frame averages

type RPoly = HashMap<Monomial, BigRational>;

fn rpoly_mul(a: &RPoly, b: &RPoly) -> RPoly {
    let mut out = RPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let slot = out.entry(ma.mul(mb)).or_insert_with(BigRational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `Q(xi) = |xi|^2 - <t, xi>^2` with `xi` in block `S`, `t` in block `T`.
fn projected_symbol(m: usize) -> RPoly {
    let mut q = RPoly::new();
    for i in 1..=m {
        *q.entry(Monomial::from_pairs(vec![(Var::new(Block::S, i), 2)])).or_insert_with(BigRational::zero) +=
            BigRational::one();
        for j in 1..=m {
            let mono = Monomial::from_pairs(vec![
                (Var::new(Block::S, i), 1),
                (Var::new(Block::S, j), 1),
                (Var::new(Block::T, i), 1),
                (Var::new(Block::T, j), 1),
            ]);
            *q.entry(mono).or_insert_with(BigRational::zero) -= BigRational::one();
        }
    }
    q.retain(|_, c| !c.is_zero());
    q
}

#[derive(Default)]
struct Caches {
    symbol_powers: HashMap<(usize, u32), std::sync::Arc<RPoly>>,
    subspace: HashMap<(usize, Vec<u32>), std::sync::Arc<RPoly>>,
    uv: HashMap<(usize, Vec<(u32, u32)>), BigRational>,
}

fn caches() -> &'static Mutex<Caches> {
    static CACHES: OnceLock<Mutex<Caches>> = OnceLock::new();
    CACHES.get_or_init(|| Mutex::new(Caches::default()))
}

fn symbol_power(m: usize, k: u32) -> std::sync::Arc<RPoly> {
    if let Some(p) = caches().lock().expect("cache lock").symbol_powers.get(&(m, k)) {
        return p.clone();
    }
    let p = if k == 0 {
        let mut one = RPoly::new();
        one.insert(Monomial::one(), BigRational::one());
        one
    } else {
        rpoly_mul(&symbol_power(m, k - 1), &projected_symbol(m))
    };
    let p = std::sync::Arc::new(p);
    caches().lock().expect("cache lock").symbol_powers.insert((m, k), p.clone());
    p
}

/// Normalized mean of `s^d` over the unit sphere of `t^perp`, as a polynomial
/// in `t` valid on `|t| = 1`: Pizzetti in dimension `m - 1` with the
/// projected Laplacian, `(Delta_Pi^k s^d)(0) = d! [xi^d] Q(xi)^k`.
fn subspace_moment(m: usize, d: &[u32]) -> std::sync::Arc<RPoly> {
    let key = (m, d.to_vec());
    if let Some(p) = caches().lock().expect("cache lock").subspace.get(&key) {
        return p.clone();
    }
    let total: u32 = d.iter().sum();
    let mut out = RPoly::new();
    if total % 2 == 0 {
        let k = total / 2;
        let target = Monomial::from_exponents(Block::S, d);
        let mut scale = BigRational::one();
        for &e in d {
            scale *= BigRational::from_integer(factorial(e as u64));
        }
        scale /= BigRational::from_integer(BigInt::from(4).pow(k) * factorial(k as u64))
            * pochhammer(HalfInt::half(m as i64 - 1), k);
        for (mono, c) in symbol_power(m, k).iter() {
            let (sp, tp) = mono.split(Block::S);
            if sp == target {
                *out.entry(tp).or_insert_with(BigRational::zero) += c * &scale;
            }
        }
        out.retain(|_, c| !c.is_zero());
    }
    let out = std::sync::Arc::new(out);
    caches().lock().expect("cache lock").subspace.insert(key, out.clone());
    out
}

/// Normalized integral over the `S` variable on the great sphere orthogonal
/// to `t` (block `T`), as a polynomial in `t` valid on `|t| = 1`.
pub fn subspace_sphere_mean(f: &CPoly<GaussianRational>) -> CPoly<GaussianRational> {
    let m = f.dim();
    let mut out = CPoly::zero(m);
    for (mono, c) in f.terms() {
        let (sp, rest) = mono.split(Block::S);
        for (tp, w) in subspace_moment(m, &sp.exponents_in(Block::S, m)).iter() {
            out.add_term(rest.mul(tp), c.scale(&w.clone().into()));
        }
    }
    out
}

/// `int_{S(t^perp)} f dS(s)`, scaled by `A_(m-1)`.
pub fn subspace_sphere_integral(f: &CPoly<GaussianRational>) -> Result<CPoly<PiScalar>> {
    let area = unit_sphere_area(f.dim() - 1)?;
    Ok(subspace_sphere_mean(f).map_scalars(|c| area.scale(c)))
}

/// `E[t^c s^d]` over orthonormal pairs.
fn ts_moment(m: usize, c: &[u32], d: &[u32]) -> BigRational {
    let mut acc = BigRational::zero();
    for (tp, w) in subspace_moment(m, d).iter() {
        let mut e = tp.exponents_in(Block::T, m);
        for (x, y) in e.iter_mut().zip(c) {
            *x += y;
        }
        let mean = sphere_mean_monomial(&e, m);
        if !mean.is_zero() {
            acc += w * mean;
        }
    }
    acc
}

/// `E[u^a v^b]` over orthonormal pairs, `u = t + i s`, `v = t - i s`.
///
/// Rotating `(t, s)` in its own plane multiplies `u` by a phase and `v` by
/// the opposite one, so the moment vanishes unless `|a| = |b|`. Coordinate
/// permutations preserve the measure, so the cache key is sorted.
pub fn stiefel_moment_uv(m: usize, a: &[u32], b: &[u32]) -> BigRational {
    if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
        return BigRational::zero();
    }
    let mut key: Vec<(u32, u32)> = a.iter().copied().zip(b.iter().copied()).collect();
    key.sort_unstable();
    let key = (m, key);
    if let Some(v) = caches().lock().expect("cache lock").uv.get(&key) {
        return v.clone();
    }
    let (a, b): (Vec<u32>, Vec<u32>) = key.1.iter().copied().unzip();
    let value = expand_uv_moment(m, &a, &b);
    caches().lock().expect("cache lock").uv.insert(key, value.clone());
    value
}

fn expand_uv_moment(m: usize, a: &[u32], b: &[u32]) -> BigRational {
    // product over coordinates of (t_j + i s_j)^(a_j) (t_j - i s_j)^(b_j),
    // kept as a map from (t exponents, s exponents) to a Gaussian rational
    let mut terms: HashMap<(Vec<u32>, Vec<u32>), GaussianRational> = HashMap::new();
    terms.insert((vec![0; m], vec![0; m]), GaussianRational::one());
    let i = GaussianRational::i();
    for j in 0..m {
        for (count, sign) in [(a[j], 1i64), (b[j], -1i64)] {
            for _ in 0..count {
                let mut next: HashMap<(Vec<u32>, Vec<u32>), GaussianRational> = HashMap::new();
                for ((tc, sc), c) in &terms {
                    let mut t2 = tc.clone();
                    t2[j] += 1;
                    *next.entry((t2, sc.clone())).or_default() += c;
                    let mut s2 = sc.clone();
                    s2[j] += 1;
                    let w = &(c * &i) * &GaussianRational::int(sign);
                    *next.entry((tc.clone(), s2)).or_default() += &w;
                }
                next.retain(|_, c| !c.is_zero());
                terms = next;
            }
        }
    }
    let mut acc = GaussianRational::zero();
    for ((tc, sc), c) in &terms {
        if tc.iter().zip(sc).any(|(x, y)| (x + y) % 2 == 1) {
            continue;
        }
        let w = ts_moment(m, tc, sc);
        if !w.is_zero() {
            acc += &c.scale(&w);
        }
    }
    debug_assert!(acc.is_real());
    acc.re()
}

/// Weight of the frame part of a monomial: `E[t^c s^d u^a v^b]`.
fn frame_weight(m: usize, mono: &Monomial) -> GaussianRational {
    let tc = mono.exponents_in(Block::T, m);
    let sc = mono.exponents_in(Block::S, m);
    let a = mono.exponents_in(Block::U, m);
    let b = mono.exponents_in(Block::V, m);
    let has_ts = tc.iter().chain(&sc).any(|&e| e > 0);
    let has_uv = a.iter().chain(&b).any(|&e| e > 0);
    if !has_ts {
        return stiefel_moment_uv(m, &a, &b).into();
    }
    if !has_uv {
        return ts_moment(m, &tc, &sc).into();
    }
    // mixed monomial: rewrite u, v in terms of t, s
    let mut p = CPoly::term(mono.clone(), CliffordElement::one(m));
    let u: Vec<CPoly<GaussianRational>> = (1..=m)
        .map(|j| &CPoly::var(m, Block::T, j) + &CPoly::var(m, Block::S, j).scale(&GaussianRational::i()))
        .collect();
    let v: Vec<CPoly<GaussianRational>> = (1..=m)
        .map(|j| &CPoly::var(m, Block::T, j) - &CPoly::var(m, Block::S, j).scale(&GaussianRational::i()))
        .collect();
    p = substitute_vars(&p, Block::U, &u);
    p = substitute_vars(&p, Block::V, &v);
    let mut acc = GaussianRational::zero();
    for (mo, c) in p.terms() {
        let w = ts_moment(m, &mo.exponents_in(Block::T, m), &mo.exponents_in(Block::S, m));
        acc += &c.scalar_part().scale(&w);
    }
    acc
}

fn substitute_vars(
    p: &CPoly<GaussianRational>,
    block: Block,
    images: &[CPoly<GaussianRational>],
) -> CPoly<GaussianRational> {
    let m = p.dim();
    let mut out = CPoly::zero(m);
    for (mono, c) in p.terms() {
        let (inside, rest) = mono.split(block);
        let mut acc = CPoly::term(rest, c.clone());
        for &(v, e) in inside.factors() {
            acc = &acc * &images[v.index as usize - 1].pow(e);
        }
        out.add_assign(&acc);
    }
    out
}

fn is_frame_block(b: Block) -> bool {
    matches!(b, Block::T | Block::S | Block::U | Block::V)
}

fn split_frame(mono: &Monomial) -> (Monomial, Monomial) {
    let (frame, rest): (Vec<_>, Vec<_>) = mono.factors().iter().partition(|(v, _)| is_frame_block(v.block));
    (Monomial::from_pairs(frame), Monomial::from_pairs(rest))
}

/// Normalized average over orthonormal frames,
/// `(1/(A_m A_(m-1))) int_{S^(m-1)} int_{S(t^perp)} f dS(s) dS(t)`,
/// removing the blocks `T`, `S`, `U`, `V`.
pub fn stiefel_average(f: &CPoly<GaussianRational>) -> CPoly<GaussianRational> {
    let m = f.dim();
    let mut out = CPoly::zero(m);
    for (mono, c) in f.terms() {
        let (frame, rest) = split_frame(mono);
        let w = frame_weight(m, &frame);
        if !w.is_zero() {
            out.add_term(rest, c.scale(&w));
        }
    }
    out
}

/// [`stiefel_average`] of `g f` without materializing the product.
///
/// Both factors are grouped by their frame monomial; for each group `a` of
/// `g` the weighted sum `sum_b E[a b] f_b` is formed first and multiplied once.
pub fn stiefel_average_of_product(
    g: &CPoly<GaussianRational>,
    f: &CPoly<GaussianRational>,
) -> CPoly<GaussianRational> {
    let m = f.dim();
    let group = |p: &CPoly<GaussianRational>| {
        let mut groups: HashMap<Monomial, CPoly<GaussianRational>> = HashMap::new();
        for (mo, c) in p.terms() {
            let (frame, rest) = split_frame(mo);
            groups.entry(frame).or_insert_with(|| CPoly::zero(m)).add_term(rest, c.clone());
        }
        let mut v: Vec<_> = groups.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    };
    let gs = group(g);
    let fs = group(f);
    let mut out = CPoly::zero(m);
    for (ga, gp) in &gs {
        let mut acc = CPoly::zero(m);
        for (fb, fp) in &fs {
            let w = frame_weight(m, &ga.mul(fb));
            if !w.is_zero() {
                acc.add_assign(&fp.scale(&w));
            }
        }
        if !acc.is_zero() {
            out.add_assign(&(gp * &acc));
        }
    }
    out
}
