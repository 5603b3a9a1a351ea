//! Harmonic and monogenic projections of homogeneous polynomials in `z`, and
//! the full Fischer decomposition `P_k = sum_j z^j M_(k-j)`.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{vector_power, Block, CPoly};
use crate::scalar::{factorial, gamma_ratio, rat, GaussianRational, HalfInt};

type Poly = CPoly<GaussianRational>;

fn minus_quarter_pow(n: u32) -> BigRational {
    let q = rat(-1, 4);
    (0..n).fold(BigRational::one(), |acc, _| acc * &q)
}

fn fact(n: u32) -> BigRational {
    BigRational::from_integer(factorial(n as u64))
}

/// `alpha_j` of the harmonic projector onto degree `k - 2l`.
pub fn alpha_coefficient(j: u32, l: u32, k: u32, m: usize) -> Result<BigRational> {
    let (k, l, j) = (k as i64, l as i64, j as i64);
    let h = HalfInt::half(m as i64);
    let sign = if j % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let lead = (h + (k - 2 * l - 1)).to_rational();
    let ratio = gamma_ratio(h + (k - 2 * l - j - 1), h + (k - l))?;
    let den = BigRational::from_integer(num_bigint::BigInt::from(4).pow((j + l) as u32))
        * fact(j as u32)
        * fact(l as u32);
    Ok(sign * lead * ratio / den)
}

/// `beta_(j,2l)` of the monogenic projector `proj^k_(2l)`.
pub fn beta_coefficient(j: u32, l: u32, k: u32, m: usize) -> Result<BigRational> {
    let h = HalfInt::half(m as i64);
    let (k, l) = (k as i64, l as i64);
    let half = (j / 2) as i64;
    let ratio = if j % 2 == 0 {
        gamma_ratio(h + (k - 2 * l - half), h + (k - l))?
    } else {
        gamma_ratio(h + (k - 2 * l - half - 1), h + (k - l))? / rat(2, 1)
    };
    Ok(minus_quarter_pow((half + l) as u32) * ratio / (fact(half as u32) * fact(l as u32)))
}

fn check_degree(p: &Poly, l: u32) -> Result<u32> {
    let k = p.require_homogeneous(Block::Z)?;
    if 2 * l > k {
        return Err(Error::OutOfRange(format!("2l = {} exceeds degree {k}", 2 * l)));
    }
    Ok(k)
}

/// `H_(k-2l)` in `P = sum_l (-z^2)^l H_(k-2l)`, by
/// `sum_j alpha_j (-z^2)^j Delta^(j+l)`.
pub fn harmonic_component(p: &Poly, l: u32) -> Result<Poly> {
    let k = check_degree(p, l)?;
    let m = p.dim();
    let minus_z2 = crate::poly::norm_squared(m, Block::Z);
    let mut lap = p.clone();
    for _ in 0..l {
        lap = lap.laplacian(Block::Z);
    }
    let mut out = Poly::zero(m);
    let mut z2j = Poly::one(m);
    for j in 0..=(k / 2 - l) {
        let a = alpha_coefficient(j, l, k, m)?;
        out.add_assign(&(&z2j * &lap).scale(&a.into()));
        lap = lap.laplacian(Block::Z);
        z2j = &z2j * &minus_z2;
    }
    Ok(out)
}

/// `M_(k-2l)` via `proj^k_(2l) = sum_j beta_(j,2l) z^j d^(j+2l)`. This is the
/// monogenic part of `H_(k-2l)`.
pub fn monogenic_component(p: &Poly, l: u32) -> Result<Poly> {
    let k = check_degree(p, l)?;
    let m = p.dim();
    let mut d = p.clone();
    for _ in 0..2 * l {
        d = d.dirac(Block::Z);
    }
    let z = Poly::vector_variable(m, Block::Z);
    let mut out = Poly::zero(m);
    let mut zj = Poly::one(m);
    for j in 0..=(k - 2 * l) {
        if d.is_zero() {
            break;
        }
        let b = beta_coefficient(j, l, k, m)?;
        out.add_assign(&(&zj * &d).scale(&b.into()));
        d = d.dirac(Block::Z);
        zj = &zj * &z;
    }
    Ok(out)
}

/// `P = sum_j z^j parts[j]` with each part monogenic.
#[derive(Clone, Debug, PartialEq)]
pub struct FischerDecomposition {
    pub degree: u32,
    /// `(j, M_(k-j))`, nonzero parts only, ascending in `j`.
    pub parts: Vec<(u32, Poly)>,
}

impl FischerDecomposition {
    pub fn part(&self, j: u32) -> Option<&Poly> {
        self.parts.iter().find(|(i, _)| *i == j).map(|(_, p)| p)
    }

    pub fn reassemble(&self, m: usize) -> Poly {
        let mut out = Poly::zero(m);
        for (j, part) in &self.parts {
            out.add_assign(&(&vector_power(m, Block::Z, *j) * part));
        }
        out
    }
}

/// Full Fischer decomposition: with `H_(k-2l) = M + z M'`,
/// the part of `z^(2l)` is `(-1)^l M` and the part of `z^(2l+1)` is
/// `(-1)^l M' = (-1)^(l+1) / (2(k-2l)+m-2) d H_(k-2l)`.
pub fn fischer_decompose(p: &Poly) -> Result<FischerDecomposition> {
    let k = p.require_homogeneous(Block::Z)?;
    let m = p.dim();
    let mut parts = Vec::new();
    if p.is_zero() {
        return Ok(FischerDecomposition { degree: k, parts });
    }
    for l in 0..=k / 2 {
        let sign = if l % 2 == 0 { GaussianRational::one() } else { -GaussianRational::one() };
        let even = monogenic_component(p, l)?.scale(&sign);
        if !even.is_zero() {
            parts.push((2 * l, even));
        }
        if 2 * l < k {
            let h = harmonic_component(p, l)?;
            let denom = 2 * (k - 2 * l) as i64 + m as i64 - 2;
            let c = GaussianRational::real(rat(-1, denom)) * sign;
            let odd = h.dirac(Block::Z).scale(&c);
            if !odd.is_zero() {
                parts.push((2 * l + 1, odd));
            }
        }
    }
    parts.sort_by_key(|(j, _)| *j);
    Ok(FischerDecomposition { degree: k, parts })
}

/// Monogenic refinement of a harmonic `H_k`: `(1 + z d / (2k+m-2)) H_k`.
pub fn harmonic_to_monogenic(h: &Poly) -> Result<Poly> {
    let k = h.require_homogeneous(Block::Z)?;
    let m = h.dim();
    let denom = 2 * k as i64 + m as i64 - 2;
    if denom == 0 {
        return Ok(h.clone());
    }
    let z = Poly::vector_variable(m, Block::Z);
    let zd = &z * &h.dirac(Block::Z);
    Ok(h + &zd.scale(&GaussianRational::real(rat(1, denom))))
}

pub(crate) fn is_monogenic(p: &Poly) -> bool {
    p.dirac(Block::Z).is_zero()
}
