//! Zonal spherical monogenics, the frame-averaged kernel constants `gamma`,
//! the dual Radon transform and the inversion of the total transform.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::clifford::{CliffordElement, Frame};
use crate::error::{Error, Result};
use crate::fischer::{fischer_decompose, is_monogenic};
use crate::huaradon::{lambda, monogenic_psi, psi_j};
use crate::integrate::{ol2_pairing_reduced, sphere_mean_of_product, stiefel_average, stiefel_average_of_product};
use crate::poly::{norm_squared, vector_power, Block, CPoly, FrameSpec};
use crate::scalar::{factorial, gamma_ratio, pochhammer, rat, unit_sphere_area, GaussianRational, HalfInt, PiScalar};

type Poly = CPoly<GaussianRational>;

fn fact(n: i64) -> BigRational {
    BigRational::from_integer(factorial(n as u64))
}

fn require_m3(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::Domain(format!("m = {m}: zonal monogenics need m >= 3")));
    }
    Ok(())
}

/// Gegenbauer polynomial `C_k^nu(t)` as coefficients of `t^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GegenbauerPoly {
    pub degree: u32,
    pub nu: HalfInt,
    pub coeffs: Vec<BigRational>,
}

impl GegenbauerPoly {
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// `(2 nu)_k / k!`.
    pub fn value_at_one_closed_form(&self) -> BigRational {
        pochhammer(HalfInt::int(self.nu.twice()), self.degree) / fact(self.degree as i64)
    }
}

/// `C_k^(m/2-1)` by `n C_n = 2 t (n + nu - 1) C_(n-1) - (n + 2 nu - 2) C_(n-2)`.
pub fn gegenbauer(k: u32, m: usize) -> Result<GegenbauerPoly> {
    require_m3(m)?;
    gegenbauer_with(k, HalfInt::half(m as i64) - 1)
}

/// `C_k^nu` for a positive half-integer `nu`.
pub fn gegenbauer_with(k: u32, nu: HalfInt) -> Result<GegenbauerPoly> {
    if !nu.is_positive() {
        return Err(Error::Domain(format!("Gegenbauer parameter {nu} must be positive")));
    }
    let nu_q = nu.to_rational();
    let mut prev = vec![BigRational::one()];
    if k == 0 {
        return Ok(GegenbauerPoly { degree: 0, nu, coeffs: prev });
    }
    let mut cur = vec![BigRational::zero(), &nu_q * rat(2, 1)];
    for n in 2..=k as i64 {
        let a = (rat(n - 1, 1) + &nu_q) * rat(2, n);
        let b = (rat(n - 2, 1) + &nu_q * rat(2, 1)) / rat(n, 1);
        let mut next = vec![BigRational::zero(); n as usize + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * &a;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * &b;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(GegenbauerPoly { degree: k, nu, coeffs: cur })
}

/// `(|x||y|)^n C_n^nu(<x,y>/(|x||y|))` with `x` in block `Z`, `y` in block `Y`.
fn homogenized_gegenbauer(n: u32, nu: HalfInt, m: usize) -> Result<Poly> {
    let g = gegenbauer_with(n, nu)?;
    let xy = Poly::pairing(m, Block::Z, Block::Y);
    let r2 = &norm_squared(m, Block::Z) * &norm_squared(m, Block::Y);
    let mut out = Poly::zero(m);
    for (i, c) in g.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rest = n as usize - i;
        debug_assert!(rest % 2 == 0);
        let term = &xy.pow(i as u32) * &r2.pow((rest / 2) as u32);
        out.add_assign(&term.scale(&c.clone().into()));
    }
    Ok(out)
}

/// `x ^ y = x y + <x, y>` for the vector variables of blocks `Z` and `Y`.
pub fn wedge_variables(m: usize) -> Poly {
    &(&Poly::vector_variable(m, Block::Z) * &Poly::vector_variable(m, Block::Y)) + &Poly::pairing(m, Block::Z, Block::Y)
}

/// `C_k(x, y)`, `x` in block `Z` and `y` in block `Y`:
/// `(|x||y|)^k ((k+m-2)/(m-2) C_k^(m/2-1)(t) + (x^y)/(|x||y|) C_(k-1)^(m/2)(t))`.
pub fn zonal_monogenic(k: u32, m: usize) -> Result<Poly> {
    require_m3(m)?;
    let mm2 = m as i64 - 2;
    let h = HalfInt::half(m as i64);
    let mut out = homogenized_gegenbauer(k, h - 1, m)?.scale(&GaussianRational::real(rat(k as i64 + mm2, mm2)));
    if k > 0 {
        out.add_assign(&(&wedge_variables(m) * &homogenized_gegenbauer(k - 1, h, m)?));
    }
    Ok(out)
}

/// `(1/A_m) int C_l(z, w) M(w) dS(w)` for `M` homogeneous monogenic in `Z`.
pub fn zonal_reproduce(mono: &Poly) -> Result<Poly> {
    let l = mono.require_homogeneous(Block::Z)?;
    mono.require_only(Block::Z)?;
    if !is_monogenic(mono) {
        return Err(Error::NotMonogenic);
    }
    zonal_pair(l, mono)
}

/// `(1/A_m) int C_l(z, w) f(w) dS(w)` for any `f` in `Z`.
pub fn zonal_pair(l: u32, f: &Poly) -> Result<Poly> {
    let m = f.dim();
    // integrate over y: swap so that the sphere variable sits in block Z
    let c = zonal_monogenic(l, m)?;
    let swapped = c.rename_block(Block::Z, Block::S).rename_block(Block::Y, Block::Z);
    let out = sphere_mean_of_product(&swapped, f, Block::Z);
    Ok(out.rename_block(Block::S, Block::Z))
}

/// Normalized frame average of `M[psi](x) M[psi](y)^dagger`, `x` in `Z`, `y` in `Y`.
pub fn stiefel_zonal_average(alpha: u32, k: u32, m: usize) -> Result<Poly> {
    let mx = monogenic_psi(&FrameSpec::Symbolic, alpha, k, m)?;
    let my = mx.rename_block(Block::Z, Block::Y).hermitian_conjugate();
    Ok(stiefel_average_of_product(&mx, &my))
}

/// `gamma_(alpha,k)` with `avg(M[psi](x) M[psi](y)^dagger) = gamma C_(alpha+k)(x,y)`,
/// computed by frame integration. Fails if the average is not proportional.
pub fn gamma_constant(alpha: u32, k: u32, m: usize) -> Result<BigRational> {
    let avg = stiefel_zonal_average(alpha, k, m)?;
    let zonal = zonal_monogenic(alpha + k, m)?;
    proportionality(&avg, &zonal).ok_or_else(|| {
        Error::Domain(format!("frame average for alpha={alpha}, k={k}, m={m} is not a multiple of C"))
    })
}

/// `c` with `a = c b`, `c` real rational.
pub fn proportionality(a: &Poly, b: &Poly) -> Option<BigRational> {
    let (mono, cb) = b.terms().next()?;
    let (blade, x) = cb.terms().next()?;
    let ratio = a.coeff(mono).coeff(blade) / x.clone();
    if !ratio.is_real() {
        return None;
    }
    let c = ratio.re();
    (b.scale(&c.clone().into()) == *a).then_some(c)
}

/// Even `gamma_(2s,k)` as printed.
pub fn printed_gamma_even(s: u32, k: u32, m: usize) -> Result<BigRational> {
    require_m3(m)?;
    let h = HalfInt::half(m as i64);
    let (s, k, mi) = (s as i64, k as i64, m as i64);
    Ok(fact(s)
        * fact(s + k)
        * gamma_ratio(h + (s - 1), h + (2 * s + k))?
        * gamma_ratio(h + (s + k), h + (2 * s + k))?
        * rat(mi - 2, 1)
        * fact(mi - 2)
        * fact(2 * s + k)
        / fact(2 * s + k + mi - 2))
}

/// Odd `gamma_(2s+1,k)` in the form stated with the main text.
pub fn printed_gamma_odd_main(s: u32, k: u32, m: usize) -> Result<BigRational> {
    require_m3(m)?;
    let h = HalfInt::half(m as i64);
    let (s, k, mi) = (s as i64, k as i64, m as i64);
    Ok(fact(s)
        * fact(s + k + 1)
        * gamma_ratio(h + s, h + (2 * s + k))?
        * gamma_ratio(h + (s + k), h + (2 * s + k))?
        * rat(mi - 2, 1)
        * fact(mi - 2)
        * fact(2 * s + k + 1)
        / fact(2 * s + k + mi - 1))
}

/// Odd `gamma_(2s+1,k)` in the form stated with the appendix.
pub fn printed_gamma_odd_appendix(s: u32, k: u32, m: usize) -> Result<BigRational> {
    require_m3(m)?;
    let h = HalfInt::half(m as i64);
    let (s, k, mi) = (s as i64, k as i64, m as i64);
    Ok(rat(4, 1)
        * fact(s)
        * fact(s + k + 1)
        * gamma_ratio(h + (s - 1), h + (2 * s + k))?
        * gamma_ratio(h + (s + k), h + (2 * s + k))?
        * rat(mi - 2, 1)
        * fact(mi - 2)
        * fact(2 * s + k)
        / fact(2 * s + k + mi - 2))
}

/// `gamma_(alpha,k)` forced by `lambda gamma = l! (m-2)! / (2 pi A_m (l+m-2)!)`, `l = alpha + k`.
pub fn gamma_from_lambda(alpha: u32, k: u32, m: usize) -> Result<BigRational> {
    let l = (alpha + k) as i64;
    let target = rat(1, 2) * fact(l) * fact(m as i64 - 2) / fact(l + m as i64 - 2);
    let pa = &(&PiScalar::pi_pow(2) * &unit_sphere_area(m)?) * &lambda(alpha, k, m)?;
    let pa = pa.to_gaussian().ok_or_else(|| Error::Domain("lambda pi A_m is not rational".into()))?;
    Ok(target / pa.re())
}

/// `vartheta_(j,l) = (l+1)! (m-2)! / (2 (l+m-2)!)`.
pub fn vartheta(_j: u32, l: u32, m: usize) -> Result<BigRational> {
    require_m3(m)?;
    let (l, mi) = (l as i64, m as i64);
    Ok(fact(l + 1) * fact(mi - 2) / (rat(2, 1) * fact(l + mi - 2)))
}

/// Normalized average over orthonormal frames `(t, s)`; removes the frame
/// blocks.
pub fn dual_transform(f: &Poly) -> Poly {
    stiefel_average(f)
}

/// `R~[M_(tau,j)[f]]`, the transform taken with a symbolic frame.
///
/// Each kernel term `lambda F(z) <F, f>` is averaged as a product: the
/// pairing `<F, f>` depends on the frame only, so the average never
/// materializes `F(z) <F, f>`.
pub fn dual_of_transform(j: u32, f: &Poly) -> Result<Poly> {
    let m = f.dim();
    require_m3(m)?;
    let deg = f.degree_in(Block::Z);
    if f.is_zero() || deg < j {
        return Ok(Poly::zero(m));
    }
    let scale = &PiScalar::pi_pow(2) * &unit_sphere_area(m)?;
    let pairs: Vec<(u32, u32)> = (0..=deg - j).flat_map(|t| (0..=t).map(move |a| (a, t - a))).collect();
    let parts = pairs
        .par_iter()
        .map(|&(alpha, k)| {
            let factor = psi_j(&FrameSpec::Symbolic, j, alpha, k, m)?;
            let pairing = ol2_pairing_reduced(&factor, f);
            if pairing.is_zero() {
                return Ok(Poly::zero(m));
            }
            let w = (&lambda(alpha, k, m)? * &scale)
                .to_gaussian()
                .ok_or_else(|| Error::Domain("lambda pi A_m is not rational".into()))?;
            Ok(stiefel_average_of_product(&factor, &pairing).scale(&w))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Poly::zero(m);
    for p in &parts {
        out.add_assign(p);
    }
    Ok(out)
}

/// `sum_j R~[M_(tau,j)[f]]` over all `j <= deg f`.
pub fn total_dual(f: &Poly) -> Result<Poly> {
    let m = f.dim();
    let mut out = Poly::zero(m);
    for j in 0..=f.degree_in(Block::Z) {
        out.add_assign(&dual_of_transform(j, f)?);
    }
    Ok(out)
}

/// Inverts the total dual image: each Fischer piece `z^j M_l` is divided by
/// `vartheta_(j,l)`.
pub fn invert(g: &Poly) -> Result<Poly> {
    let m = g.dim();
    g.require_only(Block::Z)?;
    let mut out = Poly::zero(m);
    for (d, part) in g.homogeneous_components(Block::Z) {
        let dec = fischer_decompose(&part)?;
        for (j, piece) in &dec.parts {
            let c = vartheta(*j, d - j, m)?.recip();
            out.add_assign(&(&vector_power(m, Block::Z, *j) * piece).scale(&c.into()));
        }
    }
    Ok(out)
}

/// `x -> sigma_bar x sigma` as a matrix, for `sigma = a b` with `a`, `b` unit vectors.
pub fn spin_action_matrix(sigma: &CliffordElement<GaussianRational>) -> Vec<Vec<GaussianRational>> {
    let m = sigma.dim();
    let sb = sigma.bar();
    let cols: Vec<Vec<GaussianRational>> = (1..=m)
        .map(|i| {
            let img = &(&sb * &CliffordElement::basis(m, i)) * sigma;
            img.vector_components().expect("Spin action preserves vectors")
        })
        .collect();
    (0..m).map(|r| (0..m).map(|c| cols[c][r].clone()).collect()).collect()
}

/// `sigma F(sigma_bar x sigma) sigma_bar` for `F` in block `Z`.
pub fn spin_conjugate(f: &Poly, sigma: &CliffordElement<GaussianRational>) -> Poly {
    let r = spin_action_matrix(sigma);
    f.substitute_linear(Block::Z, &r).left_mul(sigma).right_mul(&sigma.bar())
}

/// Frame `(sigma t sigma_bar, sigma s sigma_bar)`.
pub fn spin_frame(frame: &Frame, sigma: &CliffordElement<GaussianRational>) -> Result<Frame> {
    let act = |v: &[BigRational]| -> Result<Vec<BigRational>> {
        let vec = CliffordElement::vector(&v.iter().map(|x| GaussianRational::real(x.clone())).collect::<Vec<_>>());
        let img = &(sigma * &vec) * &sigma.bar();
        img.vector_components()?
            .into_iter()
            .map(|c| if c.is_real() { Ok(c.re()) } else { Err(Error::InvalidFrame("complex image".into())) })
            .collect()
    };
    Frame::new(act(frame.t())?, act(frame.s())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::huaradon::psi_j;

    #[test]
    fn gegenbauer_examples() {
        for m in 3..8 {
            let g0 = gegenbauer(0, m).unwrap();
            assert_eq!(g0.coeffs, vec![BigRational::one()]);
            assert!(gegenbauer_with(2, HalfInt::int(0)).is_err());
            let g1 = gegenbauer(1, m).unwrap();
            assert_eq!(g1.coeffs[1], rat(m as i64 - 2, 1));
            for k in 0..7 {
                let g = gegenbauer(k, m).unwrap();
                assert_eq!(g.eval(&BigRational::one()), g.value_at_one_closed_form());
            }
        }
        assert_eq!(gegenbauer(2, 4).unwrap().eval(&BigRational::one()), rat(3, 1));
    }

    #[test]
    fn gegenbauer_recurrence_at_points() {
        // direct check of the ODE (1-t^2) y'' - (2 nu + 1) t y' + k (k + 2 nu) y = 0
        for m in 3..7 {
            for k in 0..6u32 {
                let g = gegenbauer(k, m).unwrap();
                let nu = g.nu.to_rational();
                let c = &g.coeffs;
                let n = c.len();
                let mut res = vec![BigRational::zero(); n + 1];
                for i in 0..n {
                    let ii = rat(i as i64, 1);
                    if i >= 2 {
                        res[i - 2] += &c[i] * &ii * (&ii - rat(1, 1));
                    }
                    res[i] -= &c[i] * &ii * (&ii - rat(1, 1));
                    res[i] -= &c[i] * &ii * (&nu * rat(2, 1) + rat(1, 1));
                    res[i] += &c[i] * rat(k as i64, 1) * (rat(k as i64, 1) + &nu * rat(2, 1));
                }
                assert!(res.iter().all(|x| x.is_zero()), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn zonal_examples() {
        for m in 3..6 {
            assert_eq!(zonal_monogenic(0, m).unwrap(), Poly::one(m));
            let want = &Poly::pairing(m, Block::Z, Block::Y).scale(&GaussianRational::int(m as i64 - 1)) + &wedge_variables(m);
            assert_eq!(zonal_monogenic(1, m).unwrap(), want);
        }
    }

    #[test]
    fn zonal_is_bimonogenic() {
        for m in 3..=4 {
            for k in 0..=4 {
                let c = zonal_monogenic(k, m).unwrap();
                assert!(c.dirac(Block::Z).is_zero(), "k={k} m={m}");
                assert!(c.dirac_right(Block::Y).is_zero(), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn zonal_reproduces_monogenics() {
        for m in 3..=4 {
            let f = FrameSpec::Concrete(Frame::canonical(m).unwrap());
            for l in 0..=3 {
                for alpha in 0..=l {
                    let mp = monogenic_psi(&f, alpha, l - alpha, m).unwrap();
                    assert_eq!(zonal_reproduce(&mp).unwrap(), mp, "l={l} alpha={alpha} m={m}");
                    if l > 0 {
                        assert!(zonal_pair(l - 1, &mp).unwrap().is_zero());
                    }
                }
            }
        }
        assert_eq!(zonal_reproduce(&Poly::one(3)).unwrap(), Poly::one(3));
        let z = Poly::vector_variable(3, Block::Z);
        assert_eq!(zonal_reproduce(&z), Err(Error::NotMonogenic));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_constant(0, 0, 4).unwrap(), rat(2, 1));
        for m in 3..=4 {
            for (alpha, k) in [(0, 0), (0, 1), (2, 0), (0, 2), (2, 1)] {
                let g = gamma_constant(alpha, k, m).unwrap();
                assert_eq!(g, printed_gamma_even(alpha / 2, k, m).unwrap(), "alpha={alpha} k={k} m={m}");
                assert_eq!(g, gamma_from_lambda(alpha, k, m).unwrap());
            }
            for (alpha, k) in [(1, 0), (1, 1), (3, 0), (1, 2)] {
                let g = gamma_constant(alpha, k, m).unwrap();
                assert_eq!(g, gamma_from_lambda(alpha, k, m).unwrap(), "alpha={alpha} k={k} m={m}");
            }
        }
    }

    #[test]
    fn vartheta_examples() {
        for m in 3..8 {
            assert_eq!(vartheta(0, 0, m).unwrap(), rat(1, 2));
        }
        assert_eq!(vartheta(0, 1, 3).unwrap(), rat(1, 2));
        assert_eq!(vartheta(3, 1, 4).unwrap(), rat(1, 3));
    }

    #[test]
    fn dual_agrees_with_materialized_transform() {
        use crate::huaradon::{apply_transform, to_rational_poly};
        let m = 3;
        let f = FrameSpec::Concrete(Frame::rotated(m, 5).unwrap());
        let p = &psi_j(&f, 1, 1, 1, m).unwrap() + &psi_j(&f, 0, 2, 0, m).unwrap();
        for j in 0..=2 {
            let image = to_rational_poly(&apply_transform(j, &FrameSpec::Symbolic, &p).unwrap()).unwrap();
            assert_eq!(dual_of_transform(j, &p).unwrap(), dual_transform(&image), "j={j}");
        }
    }

    #[test]
    fn dual_scales_fischer_pieces() {
        let m = 4;
        let f = FrameSpec::Concrete(Frame::rotated(m, 2).unwrap());
        assert_eq!(dual_transform(&Poly::one(m)), Poly::one(m));
        for n in 0..=2 {
            for l in 0..=1 {
                let p = psi_j(&f, n, l, 0, m).unwrap();
                for j in 0..=2 {
                    let got = dual_of_transform(j, &p).unwrap();
                    if j == n {
                        let want = p.scale(&vartheta(j, l, m).unwrap().into());
                        assert_eq!(got, want, "n={n} l={l}");
                    } else {
                        assert!(got.is_zero(), "n={n} j={j} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn inversion_round_trip() {
        let m = 3;
        let f = FrameSpec::Concrete(Frame::rotated(m, 9).unwrap());
        let p = &(&psi_j(&f, 1, 1, 0, m).unwrap() + &psi_j(&f, 0, 0, 2, m).unwrap()) + &Poly::one(m);
        assert_eq!(invert(&total_dual(&p).unwrap()).unwrap(), p);
        assert!(invert(&Poly::zero(m)).unwrap().is_zero());
    }

    #[test]
    fn spin_equivariance() {
        let m = 4;
        let a = CliffordElement::vector(&[rat(3, 5), rat(4, 5), rat(0, 1), rat(0, 1)].map(GaussianRational::real));
        let b = CliffordElement::vector(&[rat(0, 1), rat(5, 13), rat(0, 1), rat(12, 13)].map(GaussianRational::real));
        let sigma = &a * &b;
        let frame = Frame::rotated(m, 4).unwrap();
        let moved = spin_frame(&frame, &sigma).unwrap();
        for alpha in 0..=2 {
            for k in 0..=(2 - alpha) {
                let lhs = spin_conjugate(&monogenic_psi(&FrameSpec::Concrete(frame.clone()), alpha, k, m).unwrap(), &sigma);
                let rhs = monogenic_psi(&FrameSpec::Concrete(moved.clone()), alpha, k, m).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
