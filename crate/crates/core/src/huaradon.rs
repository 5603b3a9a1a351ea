//! The functions `psi_(tau,alpha,k)`, their monogenic projections, the
//! constants `mu`, `phi`, `lambda`, and the reproducing kernel of the
//! monogenic Hua-Radon transform acting on polynomials.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::integrate::ol2_pairing_reduced;
use crate::poly::{vector_power, Block, CPoly, FrameSpec};
use crate::scalar::{factorial, gamma_half, gamma_ratio, rat, unit_sphere_area, GaussianRational, HalfInt, PiScalar};

type Poly = CPoly<GaussianRational>;

fn fact(n: i64) -> BigRational {
    BigRational::from_integer(factorial(n as u64))
}

fn sign(j: i64) -> BigRational {
    if j % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn require_m3(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::Domain(format!("m = {m}: the monogenic projections of psi degenerate for m < 3")));
    }
    Ok(())
}

/// `psi_(tau,2s,k) = tau <z,tau>^(s+k) <z,tau^dagger>^s` and
/// `psi_(tau,2s+1,k) = tau^dagger tau <z,tau>^(s+k+1) <z,tau^dagger>^s`.
pub fn psi(frame: &FrameSpec, alpha: u32, k: u32, m: usize) -> Poly {
    let s = alpha / 2;
    let lead = if alpha % 2 == 0 {
        frame.tau(m)
    } else {
        &frame.tau_dagger(m) * &frame.tau(m)
    };
    let a = if alpha % 2 == 0 { s + k } else { s + k + 1 };
    &(&lead * &frame.z_dot_tau(m).pow(a)) * &frame.z_dot_tau_dagger(m).pow(s)
}

/// `mu_(j,alpha,k)` in `M[psi_(tau,alpha,k)] = sum_j mu_j z^j psi_(tau,alpha-j,k)`.
pub fn mu(j: u32, alpha: u32, k: u32, m: usize) -> Result<BigRational> {
    if j > alpha {
        return Err(Error::OutOfRange(format!("mu index j = {j} exceeds alpha = {alpha}")));
    }
    let h = HalfInt::half(m as i64);
    let (s, k) = ((alpha / 2) as i64, k as i64);
    let i = (j / 2) as i64;
    let q = match (j % 2, alpha % 2) {
        (0, 0) => {
            gamma_ratio(h + (2 * s + k - i), h + (2 * s + k))? / fact(i) * fact(s) / fact(s - i) * fact(s + k)
                / fact(s + k - i)
        }
        (1, 0) => {
            gamma_ratio(h + (2 * s + k - i - 1), h + (2 * s + k))? / (rat(2, 1) * fact(i)) * fact(s)
                / fact(s - i - 1)
                * fact(s + k)
                / fact(s + k - i)
        }
        (0, _) => {
            gamma_ratio(h + (2 * s + k + 1 - i), h + (2 * s + k + 1))? / fact(i) * fact(s) / fact(s - i)
                * fact(s + k + 1)
                / fact(s + k + 1 - i)
        }
        _ => {
            rat(2, 1) * gamma_ratio(h + (2 * s + k - i), h + (2 * s + k + 1))? / fact(i) * fact(s) / fact(s - i)
                * fact(s + k + 1)
                / fact(s + k - i)
        }
    };
    Ok(sign(i) * q)
}

/// `M[psi_(tau,alpha,k)]` from the closed-form `mu`.
pub fn monogenic_psi(frame: &FrameSpec, alpha: u32, k: u32, m: usize) -> Result<Poly> {
    require_m3(m)?;
    let z = Poly::vector_variable(m, Block::Z);
    let mut zj = Poly::one(m);
    let mut out = Poly::zero(m);
    for j in 0..=alpha {
        let c = mu(j, alpha, k, m)?;
        out.add_assign(&(&zj * &psi(frame, alpha - j, k, m)).scale(&c.into()));
        zj = &zj * &z;
    }
    Ok(out)
}

/// `psi^j_(tau,alpha,k) = z^j M[psi_(tau,alpha,k)]`.
pub fn psi_j(frame: &FrameSpec, j: u32, alpha: u32, k: u32, m: usize) -> Result<Poly> {
    Ok(&vector_power(m, Block::Z, j) * &monogenic_psi(frame, alpha, k, m)?)
}

fn gamma(a: HalfInt) -> Result<PiScalar> {
    gamma_half(a)
}

fn over_gamma(a: HalfInt) -> Result<PiScalar> {
    Ok(gamma(a)?.inverse().expect("Gamma is a nonzero monomial"))
}

/// Scalar `phi_(j,alpha,k)` with
/// `pi int (psi_(alpha-j,k))^dagger w^(-j) psi_(alpha,k) dS = phi tau^dagger tau`.
pub fn phi(j: u32, alpha: u32, k: u32, m: usize) -> Result<PiScalar> {
    if j > alpha {
        return Err(Error::OutOfRange(format!("phi index j = {j} exceeds alpha = {alpha}")));
    }
    let h = HalfInt::half(m as i64);
    let (s, k, l) = ((alpha / 2) as i64, k as i64, (j / 2) as i64);
    let (c, n) = match (j % 2, alpha % 2) {
        (0, 0) => (2, k - l + 2 * s),
        (1, 0) => (-4, 2 * s - l + k),
        (0, _) => (8, k - l + 2 * s + 1),
        _ => (-4, 2 * s - l + k + 1),
    };
    let head = PiScalar::monomial(GaussianRational::real(fact(n) * rat(c, 1)), m as i64 + 2);
    Ok(&head * &over_gamma(h + n)?)
}

/// Normalization of the kernel weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LambdaConvention {
    /// Value forced by the reproducing property.
    #[default]
    Reproducing,
    /// The closed form as displayed with the kernel theorem, carrying an extra
    /// factor `(pi A_m (m/2 - 1))^2`.
    Printed,
}

/// `lambda_k^alpha` such that `lambda <M[psi], M[psi]>_OL2 = 1`.
pub fn lambda(alpha: u32, k: u32, m: usize) -> Result<PiScalar> {
    require_m3(m)?;
    let h = HalfInt::half(m as i64);
    let (s, k) = ((alpha / 2) as i64, k as i64);
    let (num, c, den) = if alpha % 2 == 0 {
        (
            &gamma(h + (2 * s + k))? * &gamma(h + (2 * s + k))?,
            8,
            (fact(s) * fact(s + k), h + (s + k), h + (s - 1)),
        )
    } else {
        (
            &gamma(h + (2 * s + k + 1))? * &gamma(h + (2 * s + k + 1))?,
            32,
            (fact(s) * fact(s + k + 1), h + s, h + (s + k)),
        )
    };
    let num = &num * &gamma(h - 1)?;
    let pref = PiScalar::monomial(GaussianRational::real((rat(c, 1) * den.0).recip()), -(m as i64 + 2));
    Ok(&(&(&num * &pref) * &over_gamma(den.1)?) * &over_gamma(den.2)?)
}

/// The closed form of `lambda_k^alpha` as printed with the kernel theorem.
pub fn printed_lambda(alpha: u32, k: u32, m: usize) -> Result<PiScalar> {
    require_m3(m)?;
    Ok(&lambda(alpha, k, m)? * &printed_lambda_factor(m)?)
}

/// `(pi A_m (m/2 - 1))^2`, the ratio of the printed to the reproducing `lambda`.
pub fn printed_lambda_factor(m: usize) -> Result<PiScalar> {
    let h = HalfInt::half(m as i64);
    let base = (&PiScalar::pi_pow(2) * &unit_sphere_area(m)?).scale(&(h - 1).to_rational().into());
    Ok(&base * &base)
}

fn lambda_with(alpha: u32, k: u32, m: usize, convention: LambdaConvention) -> Result<PiScalar> {
    match convention {
        LambdaConvention::Reproducing => lambda(alpha, k, m),
        LambdaConvention::Printed => printed_lambda(alpha, k, m),
    }
}

/// One term `lambda_k^alpha z^j M[psi](z) (w^j M[psi](w))^dagger` of the kernel.
#[derive(Clone, Debug)]
pub struct KernelTerm {
    pub k: u32,
    pub lambda: PiScalar,
    /// `z^j M[psi_(tau,alpha,k)](z)`.
    pub factor: Poly,
}

/// `K^(j,alpha)` truncated to `alpha + k <= max_degree`.
#[derive(Clone, Debug)]
pub struct KernelComponent {
    pub j: u32,
    pub alpha: u32,
    pub m: usize,
    pub terms: Vec<KernelTerm>,
}

impl KernelComponent {
    /// `int_0^pi int_S K^(j,alpha)(z, e^(-i theta) w) f(e^(i theta) w) dS(w) d theta`.
    ///
    /// `(e^(i theta) w)^(-j)` against `f` is the conjugate of `(e^(i theta) w)^j`,
    /// so each term is `lambda factor <factor, f>_OL2`.
    pub fn apply(&self, f: &Poly) -> Result<CPoly<PiScalar>> {
        let scale = &PiScalar::pi_pow(2) * &unit_sphere_area(self.m)?;
        let parts: Vec<CPoly<PiScalar>> = self
            .terms
            .par_iter()
            .map(|t| {
                let pairing = ol2_pairing_reduced(&t.factor, f);
                let w = &t.lambda * &scale;
                (&t.factor * &pairing).map_scalars(|c| w.scale(c))
            })
            .collect();
        let mut out = CPoly::zero(self.m);
        for p in &parts {
            out.add_assign(p);
        }
        Ok(out)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Builds `K^(j,alpha)` with the reproducing `lambda`.
pub fn kernel_component(j: u32, alpha: u32, frame: &FrameSpec, max_degree: u32, m: usize) -> Result<KernelComponent> {
    kernel_component_with(j, alpha, frame, max_degree, m, LambdaConvention::Reproducing)
}

pub fn kernel_component_with(
    j: u32,
    alpha: u32,
    frame: &FrameSpec,
    max_degree: u32,
    m: usize,
    convention: LambdaConvention,
) -> Result<KernelComponent> {
    require_m3(m)?;
    let ks: Vec<u32> = if max_degree < alpha { Vec::new() } else { (0..=max_degree - alpha).collect() };
    let terms = ks
        .par_iter()
        .map(|&k| {
            Ok(KernelTerm {
                k,
                lambda: lambda_with(alpha, k, m, convention)?,
                factor: psi_j(frame, j, alpha, k, m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelComponent { j, alpha, m, terms })
}

/// `M_(tau,j)[f]` for a polynomial `f` in `z`. Kernel terms of total degree
/// above `deg f` pair to zero and are dropped.
pub fn apply_transform(j: u32, frame: &FrameSpec, f: &Poly) -> Result<CPoly<PiScalar>> {
    apply_transform_with(j, frame, f, LambdaConvention::Reproducing)
}

pub fn apply_transform_with(
    j: u32,
    frame: &FrameSpec,
    f: &Poly,
    convention: LambdaConvention,
) -> Result<CPoly<PiScalar>> {
    let m = f.dim();
    require_m3(m)?;
    let mut out = CPoly::zero(m);
    let deg = f.degree_in(Block::Z);
    if f.is_zero() || deg < j {
        return Ok(out);
    }
    let max = deg - j;
    let components = (0..=max)
        .into_par_iter()
        .map(|alpha| kernel_component_with(j, alpha, frame, max, m, convention)?.apply(f))
        .collect::<Result<Vec<_>>>()?;
    for c in &components {
        out.add_assign(c);
    }
    Ok(out)
}

/// `M_(tau,j)[f]` as a Gaussian-rational polynomial; fails if a coefficient
/// keeps a power of `pi`.
pub fn apply_transform_rational(j: u32, frame: &FrameSpec, f: &Poly) -> Result<Poly> {
    to_rational_poly(&apply_transform(j, frame, f)?)
}

pub fn to_rational_poly(p: &CPoly<PiScalar>) -> Result<Poly> {
    p.try_map_scalars(|c| c.to_gaussian())
        .ok_or_else(|| Error::Domain("coefficient is not a Gaussian rational".into()))
}

/// `1/4 (lambda_k^alpha)^(-1)` assembled as `sum_j mu_j phi_j`.
pub fn mu_phi_sum(alpha: u32, k: u32, m: usize) -> Result<PiScalar> {
    let mut acc = PiScalar::zero();
    for j in 0..=alpha {
        acc = &acc + &phi(j, alpha, k, m)?.scale(&mu(j, alpha, k, m)?.into());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Frame;
    use crate::fischer::{is_monogenic, monogenic_component};
    use crate::integrate::ol2_pairing;

    fn canon(m: usize) -> FrameSpec {
        FrameSpec::Concrete(Frame::canonical(m).unwrap())
    }

    #[test]
    fn psi_examples() {
        let f = canon(3);
        assert_eq!(psi(&f, 0, 0, 3), f.tau(3));
        assert_eq!(psi(&f, 1, 0, 3), &(&f.tau_dagger(3) * &f.tau(3)) * &f.z_dot_tau(3));
        assert_eq!(psi(&f, 2, 0, 3).dirac(Block::Z), psi(&f, 1, 0, 3));
    }

    #[test]
    fn dirac_recurrences() {
        let m = 4;
        let f = FrameSpec::Concrete(Frame::rotated(m, 3).unwrap());
        for s in 0..3u32 {
            for k in 0..3u32 {
                let c = GaussianRational::int(4 * (s + k + 1) as i64);
                assert_eq!(psi(&f, 2 * s + 1, k, m).dirac(Block::Z), psi(&f, 2 * s, k, m).scale(&c));
                let c = GaussianRational::int((s + 1) as i64);
                assert_eq!(psi(&f, 2 * s + 2, k, m).dirac(Block::Z), psi(&f, 2 * s + 1, k, m).scale(&c));
            }
        }
    }

    #[test]
    fn mu_examples() {
        for m in 3..7 {
            for a in 0..5 {
                assert_eq!(mu(0, a, 2, m).unwrap(), BigRational::one());
            }
        }
        assert_eq!(mu(1, 2, 0, 4).unwrap(), rat(1, 6));
        assert_eq!(mu(2, 2, 0, 4).unwrap(), rat(-1, 3));
        assert!(mu(3, 2, 0, 4).is_err());
    }

    #[test]
    fn monogenic_psi_matches_projection() {
        for m in 3..=5 {
            let f = FrameSpec::Concrete(Frame::rotated(m, 11).unwrap());
            for alpha in 0..=4 {
                for k in 0..=3 {
                    let mp = monogenic_psi(&f, alpha, k, m).unwrap();
                    assert_eq!(mp, monogenic_component(&psi(&f, alpha, k, m), 0).unwrap(), "{alpha} {k} {m}");
                    assert!(is_monogenic(&mp));
                }
            }
        }
        assert!(monogenic_psi(&canon(2), 1, 0, 2).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0, 0, 0, 4).unwrap(), PiScalar::monomial(GaussianRational::int(2), 6));
        let v = phi(1, 2, 0, 4).unwrap();
        let (c, _) = v.as_monomial().unwrap();
        assert!(c.re() < BigRational::zero());
    }

    #[test]
    fn phi_matches_pairing() {
        for m in 3..=4 {
            let f = canon(m);
            let tdt = (&f.tau_dagger(m) * &f.tau(m)).constant_term().map_scalars(|c| PiScalar::from(c.clone()));
            for alpha in 0..=3 {
                for k in 0..=2 {
                    for j in 0..=alpha {
                        let g = &vector_power(m, Block::Z, j) * &psi(&f, alpha - j, k, m);
                        let got = ol2_pairing(&g, &psi(&f, alpha, k, m)).unwrap();
                        let want = tdt.scale(&phi(j, alpha, k, m).unwrap());
                        assert_eq!(got, want, "j={j} alpha={alpha} k={k} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_is_inverse_of_mu_phi_sum() {
        for m in 3..=6 {
            for alpha in 0..=5 {
                for k in 0..=4 {
                    let l = lambda(alpha, k, m).unwrap();
                    let prod = (&l * &mu_phi_sum(alpha, k, m).unwrap()).scale(&GaussianRational::int(4));
                    assert_eq!(prod, PiScalar::int(1), "alpha={alpha} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn lambda_examples() {
        let base = PiScalar::monomial(GaussianRational::real(rat(1, 8)), -6);
        assert_eq!(lambda(0, 0, 4).unwrap(), base);
        assert_eq!(lambda(1, 0, 4).unwrap(), base);
        assert_eq!(lambda(0, 1, 4).unwrap(), base.scale(&GaussianRational::int(2)));
        let inv = (&PiScalar::pi_pow(2) * &unit_sphere_area(4).unwrap()).scale(&GaussianRational::int(4));
        assert_eq!(&lambda(0, 0, 4).unwrap() * &inv, PiScalar::int(1));
    }

    #[test]
    fn printed_lambda_ratio() {
        for m in 3..=5 {
            let r = printed_lambda(2, 1, m).unwrap().checked_div(&lambda(2, 1, m).unwrap()).unwrap();
            assert_eq!(r, printed_lambda_factor(m).unwrap());
        }
    }

    #[test]
    fn kernel_component_shapes() {
        let f = canon(4);
        assert!(kernel_component(0, 2, &f, 1, 4).unwrap().is_empty());
        let c = kernel_component(0, 0, &f, 0, 4).unwrap();
        assert_eq!(c.terms.len(), 1);
        assert_eq!(c.terms[0].factor, f.tau(4));
    }

    #[test]
    fn reproduces_basis() {
        for m in 3..=4 {
            let f = FrameSpec::Concrete(Frame::rotated(m, 5).unwrap());
            for j in 0..=2 {
                for alpha in 0..=2 {
                    for k in 0..=(2 - alpha) {
                        let p = psi_j(&f, j, alpha, k, m).unwrap();
                        let got = apply_transform_rational(j, &f, &p).unwrap();
                        assert_eq!(got, p, "j={j} alpha={alpha} k={k} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn transform_of_zero() {
        assert!(apply_transform(1, &canon(3), &Poly::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn other_powers_vanish() {
        let m = 3;
        let f = canon(m);
        let p = psi_j(&f, 1, 1, 0, m).unwrap();
        assert!(apply_transform(0, &f, &p).unwrap().is_zero());
        assert!(apply_transform(2, &f, &psi_j(&f, 0, 1, 1, m).unwrap()).unwrap().is_zero());
    }
}
