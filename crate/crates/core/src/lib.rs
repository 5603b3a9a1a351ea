//! Exact Clifford-analysis machinery for the monogenic Hua-Radon transform.
//!
//! Multivectors and polynomials are generic over a [`Scalar`] ring. The
//! aliases below fix the two rings used throughout: Gaussian rationals, and
//! Gaussian rationals extended by half-integer powers of pi.

pub mod clifford;
pub mod error;
pub mod fischer;
pub mod huaradon;
pub mod identities;
pub mod integrate;
pub mod poly;
pub mod scalar;
pub mod suites;
pub mod zonal_dual;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, PiScalar, Scalar};

pub type Multivector = clifford::CliffordElement<GaussianRational>;
pub type PiMultivector = clifford::CliffordElement<PiScalar>;
pub type Poly = poly::CPoly<GaussianRational>;
pub type PiPoly = poly::CPoly<PiScalar>;
