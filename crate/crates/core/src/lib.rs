//! Exact catalecticant and apolarity computations for homogeneous
//! polynomials.
//!
//! The core is generic over the scalar type (see [`scalar`]); anything that
//! eliminates needs an [`ExactField`], and the rational instantiation is what
//! the certifier and the CLI run on. The aliases below name those concrete
//! types.

pub mod apolarity;
pub mod certify;
pub mod constructions;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod selftest;
pub mod univariate;

pub use error::{Error, Result};
pub use scalar::{ExactField, Scalar};

pub type Rational = num_rational::BigRational;

pub type QPoly = poly::HomogeneousPoly<Rational>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type QSubspace = linalg::GradedSubspace<Rational>;
pub type QIdeal = ideal::GradedIdeal<Rational>;
pub type QLinearForm = poly::LinearForm<Rational>;

pub type FPoly = poly::HomogeneousPoly<f64>;
pub type CPoly = poly::HomogeneousPoly<num_complex::Complex64>;
