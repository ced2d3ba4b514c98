//! Scalar traits the rest of the crate is generic over.
//!
//! [`Scalar`] is the ring interface polynomials need (expansion, contraction,
//! evaluation). [`ExactField`] adds exact division and an exact zero test;
//! everything that eliminates (ranks, kernels, ideals) requires it.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{Echelon, Matrix, RankOptions};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
}

/// A field with exact arithmetic: `is_zero` is trustworthy after any
/// sequence of operations.
pub trait ExactField: Scalar + Div<Output = Self> + Eq {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Rank of a dense matrix. The default eliminates in the field itself;
    /// implementations may override with a faster exact route.
    fn matrix_rank(m: &Matrix<Self>, _opts: &RankOptions) -> usize {
        let mut ech = Echelon::new(m.cols());
        for r in 0..m.rows() {
            ech.insert_dense(m.row(r));
        }
        ech.rank()
    }

    /// A lower bound on the rank; exact unless overridden.
    fn matrix_rank_lower_bound(m: &Matrix<Self>, opts: &RankOptions) -> usize {
        Self::matrix_rank(m, opts)
    }
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl ExactField for BigRational {
    fn matrix_rank(m: &Matrix<Self>, opts: &RankOptions) -> usize {
        crate::linalg::bareiss::rational_rank(m, opts)
    }

    fn matrix_rank_lower_bound(m: &Matrix<Self>, opts: &RankOptions) -> usize {
        crate::linalg::bareiss::rational_rank_lower_bound(m, opts)
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for Complex<f64> {
    fn from_bigint(n: &BigInt) -> Self {
        Complex::new(f64::from_bigint(n), 0.0)
    }
}
