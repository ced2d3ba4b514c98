//! Dense univariate polynomials over an exact field, and the
//! characteristic polynomial of a square matrix.

use std::fmt;

use crate::linalg::Matrix;
use crate::scalar::ExactField;

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<F>(Vec<F>);

impl<F: ExactField> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.0)
    }
}

impl<F: ExactField> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => {
                let inv = l.inv();
                UniPoly(self.0.iter().map(|c| c.clone() * inv.clone()).collect())
            }
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.0.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.lead().unwrap().inv();
        let mut rem = self.0.clone();
        let mut quot = vec![F::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() * lead_inv.clone();
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let n = m.rows();
        self.0.iter().rev().fold(Matrix::zeros(n, n), |acc, c| {
            acc.mul(m).add(&Matrix::identity(n).scale(c))
        })
    }
}

/// `det(x·I - M)` by the Faddeev–LeVerrier recurrence.
pub fn charpoly<F: ExactField>(m: &Matrix<F>) -> UniPoly<F> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "characteristic polynomial of a non-square matrix");
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut aux = Matrix::zeros(n, n);
    for k in 1..=n {
        aux = m.mul(&aux).add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
        let t = m.mul(&aux).trace();
        coeffs[n - k] = -(t / F::from_i64(k as i64));
    }
    UniPoly::new(coeffs)
}
