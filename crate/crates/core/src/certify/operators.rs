use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CactusCertificate;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::poly::{LinearForm, MonomialBasis};
use crate::Rational;

const DEHOMOGENIZER_ATTEMPTS: usize = 16;

/// Multiplication by `α_t / ℓ` on the quotient, in the basis of `Ψ^m`
/// given by the non-pivot monomials of `J^m`.
#[derive(Clone, Debug)]
pub struct MultiplicationOperators {
    pub dehomogenizer: LinearForm<Rational>,
    pub degree: usize,
    pub ops: Vec<Matrix<Rational>>,
}

pub fn multiplication_operators(cert: &CactusCertificate) -> Result<MultiplicationOperators> {
    let n = cert.p.num_vars();
    let m = cert.operator_degree();
    let here = cert
        .ideal
        .piece(m)
        .ok_or_else(|| Error::InternalChainBroken(format!("ideal not computed in degree {m}")))?;
    let up = cert
        .ideal
        .piece(m + 1)
        .ok_or_else(|| Error::InternalChainBroken(format!("ideal not computed in degree {}", m + 1)))?;
    let s = here.codim();
    if up.codim() != s {
        return Err(Error::InternalChainBroken(format!(
            "quotient dimensions {s} and {} differ in degrees {m} and {}",
            up.codim(),
            m + 1
        )));
    }
    let basis = MonomialBasis::new(n, m);
    let basis_up = MonomialBasis::new(n, m + 1);
    let np = here.non_pivots();
    let lifts: Vec<Matrix<Rational>> = (0..n)
        .map(|t| {
            let shift = basis.shift_table(&basis_up, t);
            let mut l = Matrix::zeros(s, s);
            for (col, &c) in np.iter().enumerate() {
                for (row, x) in up.quotient_coords(SparseVec::unit(shift[c])).into_iter().enumerate() {
                    l[(row, col)] = x;
                }
            }
            l
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cert.seed ^ 0xde40_0e00);
    for attempt in 0..DEHOMOGENIZER_ATTEMPTS {
        let coeffs: Vec<i64> = if attempt == 0 && n == 1 {
            vec![1]
        } else {
            (0..n).map(|_| rng.gen_range(-5..=5)).collect()
        };
        let l = lifts.iter().zip(&coeffs).fold(Matrix::zeros(s, s), |acc, (lt, &c)| {
            acc.add(&lt.scale(&Rational::from_integer(c.into())))
        });
        if let Some(inv) = l.inverse() {
            return Ok(MultiplicationOperators {
                dehomogenizer: LinearForm::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect()),
                degree: m,
                ops: lifts.iter().map(|lt| inv.mul(lt)).collect(),
            });
        }
    }
    Err(Error::NoDehomogenizerFound(DEHOMOGENIZER_ATTEMPTS))
}
