use num_complex::Complex64;
use num_traits::Zero;

use super::numeric::{
    approximate_eigenvector, complex_roots, least_squares, mat_vec, nearly_real, rational_root_near, rational_root_of,
    to_complex,
};
use super::{certify, reducedness_with_witness, CactusCertificate, CertifyOptions, MultiplicationOperators, Reducedness};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Ambient, Matrix};
use crate::poly::{power_of_linear_form, HomogeneousPoly, LinearForm, MonomialBasis, Ring};
use crate::univariate::charpoly;
use crate::{QPoly, Rational};

/// One summand `coefficient · point^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct WaringTerm<F> {
    pub coefficient: F,
    pub point: LinearForm<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WaringDecomposition {
    /// `Σ λ_t v_t^d = p` holds identically.
    Exact { num_vars: usize, degree: usize, terms: Vec<WaringTerm<Rational>> },
    /// Floating-point terms; `residual` is the largest coefficient error of
    /// the reconstruction.
    Approximate { num_vars: usize, degree: usize, terms: Vec<WaringTerm<Complex64>>, residual: f64 },
}

impl WaringDecomposition {
    pub fn is_exact(&self) -> bool {
        matches!(self, WaringDecomposition::Exact { .. })
    }

    pub fn len(&self) -> usize {
        match self {
            WaringDecomposition::Exact { terms, .. } => terms.len(),
            WaringDecomposition::Approximate { terms, .. } => terms.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn num_vars(&self) -> usize {
        match self {
            WaringDecomposition::Exact { num_vars, .. } | WaringDecomposition::Approximate { num_vars, .. } => *num_vars,
        }
    }

    pub fn exact_terms(&self) -> Option<&[WaringTerm<Rational>]> {
        match self {
            WaringDecomposition::Exact { terms, .. } => Some(terms),
            WaringDecomposition::Approximate { .. } => None,
        }
    }
}

/// `Σ λ_t v_t^d`.
pub fn reconstruct(w: &WaringDecomposition, d: usize) -> Result<QPoly> {
    let WaringDecomposition::Exact { num_vars, terms, .. } = w else {
        return Err(Error::ApproximateModeUnsupported);
    };
    let mut out = HomogeneousPoly::zero(*num_vars, d, Ring::Point);
    for t in terms {
        out = &out + &power_of_linear_form(&t.point, d).scale(&t.coefficient);
    }
    Ok(out)
}

/// Certify `p` at rank `r` and return its decomposition.
pub fn decompose(p: &QPoly, r: usize, opts: &CertifyOptions) -> Result<WaringDecomposition> {
    decompose_certificate(&certify(p, r, opts)?)
}

pub fn decompose_certificate(cert: &CactusCertificate) -> Result<WaringDecomposition> {
    match cert.reduced {
        Reducedness::NotReduced => return Err(Error::NotReduced),
        Reducedness::Undetermined => return Err(Error::Undetermined),
        Reducedness::Reduced => {}
    }
    if let Some(w) = &cert.decomposition {
        return Ok(w.clone());
    }
    let ops = super::multiplication_operators(cert)?;
    match reducedness_with_witness(&ops, cert.seed) {
        (Reducedness::Reduced, Some(m)) => from_operators(cert, &ops, &m),
        (Reducedness::NotReduced, _) => Err(Error::NotReduced),
        _ => Err(Error::Undetermined),
    }
}

/// Read points off the joint eigenvectors of the operators, using `m`
/// (a combination with distinct eigenvalues) to separate them.
pub(super) fn from_operators(
    cert: &CactusCertificate,
    ops: &MultiplicationOperators,
    m: &Matrix<Rational>,
) -> Result<WaringDecomposition> {
    let chi = charpoly(m);
    let roots = complex_roots(&chi);
    let exact: Option<Vec<Rational>> = roots
        .iter()
        .map(|z| if nearly_real(*z) { rational_root_near(&chi, z.re) } else { None })
        .collect();
    match exact {
        Some(mut eigenvalues) => {
            eigenvalues.sort();
            eigenvalues.dedup();
            if eigenvalues.len() != cert.s {
                return approximate(cert, ops, m, &roots);
            }
            exact_decomposition(cert, ops, m, &eigenvalues)
        }
        None => approximate(cert, ops, m, &roots),
    }
}

fn exact_decomposition(
    cert: &CactusCertificate,
    ops: &MultiplicationOperators,
    m: &Matrix<Rational>,
    eigenvalues: &[Rational],
) -> Result<WaringDecomposition> {
    let s = m.rows();
    let n = cert.p.num_vars();
    let d = cert.p.degree();
    let mut points = Vec::with_capacity(s);
    for lambda in eigenvalues {
        let shifted = m.sub(&Matrix::identity(s).scale(lambda));
        let ker = kernel(&shifted, Ambient::new(s, 1, Ring::Point));
        if ker.dim() != 1 {
            return Err(Error::InternalChainBroken(format!("eigenspace of dimension {}", ker.dim())));
        }
        let w = ker.basis()[0].to_dense(s);
        let c = w.iter().position(|x| !x.is_zero()).expect("kernel vector is nonzero");
        let mut coords: Vec<Rational> = ops.ops.iter().map(|mt| mt.mul_vec(&w)[c].clone() / w[c].clone()).collect();
        let lead = coords
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .ok_or_else(|| Error::InternalChainBroken("joint eigenvalue tuple is zero".into()))?;
        coords.iter_mut().for_each(|x| *x = x.clone() / lead.clone());
        points.push(LinearForm::new(coords));
    }

    let basis = MonomialBasis::new(n, d);
    let powers: Vec<Vec<Rational>> = points.iter().map(|v| power_of_linear_form(v, d).coords(&basis)).collect();
    let a = Matrix::from_fn(basis.len(), s, |r, c| powers[c][r].clone());
    let coeffs = match a.solve_unique(&cert.p.coords(&basis)) {
        Ok(Some(x)) => x,
        _ => return Err(Error::SolveFailure),
    };
    let mut terms: Vec<WaringTerm<Rational>> = points
        .into_iter()
        .zip(coeffs)
        .map(|(point, coefficient)| match rational_root_of(&coefficient, d) {
            Some(root) => WaringTerm {
                point: LinearForm::new(point.coeffs().iter().map(|x| x * &root).collect()),
                coefficient: Rational::from_integer(1.into()),
            },
            None => WaringTerm { coefficient, point },
        })
        .collect();
    terms.sort_by(|a, b| b.point.coeffs().cmp(a.point.coeffs()));
    let w = WaringDecomposition::Exact { num_vars: n, degree: d, terms };
    if reconstruct(&w, d)? != cert.p {
        return Err(Error::SolveFailure);
    }
    Ok(w)
}

fn approximate(
    cert: &CactusCertificate,
    ops: &MultiplicationOperators,
    m: &Matrix<Rational>,
    roots: &[Complex64],
) -> Result<WaringDecomposition> {
    let n = cert.p.num_vars();
    let d = cert.p.degree();
    let mc = to_complex(m);
    let opc: Vec<_> = ops.ops.iter().map(to_complex).collect();
    let mut points = Vec::with_capacity(roots.len());
    for &lambda in roots {
        let w = approximate_eigenvector(&mc, lambda);
        let c = (0..w.len()).max_by(|&i, &j| w[i].norm().partial_cmp(&w[j].norm()).unwrap()).unwrap_or(0);
        let coords: Vec<Complex64> = opc.iter().map(|mt| mat_vec(mt, &w)[c] / w[c]).collect();
        let lead = coords.iter().copied().max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap()).unwrap_or(Complex64::zero());
        points.push(LinearForm::new(coords.iter().map(|x| x / lead).collect::<Vec<_>>()));
    }
    let basis = MonomialBasis::new(n, d);
    let cols: Vec<Vec<Complex64>> = points.iter().map(|v| power_of_linear_form(v, d).coords(&basis)).collect();
    let target: Vec<Complex64> = cert.p.map_coeffs(|x| Complex64::new(super::numeric::to_f64(x), 0.0)).coords(&basis);
    let coeffs = least_squares(&cols, &target);
    let residual = (0..basis.len())
        .map(|r| {
            let fit: Complex64 = cols.iter().zip(&coeffs).map(|(col, x)| col[r] * x).sum();
            (fit - target[r]).norm()
        })
        .fold(0.0f64, f64::max);
    let mut terms: Vec<WaringTerm<Complex64>> =
        points.into_iter().zip(coeffs).map(|(point, coefficient)| WaringTerm { coefficient, point }).collect();
    terms.sort_by(|a, b| {
        let key = |t: &WaringTerm<Complex64>| t.point.coeffs().iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>();
        key(b).partial_cmp(&key(a)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(WaringDecomposition::Approximate { num_vars: n, degree: d, terms, residual })
}
