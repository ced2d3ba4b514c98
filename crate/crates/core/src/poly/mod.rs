//! Homogeneous polynomials over the point ring `Sym V` and the dual operator
//! ring `Sym V*`, and the contraction action of the latter on the former.
//!
//! Contraction is honest differentiation: `∂^b x^a = (∏ a_t!/(a_t-b_t)!) x^(a-b)`.
//! With this convention the top-degree pairing `S^d V* × S^d V → k` has a
//! diagonal Gram matrix in monomial bases with entries `∏ a_t!`.

mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use text::{format_poly, parse_poly, ParseError, GRAMMAR};

/// Which polynomial ring an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// `Sym V`, variables `x0, x1, …`.
    Point,
    /// `Sym V*`, variables `a0, a1, …`, acting by differentiation.
    Dual,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Point => "point",
            Ring::Dual => "dual",
        }
    }

    pub fn var_prefix(self) -> char {
        match self {
            Ring::Point => 'x',
            Ring::Dual => 'a',
        }
    }

    pub fn other(self) -> Ring {
        match self {
            Ring::Point => Ring::Dual,
            Ring::Dual => Ring::Point,
        }
    }
}

/// Exponents of a monomial.
///
/// The ordering is the basis order used everywhere in the crate: lexicographic
/// with the first variable most significant, *descending*. So in two variables
/// `x0^2 < x0*x1 < x1^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(num_vars: usize) -> Self {
        ExponentVector(vec![0; num_vars])
    }

    pub fn unit(num_vars: usize, var: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// `∏ a_t!`: the diagonal entry of the top-degree apolarity pairing.
    pub fn factorial_product(&self) -> BigInt {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// `d! / ∏ a_t!`.
    pub fn multinomial(&self) -> BigInt {
        factorial(self.degree() as u32) / self.factorial_product()
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `∏ a_t! / (a_t - b_t)!` for `b ≤ a`: the coefficient produced by `∂^b x^a`.
pub(crate) fn falling_factorial_product(a: &ExponentVector, b: &ExponentVector) -> BigInt {
    a.0.iter()
        .zip(&b.0)
        .map(|(&a, &b)| ((a - b + 1)..=a).fold(BigInt::one(), |acc, k| acc * k))
        .product()
}

/// All exponent vectors of the given degree, in basis order.
pub fn monomial_basis(num_vars: usize, degree: usize) -> Vec<ExponentVector> {
    assert!(num_vars >= 1, "monomial_basis needs at least one variable");
    let mut out = Vec::new();
    let mut current = vec![0u32; num_vars];
    fill_basis(&mut out, &mut current, 0, degree as u32);
    out
}

fn fill_basis(out: &mut Vec<ExponentVector>, cur: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == cur.len() {
        cur[var] = remaining;
        out.push(ExponentVector(cur.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        cur[var] = e;
        fill_basis(out, cur, var + 1, remaining - e);
    }
    cur[var] = 0;
}

/// `C(num_vars + degree - 1, degree)`.
pub fn basis_len(num_vars: usize, degree: usize) -> usize {
    if num_vars == 0 {
        return usize::from(degree == 0);
    }
    binomial(num_vars + degree - 1, degree)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128) as usize
}

/// A monomial basis together with its inverse index.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    num_vars: usize,
    degree: usize,
    monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
}

impl MonomialBasis {
    pub fn new(num_vars: usize, degree: usize) -> Self {
        let monomials = monomial_basis(num_vars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis { num_vars, degree, monomials, index }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &ExponentVector {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &ExponentVector) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// For each monomial of this basis, the index of `x_var · monomial` in
    /// the basis one degree up.
    pub fn shift_table(&self, up: &MonomialBasis, var: usize) -> Vec<usize> {
        debug_assert_eq!(up.degree, self.degree + 1);
        self.monomials
            .iter()
            .map(|m| {
                let mut e = m.0.clone();
                e[var] += 1;
                up.index[&ExponentVector(e)]
            })
            .collect()
    }
}

/// A linear form `Σ c_t x_t`, used both as a point of `V` and as a
/// functional in `V*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm<F>(pub Vec<F>);

impl<F: Scalar> LinearForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        LinearForm(coeffs)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `Σ self_t · other_t`.
    pub fn pair(&self, other: &[F]) -> F {
        self.0
            .iter()
            .zip(other)
            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn to_poly(&self, ring: Ring) -> HomogeneousPoly<F> {
        let n = self.num_vars();
        HomogeneousPoly::from_terms(
            n,
            1,
            ring,
            self.0
                .iter()
                .enumerate()
                .map(|(t, c)| (ExponentVector::unit(n, t), c.clone())),
        )
    }
}

/// A homogeneous polynomial with coefficients in `F`.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality. The zero polynomial still remembers its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPoly<F> {
    num_vars: usize,
    degree: usize,
    ring: Ring,
    terms: BTreeMap<ExponentVector, F>,
}

impl<F: Scalar> HomogeneousPoly<F> {
    pub fn zero(num_vars: usize, degree: usize, ring: Ring) -> Self {
        HomogeneousPoly { num_vars, degree, ring, terms: BTreeMap::new() }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    ///
    /// Panics if a monomial has the wrong number of variables or degree.
    pub fn from_terms<I>(num_vars: usize, degree: usize, ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, F)>,
    {
        let mut p = Self::zero(num_vars, degree, ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(exponents: ExponentVector, coeff: F, ring: Ring) -> Self {
        let n = exponents.num_vars();
        let d = exponents.degree();
        Self::from_terms(n, d, ring, [(exponents, coeff)])
    }

    /// Coordinates in a monomial basis of matching shape.
    pub fn from_coords(basis: &MonomialBasis, ring: Ring, coords: &[F]) -> Self {
        assert_eq!(basis.len(), coords.len());
        Self::from_terms(
            basis.num_vars(),
            basis.degree(),
            ring,
            basis.monomials().iter().cloned().zip(coords.iter().cloned()),
        )
    }

    fn add_term(&mut self, m: ExponentVector, c: F) {
        assert_eq!(m.num_vars(), self.num_vars, "monomial has wrong number of variables");
        assert_eq!(m.degree(), self.degree, "monomial has wrong degree");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ExponentVector) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn coords(&self, basis: &MonomialBasis) -> Vec<F> {
        assert_eq!(basis.degree(), self.degree);
        basis.monomials().iter().map(|m| self.coeff(m)).collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(
            self.num_vars,
            self.degree,
            self.ring,
            self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())),
        )
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> HomogeneousPoly<G> {
        HomogeneousPoly::from_terms(
            self.num_vars,
            self.degree,
            self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Re-embed into more variables; the new variables come last.
    pub fn with_num_vars(&self, num_vars: usize) -> Self {
        assert!(num_vars >= self.num_vars);
        Self::from_terms(
            num_vars,
            self.degree,
            self.ring,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(num_vars, 0);
                (ExponentVector(e), c.clone())
            }),
        )
    }

    /// Substitute `values` for the variables.
    pub fn eval(&self, values: &[F]) -> F {
        assert_eq!(values.len(), self.num_vars);
        self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    term = term * v.clone();
                }
            }
            acc + term
        })
    }

    fn check_same_piece(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "different numbers of variables");
        assert_eq!(self.degree, other.degree, "different degrees");
        assert_eq!(self.ring, other.ring, "different rings");
    }

    /// `α ⊣ p`: the dual element `self` differentiates `p`.
    ///
    /// Returns the zero polynomial of degree 0 when `deg α > deg p`.
    pub fn contract(&self, p: &HomogeneousPoly<F>) -> Result<HomogeneousPoly<F>> {
        contract(self, p)
    }
}

impl<F: Scalar> Add for &HomogeneousPoly<F> {
    type Output = HomogeneousPoly<F>;

    /// Panics if the operands live in different graded pieces.
    fn add(self, rhs: &HomogeneousPoly<F>) -> HomogeneousPoly<F> {
        self.check_same_piece(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Scalar> Sub for &HomogeneousPoly<F> {
    type Output = HomogeneousPoly<F>;

    fn sub(self, rhs: &HomogeneousPoly<F>) -> HomogeneousPoly<F> {
        self.check_same_piece(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Scalar> Neg for &HomogeneousPoly<F> {
    type Output = HomogeneousPoly<F>;

    fn neg(self) -> HomogeneousPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> Mul for &HomogeneousPoly<F> {
    type Output = HomogeneousPoly<F>;

    fn mul(self, rhs: &HomogeneousPoly<F>) -> HomogeneousPoly<F> {
        assert_eq!(self.num_vars, rhs.num_vars, "different numbers of variables");
        assert_eq!(self.ring, rhs.ring, "different rings");
        let mut out = HomogeneousPoly::zero(self.num_vars, self.degree + rhs.degree, self.ring);
        for (a, c) in &self.terms {
            for (b, e) in &rhs.terms {
                out.add_term(a + b, c.clone() * e.clone());
            }
        }
        out
    }
}

impl fmt::Display for HomogeneousPoly<crate::Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

/// `α ⊣ p` for `α ∈ S^i V*`, `p ∈ S^d V`.
pub fn contract<F: Scalar>(
    alpha: &HomogeneousPoly<F>,
    p: &HomogeneousPoly<F>,
) -> Result<HomogeneousPoly<F>> {
    if alpha.num_vars != p.num_vars {
        return Err(Error::MismatchedVariables(alpha.num_vars, p.num_vars));
    }
    if alpha.ring != Ring::Dual {
        return Err(Error::MismatchedRing { expected: "dual", found: alpha.ring.name() });
    }
    if p.ring != Ring::Point {
        return Err(Error::MismatchedRing { expected: "point", found: p.ring.name() });
    }
    let n = p.num_vars;
    if alpha.degree > p.degree {
        return Ok(HomogeneousPoly::zero(n, 0, Ring::Point));
    }
    let mut out = HomogeneousPoly::zero(n, p.degree - alpha.degree, Ring::Point);
    for (b, c) in &alpha.terms {
        for (a, e) in &p.terms {
            if let Some(rest) = a.checked_sub(b) {
                let k = F::from_bigint(&falling_factorial_product(a, b));
                out.add_term(rest, k * c.clone() * e.clone());
            }
        }
    }
    Ok(out)
}

/// Multinomial expansion of `(Σ v_t x_t)^d`.
pub fn power_of_linear_form<F: Scalar>(v: &LinearForm<F>, d: usize) -> HomogeneousPoly<F> {
    let n = v.num_vars();
    let terms = monomial_basis(n, d).into_iter().map(|m| {
        let mut c = F::from_bigint(&m.multinomial());
        for (x, &e) in v.0.iter().zip(&m.0) {
            for _ in 0..e {
                c = c * x.clone();
            }
        }
        (m, c)
    });
    HomogeneousPoly::from_terms(n, d, Ring::Point, terms)
}
