//! Catalecticant matrices, graded pieces of `Ann(p)` and of the apolar
//! algebra `Ω_p`, and the Hilbert function of `Ω_p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{kernel, rank_at_most, rank_with, row_space, Ambient, GradedSubspace, Matrix, RankOptions};
use crate::poly::{falling_factorial_product, monomial_basis, HomogeneousPoly, Ring};
use crate::scalar::ExactField;

/// Degree-indexed dimensions of a graded algebra. Values past the stored
/// length read as zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> usize {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Matrix of `α ↦ α ⊣ p` from `S^i V*` to `S^{d-i} V`: row = dual monomial,
/// column = target monomial.
#[derive(Clone, Debug)]
pub struct Catalecticant<F> {
    pub i: usize,
    pub matrix: Matrix<F>,
}

fn check_nonzero<F: ExactField>(p: &HomogeneousPoly<F>) -> Result<()> {
    if p.ring() != Ring::Point {
        return Err(Error::MismatchedRing { expected: "point", found: p.ring().name() });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

pub fn catalecticant<F: ExactField>(p: &HomogeneousPoly<F>, i: usize) -> Result<Catalecticant<F>> {
    check_nonzero(p)?;
    let d = p.degree();
    if i > d {
        return Err(Error::DegreeOutOfRange { degree: i, max: d });
    }
    let n = p.num_vars();
    let rows = monomial_basis(n, i);
    let cols = monomial_basis(n, d - i);
    let matrix = Matrix::from_fn(rows.len(), cols.len(), |r, c| {
        let full = &rows[r] + &cols[c];
        let coeff = p.coeff(&full);
        if coeff.is_zero() {
            coeff
        } else {
            coeff * F::from_bigint(&falling_factorial_product(&full, &rows[r]))
        }
    });
    Ok(Catalecticant { i, matrix })
}

pub fn catalecticant_rank<F: ExactField>(p: &HomogeneousPoly<F>, i: usize, opts: &RankOptions) -> Result<usize> {
    Ok(rank_with(&catalecticant(p, i)?.matrix, opts))
}

/// `Ann(p)^j ⊂ S^j V*`. For `j > deg p` this is all of `S^j V*`.
pub fn ann_degree<F: ExactField>(p: &HomogeneousPoly<F>, j: usize) -> Result<GradedSubspace<F>> {
    check_nonzero(p)?;
    let ambient = Ambient::new(p.num_vars(), j, Ring::Dual);
    if j > p.degree() {
        return Ok(GradedSubspace::full(ambient));
    }
    Ok(kernel(&catalecticant(p, j)?.matrix.transpose(), ambient))
}

/// `Ω_p^j = S^j V* ⊣ p ⊂ S^{d-j} V`.
pub fn omega_degree<F: ExactField>(p: &HomogeneousPoly<F>, j: usize) -> Result<GradedSubspace<F>> {
    let cat = catalecticant(p, j)?;
    let ambient = Ambient::new(p.num_vars(), p.degree() - j, Ring::Point);
    Ok(row_space(&cat.matrix, ambient))
}

pub fn hilbert_function<F: ExactField>(p: &HomogeneousPoly<F>) -> Result<HilbertFunction> {
    hilbert_function_with(p, &RankOptions::default())
}

pub fn hilbert_function_with<F: ExactField>(p: &HomogeneousPoly<F>, opts: &RankOptions) -> Result<HilbertFunction> {
    check_nonzero(p)?;
    (0..=p.degree())
        .map(|i| catalecticant_rank(p, i, opts))
        .collect::<Result<Vec<_>>>()
        .map(HilbertFunction)
}

/// Outcome of a rank-locus membership test at one catalecticant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub holds: bool,
    /// `r` is at least the number of rows, so the bound says nothing.
    pub vacuous: bool,
}

/// Whether `rank(cat(p, i)) <= r`.
pub fn membership<F: ExactField>(p: &HomogeneousPoly<F>, r: usize, i: usize) -> Result<bool> {
    membership_with(p, r, i, &RankOptions::default()).map(|m| m.holds)
}

pub fn membership_with<F: ExactField>(
    p: &HomogeneousPoly<F>,
    r: usize,
    i: usize,
    opts: &RankOptions,
) -> Result<Membership> {
    let cat = catalecticant(p, i)?;
    let vacuous = r >= cat.matrix.rows();
    let holds = vacuous || rank_at_most(&cat.matrix, r, opts);
    Ok(Membership { holds, vacuous })
}

/// `p` together with its Hilbert function and `Ann(p)` through `max_degree`.
#[derive(Clone, Debug)]
pub struct ApolarProfile<F> {
    pub p: HomogeneousPoly<F>,
    pub hf: HilbertFunction,
    pub ann: Vec<GradedSubspace<F>>,
}

pub fn apolar_profile<F: ExactField>(p: &HomogeneousPoly<F>, max_degree: usize) -> Result<ApolarProfile<F>> {
    let hf = hilbert_function(p)?;
    let ann = (0..=max_degree).map(|j| ann_degree(p, j)).collect::<Result<Vec<_>>>()?;
    Ok(ApolarProfile { p: p.clone(), hf, ann })
}

/// Shape forced on the Hilbert function of `Ω_p` when `d >= 2r` and
/// `hf[i] = r` for some `i` in `[r, d-r]`: nondecreasing through degree
/// `r-1`, equal to `r` on `[r-1, d-r+1]`, nonincreasing afterwards.
///
/// `None` when the hypotheses do not apply.
pub fn window_shape_holds(hf: &HilbertFunction, r: usize) -> Option<bool> {
    let d = hf.len().checked_sub(1)?;
    if r == 0 || d < 2 * r || !(r..=d - r).any(|i| hf.get(i) == r) {
        return None;
    }
    let rising = (0..r.saturating_sub(1)).all(|j| hf.get(j) <= hf.get(j + 1));
    let flat = (r - 1..=d - r + 1).all(|j| hf.get(j) == r);
    let falling = (d - r + 1..d).all(|j| hf.get(j) >= hf.get(j + 1));
    Some(rising && flat && falling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{contract, parse_poly, power_of_linear_form, LinearForm};
    use crate::{QPoly, Rational};

    fn p(s: &str) -> QPoly {
        parse_poly(s, None).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn form(c: &[i64]) -> LinearForm<Rational> {
        LinearForm::new(c.iter().map(|&x| q(x)).collect())
    }

    fn sum_of_powers(points: &[&[i64]], d: usize) -> QPoly {
        points
            .iter()
            .map(|v| power_of_linear_form(&form(v), d))
            .reduce(|a, b| &a + &b)
            .unwrap()
    }

    // Brute-force oracle: dimension of the span of all order-i derivatives,
    // computed by differentiating with each dual monomial separately.
    fn derivative_span_dim(f: &QPoly, i: usize) -> usize {
        let n = f.num_vars();
        let images: Vec<QPoly> = monomial_basis(n, i)
            .into_iter()
            .map(|m| contract(&HomogeneousPoly::monomial(m, q(1), Ring::Dual), f).unwrap())
            .collect();
        let amb = Ambient::new(n, f.degree() - i, Ring::Point);
        GradedSubspace::span_polys(amb, images.iter()).dim()
    }

    #[test]
    fn catalecticant_examples() {
        let f = p("x0^4+x1^4");
        let cat = catalecticant(&f, 2).unwrap();
        assert_eq!(cat.matrix.row(0), &[q(12), q(0), q(0)]);
        assert!(cat.matrix.row(1).iter().all(|x| *x == q(0)));
        assert_eq!(cat.matrix.row(2), &[q(0), q(0), q(12)]);
        assert_eq!(crate::linalg::rank(&cat.matrix), 2);

        let f = p("x0^5");
        for i in 0..=5 {
            assert_eq!(catalecticant_rank(&f, i, &RankOptions::default()).unwrap(), 1);
        }
        let f = p("x0^3*x1");
        assert_eq!(catalecticant_rank(&f, 2, &RankOptions::default()).unwrap(), 2);
        assert_eq!(derivative_span_dim(&f, 2), 2);

        assert_eq!(catalecticant(&f, 5).unwrap_err(), Error::DegreeOutOfRange { degree: 5, max: 4 });
        let zero = QPoly::zero(2, 3, Ring::Point);
        assert_eq!(catalecticant(&zero, 1).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn catalecticant_entries_match_contraction() {
        let f = p("3*x0^2*x1*x2 - x1^4 + 2/3*x0*x2^3");
        let cat = catalecticant(&f, 2).unwrap();
        let rows = monomial_basis(3, 2);
        let cols = crate::poly::MonomialBasis::new(3, 2);
        for (r, m) in rows.iter().enumerate() {
            let img = contract(&HomogeneousPoly::monomial(m.clone(), q(1), Ring::Dual), &f).unwrap();
            assert_eq!(cat.matrix.row(r), img.coords(&cols).as_slice());
        }
    }

    #[test]
    fn annihilator_examples() {
        let f = p("x0^3*x1");
        let ann = ann_degree(&f, 2).unwrap();
        assert_eq!(ann.basis_polys(), vec![parse_poly("a1^2", Some(2)).unwrap()]);

        let f = p("x0^2*x1^2");
        let ann = ann_degree(&f, 3).unwrap();
        let expected = GradedSubspace::span_polys(
            Ambient::new(2, 3, Ring::Dual),
            [&parse_poly("a0^3", Some(2)).unwrap(), &parse_poly("a1^3", Some(2)).unwrap()],
        );
        assert_eq!(ann, expected);
        assert!(ann_degree(&f, 5).unwrap().is_full());

        for j in 0..=4 {
            let a = ann_degree(&f, j).unwrap();
            let o = omega_degree(&f, j).unwrap();
            assert_eq!(a.dim() + o.dim(), a.ambient().dim());
        }
        // kernel-perp against image, computed independently
        assert_eq!(ann_degree(&f, 2).unwrap().perp(), omega_degree(&f, 2).unwrap());
    }

    #[test]
    fn hilbert_function_examples() {
        assert_eq!(hilbert_function(&p("x0^2*x1^2")).unwrap().values(), &[1, 2, 3, 2, 1]);
        let three = sum_of_powers(&[&[1, 0], &[0, 1], &[1, 1]], 6);
        assert_eq!(hilbert_function(&three).unwrap().values(), &[1, 2, 3, 3, 3, 2, 1]);
        assert_eq!(hilbert_function(&p("x0^7")).unwrap().values(), &[1; 8]);
        // brute-force oracle agreement
        for i in 0..=6 {
            assert_eq!(hilbert_function(&three).unwrap().get(i), derivative_span_dim(&three, i));
        }
    }

    #[test]
    fn membership_examples() {
        let four = sum_of_powers(&[&[1, 0], &[0, 1], &[1, 1], &[1, -2]], 6);
        assert!(membership(&four, 3, 2).unwrap());
        assert!(!membership(&four, 3, 3).unwrap());
        let f = p("x0^6");
        for i in 1..6 {
            assert!(membership(&f, 1, i).unwrap());
        }
        let m = membership_with(&f, 10, 2, &RankOptions::default()).unwrap();
        assert!(m.holds && m.vacuous);
        assert!(membership(&f, 1, 7).is_err());
    }

    #[test]
    fn ancestor_property_of_the_annihilator() {
        let f = sum_of_powers(&[&[1, 0, 2], &[0, 1, -1], &[1, 1, 1], &[2, -1, 3]], 7);
        let ann5 = ann_degree(&f, 5).unwrap();
        for j in 0..=5 {
            let closure = crate::ideal::ancestor_closure(&ann5, j).unwrap();
            assert_eq!(closure, ann_degree(&f, j).unwrap(), "degree {j}");
        }
    }

    #[test]
    fn nesting_of_derivative_spaces() {
        let f = sum_of_powers(&[&[1, 2, 0], &[0, 1, 3], &[1, -1, 1], &[2, 0, -1], &[1, 1, 1]], 6);
        for (t, alpha) in [form(&[1, 0, 0]), form(&[2, -1, 3])].iter().enumerate() {
            let g = contract(&alpha.to_poly(Ring::Dual), &f).unwrap();
            for i in 1..=5 {
                let inner = omega_degree(&g, i - 1).unwrap();
                let outer = omega_degree(&f, i).unwrap();
                assert!(inner.is_subspace_of(&outer), "form {t}, degree {i}");
            }
        }
    }

    #[test]
    fn rank_bounded_by_number_of_summands_and_window_shape() {
        let f = sum_of_powers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]], 8);
        let hf = hilbert_function(&f).unwrap();
        assert!(hf.values().iter().all(|&h| h <= 4));
        assert!(hf.is_symmetric());
        assert_eq!(window_shape_holds(&hf, 4), Some(true));
        assert_eq!(window_shape_holds(&hf, 5), None);
        assert_eq!(window_shape_holds(&HilbertFunction(vec![1, 2, 3, 2, 2, 2, 2, 1, 1]), 2), Some(false));
    }
}
