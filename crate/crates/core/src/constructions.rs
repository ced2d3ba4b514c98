//! Compressed-algebra lengths and parameter counts, seeded random forms,
//! and the polynomials built from them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{hilbert_function_with, HilbertFunction};
use crate::error::{Error, Result};
use crate::linalg::RankOptions;
use crate::poly::{binomial, monomial_basis, power_of_linear_form, ExponentVector, HomogeneousPoly, Ring};
use crate::{QLinearForm, QPoly, Rational};

/// A compressed Gorenstein algebra of embedding dimension `n` and odd socle
/// degree `j`, with the dimension counts compared in the smoothability
/// argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompressedCase {
    pub n: usize,
    pub j: usize,
    /// Length of the algebra.
    pub r: usize,
    pub z_dim: usize,
    /// Dimension of the smoothable component, `n·r`.
    pub smoothable_dim: usize,
}

fn check_case(n: usize, j: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if j.is_multiple_of(2) {
        return Err(Error::EvenSocleUnsupported(j));
    }
    Ok(())
}

/// `2·C(⌊j/2⌋ + n, n)`.
pub fn compressed_length(n: usize, j: usize) -> Result<usize> {
    check_case(n, j)?;
    Ok(2 * binomial(j / 2 + n, n))
}

pub fn case_dimensions(n: usize, j: usize) -> Result<CompressedCase> {
    let r = compressed_length(n, j)?;
    Ok(CompressedCase { n, j, r, z_dim: binomial(n + j, j) - r, smoothable_dim: n * r })
}

/// Hilbert function of a compressed algebra: `min(C(n-1+i, i), C(n-1+j-i, j-i))`.
pub fn compressed_hf(n: usize, j: usize) -> HilbertFunction {
    HilbertFunction((0..=j).map(|i| binomial(n - 1 + i, i).min(binomial(n - 1 + j - i, j - i))).collect())
}

/// A form with independent uniform integer coefficients in
/// `[-coeff_bound, coeff_bound]`, one draw per monomial in basis order.
pub fn random_form(num_vars: usize, degree: usize, seed: u64, coeff_bound: u64) -> Result<QPoly> {
    if coeff_bound == 0 {
        return Err(Error::InvalidArgument("coefficient bound must be at least 1".into()));
    }
    if num_vars == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let bound = coeff_bound as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<(ExponentVector, Rational)> = monomial_basis(num_vars, degree)
        .into_iter()
        .map(|m| (m, Rational::from_integer(rng.gen_range(-bound..=bound).into())))
        .collect();
    Ok(HomogeneousPoly::from_terms(num_vars, degree, Ring::Point, terms))
}

/// `f · z^{d-j}` with `f = random_form(n, j, seed, 10)` in the first `n`
/// variables and `z` the last of `n + 1`.
pub fn counterexample_poly(case: (usize, usize), d: usize, seed: u64) -> Result<QPoly> {
    let (n, j) = case;
    if d < j {
        return Err(Error::HypothesisViolated(format!("degree {d} is below the socle degree {j}")));
    }
    let f = random_form(n, j, seed, 10)?;
    Ok(times_power_of_last(&f, d - j))
}

fn times_power_of_last(f: &QPoly, e: usize) -> QPoly {
    let n = f.num_vars();
    let mut z = vec![0u32; n + 1];
    z[n] = e as u32;
    let zpow = HomogeneousPoly::monomial(ExponentVector::new(z), Rational::from_integer(1.into()), Ring::Point);
    &f.with_num_vars(n + 1) * &zpow
}

/// A counterexample polynomial whose cubic (or higher) factor `f` has the
/// compressed Hilbert function.
#[derive(Clone, Debug)]
pub struct GenericSample {
    pub p: QPoly,
    pub f: QPoly,
    pub f_hf: HilbertFunction,
    pub seed_used: u64,
    /// Samples rejected before this one.
    pub retries: usize,
}

/// [`counterexample_poly`], re-sampling `f` with successive seeds until its
/// Hilbert function is compressed. Fails after `max_retries` rejections.
pub fn generic_counterexample(
    case: (usize, usize),
    d: usize,
    seed: u64,
    max_retries: usize,
    opts: &RankOptions,
) -> Result<GenericSample> {
    let (n, j) = case;
    check_case(n, j)?;
    if d < j {
        return Err(Error::HypothesisViolated(format!("degree {d} is below the socle degree {j}")));
    }
    let want = compressed_hf(n, j);
    for retries in 0..=max_retries {
        let seed_used = seed.wrapping_add(retries as u64);
        let f = random_form(n, j, seed_used, 10)?;
        if f.is_zero() {
            continue;
        }
        let f_hf = hilbert_function_with(&f, opts)?;
        if f_hf == want {
            let p = times_power_of_last(&f, d - j);
            return Ok(GenericSample { p, f, f_hf, seed_used, retries });
        }
    }
    Err(Error::InvalidArgument(format!("no sample with Hilbert function {want} in {} tries", max_retries + 1)))
}

/// `Σ λ_t v_t^d`.
pub fn sum_of_powers(points: &[QLinearForm], coeffs: &[Rational], d: usize) -> Result<QPoly> {
    if points.len() != coeffs.len() {
        return Err(Error::LengthMismatch(points.len(), coeffs.len()));
    }
    let n = points
        .first()
        .map(QLinearForm::num_vars)
        .ok_or_else(|| Error::InvalidArgument("need at least one point".into()))?;
    let mut out = HomogeneousPoly::zero(n, d, Ring::Point);
    for (v, c) in points.iter().zip(coeffs) {
        if v.num_vars() != n {
            return Err(Error::MismatchedVariables(n, v.num_vars()));
        }
        out = &out + &power_of_linear_form(v, d).scale(c);
    }
    Ok(out)
}

/// `count` points with integer coordinates in `[-bound, bound]`, pairwise
/// non-proportional and nonzero.
pub fn random_distinct_points(num_vars: usize, count: usize, bound: i64, rng: &mut impl Rng) -> Vec<QLinearForm> {
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<i64> = (0..num_vars).map(|_| rng.gen_range(-bound..=bound)).collect();
        let proportional = |w: &Vec<i64>| (0..num_vars).all(|a| (0..num_vars).all(|b| v[a] * w[b] == v[b] * w[a]));
        if v.iter().any(|&x| x != 0) && !out.iter().any(proportional) {
            out.push(v);
        }
    }
    out.into_iter()
        .map(|v| QLinearForm::new(v.into_iter().map(|x| Rational::from_integer(x.into())).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::hilbert_function;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn lengths_and_dimensions() {
        assert_eq!(compressed_length(6, 3).unwrap(), 14);
        assert_eq!(compressed_length(5, 5).unwrap(), 42);
        assert_eq!(compressed_length(4, 9).unwrap(), 140);
        assert_eq!(compressed_length(3, 4), Err(Error::EvenSocleUnsupported(4)));
        let c = case_dimensions(5, 5).unwrap();
        assert_eq!((c.r, c.z_dim, c.smoothable_dim), (42, 210, 210));
        let c = case_dimensions(4, 9).unwrap();
        assert_eq!((c.r, c.z_dim, c.smoothable_dim), (140, 575, 560));
        assert_eq!(case_dimensions(6, 3).unwrap().r, 14);
        assert_eq!(compressed_hf(6, 3).values(), &[1, 6, 6, 1]);
        assert_eq!(compressed_hf(6, 3).values().iter().sum::<usize>(), 14);
    }

    #[test]
    fn length_is_the_largest_seen_for_plane_cubics() {
        let best = (0..40)
            .map(|seed| random_form(2, 3, seed, 10).unwrap())
            .filter(|f| !f.is_zero())
            .map(|f| hilbert_function(&f).unwrap().values().iter().sum::<usize>())
            .max()
            .unwrap();
        assert_eq!(best, compressed_length(2, 3).unwrap());
    }

    #[test]
    fn random_forms_are_reproducible() {
        let a = random_form(7, 3, 42, 10).unwrap();
        assert_eq!(a, random_form(7, 3, 42, 10).unwrap());
        assert_ne!(a, random_form(7, 3, 43, 10).unwrap());
        assert_eq!(a.degree(), 3);
        assert!(a.terms().all(|(_, c)| c >= &q(-10) && c <= &q(10)));
        assert!(random_form(2, 2, 0, 0).is_err());
    }

    #[test]
    fn counterexamples() {
        let f = random_form(3, 3, 9, 10).unwrap();
        assert_eq!(counterexample_poly((3, 3), 3, 9).unwrap(), f.with_num_vars(4));
        let p = counterexample_poly((3, 3), 6, 9).unwrap();
        assert_eq!((p.num_vars(), p.degree()), (4, 6));
        let hf = hilbert_function(&p).unwrap();
        assert!(hf.is_symmetric());
        assert!(hf.max() <= compressed_length(3, 3).unwrap());
        assert!(counterexample_poly((3, 3), 2, 9).is_err());

        let g = generic_counterexample((3, 3), 6, 9, 20, &RankOptions::default()).unwrap();
        assert_eq!(g.f_hf, compressed_hf(3, 3));
        assert_eq!(g.seed_used, 9 + g.retries as u64);
    }

    #[test]
    fn sums_of_powers() {
        let v = QLinearForm::new(vec![q(1), q(2)]);
        assert_eq!(sum_of_powers(std::slice::from_ref(&v), &[q(1)], 3).unwrap(), power_of_linear_form(&v, 3));
        let w = QLinearForm::new(vec![q(1), q(-1)]);
        assert!(sum_of_powers(&[v.clone(), w.clone()], &[q(0), q(0)], 3).unwrap().is_zero());
        assert_eq!(sum_of_powers(&[v.clone(), w], &[q(1)], 3), Err(Error::LengthMismatch(2, 1)));
        let pts: Vec<QLinearForm> = [[1, 0], [0, 1], [1, 1], [1, -2]]
            .iter()
            .map(|c| QLinearForm::new(c.iter().map(|&x| q(x)).collect()))
            .collect();
        let p = sum_of_powers(&pts, &[q(1), q(1), q(1), q(1)], 6).unwrap();
        assert_eq!(hilbert_function(&p).unwrap().values(), &[1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(
            sum_of_powers(&pts[..2], &[q(3), q(-5)], 2).unwrap(),
            parse_poly("3*x0^2-5*x1^2", None).unwrap()
        );
    }

    #[test]
    fn distinct_points_are_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts = random_distinct_points(2, 5, 2, &mut rng);
        for (a, v) in pts.iter().enumerate() {
            for w in &pts[a + 1..] {
                let c = v.coeffs();
                let e = w.coeffs();
                assert_ne!(c[0].clone() * e[1].clone(), c[1].clone() * e[0].clone());
            }
        }
    }

    proptest! {
        #[test]
        fn cofactor_power_keeps_the_form(n in 1usize..=3, j in 1usize..=3, extra in 0usize..=3, seed in 0u64..1000) {
            let p = counterexample_poly((n, j), j + extra, seed).unwrap();
            let f = random_form(n, j, seed, 10).unwrap();
            prop_assert_eq!(p.degree(), j + extra);
            for (m, c) in f.terms() {
                let mut e = m.exponents().to_vec();
                e.push(extra as u32);
                prop_assert_eq!(&p.coeff(&ExponentVector::new(e)), c);
            }
            prop_assert_eq!(p.num_terms(), f.num_terms());
        }
    }
}
