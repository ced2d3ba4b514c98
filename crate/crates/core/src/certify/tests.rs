use proptest::prelude::*;
use num_traits::Zero;

use super::*;
use crate::apolarity::omega_degree;
use crate::ideal::ideal_of_points;
use crate::poly::{parse_poly, power_of_linear_form, LinearForm};
use crate::univariate::charpoly;
use crate::QLinearForm;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn p(s: &str) -> QPoly {
    parse_poly(s, None).unwrap()
}

fn form(c: &[i64]) -> QLinearForm {
    LinearForm::new(c.iter().map(|&x| q(x)).collect())
}

fn sum_of_powers(points: &[&[i64]], coeffs: &[i64], d: usize) -> QPoly {
    points
        .iter()
        .zip(coeffs)
        .map(|(v, &c)| power_of_linear_form(&form(v), d).scale(&q(c)))
        .reduce(|a, b| &a + &b)
        .unwrap()
}

fn three_points() -> QPoly {
    sum_of_powers(&[&[1, 0], &[0, 1], &[1, 1]], &[1, 1, 1], 6)
}

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

#[test]
fn three_point_certificate() {
    let cert = certify(&three_points(), 3, &opts()).unwrap();
    assert_eq!((cert.s, cert.i_used, cert.k_used, cert.horizon), (3, 3, 3, 9));
    assert_eq!(cert.quotient_hf.values(), &[1, 2, 3, 3, 3, 3, 3, 3, 3, 3]);
    assert!(cert.k_independent && cert.window_match && cert.ancestor_property);
    assert_eq!(cert.reduced, Reducedness::Reduced);

    let gens = cert.ideal.minimal_generators();
    assert_eq!(gens.len(), 1);
    let (deg, polys) = &gens[0];
    assert_eq!((*deg, polys.len()), (3, 1));
    // the cubic vanishes on the three points and nowhere else on P^1
    for v in [[1, 0], [0, 1], [1, 1]] {
        assert!(polys[0].eval(&[q(v[0]), q(v[1])]).is_zero());
    }
    assert!(cert.ideal.piece(3).unwrap().contains_poly(&p("a0^2*a1-a0*a1^2")));

    let w = cert.decomposition.as_ref().unwrap();
    let terms = w.exact_terms().unwrap();
    let got: Vec<(Rational, Vec<Rational>)> = terms.iter().map(|t| (t.coefficient.clone(), t.point.coeffs().to_vec())).collect();
    assert_eq!(
        got,
        vec![(q(1), vec![q(1), q(1)]), (q(1), vec![q(1), q(0)]), (q(1), vec![q(0), q(1)])]
    );
    assert_eq!(reconstruct(w, 6).unwrap(), three_points());
}

#[test]
fn multiplication_operators_commute_and_share_eigenvectors() {
    let cert = certify(&three_points(), 3, &opts()).unwrap();
    let ops = multiplication_operators(&cert).unwrap();
    assert_eq!(ops.ops.len(), 2);
    for a in &ops.ops {
        assert_eq!((a.rows(), a.cols()), (3, 3));
        for b in &ops.ops {
            assert_eq!(a.mul(b), b.mul(a));
        }
    }
    // eigenvalues of M_t are v_t / ℓ(v) over the three points
    let ell = &ops.dehomogenizer;
    for (t, m) in ops.ops.iter().enumerate() {
        let chi = charpoly(m);
        for v in [[1, 0], [0, 1], [1, 1]] {
            let v = form(&v);
            let lambda = v.coeffs()[t].clone() / ell.pair(v.coeffs());
            assert!(chi.eval(&lambda).is_zero());
        }
    }
}

#[test]
fn minimality_against_comparison_schemes() {
    let cert = certify(&three_points(), 3, &opts()).unwrap();
    let same = ideal_of_points(&[form(&[1, 0]), form(&[0, 1]), form(&[1, 1])], 6).unwrap();
    assert!(minimality_check(&cert, &same).unwrap());
    let bigger = ideal_of_points(&[form(&[1, 0]), form(&[0, 1]), form(&[1, 1]), form(&[1, 2])], 6).unwrap();
    assert!(minimality_check(&cert, &bigger).unwrap());
    let other = ideal_of_points(&[form(&[1, -1]), form(&[1, 2]), form(&[2, 1])], 6).unwrap();
    assert_eq!(minimality_check(&cert, &other), Err(Error::SpanViolation));
}

#[test]
fn double_point_is_not_reduced() {
    let poly = p("x0^5*x1");
    let cert = certify(&poly, 2, &opts()).unwrap();
    assert_eq!(cert.s, 2);
    assert_eq!(cert.ideal.piece(2).unwrap().basis_polys(), vec![p("a1^2")]);
    assert_eq!(cert.reduced, Reducedness::NotReduced);
    assert!(cert.decomposition.is_none());
    assert_eq!(decompose(&poly, 2, &opts()), Err(Error::NotReduced));
    assert_eq!(is_reduced(&cert).unwrap(), Reducedness::NotReduced);

    let ops = multiplication_operators(&cert).unwrap();
    let jordan = ops
        .ops
        .iter()
        .any(|m| !charpoly(m).squarefree_part().eval_matrix(m).is_zero());
    assert!(jordan);
}

#[test]
fn diagonal_form_keeps_coefficients() {
    let poly = p("3*x0^6-5*x1^6");
    let w = decompose(&poly, 2, &opts()).unwrap();
    let terms = w.exact_terms().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!((terms[0].coefficient.clone(), terms[0].point.clone()), (q(3), form(&[1, 0])));
    assert_eq!((terms[1].coefficient.clone(), terms[1].point.clone()), (q(-5), form(&[0, 1])));
}

#[test]
fn coefficients_with_rational_roots_are_absorbed() {
    let poly = sum_of_powers(&[&[1, 0], &[0, 1]], &[64, 1], 6);
    let w = decompose(&poly, 2, &opts()).unwrap();
    let terms = w.exact_terms().unwrap();
    assert_eq!(terms[0].point, form(&[2, 0]));
    assert_eq!(terms[0].coefficient, q(1));
}

#[test]
fn pure_power() {
    let poly = p("x0^4").with_num_vars(3);
    let cert = certify(&poly, 1, &opts()).unwrap();
    assert_eq!(cert.s, 1);
    let ops = multiplication_operators(&cert).unwrap();
    assert!(ops.ops.iter().all(|m| m.rows() == 1));
    assert_eq!(cert.reduced, Reducedness::Reduced);
    let terms = cert.decomposition.as_ref().unwrap().exact_terms().unwrap().to_vec();
    assert_eq!(terms, vec![WaringTerm { coefficient: q(1), point: form(&[1, 0, 0]) }]);
}

#[test]
fn four_general_points_leave_the_rank_locus() {
    let poly = sum_of_powers(&[&[1, 0], &[0, 1], &[1, 1], &[1, -2]], &[1, 1, 1, 1], 6);
    assert!(matches!(certify(&poly, 3, &opts()), Err(Error::NotInRankLocus { r: 3, i: 3, rank: 4 })));
    let at_two = CertifyOptions { i: Some(2), ..opts() };
    assert!(matches!(certify(&poly, 3, &at_two), Err(Error::HypothesisViolated(_))));
}

#[test]
fn hypotheses_are_checked() {
    let poly = three_points();
    assert!(matches!(certify(&poly, 4, &opts()), Err(Error::HypothesisViolated(_))));
    assert!(matches!(certify(&poly, 0, &opts()), Err(Error::HypothesisViolated(_))));
    let bad_k = CertifyOptions { k: Some(5), ..opts() };
    assert!(matches!(certify(&poly, 3, &bad_k), Err(Error::HypothesisViolated(_))));
    let short = CertifyOptions { horizon: Some(6), ..opts() };
    assert!(matches!(certify(&poly, 3, &short), Err(Error::HypothesisViolated(_))));
}

#[test]
fn irrational_points_give_an_approximate_decomposition() {
    // (x0 + √2 x1)^4 + (x0 - √2 x1)^4
    let poly = p("2*x0^4+24*x0^2*x1^2+8*x1^4");
    let cert = certify(&poly, 2, &opts()).unwrap();
    assert_eq!(cert.reduced, Reducedness::Reduced);
    let w = cert.decomposition.as_ref().unwrap();
    assert!(!w.is_exact());
    assert_eq!(reconstruct(w, 4), Err(Error::ApproximateModeUnsupported));
    let WaringDecomposition::Approximate { terms, residual, .. } = w else { unreachable!() };
    assert!(*residual < 1e-9);
    let mut ratios: Vec<f64> = terms.iter().map(|t| (t.point.coeffs()[1] / t.point.coeffs()[0]).re).collect();
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((ratios[0] + 2f64.sqrt()).abs() < 1e-9 && (ratios[1] - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn reconstruct_small_cases() {
    let empty = WaringDecomposition::Exact { num_vars: 2, degree: 3, terms: vec![] };
    assert!(reconstruct(&empty, 3).unwrap().is_zero());
    let one = WaringDecomposition::Exact {
        num_vars: 2,
        degree: 2,
        terms: vec![WaringTerm { coefficient: q(2), point: form(&[1, 1]) }],
    };
    assert_eq!(reconstruct(&one, 2).unwrap(), p("2*x0^2+4*x0*x1+2*x1^2"));
}

fn distinct_points() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
    (2usize..=3, 1usize..=3).prop_flat_map(|(n, r)| {
        (
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), r),
            proptest::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], r),
        )
    })
}

fn pairwise_independent(points: &[Vec<i64>]) -> bool {
    let nonzero = points.iter().all(|v| v.iter().any(|&x| x != 0));
    let independent = |a: &[i64], b: &[i64]| {
        (0..a.len()).any(|i| (0..a.len()).any(|j| a[i] * b[j] != a[j] * b[i]))
    };
    nonzero && (0..points.len()).all(|i| (i + 1..points.len()).all(|j| independent(&points[i], &points[j])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn roundtrip_and_invariants((points, coeffs) in distinct_points()) {
        prop_assume!(pairwise_independent(&points));
        let r = points.len();
        let d = 2 * r;
        let refs: Vec<&[i64]> = points.iter().map(Vec::as_slice).collect();
        let poly = sum_of_powers(&refs, &coeffs, d);
        let cert = certify(&poly, r, &opts()).unwrap();
        prop_assert_eq!(cert.s, r);
        prop_assert_eq!(cert.reduced, Reducedness::Reduced);
        let w = cert.decomposition.clone().unwrap();
        prop_assert_eq!(reconstruct(&w, d).unwrap(), poly.clone());
        prop_assert!(cert.ideal.annihilates(&poly));
        for j in 0..=d {
            let omega = omega_degree(&poly, d - j).unwrap();
            prop_assert!(omega.is_subspace_of(&cert.ideal.piece(j).unwrap().perp()));
        }
        let ops = multiplication_operators(&cert).unwrap();
        for a in &ops.ops {
            for b in &ops.ops {
                prop_assert_eq!(a.mul(b), b.mul(a));
            }
        }
        let truth = ideal_of_points(&points.iter().map(|v| form(v)).collect::<Vec<_>>(), d).unwrap();
        prop_assert!(truth.agrees_with(&cert.ideal, cert.horizon));
    }
}
