//! Homogeneous ideals of `Sym V*`, stored degree by degree.
//!
//! Pieces are grown from generators one degree at a time:
//! `I^{j+1} = S^1 V* · I^j + G_{j+1}`. Quotient Hilbert functions, the
//! Macaulay growth bound and ancestor ideals live here too.

use std::collections::BTreeMap;

use crate::apolarity::HilbertFunction;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Ambient, Echelon, GradedSubspace, Matrix, SparseVec};
use crate::poly::{binomial, contract, HomogeneousPoly, LinearForm, MonomialBasis, Ring};
use crate::scalar::ExactField;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedIdeal<F> {
    num_vars: usize,
    pieces: Vec<GradedSubspace<F>>,
    generators: BTreeMap<usize, GradedSubspace<F>>,
}

/// `S^1 V* · W` inserted into `ech`, where `ech` works one degree above `W`.
fn multiply_by_linear_forms<F: ExactField>(w: &GradedSubspace<F>, ech: &mut Echelon<F>) {
    let amb = w.ambient();
    let here = MonomialBasis::new(amb.num_vars, amb.degree);
    let up = MonomialBasis::new(amb.num_vars, amb.degree + 1);
    for t in 0..amb.num_vars {
        let shift = here.shift_table(&up, t);
        for row in w.basis() {
            if ech.rank() == ech.ncols() {
                return;
            }
            ech.insert(row.map_cols(|c| shift[c]));
        }
    }
}

impl<F: ExactField> GradedIdeal<F> {
    /// The ideal generated by the given graded pieces. Pieces are computed
    /// through the largest generator degree.
    pub fn from_generators(num_vars: usize, gens: Vec<(usize, GradedSubspace<F>)>) -> Result<Self> {
        let mut generators: BTreeMap<usize, GradedSubspace<F>> = BTreeMap::new();
        for (deg, g) in gens {
            if g.ambient() != Ambient::new(num_vars, deg, Ring::Dual) {
                return Err(Error::AmbientMismatch);
            }
            let merged = match generators.remove(&deg) {
                Some(prev) => prev.sum(&g),
                None => g,
            };
            generators.insert(deg, merged);
        }
        let top = generators.keys().next_back().copied().unwrap_or(0);
        let mut ideal = GradedIdeal {
            num_vars,
            pieces: vec![generators
                .get(&0)
                .cloned()
                .unwrap_or_else(|| GradedSubspace::zero(Ambient::new(num_vars, 0, Ring::Dual)))],
            generators,
        };
        ideal.grow_to(top);
        Ok(ideal)
    }

    pub fn zero(num_vars: usize) -> Self {
        Self::from_generators(num_vars, Vec::new()).expect("no generators to mismatch")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_computed_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn generator_degrees(&self) -> Vec<usize> {
        self.generators.keys().copied().collect()
    }

    pub fn piece(&self, j: usize) -> Option<&GradedSubspace<F>> {
        self.pieces.get(j)
    }

    pub fn pieces(&self) -> &[GradedSubspace<F>] {
        &self.pieces
    }

    /// Extend the pieces through degree `top`. A no-op when already there.
    pub fn grow_to(&mut self, top: usize) {
        while self.pieces.len() <= top {
            let j = self.pieces.len();
            let amb = Ambient::new(self.num_vars, j, Ring::Dual);
            if self.pieces[j - 1].is_full() {
                self.pieces.push(GradedSubspace::full(amb));
                continue;
            }
            let mut ech = match self.generators.get(&j) {
                Some(g) => g.to_echelon(),
                None => Echelon::new(amb.dim()),
            };
            multiply_by_linear_forms(&self.pieces[j - 1], &mut ech);
            self.pieces.push(GradedSubspace::from_echelon(amb, ech));
        }
    }

    pub fn grown(&self, top: usize) -> Self {
        let mut out = self.clone();
        out.grow_to(top);
        out
    }

    /// `dim S^j V* - dim I^j` for `j = 0..=top`.
    pub fn quotient_hf(&self, top: usize) -> HilbertFunction {
        let values = |pieces: &[GradedSubspace<F>]| pieces[..=top].iter().map(GradedSubspace::codim).collect();
        if top <= self.max_computed_degree() {
            HilbertFunction(values(&self.pieces))
        } else {
            HilbertFunction(values(&self.grown(top).pieces))
        }
    }

    /// Piecewise `self ⊆ other` through degree `top`.
    pub fn is_contained_in(&self, other: &Self, top: usize) -> bool {
        let a = self.grown(top);
        let b = other.grown(top);
        (0..=top).all(|j| a.pieces[j].is_subspace_of(&b.pieces[j]))
    }

    /// Piecewise equality through degree `top`.
    pub fn agrees_with(&self, other: &Self, top: usize) -> bool {
        let a = self.grown(top);
        let b = other.grown(top);
        a.pieces[..=top] == b.pieces[..=top]
    }

    /// A basis, degree by degree, of new generators not accounted for by
    /// lower degrees. Only degrees already computed are considered.
    pub fn minimal_generators(&self) -> Vec<(usize, Vec<HomogeneousPoly<F>>)> {
        let mut out = Vec::new();
        for (j, piece) in self.pieces.iter().enumerate() {
            let mut ech = Echelon::new(piece.ambient().dim());
            if j > 0 {
                multiply_by_linear_forms(&self.pieces[j - 1], &mut ech);
            }
            let basis = piece.ambient().basis();
            let n = piece.ambient().dim();
            let new: Vec<_> = piece
                .basis()
                .iter()
                .filter(|row| ech.insert((*row).clone()))
                .map(|row| HomogeneousPoly::from_coords(&basis, Ring::Dual, &row.to_dense(n)))
                .collect();
            if !new.is_empty() {
                out.push((j, new));
            }
        }
        out
    }

    /// Whether every element of `I^d` kills `p`, i.e. `p ∈ (I^d)^⊥`.
    pub fn annihilates(&self, p: &HomogeneousPoly<F>) -> bool {
        let piece = self.grown(p.degree()).pieces[p.degree()].clone();
        piece
            .basis_polys()
            .iter()
            .all(|alpha| contract(alpha, p).map(|c| c.is_zero()).unwrap_or(false))
    }
}

/// The ideal of the given points of `V`, computed degreewise as kernels of
/// evaluation through `max_degree`.
pub fn ideal_of_points<F: ExactField>(points: &[LinearForm<F>], max_degree: usize) -> Result<GradedIdeal<F>> {
    let n = points.first().map_or(0, LinearForm::num_vars);
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    if let Some(bad) = points.iter().find(|v| v.num_vars() != n) {
        return Err(Error::MismatchedVariables(n, bad.num_vars()));
    }
    let gens = (0..=max_degree)
        .map(|j| {
            let amb = Ambient::new(n, j, Ring::Dual);
            let basis = amb.basis();
            let eval = Matrix::from_fn(points.len(), basis.len(), |r, c| {
                let mut x = F::one();
                for (v, &e) in points[r].coeffs().iter().zip(basis.get(c).exponents()) {
                    for _ in 0..e {
                        x = x * v.clone();
                    }
                }
                x
            });
            (j, kernel(&eval, amb))
        })
        .collect();
    GradedIdeal::from_generators(n, gens)
}

/// `{α ∈ S^j V* : S^{deg W - j} V* · α ⊆ W}`.
pub fn ancestor_closure<F: ExactField>(w: &GradedSubspace<F>, j: usize) -> Result<GradedSubspace<F>> {
    let amb = w.ambient();
    if j > amb.degree {
        return Err(Error::DegreeOutOfRange { degree: j, max: amb.degree });
    }
    Ok(ancestor_chain(w).swap_remove(j))
}

/// [`ancestor_closure`] of `W` in every degree `0..=deg W`, computed
/// downwards: `α` is kept when every `x_t·α` is kept one degree up.
pub fn ancestor_chain<F: ExactField>(w: &GradedSubspace<F>) -> Vec<GradedSubspace<F>> {
    let amb = w.ambient();
    let mut chain = vec![w.clone()];
    for j in (0..amb.degree).rev() {
        let above = chain.last().unwrap();
        let target = Ambient::new(amb.num_vars, j, amb.ring);
        if above.is_full() {
            chain.push(GradedSubspace::full(target));
            continue;
        }
        let here = MonomialBasis::new(amb.num_vars, j);
        let up = MonomialBasis::new(amb.num_vars, j + 1);
        let codim = above.codim();
        let mut m = Matrix::zeros(amb.num_vars * codim, here.len());
        for t in 0..amb.num_vars {
            let shift = here.shift_table(&up, t);
            for (col, &c) in shift.iter().enumerate() {
                for (q, x) in above.quotient_coords(SparseVec::unit(c)).into_iter().enumerate() {
                    m[(t * codim + q, col)] = x;
                }
            }
        }
        chain.push(kernel(&m, target));
    }
    chain.reverse();
    chain
}

/// `h^⟨i⟩`: write `h = C(a_i,i) + C(a_{i-1},i-1) + …` with
/// `a_i > a_{i-1} > … >= 1` greedily and shift every binomial up by one.
pub fn macaulay_bound(h: usize, i: usize) -> usize {
    assert!(i >= 1, "Macaulay representation needs i >= 1");
    let mut rest = h;
    let mut out = 0;
    let mut k = i;
    while rest > 0 && k > 0 {
        let mut a = k;
        while binomial(a + 1, k) <= rest {
            a += 1;
        }
        rest -= binomial(a, k);
        out += binomial(a + 1, k + 1);
        k -= 1;
    }
    out
}

/// `hf[at] == hf[at+1] == r`.
pub fn growth_is_maximal(hf: &HilbertFunction, r: usize, at: usize) -> Result<bool> {
    if at + 1 >= hf.len() {
        return Err(Error::IndexOutOfRange { index: at + 1, len: hf.len() });
    }
    Ok(hf.get(at) == r && hf.get(at + 1) == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::ann_degree;
    use crate::poly::{parse_poly, power_of_linear_form};
    use crate::{QPoly, QSubspace, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn dual_span(n: usize, deg: usize, polys: &[&str]) -> QSubspace {
        let ps: Vec<QPoly> = polys.iter().map(|s| parse_poly(s, Some(n)).unwrap()).collect();
        GradedSubspace::span_polys(Ambient::new(n, deg, Ring::Dual), ps.iter())
    }

    fn three_points() -> QPoly {
        [[1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|v| power_of_linear_form(&LinearForm::new(v.iter().map(|&x| q(x)).collect()), 6))
            .reduce(|a, b| &a + &b)
            .unwrap()
    }

    #[test]
    fn generators_and_growth() {
        let i = GradedIdeal::from_generators(2, vec![(2, dual_span(2, 2, &["a1^2"]))]).unwrap();
        assert_eq!(i.max_computed_degree(), 2);
        assert_eq!(i.piece(2).unwrap(), &dual_span(2, 2, &["a1^2"]));
        assert!(i.piece(1).unwrap().is_zero());
        let g = i.grown(3);
        assert_eq!(g.piece(3).unwrap(), &dual_span(2, 3, &["a0*a1^2", "a1^3"]));
        assert_eq!(g.grown(3), g);
        assert_eq!(i.quotient_hf(6).values(), &[1, 2, 2, 2, 2, 2, 2]);

        let z = GradedIdeal::<Rational>::zero(2);
        assert_eq!(z.quotient_hf(4).values(), &[1, 2, 3, 4, 5]);
        assert!(z.grown(4).pieces().iter().all(GradedSubspace::is_zero));

        let full1 = GradedSubspace::<Rational>::full(Ambient::new(3, 1, Ring::Dual));
        let f = GradedIdeal::from_generators(3, vec![(1, full1)]).unwrap().grown(5);
        assert!(f.pieces()[1..].iter().all(GradedSubspace::is_full));

        let bad = GradedIdeal::from_generators(3, vec![(2, dual_span(2, 2, &["a1^2"]))]);
        assert_eq!(bad.unwrap_err(), Error::AmbientMismatch);
    }

    #[test]
    fn annihilator_generated_ideal_of_three_points() {
        let p = three_points();
        let gens = (0..=3).map(|j| (j, ann_degree(&p, j).unwrap())).collect();
        let i = GradedIdeal::from_generators(2, gens).unwrap();
        assert_eq!(i.piece(3).unwrap(), &dual_span(2, 3, &["a0^2*a1-a0*a1^2"]));
        assert_eq!(i.quotient_hf(9).values(), &[1, 2, 3, 3, 3, 3, 3, 3, 3, 3]);
        let gens = i.minimal_generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, 3);
        assert!(i.annihilates(&p));
    }

    #[test]
    fn ancestor_examples() {
        let w = dual_span(2, 2, &["a1^2"]);
        assert!(ancestor_closure(&w, 1).unwrap().is_zero());
        let full = GradedSubspace::<Rational>::full(Ambient::new(2, 2, Ring::Dual));
        assert!(ancestor_closure(&full, 1).unwrap().is_full());
        assert_eq!(ancestor_closure(&w, 2).unwrap(), w);
        assert!(ancestor_closure(&w, 3).is_err());
    }

    #[test]
    fn point_ideals() {
        let pts: Vec<_> = [[1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|v| LinearForm::new(v.iter().map(|&x| q(x)).collect()))
            .collect();
        let i = ideal_of_points(&pts, 5).unwrap();
        assert_eq!(i.quotient_hf(5).values(), &[1, 2, 3, 3, 3, 3]);
        assert_eq!(i.piece(3).unwrap(), &dual_span(2, 3, &["a0^2*a1-a0*a1^2"]));
        // largest-ideal property: every element of the point ideal kills p
        let p = three_points();
        for j in 0..=5 {
            assert!(i.piece(j).unwrap().is_subspace_of(&ann_degree(&p, j).unwrap()));
        }
    }

    // Oracle: among all sets B of h monomials of degree i in m variables, the
    // largest number of degree-(i+1) monomials whose every degree-i divisor
    // lies in B. Macaulay's theorem says this is h^<i> once m is large enough.
    fn monomial_growth_oracle(h: usize, i: usize, m: usize) -> usize {
        let low = MonomialBasis::new(m, i);
        let up = MonomialBasis::new(m, i + 1);
        let divisors: Vec<Vec<usize>> = up
            .monomials()
            .iter()
            .map(|u| {
                (0..m)
                    .filter_map(|t| {
                        let mut e = u.exponents().to_vec();
                        if e[t] == 0 {
                            return None;
                        }
                        e[t] -= 1;
                        low.index_of(&crate::poly::ExponentVector::new(e))
                    })
                    .collect()
            })
            .collect();
        let n = low.len();
        let mut best = 0;
        let mut chosen = vec![false; n];
        fn rec(start: usize, left: usize, chosen: &mut Vec<bool>, divisors: &[Vec<usize>], best: &mut usize) {
            if left == 0 {
                let count = divisors.iter().filter(|ds| ds.iter().all(|&d| chosen[d])).count();
                *best = (*best).max(count);
                return;
            }
            for k in start..chosen.len() {
                if chosen.len() - k < left {
                    break;
                }
                chosen[k] = true;
                rec(k + 1, left - 1, chosen, divisors, best);
                chosen[k] = false;
            }
        }
        if h <= n {
            rec(0, h, &mut chosen, &divisors, &mut best);
        }
        best
    }

    #[test]
    fn macaulay_bound_examples() {
        assert_eq!(monomial_growth_oracle(5, 2, 4), 7);
        assert_eq!(macaulay_bound(5, 2), 7);
        assert_eq!(macaulay_bound(0, 3), 0);
        for i in 1..6 {
            for h in 0..=i {
                assert_eq!(macaulay_bound(h, i), h);
            }
        }
    }

    #[test]
    fn macaulay_bound_matches_monomial_oracle() {
        for (i, m) in [(1, 5), (2, 4), (3, 3)] {
            let n = MonomialBasis::new(m, i).len();
            for h in 0..=n.min(9) {
                assert_eq!(macaulay_bound(h, i), monomial_growth_oracle(h, i, m), "h={h}, i={i}");
            }
        }
    }

    #[test]
    fn maximal_growth() {
        let hf = HilbertFunction(vec![1, 2, 3, 3, 3, 3]);
        assert!(growth_is_maximal(&hf, 3, 3).unwrap());
        let hf = HilbertFunction(vec![1, 2, 3, 2, 1]);
        assert!(!growth_is_maximal(&hf, 3, 2).unwrap());
        assert!(growth_is_maximal(&hf, 1, 4).is_err());
    }
}
