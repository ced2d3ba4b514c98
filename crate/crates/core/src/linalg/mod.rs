//! Exact linear algebra: ranks, kernels, canonical subspaces and their
//! perpendiculars under the apolarity pairing.

pub mod bareiss;
mod echelon;
mod matrix;

use std::fmt;

use crate::poly::{basis_len, HomogeneousPoly, MonomialBasis, Ring};
use crate::scalar::ExactField;

pub use echelon::{Echelon, SparseVec};
pub use matrix::Matrix;

/// Controls the optional modular pre-screen in rank computations. Every
/// reported rank is exact either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOptions {
    pub modular_fastpath: bool,
    pub seed: u64,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { modular_fastpath: true, seed: 0x5eed }
    }
}

impl RankOptions {
    pub fn exact_only() -> Self {
        RankOptions { modular_fastpath: false, ..Self::default() }
    }
}

pub fn rank<F: ExactField>(m: &Matrix<F>) -> usize {
    F::matrix_rank(m, &RankOptions::default())
}

pub fn rank_with<F: ExactField>(m: &Matrix<F>, opts: &RankOptions) -> usize {
    F::matrix_rank(m, opts)
}

/// `rank(m) <= bound`, skipping the exact computation when a modular lower
/// bound already exceeds `bound`.
pub fn rank_at_most<F: ExactField>(m: &Matrix<F>, bound: usize, opts: &RankOptions) -> bool {
    if F::matrix_rank_lower_bound(m, opts) > bound {
        return false;
    }
    rank_with(m, opts) <= bound
}

/// The graded piece a subspace lives in: `S^degree` of the given ring in
/// `num_vars` variables, with the monomial basis as coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub num_vars: usize,
    pub degree: usize,
    pub ring: Ring,
}

impl Ambient {
    pub fn new(num_vars: usize, degree: usize, ring: Ring) -> Self {
        Ambient { num_vars, degree, ring }
    }

    pub fn dim(&self) -> usize {
        basis_len(self.num_vars, self.degree)
    }

    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.num_vars, self.degree)
    }

    pub fn dual(&self) -> Self {
        Ambient { ring: self.ring.other(), ..*self }
    }
}

/// A linear subspace of one graded piece, stored as its reduced row echelon
/// basis. Equality of values is equality of subspaces.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSubspace<F> {
    ambient: Ambient,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: fmt::Debug> fmt::Debug for GradedSubspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSubspace")
            .field("ambient", &self.ambient)
            .field("dim", &self.rows.len())
            .field("rows", &self.rows)
            .finish()
    }
}

impl<F: ExactField> GradedSubspace<F> {
    pub fn zero(ambient: Ambient) -> Self {
        GradedSubspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: Ambient) -> Self {
        Self::from_echelon_rows(ambient, (0..ambient.dim()).map(SparseVec::unit).collect())
    }

    fn from_echelon_rows(ambient: Ambient, rows: Vec<SparseVec<F>>) -> Self {
        let pivots = rows.iter().map(|r| r.pivot().expect("zero row in echelon basis")).collect();
        GradedSubspace { ambient, rows, pivots }
    }

    pub fn from_echelon(ambient: Ambient, ech: Echelon<F>) -> Self {
        assert_eq!(ech.ncols(), ambient.dim());
        Self::from_echelon_rows(ambient, ech.into_sorted_rows())
    }

    pub fn span<I: IntoIterator<Item = SparseVec<F>>>(ambient: Ambient, vectors: I) -> Self {
        let mut ech = Echelon::new(ambient.dim());
        for v in vectors {
            ech.insert(v);
        }
        Self::from_echelon(ambient, ech)
    }

    pub fn span_polys<'a, I>(ambient: Ambient, polys: I) -> Self
    where
        I: IntoIterator<Item = &'a HomogeneousPoly<F>>,
        F: 'a,
    {
        let basis = ambient.basis();
        Self::span(
            ambient,
            polys.into_iter().map(|p| {
                assert_eq!((p.num_vars(), p.degree(), p.ring()), (ambient.num_vars, ambient.degree, ambient.ring));
                SparseVec::from_dense(&p.coords(&basis))
            }),
        )
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.codim() == 0
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots, increasing; they index a basis of
    /// the quotient by this subspace.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.codim());
        let mut it = self.pivots.iter().peekable();
        for c in 0..self.ambient.dim() {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        let n = self.ambient.dim();
        let data = self.rows.iter().flat_map(|r| r.to_dense(n)).collect();
        Matrix::new(self.rows.len(), n, data)
    }

    pub fn basis_polys(&self) -> Vec<HomogeneousPoly<F>> {
        let basis = self.ambient.basis();
        let n = self.ambient.dim();
        self.rows
            .iter()
            .map(|r| HomogeneousPoly::from_coords(&basis, self.ambient.ring, &r.to_dense(n)))
            .collect()
    }

    pub fn to_echelon(&self) -> Echelon<F> {
        let mut ech = Echelon::new(self.ambient.dim());
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech
    }

    /// `v` minus its projection along this subspace's echelon basis.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = v
            .entries()
            .iter()
            .filter_map(|(c, x)| self.pivots.binary_search(c).ok().map(|i| (i, x.clone())))
            .collect();
        for (i, x) in hits {
            v.sub_scaled(&x, &self.rows[i]);
        }
        v
    }

    /// Coordinates of the class of `v` in the quotient, in the basis given
    /// by [`Self::non_pivots`].
    pub fn quotient_coords(&self, v: SparseVec<F>) -> Vec<F> {
        let r = self.reduce(v);
        let np = self.non_pivots();
        let mut out = vec![F::zero(); np.len()];
        for (c, x) in r.entries() {
            let i = np.binary_search(c).expect("reduced vector has a pivot entry");
            out[i] = x.clone();
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn contains_poly(&self, p: &HomogeneousPoly<F>) -> bool {
        self.contains(&SparseVec::from_dense(&p.coords(&self.ambient.basis())))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        Self::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Annihilator under the apolarity pairing, living in the other ring.
    /// The pairing is diagonal in monomial bases with entries `∏ a_t!`.
    pub fn perp(&self) -> Self {
        let basis = self.ambient.basis();
        let weights: Vec<F> = basis
            .monomials()
            .iter()
            .map(|m| F::from_bigint(&m.factorial_product()))
            .collect();
        let mut ech = Echelon::new(self.ambient.dim());
        for r in &self.rows {
            let weighted =
                SparseVec::from_entries(r.entries().iter().map(|(c, x)| (*c, x.clone() * weights[*c].clone())).collect());
            ech.insert(weighted);
        }
        kernel_of_echelon(self.ambient.dual(), &ech.into_sorted_rows())
    }
}

fn kernel_of_echelon<F: ExactField>(ambient: Ambient, rows: &[SparseVec<F>]) -> GradedSubspace<F> {
    let n = ambient.dim();
    let pivots: Vec<usize> = rows.iter().map(|r| r.pivot().unwrap()).collect();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut ech = Echelon::new(n);
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut entries = vec![(free, F::one())];
        for (row, &p) in rows.iter().zip(&pivots) {
            let x = row.get(free);
            if !x.is_zero() {
                entries.push((p, -x));
            }
        }
        ech.insert(SparseVec::from_entries(entries));
    }
    GradedSubspace::from_echelon(ambient, ech)
}

/// `{x : M x = 0}` as a subspace of the given ambient (of dimension `M.cols`).
pub fn kernel<F: ExactField>(m: &Matrix<F>, ambient: Ambient) -> GradedSubspace<F> {
    assert_eq!(m.cols(), ambient.dim(), "ambient does not match the column count");
    let mut ech = Echelon::new(m.cols());
    for r in 0..m.rows() {
        ech.insert_dense(m.row(r));
    }
    kernel_of_echelon(ambient, &ech.into_sorted_rows())
}

/// Span of the rows of `M`.
pub fn row_space<F: ExactField>(m: &Matrix<F>, ambient: Ambient) -> GradedSubspace<F> {
    assert_eq!(m.cols(), ambient.dim(), "ambient does not match the column count");
    GradedSubspace::span(ambient, (0..m.rows()).map(|r| SparseVec::from_dense(m.row(r))))
}
