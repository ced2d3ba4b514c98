//! The cactus certificate: from `p` and `r`, build the ideal `J` generated
//! by the low-degree pieces of `Ann(p)`, check its Hilbert-function chain,
//! decide whether the scheme it cuts out is reduced, and read off a Waring
//! decomposition when it is.

mod decompose;
mod numeric;
mod operators;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{ann_degree, hilbert_function_with, membership_with, HilbertFunction};
use crate::error::{Error, Result};
use crate::ideal::{ancestor_chain, GradedIdeal};
use crate::linalg::{Matrix, RankOptions};
use crate::univariate::charpoly;
use crate::{QIdeal, QPoly, Rational};

pub use decompose::{decompose, decompose_certificate, reconstruct, WaringDecomposition, WaringTerm};
pub use operators::{multiplication_operators, MultiplicationOperators};

/// Number of random combinations tried by the reducedness test.
pub const REDUCEDNESS_TRIALS: usize = 8;

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub i: Option<usize>,
    pub k: Option<usize>,
    pub horizon: Option<usize>,
    pub seed: u64,
    pub rank: RankOptions,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { i: None, k: None, horizon: None, seed: 0x5eed, rank: RankOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reducedness {
    Reduced,
    NotReduced,
    Undetermined,
}

impl Reducedness {
    pub fn name(self) -> &'static str {
        match self {
            Reducedness::Reduced => "Reduced",
            Reducedness::NotReduced => "NotReduced",
            Reducedness::Undetermined => "Undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CactusCertificate {
    pub p: QPoly,
    pub r: usize,
    pub i_used: usize,
    pub k_used: usize,
    pub horizon: usize,
    /// `dim Ω_p^i`, the length of the scheme.
    pub s: usize,
    /// `J`, grown through the horizon.
    pub ideal: QIdeal,
    pub quotient_hf: HilbertFunction,
    pub hf_p: HilbertFunction,
    pub k_independent: bool,
    pub window_match: bool,
    pub ancestor_property: bool,
    pub reduced: Reducedness,
    pub decomposition: Option<WaringDecomposition>,
    pub warnings: Vec<String>,
    pub seed: u64,
}

impl CactusCertificate {
    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    /// Degree in which the multiplication operators act.
    pub fn operator_degree(&self) -> usize {
        self.r.max(self.k_used)
    }
}

fn broken(msg: String) -> Error {
    Error::InternalChainBroken(msg)
}

fn build_ideal(p: &QPoly, k: usize, horizon: usize) -> Result<QIdeal> {
    let gens = (0..=k).map(|j| Ok((j, ann_degree(p, j)?))).collect::<Result<Vec<_>>>()?;
    let mut ideal = GradedIdeal::from_generators(p.num_vars(), gens)?;
    ideal.grow_to(horizon);
    Ok(ideal)
}

pub fn certify(p: &QPoly, r: usize, opts: &CertifyOptions) -> Result<CactusCertificate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    if r == 0 {
        return Err(Error::HypothesisViolated("r must be positive".into()));
    }
    if d < 2 * r {
        return Err(Error::HypothesisViolated(format!("degree {d} is below 2r = {}", 2 * r)));
    }
    let i = opts.i.unwrap_or_else(|| (d / 2).clamp(r, d - r));
    if !(r..=d - r).contains(&i) {
        return Err(Error::HypothesisViolated(format!("i = {i} outside [{r}, {}]", d - r)));
    }
    let k = opts.k.unwrap_or(r);
    if !(r..=d - r + 1).contains(&k) {
        return Err(Error::HypothesisViolated(format!("k = {k} outside [{r}, {}]", d - r + 1)));
    }
    let horizon = opts.horizon.unwrap_or(d + 3);
    if horizon < d + 1 {
        return Err(Error::HypothesisViolated(format!("horizon {horizon} is below d + 1 = {}", d + 1)));
    }

    let mut warnings = Vec::new();
    let member = membership_with(p, r, i, &opts.rank)?;
    let hf_p = hilbert_function_with(p, &opts.rank)?;
    if !member.holds {
        return Err(Error::NotInRankLocus { r, i, rank: hf_p.get(i) });
    }
    if member.vacuous {
        warnings.push(format!("rank bound {r} at degree {i} is vacuous"));
    }
    let s = hf_p.get(i);
    if s < r {
        warnings.push(format!("catalecticant rank {s} is below r = {r}; the scheme has length {s}"));
    }

    let ideal = build_ideal(p, k, horizon)?;
    let quotient_hf = ideal.quotient_hf(horizon);

    for j in 0..=k {
        if quotient_hf.get(j) != hf_p.get(j) {
            return Err(broken(format!("quotient and apolar Hilbert functions differ in degree {j}")));
        }
    }
    if let Some(j) = (0..=horizon).find(|&j| quotient_hf.get(j) < hf_p.get(j)) {
        return Err(broken(format!("quotient Hilbert function drops below the apolar one in degree {j}")));
    }
    if let Some(j) = (r..=horizon).find(|&j| quotient_hf.get(j) != s) {
        return Err(broken(format!(
            "quotient Hilbert function is {} in degree {j}, expected the constant {s}",
            quotient_hf.get(j)
        )));
    }
    let window_match = (r..=d - r + 1).all(|j| match ann_degree(p, j) {
        Ok(a) => ideal.piece(j) == Some(&a),
        Err(_) => false,
    });
    if !window_match {
        return Err(broken("ideal and annihilator differ inside the window".into()));
    }
    let top = ideal.piece(horizon).expect("grown through the horizon");
    let ancestor_property = ancestor_chain(top).iter().enumerate().all(|(j, a)| ideal.piece(j) == Some(a));
    if !ancestor_property {
        return Err(broken("ideal is not saturated through the horizon".into()));
    }
    if !ideal.annihilates(p) {
        return Err(broken("ideal does not annihilate p".into()));
    }
    let k_independent = if k < d - r + 1 {
        build_ideal(p, k + 1, horizon)?.agrees_with(&ideal, horizon)
    } else {
        warnings.push(format!("k = {k} is the largest admissible value; k-independence holds vacuously"));
        true
    };
    if !k_independent {
        return Err(broken(format!("ideals built with k = {k} and k = {} differ", k + 1)));
    }

    let mut cert = CactusCertificate {
        p: p.clone(),
        r,
        i_used: i,
        k_used: k,
        horizon,
        s,
        ideal,
        quotient_hf,
        hf_p,
        k_independent,
        window_match,
        ancestor_property,
        reduced: Reducedness::Undetermined,
        decomposition: None,
        warnings,
        seed: opts.seed,
    };
    let ops = multiplication_operators(&cert)?;
    let (verdict, witness) = reducedness_with_witness(&ops, cert.seed);
    cert.reduced = verdict;
    if let Some(m) = witness {
        let w = decompose::from_operators(&cert, &ops, &m)?;
        if !w.is_exact() {
            cert.warnings.push("decomposition points are irrational; terms are approximate".into());
        }
        cert.decomposition = Some(w);
    }
    Ok(cert)
}

/// Whether the scheme `Q` (given by its ideal) contains the certified one,
/// i.e. `I(Q) ⊆ J` piecewise through the certificate's horizon.
pub fn minimality_check(cert: &CactusCertificate, q_ideal: &QIdeal) -> Result<bool> {
    if q_ideal.num_vars() != cert.p.num_vars() {
        return Err(Error::MismatchedVariables(cert.p.num_vars(), q_ideal.num_vars()));
    }
    if !q_ideal.annihilates(&cert.p) {
        return Err(Error::SpanViolation);
    }
    Ok(q_ideal.is_contained_in(&cert.ideal, cert.horizon))
}

pub fn is_reduced(cert: &CactusCertificate) -> Result<Reducedness> {
    let ops = multiplication_operators(cert)?;
    Ok(reducedness_with_witness(&ops, cert.seed).0)
}

fn combination(ops: &[Matrix<Rational>], coeffs: &[i64]) -> Matrix<Rational> {
    let n = ops[0].rows();
    ops.iter()
        .zip(coeffs)
        .fold(Matrix::zeros(n, n), |acc, (m, &c)| acc.add(&m.scale(&Rational::from_integer(c.into()))))
}

/// The verdict, and for `Reduced` an operator with squarefree
/// characteristic polynomial.
fn reducedness_with_witness(ops: &MultiplicationOperators, seed: u64) -> (Reducedness, Option<Matrix<Rational>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7ed0_ced0);
    let mut candidates: Vec<Matrix<Rational>> = Vec::new();
    for _ in 0..REDUCEDNESS_TRIALS {
        let coeffs: Vec<i64> = (0..ops.ops.len()).map(|_| rng.gen_range(-10..=10)).collect();
        candidates.push(combination(&ops.ops, &coeffs));
    }
    candidates.extend(ops.ops.iter().cloned());
    let mut not_diagonalizable = false;
    for m in &candidates {
        let chi = charpoly(m);
        if chi.is_squarefree() {
            return (Reducedness::Reduced, Some(m.clone()));
        }
        if !chi.squarefree_part().eval_matrix(m).is_zero() {
            not_diagonalizable = true;
        }
    }
    if not_diagonalizable {
        (Reducedness::NotReduced, None)
    } else {
        (Reducedness::Undetermined, None)
    }
}

#[cfg(test)]
mod tests;
