//! The acceptance suite. Each criterion produces one [`CriterionReport`];
//! the CLI `selftest` command and the `acceptance` test target both run
//! [`run_all`].

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{catalecticant_rank, hilbert_function_with, membership_with, HilbertFunction};
use crate::certify::{certify, decompose_certificate, reconstruct, CactusCertificate, CertifyOptions, Reducedness};
use crate::constructions::{
    case_dimensions, compressed_hf, compressed_length, generic_counterexample, random_distinct_points, random_form,
    sum_of_powers,
};
use crate::error::Error;
use crate::ideal::{macaulay_bound, GradedIdeal};
use crate::linalg::{Ambient, GradedSubspace, RankOptions};
use crate::poly::{monomial_basis, parse_poly, HomogeneousPoly, Ring};
use crate::{QLinearForm, QPoly, Rational};

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    pub rank: RankOptions,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: 0x5eed, rank: RankOptions::default() }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub tolerance: &'static str,
    pub budget: Option<Duration>,
    pub elapsed: Duration,
    pub detail: String,
}

impl CriterionReport {
    fn new(id: u8, name: &'static str, budget: Option<u64>) -> Self {
        CriterionReport {
            id,
            name,
            passed: true,
            tolerance: "exact",
            budget: budget.map(Duration::from_secs),
            elapsed: Duration::ZERO,
            detail: String::new(),
        }
    }

    fn fail(&mut self, why: impl Into<String>) {
        if self.passed {
            self.detail = why.into();
        }
        self.passed = false;
    }

    fn finish(mut self, start: Instant, summary: impl Into<String>) -> Self {
        self.elapsed = start.elapsed();
        if let Some(b) = self.budget {
            if self.elapsed > b {
                self.fail(format!("took {:.2}s, budget {}s", self.elapsed.as_secs_f64(), b.as_secs()));
            }
        }
        if self.passed {
            self.detail = summary.into();
        }
        self
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let budget = match self.budget {
            Some(b) => format!("{}s", b.as_secs()),
            None => "none".into(),
        };
        write!(
            f,
            "criterion {} {:<28} {}  [{:.2}s, budget {}, tolerance {}]  {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            budget,
            self.tolerance,
            self.detail
        )
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn proportional(a: &QLinearForm, b: &QLinearForm) -> bool {
    let (x, y) = (a.coeffs(), b.coeffs());
    x.len() == y.len()
        && (0..x.len()).all(|i| (0..x.len()).all(|j| x[i].clone() * y[j].clone() == x[j].clone() * y[i].clone()))
}

/// Lengths and dimension counts for the three compressed cases.
pub fn criterion_1() -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(1, "compressed-case constants", Some(1));
    for ((n, j), want) in [((6, 3), 14), ((5, 5), 42), ((4, 9), 140)] {
        match compressed_length(n, j) {
            Ok(r) if r == want => {}
            got => rep.fail(format!("compressed_length({n},{j}) = {got:?}, expected {want}")),
        }
    }
    for ((n, j), want) in [((5, 5), (210, 210)), ((4, 9), (575, 560))] {
        match case_dimensions(n, j) {
            Ok(c) if (c.z_dim, c.smoothable_dim) == want => {}
            got => rep.fail(format!("case_dimensions({n},{j}) = {got:?}, expected {want:?}")),
        }
    }
    rep.finish(start, "lengths 14, 42, 140; dimensions (210,210), (575,560)")
}

/// A random test polynomial: dense random forms alternate with short sums
/// of powers, which have low catalecticant ranks.
fn random_test_poly(rng: &mut ChaCha8Rng) -> QPoly {
    let n = rng.gen_range(1..=4);
    let d = rng.gen_range(1..=8);
    loop {
        let p = if rng.gen_bool(0.5) {
            random_form(n, d, rng.gen(), rng.gen_range(1..=5)).unwrap()
        } else {
            let k = rng.gen_range(1..=4);
            let pts: Vec<QLinearForm> = (0..k)
                .map(|_| QLinearForm::new((0..n).map(|_| q(rng.gen_range(-2..=2))).collect()))
                .collect();
            let cs: Vec<Rational> = (0..k).map(|_| q(rng.gen_range(1..=3))).collect();
            sum_of_powers(&pts, &cs, d).unwrap()
        };
        if !p.is_zero() {
            return p;
        }
    }
}

/// `rank cat(p, i) = rank cat(p, d-i)` for 200 random polynomials.
/// Returns the Hilbert functions for criterion 9.
pub fn criterion_2(cfg: &SelftestConfig) -> (CriterionReport, Vec<HilbertFunction>) {
    let start = Instant::now();
    let mut rep = CriterionReport::new(2, "catalecticant symmetry", Some(60));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 2);
    let mut profiles = Vec::new();
    for t in 0..200 {
        let p = random_test_poly(&mut rng);
        let d = p.degree();
        let ranks: Vec<usize> = (0..=d).map(|i| catalecticant_rank(&p, i, &cfg.rank).unwrap()).collect();
        if let Some(i) = (0..=d).find(|&i| ranks[i] != ranks[d - i]) {
            rep.fail(format!("sample {t} ({p}): rank {} at {i}, {} at {}", ranks[i], ranks[d - i], d - i));
        }
        profiles.push(HilbertFunction(ranks));
    }
    (rep.finish(start, "200 polynomials, up to 4 variables, degree up to 8"), profiles)
}

/// One instance of criterion 3.
#[derive(Clone, Debug)]
pub struct RoundtripInstance {
    pub p: QPoly,
    pub r: usize,
    pub points: Vec<QLinearForm>,
    pub coeffs: Vec<Rational>,
}

pub fn roundtrip_instances(seed: u64, count: usize) -> Vec<RoundtripInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
    (0..count)
        .map(|t| {
            let r = t % 4 + 1;
            let n = (t / 4) % 3 + 2;
            let points = random_distinct_points(n, r, 3, &mut rng);
            let coeffs: Vec<Rational> = (0..r)
                .map(|_| {
                    let num = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    Rational::new(num.into(), rng.gen_range(1i64..=3).into())
                })
                .collect();
            let p = sum_of_powers(&points, &coeffs, 2 * r).unwrap();
            RoundtripInstance { p, r, points, coeffs }
        })
        .collect()
}

/// Certify, decompose and reconstruct 50 sums of `r` powers in degree `2r`.
/// Returns the instances with their certificates for criteria 6 and 7.
pub fn criterion_3(cfg: &SelftestConfig) -> (CriterionReport, Vec<(RoundtripInstance, CactusCertificate)>) {
    let start = Instant::now();
    let mut rep = CriterionReport::new(3, "roundtrip", Some(120));
    let opts = CertifyOptions { seed: cfg.seed, rank: cfg.rank, ..CertifyOptions::default() };
    let mut certs = Vec::new();
    for (t, inst) in roundtrip_instances(cfg.seed, 50).into_iter().enumerate() {
        let cert = match certify(&inst.p, inst.r, &opts) {
            Ok(c) => c,
            Err(e) => {
                rep.fail(format!("instance {t}: certify failed: {e}"));
                continue;
            }
        };
        if cert.s != inst.r || cert.reduced != Reducedness::Reduced {
            rep.fail(format!("instance {t}: s = {}, verdict {}", cert.s, cert.reduced.name()));
        }
        match decompose_certificate(&cert) {
            Ok(w) => {
                match w.exact_terms() {
                    Some(terms) => {
                        let matched = terms.len() == inst.points.len()
                            && inst.points.iter().all(|v| terms.iter().any(|t| proportional(v, &t.point)));
                        if !matched {
                            rep.fail(format!("instance {t}: recovered points differ from the input"));
                        }
                    }
                    None => rep.fail(format!("instance {t}: decomposition is not exact")),
                }
                if reconstruct(&w, inst.p.degree()).ok().as_ref() != Some(&inst.p) {
                    rep.fail(format!("instance {t}: reconstruction differs from p"));
                }
            }
            Err(e) => rep.fail(format!("instance {t}: decompose failed: {e}")),
        }
        certs.push((inst, cert));
    }
    (rep.finish(start, "50 instances, r <= 4, 2 to 4 variables, d = 2r"), certs)
}

/// Four general binary sixth powers: in the rank locus at `i = 2`, not at
/// `i = 3`.
pub fn criterion_4(cfg: &SelftestConfig) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(4, "four-point negative control", Some(5));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 4);
    let points = random_distinct_points(2, 4, 5, &mut rng);
    let p = sum_of_powers(&points, &[q(1), q(1), q(1), q(1)], 6).unwrap();
    match membership_with(&p, 3, 2, &cfg.rank) {
        Ok(m) if m.holds => {}
        other => rep.fail(format!("membership at i = 2: {other:?}")),
    }
    let opts = CertifyOptions { i: Some(3), seed: cfg.seed, rank: cfg.rank, ..CertifyOptions::default() };
    match certify(&p, 3, &opts) {
        Err(Error::NotInRankLocus { .. }) => {}
        Err(e) => rep.fail(format!("certify at i = 3 failed with {} instead", e.kind())),
        Ok(_) => rep.fail("certify at i = 3 succeeded"),
    }
    match hilbert_function_with(&p, &cfg.rank) {
        Ok(hf) if hf.values() == [1, 2, 3, 4, 3, 2, 1] => {}
        other => rep.fail(format!("Hilbert function {other:?}")),
    }
    rep.finish(start, "HF (1,2,3,4,3,2,1); NotInRankLocus at i = 3")
}

/// `x0^5 x1` at `r = 2`: a double point.
pub fn criterion_5(cfg: &SelftestConfig) -> (CriterionReport, Option<CactusCertificate>) {
    let start = Instant::now();
    let mut rep = CriterionReport::new(5, "non-reduced control", Some(5));
    let p = parse_poly("x0^5*x1", None).unwrap();
    let opts = CertifyOptions { seed: cfg.seed, rank: cfg.rank, ..CertifyOptions::default() };
    let cert = match certify(&p, 2, &opts) {
        Ok(c) => c,
        Err(e) => {
            rep.fail(format!("certify failed: {e}"));
            return (rep.finish(start, ""), None);
        }
    };
    if cert.s != 2 || cert.reduced != Reducedness::NotReduced {
        rep.fail(format!("s = {}, verdict {}", cert.s, cert.reduced.name()));
    }
    match decompose_certificate(&cert) {
        Err(Error::NotReduced) => {}
        other => rep.fail(format!("decompose returned {other:?}")),
    }
    (rep.finish(start, "s = 2, NotReduced, decompose raises NotReducedError"), Some(cert))
}

/// Ideals from `k = r` and `k = r + 1` agree, and the quotient matches
/// `Ω_p` on `[r, d-r+1]`.
pub fn criterion_6(cfg: &SelftestConfig, certs: &[(RoundtripInstance, CactusCertificate)]) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(6, "k-independence and window", None);
    let mut compared = 0;
    for (t, (inst, cert)) in certs.iter().enumerate() {
        let d = inst.p.degree();
        let r = inst.r;
        let opts = CertifyOptions { k: Some(r + 1), seed: cfg.seed, rank: cfg.rank, ..CertifyOptions::default() };
        match certify(&inst.p, r, &opts) {
            Ok(other) => {
                compared += 1;
                if !other.ideal.agrees_with(&cert.ideal, cert.horizon) {
                    rep.fail(format!("instance {t}: ideals for k = {r} and k = {} differ", r + 1));
                }
            }
            Err(e) => rep.fail(format!("instance {t}: certify with k = {} failed: {e}", r + 1)),
        }
        if let Some(j) = (r..=d - r + 1).find(|&j| cert.quotient_hf.get(j) != cert.hf_p.get(j)) {
            rep.fail(format!("instance {t}: quotient and apolar Hilbert functions differ in degree {j}"));
        }
    }
    rep.finish(start, format!("{compared} ideal pairs compared through the horizon"))
}

/// Quotient Hilbert function constant at `s` on `[r, d+3]`.
pub fn criterion_7(certs: &[&CactusCertificate]) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(7, "Gotzmann persistence", None);
    for (t, cert) in certs.iter().enumerate() {
        let top = cert.degree() + 3;
        let hf = cert.ideal.quotient_hf(top);
        if let Some(j) = (cert.r..=top).find(|&j| hf.get(j) != cert.s) {
            rep.fail(format!("certificate {t}: value {} in degree {j}, expected {}", hf.get(j), cert.s));
        }
    }
    rep.finish(start, format!("{} certificates constant on [r, d+3]", certs.len()))
}

/// `f·z^4` for a general cubic `f` in six variables.
pub fn criterion_8(cfg: &SelftestConfig) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(8, "compressed (6,3) example", Some(120));
    let sample = match generic_counterexample((6, 3), 7, cfg.seed, 20, &cfg.rank) {
        Ok(s) => s,
        Err(e) => {
            rep.fail(format!("no generic cubic: {e}"));
            return rep.finish(start, "");
        }
    };
    if sample.f_hf != compressed_hf(6, 3) {
        rep.fail(format!("cubic has Hilbert function {}", sample.f_hf));
    }
    let hf = hilbert_function_with(&sample.p, &cfg.rank).unwrap();
    if hf.max() > 14 {
        rep.fail(format!("catalecticant ranks {hf} exceed 14"));
    }
    if !hf.is_symmetric() {
        rep.fail(format!("Hilbert function {hf} is not symmetric"));
    }
    rep.finish(
        start,
        format!("cubic HF {}, ranks {hf}, seed {} after {} retries", sample.f_hf, sample.seed_used, sample.retries),
    )
}

/// A random ideal generated by a few sparse forms of low degree.
fn random_ideal(rng: &mut ChaCha8Rng) -> GradedIdeal<Rational> {
    let n = rng.gen_range(2..=4);
    let count = rng.gen_range(1..=4);
    let gens = (0..count)
        .map(|_| {
            let deg = rng.gen_range(1..=3);
            let basis = monomial_basis(n, deg);
            let terms: Vec<_> = (0..rng.gen_range(1..=3))
                .map(|_| (basis[rng.gen_range(0..basis.len())].clone(), q(rng.gen_range(1..=3))))
                .collect();
            let g = HomogeneousPoly::from_terms(n, deg, Ring::Dual, terms);
            (deg, GradedSubspace::span_polys(Ambient::new(n, deg, Ring::Dual), [&g]))
        })
        .collect();
    GradedIdeal::from_generators(n, gens).unwrap()
}

fn macaulay_violation(hf: &HilbertFunction) -> Option<String> {
    for j in 1..hf.len().saturating_sub(1) {
        let (h, next) = (hf.get(j), hf.get(j + 1));
        if next > macaulay_bound(h, j) {
            return Some(format!("{hf}: {next} in degree {} exceeds the bound {}", j + 1, macaulay_bound(h, j)));
        }
        if h <= j && next > h {
            return Some(format!("{hf}: grows from {h} in degree {j} although {h} <= {j}"));
        }
    }
    None
}

/// Macaulay's bound on 100 random ideals and on the criterion-2 profiles.
pub fn criterion_9(cfg: &SelftestConfig, profiles: &[HilbertFunction]) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(9, "Macaulay growth bound", None);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 9);
    for t in 0..100 {
        let hf = random_ideal(&mut rng).quotient_hf(8);
        if let Some(msg) = macaulay_violation(&hf) {
            rep.fail(format!("ideal {t}: {msg}"));
        }
    }
    for (t, hf) in profiles.iter().enumerate() {
        if let Some(msg) = macaulay_violation(hf) {
            rep.fail(format!("profile {t}: {msg}"));
        }
    }
    rep.finish(start, format!("100 random ideals through degree 8, {} apolar profiles", profiles.len()))
}

pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionReport> {
    let mut out = vec![criterion_1()];
    let (c2, profiles) = criterion_2(cfg);
    out.push(c2);
    let (c3, certs) = criterion_3(cfg);
    out.push(c3);
    out.push(criterion_4(cfg));
    let (c5, double_point) = criterion_5(cfg);
    out.push(c5);
    out.push(criterion_6(cfg, &certs));
    let mut all: Vec<&CactusCertificate> = certs.iter().map(|(_, c)| c).collect();
    all.extend(double_point.as_ref());
    out.push(criterion_7(&all));
    out.push(criterion_8(cfg));
    out.push(criterion_9(cfg, &profiles));
    out
}
