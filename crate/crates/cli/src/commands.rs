use serde_json::{json, Value};

use catlab_core::apolarity::{ann_degree, catalecticant, hilbert_function_with};
use catlab_core::certify::{
    certify, decompose_certificate, reconstruct, CactusCertificate, CertifyOptions, WaringDecomposition,
};
use catlab_core::constructions::{case_dimensions, compressed_hf, generic_counterexample};
use catlab_core::ideal::GradedIdeal;
use catlab_core::linalg::{rank_with, RankOptions};
use catlab_core::poly::parse_poly;
use catlab_core::selftest::{run_all, SelftestConfig};
use catlab_core::{Error, QPoly};

use crate::report::{self, approx, approx_complex, Report, CONVENTION};
use crate::{CertifyKnobs, Cli, Command, PolyInput};

pub enum Failure {
    /// Bad invocation or unparsable polynomial: exit 1.
    Usage(String),
    /// The computation refused the input: exit 2 with a report.
    Domain(Box<Report>),
}

struct Ctx<'a> {
    cli: &'a Cli,
    rank: RankOptions,
}

impl Ctx<'_> {
    fn domain(&self, command: &'static str, inputs: Value, e: Error) -> Failure {
        let results = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
        let mut rep = Report::new(command, inputs, results, self.cli.seed);
        rep.ok = false;
        Failure::Domain(Box::new(rep))
    }

    fn certify_options(&self, k: &CertifyKnobs) -> CertifyOptions {
        CertifyOptions { i: k.i, k: k.k, horizon: k.horizon, seed: self.cli.seed, rank: self.rank }
    }
}

fn read_poly(input: &PolyInput) -> Result<QPoly, Failure> {
    let text = match (&input.poly, &input.poly_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::Usage("one of --poly or --poly-file is required".into())),
    };
    parse_poly(text.trim(), input.num_vars).map_err(|e| Failure::Usage(format!("cannot parse polynomial: {e}")))
}

fn poly_inputs(p: &QPoly) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("poly".into(), report::poly(p));
    m.insert("num_vars".into(), json!(p.num_vars()));
    m.insert("degree".into(), json!(p.degree()));
    m
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    let ctx = Ctx { cli, rank: RankOptions { modular_fastpath: !cli.no_modular_fastpath, seed: cli.seed } };
    match &cli.command {
        Command::Rank { input, i, matrix } => rank(&ctx, input, *i, *matrix),
        Command::Hilbert { input } => hilbert(&ctx, input),
        Command::Ann { input, max_degree } => ann(&ctx, input, *max_degree),
        Command::Certify { input, knobs } => run_certify(&ctx, input, knobs),
        Command::Decompose { input, knobs, exact, precision } => decompose(&ctx, input, knobs, *exact, *precision),
        Command::Compressed { case } => compressed(&ctx, *case),
        Command::Counterexample { case, d, max_retries } => counterexample(&ctx, *case, *d, *max_retries),
        Command::Selftest => selftest(&ctx),
    }
}

fn rank(ctx: &Ctx, input: &PolyInput, i: usize, show: bool) -> Result<Report, Failure> {
    let p = read_poly(input)?;
    let mut inputs = poly_inputs(&p);
    inputs.insert("i".into(), json!(i));
    let inputs = Value::Object(inputs);
    let cat = catalecticant(&p, i).map_err(|e| ctx.domain("rank", inputs.clone(), e))?;
    let mut results = json!({
        "i": i,
        "rank": rank_with(&cat.matrix, &ctx.rank),
        "rows": cat.matrix.rows(),
        "cols": cat.matrix.cols(),
    });
    if show {
        results["matrix"] = report::matrix(&cat.matrix);
    }
    Ok(Report::new("rank", inputs, results, ctx.cli.seed))
}

fn hilbert(ctx: &Ctx, input: &PolyInput) -> Result<Report, Failure> {
    let p = read_poly(input)?;
    let inputs = Value::Object(poly_inputs(&p));
    let h = hilbert_function_with(&p, &ctx.rank).map_err(|e| ctx.domain("hilbert", inputs.clone(), e))?;
    let results = json!({ "hf": report::hf(&h), "length": h.values().iter().sum::<usize>(), "symmetric": h.is_symmetric() });
    Ok(Report::new("hilbert", inputs, results, ctx.cli.seed))
}

fn ann(ctx: &Ctx, input: &PolyInput, max_degree: Option<usize>) -> Result<Report, Failure> {
    let p = read_poly(input)?;
    let top = max_degree.unwrap_or(p.degree() + 1);
    let mut inputs = poly_inputs(&p);
    inputs.insert("max_degree".into(), json!(top));
    let inputs = Value::Object(inputs);
    let fail = |e| ctx.domain("ann", inputs.clone(), e);
    let pieces = (0..=top).map(|j| ann_degree(&p, j)).collect::<Result<Vec<_>, _>>().map_err(fail)?;
    let degrees: Vec<Value> = pieces
        .iter()
        .enumerate()
        .map(|(j, a)| {
            json!({
                "degree": j,
                "dim": a.dim(),
                "codim": a.codim(),
                "basis": a.basis_polys().iter().map(report::poly).collect::<Vec<_>>(),
            })
        })
        .collect();
    let ideal = GradedIdeal::from_generators(p.num_vars(), pieces.into_iter().enumerate().collect()).map_err(fail)?;
    let results = json!({
        "degrees": degrees,
        "minimal_generators": generators(&ideal),
        "convention": CONVENTION,
    });
    Ok(Report::new("ann", inputs, results, ctx.cli.seed))
}

fn generators(ideal: &catlab_core::QIdeal) -> Value {
    ideal
        .minimal_generators()
        .iter()
        .map(|(j, gens)| json!({ "degree": j, "forms": gens.iter().map(report::poly).collect::<Vec<_>>() }))
        .collect()
}

fn decomposition(w: &WaringDecomposition, digits: usize) -> Value {
    match w {
        WaringDecomposition::Exact { terms, .. } => json!({
            "exact": true,
            "length": terms.len(),
            "terms": terms
                .iter()
                .map(|t| json!({ "coefficient": report::rational(&t.coefficient), "point": report::rationals(t.point.coeffs()) }))
                .collect::<Vec<_>>(),
        }),
        WaringDecomposition::Approximate { terms, residual, .. } => json!({
            "exact": false,
            "length": terms.len(),
            "terms": terms
                .iter()
                .map(|t| json!({
                    "coefficient": approx_complex(t.coefficient.re, t.coefficient.im, digits),
                    "point": t.point.coeffs().iter().map(|z| approx_complex(z.re, z.im, digits)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
            "residual": approx(*residual, digits),
        }),
    }
}

fn certificate(cert: &CactusCertificate, digits: usize) -> Value {
    json!({
        "r": cert.r,
        "s": cert.s,
        "i": cert.i_used,
        "k": cert.k_used,
        "horizon": cert.horizon,
        "hf_p": report::hf(&cert.hf_p),
        "quotient_hf": report::hf(&cert.quotient_hf),
        "checks": {
            "k_independent": cert.k_independent,
            "window_match": cert.window_match,
            "ancestor_property": cert.ancestor_property,
        },
        "reduced": cert.reduced.name(),
        "ideal_generators": generators(&cert.ideal),
        "decomposition": cert.decomposition.as_ref().map(|w| decomposition(w, digits)),
        "convention": CONVENTION,
    })
}

fn knob_inputs(p: &QPoly, k: &CertifyKnobs) -> serde_json::Map<String, Value> {
    let mut m = poly_inputs(p);
    m.insert("r".into(), json!(k.r));
    m.insert("i".into(), json!(k.i));
    m.insert("k".into(), json!(k.k));
    m.insert("horizon".into(), json!(k.horizon));
    m
}

fn run_certify(ctx: &Ctx, input: &PolyInput, knobs: &CertifyKnobs) -> Result<Report, Failure> {
    let p = read_poly(input)?;
    let inputs = Value::Object(knob_inputs(&p, knobs));
    let cert =
        certify(&p, knobs.r, &ctx.certify_options(knobs)).map_err(|e| ctx.domain("certify", inputs.clone(), e))?;
    let mut rep = Report::new("certify", inputs, certificate(&cert, 12), ctx.cli.seed);
    rep.warnings = cert.warnings.clone();
    Ok(rep)
}

fn decompose(ctx: &Ctx, input: &PolyInput, knobs: &CertifyKnobs, exact: bool, digits: usize) -> Result<Report, Failure> {
    let p = read_poly(input)?;
    let mut inputs = knob_inputs(&p, knobs);
    inputs.insert("exact".into(), json!(exact));
    inputs.insert("precision".into(), json!(digits));
    let inputs = Value::Object(inputs);
    let fail = |e| ctx.domain("decompose", inputs.clone(), e);
    let cert = certify(&p, knobs.r, &ctx.certify_options(knobs)).map_err(fail)?;
    let w = decompose_certificate(&cert).map_err(fail)?;
    if exact && !w.is_exact() {
        return Err(fail(Error::ApproximateModeUnsupported));
    }
    let mut results = decomposition(&w, digits);
    if w.is_exact() {
        results["verified"] = json!(reconstruct(&w, p.degree()).map_err(fail)? == p);
    }
    results["convention"] = json!(CONVENTION);
    let mut rep = Report::new("decompose", inputs, results, ctx.cli.seed);
    rep.warnings = cert.warnings.clone();
    Ok(rep)
}

fn compressed(ctx: &Ctx, (n, j): (usize, usize)) -> Result<Report, Failure> {
    let inputs = json!({ "n": n, "j": j });
    let c = case_dimensions(n, j).map_err(|e| ctx.domain("compressed", inputs.clone(), e))?;
    let results = json!({
        "n": c.n,
        "j": c.j,
        "r": c.r,
        "z_dim": c.z_dim,
        "smoothable_dim": c.smoothable_dim,
        "z_dim_exceeds_smoothable": c.z_dim > c.smoothable_dim,
        "hf": report::hf(&compressed_hf(n, j)),
    });
    Ok(Report::new("compressed", inputs, results, ctx.cli.seed))
}

fn counterexample(ctx: &Ctx, (n, j): (usize, usize), d: usize, max_retries: usize) -> Result<Report, Failure> {
    let inputs = json!({ "n": n, "j": j, "d": d, "max_retries": max_retries });
    let fail = |e| ctx.domain("counterexample", inputs.clone(), e);
    let c = case_dimensions(n, j).map_err(fail)?;
    let sample = generic_counterexample((n, j), d, ctx.cli.seed, max_retries, &ctx.rank).map_err(fail)?;
    let hf_p = hilbert_function_with(&sample.p, &ctx.rank).map_err(fail)?;
    let results = json!({
        "p": report::poly(&sample.p),
        "f": report::poly(&sample.f),
        "f_hf": report::hf(&sample.f_hf),
        "seed_used": sample.seed_used,
        "retries": sample.retries,
        "r": c.r,
        "rank_sweep": report::hf(&hf_p),
        "max_rank": hf_p.max(),
    });
    let mut rep = Report::new("counterexample", inputs, results, ctx.cli.seed);
    if sample.retries > 0 {
        rep.warnings.push(format!("{} samples rejected before seed {}", sample.retries, sample.seed_used));
    }
    Ok(rep)
}

fn selftest(ctx: &Ctx) -> Result<Report, Failure> {
    let cfg = SelftestConfig { seed: ctx.cli.seed, rank: ctx.rank };
    let reports = run_all(&cfg);
    let criteria: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "tolerance": r.tolerance,
                "budget_seconds": r.budget.map(|b| b.as_secs()),
                "detail": r.detail,
            })
        })
        .collect();
    let passed = reports.iter().filter(|r| r.passed).count();
    let results = json!({ "criteria": criteria, "passed": passed, "total": reports.len() });
    let mut rep = Report::new("selftest", json!({}), results, ctx.cli.seed);
    rep.ok = passed == reports.len();
    Ok(rep)
}
