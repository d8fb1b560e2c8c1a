use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use superanalysis::acceptance::{self, CriterionResult, CRITERIA};
use superanalysis::algebra::{validate, AlgebraElement, Builtin, StructureTable};
use superanalysis::conditions::{
    complexify as complex_structure, default_slices, find_sqrt_minus_one, standard_even_basis, standard_odd_basis, verify_a0,
    verify_a1, NewtonConfig, SliceSpec,
};
use superanalysis::kernels::{d_second_residual, omega_full_eval, KernelSample, KERNEL_SIGN};
use superanalysis::quadrature::{reproduce as reproduce_at, sample_shell, BallDomain, Method, QuadratureSpec};
use superanalysis::scalar::{parse_rational, Rational};
use superanalysis::superfunc::{eval_qs, qs_to_real, real_to_qs, SuperPoint, Superspace};
use superanalysis::textio;

use crate::{AlgebraSource, FindIArgs, KernelArgs, Numeric, OutArgs, ReproduceArgs, SeriesArgs, SpaceArgs, SuiteArgs, VerifyArgs};

pub const SCHEMA_VERSION: u32 = 1;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: &OutArgs, mut report: Value) -> Result<()> {
    report.as_object_mut().expect("reports are objects").insert("schema_version".into(), json!(SCHEMA_VERSION));
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn load_table(src: &AlgebraSource) -> Result<(StructureTable<Rational>, Option<Builtin>)> {
    match (&src.algebra, &src.builtin) {
        (Some(path), _) => Ok((textio::parse_algebra(&read(path)?).with_context(|| format!("parsing {}", path.display()))?, None)),
        (None, Some(name)) => {
            let b: Builtin = name.parse()?;
            Ok((b.table(), Some(b)))
        }
        (None, None) => bail!("one of --algebra or --builtin is required"),
    }
}

fn load_slices(path: &Path, t: &StructureTable<Rational>) -> Result<textio::SliceFile> {
    textio::parse_slices(&read(path)?, t).with_context(|| format!("parsing {}", path.display()))
}

fn load_space(args: &SpaceArgs) -> Result<Superspace<Rational>> {
    let (t, builtin) = load_table(&args.source)?;
    let slices = match (&args.slices, builtin) {
        (Some(path), _) => Some(load_slices(path, &t)?.spec),
        (None, Some(b)) => default_slices(b, &t),
        (None, None) => (t.q() == 0).then(|| SliceSpec::trivial(&t)),
    };
    if args.m > 0 && slices.is_none() {
        bail!("odd hypervariables need a slice specification (--slices)");
    }
    Ok(Superspace::new(t, slices, args.n, args.m)?)
}

fn float_point(space: &Superspace<f64>, coords: &Option<Vec<f64>>, what: &str) -> Result<SuperPoint<f64>> {
    match coords {
        None => Ok(SuperPoint::origin(space)),
        Some(c) => SuperPoint::from_flat(space, c).with_context(|| format!("--{what} needs {} coordinates", space.real_dim())),
    }
}

pub fn verify(args: &VerifyArgs) -> Result<bool> {
    let (t, builtin) = load_table(&args.source)?;
    let even = match &args.a0 {
        Some(path) => Some(textio::parse_basis(&read(path)?, t.dim()).with_context(|| format!("parsing {}", path.display()))?),
        None => args.a0_default.then(|| standard_even_basis(&t)),
    };
    let slices = match (&args.a1, args.a1_default) {
        (Some(path), _) => Some(load_slices(path, &t)?),
        (None, true) => {
            let b = builtin.ok_or_else(|| anyhow!("--a1-default needs a built-in algebra"))?;
            let spec = default_slices(b, &t).ok_or_else(|| anyhow!("no default slice specification for {b}"))?;
            Some(textio::SliceFile { spec, odd_basis: None })
        }
        (None, false) => None,
    };
    let report = match args.numeric {
        Numeric::Exact => checks(&t, even, slices.map(|s| (s.odd_basis.unwrap_or_else(|| standard_odd_basis(&t)), s.spec)))?,
        Numeric::Float => {
            let tf = t.to_f64();
            let even = even.map(|b| b.iter().map(AlgebraElement::to_f64).collect());
            let slices = slices.map(|s| {
                let odd = s.odd_basis.map(|b| b.iter().map(AlgebraElement::to_f64).collect()).unwrap_or_else(|| standard_odd_basis(&tf));
                (odd, s.spec.to_f64())
            });
            checks(&tf, even, slices)?
        }
    };
    let pass = report["pass"].as_bool().unwrap_or(false);
    emit_json(&args.out, report)?;
    Ok(pass)
}

fn checks<S: superanalysis::scalar::Scalar>(
    t: &StructureTable<S>,
    even: Option<Vec<AlgebraElement<S>>>,
    slices: Option<(Vec<AlgebraElement<S>>, SliceSpec<S>)>,
) -> Result<Value> {
    let validation = validate(t);
    let mut pass = validation.all_pass();
    let mut report = json!({ "p": t.p(), "q": t.q(), "validation": validation });
    if let Some(basis) = even {
        let r = verify_a0(t, &basis)?;
        pass &= r.pass;
        report["a0"] = json!(r);
    }
    if let Some((odd, spec)) = slices {
        let r = verify_a1(t, &odd, &spec)?;
        pass &= r.pass;
        report["a1"] = json!(r);
    }
    report["pass"] = json!(pass);
    Ok(report)
}

fn newton(args: &FindIArgs) -> NewtonConfig {
    NewtonConfig { seed: args.seed, starts: args.starts, ..NewtonConfig::default() }
}

fn labelled(t: &StructureTable<impl superanalysis::scalar::Scalar>, a: &AlgebraElement<f64>) -> Value {
    json!({ "coefficients": a.coeffs(), "labels": t.labels() })
}

pub fn find_i(args: &FindIArgs) -> Result<bool> {
    let (t, _) = load_table(&args.source)?;
    match find_sqrt_minus_one(&t, &newton(args)) {
        Ok(r) => {
            let pass = r.residual < 1e-12;
            emit_json(
                &args.out,
                json!({ "found": true, "root": labelled(&t, &r.root), "residual": r.residual, "start": r.start, "iterations": r.iterations, "pass": pass }),
            )?;
            Ok(pass)
        }
        Err(e @ superanalysis::Error::NotFound) | Err(e @ superanalysis::Error::NotCentral(_)) => {
            emit_json(&args.out, json!({ "found": false, "error": e.to_string(), "pass": false }))?;
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn complexify(args: &FindIArgs) -> Result<bool> {
    let (t, _) = load_table(&args.source)?;
    let tf = t.to_f64();
    let root = match find_sqrt_minus_one(&t, &newton(args)) {
        Ok(r) => r.root,
        Err(e) => {
            emit_json(&args.out, json!({ "found": false, "error": e.to_string(), "pass": false }))?;
            return Ok(false);
        }
    };
    match complex_structure(&tf, &root) {
        Ok(cs) => {
            let pairs: Vec<Value> = cs.pairs.iter().map(|(b, ib)| json!({ "b": b.coeffs(), "ib": ib.coeffs() })).collect();
            emit_json(
                &args.out,
                json!({ "iota": labelled(&t, &cs.iota), "complex_dim": cs.complex_dim(), "pairs": pairs, "pass": true }),
            )?;
            Ok(true)
        }
        Err(e) => {
            emit_json(&args.out, json!({ "iota": labelled(&t, &root), "error": e.to_string(), "pass": false }))?;
            Ok(false)
        }
    }
}

pub fn kernel_sample(args: &KernelArgs) -> Result<bool> {
    let space = load_space(&args.space)?.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows = Vec::new();
    for _ in 0..args.points {
        let x = SuperPoint::from_flat(&space, &sample_shell(space.real_dim(), 0.5, 2.0, &mut rng))?;
        let w = omega_full_eval(&space, &x)?;
        let fd_residual = d_second_residual(&space, |p| omega_full_eval(&space, p), &x, args.step)?;
        rows.push(KernelSample { point: x.flatten(), coefficients: w.coeffs().iter().map(|c| c.coeffs().to_vec()).collect(), fd_residual });
    }
    let worst = rows.iter().map(|r| r.fd_residual).fold(0.0, f64::max);
    let pass = worst < acceptance::FD_TOL;
    emit_json(
        &args.out,
        json!({ "kernel_sign": KERNEL_SIGN, "step": args.step, "max_fd_residual": worst, "rows": rows, "pass": pass }),
    )?;
    Ok(pass)
}

pub fn reproduce(args: &ReproduceArgs) -> Result<bool> {
    let exact_space = load_space(&args.space)?;
    let f = textio::parse_qs_poly(&read(&args.f)?, &exact_space).with_context(|| format!("parsing {}", args.f.display()))?.to_f64();
    let space = exact_space.to_f64();
    let center = float_point(&space, &args.center, "center")?;
    let at = match &args.at {
        Some(_) => float_point(&space, &args.at, "at")?,
        None => center.clone(),
    };
    let method: Method = args.method.parse()?;
    let q = QuadratureSpec { method, samples: args.samples, seed: args.seed, execution: args.execution };
    let domain = BallDomain::new(center, args.radius)?;
    let est = reproduce_at(&space, &f, &at, &domain, &q)?;
    let expected = eval_qs(&space, &f, &at, &SuperPoint::origin(&space))?;
    let abs_error = est.value.max_abs_diff(&expected);
    let pass = match method {
        Method::MonteCarlo => abs_error <= 3.0 * est.stderr,
        Method::CircleTrapezoid => abs_error < 1e-10,
    };
    emit_json(
        &args.out,
        json!({
            "expected": expected.coeffs(),
            "value": est.value.coeffs(),
            "abs_error": abs_error,
            "stderr": est.stderr,
            "quadrature": q,
            "kernel_sign": KERNEL_SIGN,
            "pass": pass,
        }),
    )?;
    Ok(pass)
}

pub fn series(args: &SeriesArgs, roundtrip: bool) -> Result<bool> {
    let space = load_space(&args.space)?;
    let f = textio::parse_qs_poly(&read(&args.f)?, &space).with_context(|| format!("parsing {}", args.f.display()))?;
    let center = match &args.center {
        None => SuperPoint::origin(&space),
        Some(c) => {
            let flat = c.iter().map(|s| parse_rational(s).ok_or_else(|| anyhow!("not a number: `{s}`"))).collect::<Result<Vec<_>>>()?;
            SuperPoint::from_flat(&space, &flat)?
        }
    };
    let real = qs_to_real(&space, &f, &center)?;
    if !roundtrip {
        emit(&args.out, &textio::format_real_poly(&real))?;
        return Ok(true);
    }
    let back = real_to_qs(&space, &real, &center)?;
    let pass = back == f;
    emit_json(
        &args.out,
        json!({
            "qs_terms": f.terms().len(),
            "real_terms": real.len(),
            "recovered": textio::format_qs_poly(&back),
            "pass": pass,
        }),
    )?;
    Ok(pass)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    schema_version: u32,
    id: u32,
    name: &'a str,
    expected: &'a str,
    observed: &'a str,
    tolerance: &'a str,
    pass: bool,
}

pub fn suite(args: &SuiteArgs) -> Result<bool> {
    let selected: Vec<_> = match &args.only {
        Some(key) => vec![acceptance::find(key).ok_or_else(|| anyhow!("unknown criterion `{key}`"))?],
        None => CRITERIA.iter().collect(),
    };
    let results: Vec<CriterionResult> = selected.iter().map(|c| c.run(args.execution)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &results {
        w.serialize(CsvRow {
            schema_version: SCHEMA_VERSION,
            id: r.id,
            name: r.name,
            expected: &r.expected,
            observed: &r.observed,
            tolerance: &r.tolerance,
            pass: r.pass,
        })?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?;
    let stamp = humantime::format_rfc3339_seconds(std::time::SystemTime::now());
    emit(&args.out, &format!("# superanalysis suite, generated {stamp}\n{body}"))?;
    Ok(results.iter().all(|r| r.pass))
}
