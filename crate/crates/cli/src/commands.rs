//! One function per subcommand. Each returns an [`Outcome`] holding the JSON
//! report, a check summary and text lines; rendering happens elsewhere.

use std::path::Path;

use hecke_core::distinction::{
    distinction_integral, distinction_point, growth_bfs, growth_closed_form, nonvanishing_scan, poincare_closed_form,
    poincare_value,
};
use hecke_core::gelfand::{check_pairing, shipped_catalog, CatalogEntry};
use hecke_core::hecke::verify_presentation;
use hecke_core::spherical::{
    matrix_coefficient_scalar, psi0_coefficient, solve_eigen_recurrence, verify_eigen_generator, verify_eigen_pi,
    verify_two_sided_form,
};
use hecke_core::tensor::{apply, ev, ev_along_word, pair, DEFAULT_TENSOR_CAP};
use hecke_core::weyl::{check_rank, enumerate_by_length, random_element};
use hecke_core::{
    EigenReport, Error, ExtendedWeylElement, LaurentPoly, LevelZeroParams, Rational, Result, Scalar, SphericalParams,
    TensorVector, Truncation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// Longest elements for which every reduced word is enumerated.
const REDUCED_WORD_MAX_LENGTH: usize = 6;

pub struct Config {
    pub e: usize,
    pub level: LevelZeroParams,
    pub max_length: usize,
    pub chi_pi: Rational,
    pub seed: u64,
    pub samples: usize,
    pub catalog: Option<Vec<CatalogEntry>>,
}

impl Config {
    pub fn new(e: usize, f: u32, q0: u64, max_length: usize, chi_pi: Rational, seed: u64, samples: usize) -> Result<Self> {
        check_rank(e)?;
        let level = LevelZeroParams::new(e, f, q0)?.with_chi_pi(chi_pi.clone())?;
        Ok(Config {
            e,
            level,
            max_length,
            chi_pi,
            seed,
            samples,
            catalog: None,
        })
    }

    fn truncation(&self) -> Truncation {
        Truncation::new(self.max_length)
    }
}

#[derive(Serialize)]
pub struct CheckRow {
    pub command: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct GrowthRow {
    pub length: usize,
    pub count_bfs: u64,
    pub count_closed_form: u64,
    pub equal: bool,
}

pub struct Outcome {
    pub command: &'static str,
    pub passed: bool,
    pub report: Value,
    pub checks: Vec<CheckRow>,
    pub growth: Option<Vec<GrowthRow>>,
    pub text: Vec<String>,
}

impl Outcome {
    fn new(command: &'static str, report: Value, checks: Vec<CheckRow>, text: Vec<String>) -> Self {
        Outcome {
            command,
            passed: checks.iter().all(|c| c.passed),
            report,
            checks,
            growth: None,
            text,
        }
    }
}

fn row(command: &str, check: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow {
        command: command.into(),
        check: check.into(),
        passed,
        detail: detail.into(),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn presentation(cfg: &Config) -> Result<Outcome> {
    let rep = verify_presentation(cfg.e)?;
    let mut checks = Vec::new();
    let mut text = vec![format!("presentation of H({}, q1), q1 generic", cfg.e)];
    for r in &rep.relations {
        let detail = format!("{} instances, {} failures", r.instances, r.failures.len());
        text.push(format!("  {:<16} {}  {}  [{}]", r.name, verdict(r.passed()), r.statement, detail));
        checks.push(row("presentation", &r.name, r.passed(), detail));
    }
    Ok(Outcome::new("presentation", to_value(&rep), checks, text))
}

fn eigen_json(rep: &EigenReport) -> Value {
    to_value(rep)
}

fn eigen_line(label: &str, rep: &EigenReport) -> String {
    format!(
        "  {:<12} {}  {} checked, {} boundary, {} failures",
        label,
        verdict(rep.ok()),
        rep.checked,
        rep.boundary_skipped,
        rep.failures.len()
    )
}

pub fn eigen(cfg: &Config) -> Result<Outcome> {
    let t = cfg.truncation();
    let p = SphericalParams::generic(cfg.e, cfg.chi_pi.clone())?;
    let mut checks = Vec::new();
    let mut text = vec![format!(
        "eigen-equation, e={}, L={}, |k|<={}, chi_pi={}",
        cfg.e, t.max_length, t.k_radius, cfg.chi_pi
    )];
    let mut generators = Vec::new();
    for i in 0..cfg.e {
        let rep = verify_eigen_generator(i, t, &p)?;
        let label = format!("[s_{i}]");
        text.push(eigen_line(&label, &rep));
        checks.push(row("eigen", &label, rep.ok(), format!("{} checked", rep.checked)));
        let mut v = json!({ "generator": i });
        if let (Value::Object(m), Value::Object(r)) = (&mut v, eigen_json(&rep)) {
            m.extend(r);
        }
        generators.push(v);
    }

    // [Pi] with a formal chi_pi; q1 only needs to be a unit here.
    let ps = SphericalParams::symbolic_chi_pi(cfg.e, cfg.level.q1())?;
    let pi = verify_eigen_pi(t, &ps)?;
    text.push(eigen_line("[Pi]^(+-1)", &pi));
    checks.push(row("eigen", "[Pi]^(+-1)", pi.ok(), format!("{} checked", pi.checked)));

    let two = verify_two_sided_form(t, &p)?;
    text.push(eigen_line("two-sided", &two));
    checks.push(row("eigen", "two-sided", two.ok(), format!("{} checked", two.checked)));

    let rec = solve_eigen_recurrence(&p, t.max_length);
    let recurrence_ok = match &rec {
        Ok(sol) => sol
            .iter()
            .all(|(w0, c)| *c == psi0_coefficient(&ExtendedWeylElement::new(0, w0.clone()), &p)),
        Err(_) => false,
    };
    text.push(format!("  {:<12} {}  unique solution from c(1) = 1", "recurrence", verdict(recurrence_ok)));
    checks.push(row("eigen", "recurrence", recurrence_ok, "forward solve of the generator identities"));

    let report = json!({
        "e": cfg.e,
        "L": t.max_length,
        "k_radius": t.k_radius,
        "chi_pi": cfg.chi_pi,
        "generators": generators,
        "pi": eigen_json(&pi),
        "two_sided": eigen_json(&two),
        "recurrence_consistent": recurrence_ok,
    });
    Ok(Outcome::new("eigen", report, checks, text))
}

#[derive(Serialize)]
struct LengthRow {
    length: usize,
    elements: usize,
    value: Rational,
    operator_value: Rational,
    agree: bool,
}

#[derive(Serialize)]
struct Sample {
    k: i64,
    window: Vec<i64>,
    length: usize,
    passed: bool,
}

fn random_factor(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    (0..d).map(|_| Rational::from(rng.random_range(-3..=3))).collect()
}

pub fn coefficient(cfg: &Config) -> Result<Outcome> {
    let p = &cfg.level;
    if !p.chi_pi.is_one() {
        return Err(Error::RequiresTrivialChiPi(p.chi_pi.to_string()));
    }
    let e = cfg.e;
    let minus_inv_q1 = -p.q1().inverse()?;
    let layers = enumerate_by_length(e, cfg.max_length)?;

    let mut lengths = Vec::new();
    for (len, layer) in layers.iter().enumerate() {
        let value = matrix_coefficient_scalar(&layer[0], 0, p)?;
        let mut agree = true;
        let mut operator_value = Rational::zero();
        for w0 in layer {
            let op = ev(&ExtendedWeylElement::new(0, w0.clone()), p)?;
            operator_value = minus_inv_q1.pow(len as i64)? * &op.scale;
            agree &= operator_value == value;
            for k in 0..e as i64 {
                agree &= matrix_coefficient_scalar(w0, k, p)? == value;
            }
        }
        lengths.push(LengthRow {
            length: len,
            elements: layer.len(),
            value,
            operator_value,
            agree,
        });
    }

    let mut words = 0usize;
    let mut words_ok = true;
    for w0 in layers.iter().take(REDUCED_WORD_MAX_LENGTH + 1).flatten() {
        let w = ExtendedWeylElement::new(0, w0.clone());
        let reference = ev(&w, p)?;
        for word in w.all_reduced_words() {
            words += 1;
            words_ok &= ev_along_word(0, &word, p)? == reference;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let d = if 2usize.checked_pow(e as u32).is_some_and(|n| n <= DEFAULT_TENSOR_CAP) { 2 } else { 1 };
    let mut samples = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let len = rng.random_range(0..=cfg.max_length);
        let w = random_element(e, len, e as i64, &mut rng)?;
        let v = TensorVector::pure_power(&random_factor(&mut rng, d), e)?;
        let vt = TensorVector::pure_power(&random_factor(&mut rng, d), e)?;
        let op = ev(&w, p)?;
        let lhs = minus_inv_q1.pow(w.length() as i64)? * &pair(&apply(&op, &v)?, &vt)?;
        let rhs = matrix_coefficient_scalar(w.finite_part(), w.shift(), p)? * &pair(&v, &vt)?;
        samples.push(Sample {
            k: w.shift(),
            window: w.finite_part().window().to_vec(),
            length: w.length(),
            passed: lhs == rhs && op.perm == w.project_to_finite(),
        });
    }

    let lengths_ok = lengths.iter().all(|r| r.agree);
    let samples_ok = samples.iter().all(|s| s.passed);
    let mut text = vec![format!(
        "matrix coefficient c(w0 Pi^k)/<v,v~>, e={}, f={}, q0={}, L={}",
        e, p.f, p.q0, cfg.max_length
    )];
    for r in &lengths {
        text.push(format!(
            "  l={:<3} {:>8} elements  value {}  {}",
            r.length,
            r.elements,
            r.value,
            verdict(r.agree)
        ));
    }
    text.push(format!("  reduced-word independence: {} words, {}", words, verdict(words_ok)));
    text.push(format!("  sampled operator model: {} samples, {}", samples.len(), verdict(samples_ok)));
    let checks = vec![
        row("coefficient", "value-by-length", lengths_ok, format!("{} lengths", lengths.len())),
        row(
            "coefficient",
            "reduced-word-independence",
            words_ok,
            format!("{words} words up to length {}", REDUCED_WORD_MAX_LENGTH.min(cfg.max_length)),
        ),
        row("coefficient", "sampled-operator-model", samples_ok, format!("{} samples", samples.len())),
    ];
    let report = json!({
        "e": e,
        "f": p.f,
        "q0": p.q0,
        "L": cfg.max_length,
        "seed": cfg.seed,
        "lengths": to_value(&lengths),
        "reduced_words": { "max_length": REDUCED_WORD_MAX_LENGTH.min(cfg.max_length), "words": words, "passed": words_ok },
        "samples": to_value(&samples),
    });
    Ok(Outcome::new("coefficient", report, checks, text))
}

pub fn growth(cfg: &Config) -> Result<Outcome> {
    let bfs = growth_bfs(cfg.e, cfg.max_length)?;
    let closed = growth_closed_form(cfg.e, cfg.max_length)?;
    let rows: Vec<GrowthRow> = bfs
        .counts
        .iter()
        .zip(&closed.counts)
        .enumerate()
        .map(|(length, (&a, &b))| GrowthRow {
            length,
            count_bfs: a,
            count_closed_form: b,
            equal: a == b,
        })
        .collect();
    let ok = rows.iter().all(|r| r.equal);
    let mut text = vec![format!("growth of W0, e={}, L={}", cfg.e, cfg.max_length), "  length  bfs  closed_form".into()];
    text.extend(
        rows.iter()
            .map(|r| format!("  {:>6}  {:>3}  {:>11}  {}", r.length, r.count_bfs, r.count_closed_form, verdict(r.equal))),
    );
    let report = json!({ "e": cfg.e, "L": cfg.max_length, "rows": to_value(&rows) });
    let checks = vec![row("growth", "bfs-vs-closed-form", ok, format!("{} degrees", rows.len()))];
    let mut out = Outcome::new("growth", report, checks, text);
    out.growth = Some(rows);
    Ok(out)
}

fn coefficients(p: &LaurentPoly) -> Vec<Rational> {
    let top = p.max_exponent().unwrap_or(0).max(0);
    (0..=top).map(|i| p.coefficient(i)).collect()
}

pub fn poincare(cfg: &Config) -> Result<Outcome> {
    let rf = poincare_closed_form(cfg.e)?;
    let x0 = distinction_point(&cfg.level);
    let value = poincare_value(cfg.e, &x0)?;
    let series = rf.maclaurin(cfg.max_length)?;
    let bfs = growth_bfs(cfg.e, cfg.max_length)?;
    let series_ok = series
        .iter()
        .zip(&bfs.counts)
        .all(|(a, &b)| *a == Rational::from(b as i64));

    let mut xs: Vec<Rational> = ["-9/10", "-1/2", "0", "1/2", "9/10"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect();
    xs.push(x0.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        xs.push(Rational::new(rng.random_range(-999i64..=999), 1000)?);
    }
    let scan = nonvanishing_scan(cfg.e, &xs)?;
    let text = vec![
        format!("Poincare series of W0, e={}", cfg.e),
        format!("  numerator coefficients   {:?}", coefficients(&rf.num)),
        format!("  denominator coefficients {:?}", coefficients(&rf.den)),
        format!("  P({x0}) = {value}"),
        format!("  Maclaurin vs enumeration to degree {}: {}", cfg.max_length, verdict(series_ok)),
        format!("  positive at {} points: {}", scan.samples.len(), verdict(scan.all_positive)),
    ];
    let checks = vec![
        row("poincare", "maclaurin-vs-bfs", series_ok, format!("degree {}", cfg.max_length)),
        row("poincare", "positivity", scan.all_positive, format!("{} points", scan.samples.len())),
    ];
    let report = json!({
        "e": cfg.e,
        "numerator": coefficients(&rf.num),
        "denominator": coefficients(&rf.den),
        "x": x0,
        "value": value,
        "maclaurin": series,
        "maclaurin_matches_bfs": series_ok,
        "nonvanishing": to_value(&scan),
    });
    Ok(Outcome::new("poincare", report, checks, text))
}

pub fn distinction(cfg: &Config) -> Result<Outcome> {
    let rep = distinction_integral(&cfg.level, cfg.max_length)?;
    let text = vec![
        format!("distinction integral, e={}, f={}, q0={}, L={}", rep.e, rep.f, rep.q0, rep.max_length),
        format!("  partial sum  {}", rep.partial_sum),
        format!("  closed form  {}", rep.closed_form),
        format!("  |error|      {}", rep.abs_error),
        format!("  tail bound   {}", rep.tail_bound),
        format!(
            "  per-term {}, k-independent {}, within tail bound {}",
            verdict(rep.per_term_ok),
            verdict(rep.k_independent),
            verdict(rep.within_tail_bound)
        ),
    ];
    let checks = vec![
        row("distinction", "per-term", rep.per_term_ok, format!("{} terms", rep.terms)),
        row("distinction", "k-independence", rep.k_independent, ""),
        row("distinction", "tail-bound", rep.within_tail_bound, format!("closed form {}", rep.closed_form)),
    ];
    Ok(Outcome::new("distinction", to_value(&rep), checks, text))
}

/// Reads a catalog file holding one entry or an array of entries.
pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let parsed = if raw.trim_start().starts_with('[') {
        serde_json::from_str(&raw)
    } else {
        serde_json::from_str(&raw).map(|e| vec![e])
    };
    parsed.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn gelfand(cfg: &Config) -> Result<Outcome> {
    let entries = match &cfg.catalog {
        Some(entries) => entries.clone(),
        None => shipped_catalog()?,
    };
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    let mut text = vec!["fixed-vector pairing for shipped finite pairs".to_string()];
    for entry in entries {
        let rep = check_pairing(&entry.to_rep()?, &entry.subgroup)?;
        let ok = rep.ok() && rep.commutant_dimension == 1;
        let label = format!("({}, {}) {}", entry.group, entry.subgroup_name, entry.representation);
        let pairing = rep.pairing.as_ref().map_or("-".to_string(), Rational::to_string);
        text.push(format!(
            "  {:<22} fixed dims ({}, {})  pairing {}  commutant {}  {}",
            label,
            rep.dim_fixed_v,
            rep.dim_fixed_vdual,
            pairing,
            rep.commutant_dimension,
            verdict(ok)
        ));
        checks.push(row(
            "gelfand",
            &label,
            ok,
            format!("fixed dims ({}, {}), pairing {pairing}", rep.dim_fixed_v, rep.dim_fixed_vdual),
        ));
        let mut v = json!({
            "group": entry.group,
            "subgroup": entry.subgroup_name,
            "declared_gelfand_pair": entry.declared_gelfand_pair,
        });
        if let (Value::Object(m), Value::Object(r)) = (&mut v, to_value(&rep)) {
            m.extend(r);
        }
        reports.push(v);
    }
    Ok(Outcome::new("gelfand", json!({ "pairs": reports }), checks, text))
}

type Suite = fn(&Config) -> Result<Outcome>;

pub fn all(cfg: &Config) -> Result<Outcome> {
    let suites: [(&str, Suite); 7] = [
        ("presentation", presentation),
        ("eigen", eigen),
        ("coefficient", coefficient),
        ("growth", growth),
        ("poincare", poincare),
        ("distinction", distinction),
        ("gelfand", gelfand),
    ];
    let mut report = serde_json::Map::new();
    let mut checks = Vec::new();
    let mut text = Vec::new();
    for (name, suite) in suites {
        let skip = match name {
            "coefficient" if !cfg.chi_pi.is_one() => Some("needs chi_pi = 1"),
            "distinction" if cfg.e.is_multiple_of(2) => Some("needs odd e"),
            "distinction" if !cfg.chi_pi.is_one() => Some("needs chi_pi = 1"),
            _ => None,
        };
        if let Some(reason) = skip {
            report.insert(name.into(), json!({ "skipped": reason }));
            text.push(format!("{name}: skipped ({reason})"));
            continue;
        }
        let out = suite(cfg)?;
        let mut sub = serde_json::Map::new();
        sub.insert("passed".into(), Value::Bool(out.passed));
        if let Value::Object(m) = out.report {
            sub.extend(m);
        }
        report.insert(name.into(), Value::Object(sub));
        text.extend(out.text);
        checks.extend(out.checks);
    }
    Ok(Outcome::new("all", Value::Object(report), checks, text))
}
