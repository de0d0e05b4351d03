use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use super::args::*;
use super::parse::{parse_boundary, parse_cut, parse_permutation, parse_size, parse_word};
use super::{corpus, Report, RunConfig};
use crate::combinat::{BoundaryCondition, Cut, Permutation, SkewDomain, Word};
use crate::error::{Error, Result};
use crate::hecke::{verify_color_position, CpsInstance};
use crate::klgr::{
    check_reversal_bijection, conditional_example, count_pipe_dreams, distinguished_subexpressions, hecke_point_counts, pipe_dream_census,
    positroid_census, r_polynomial, r_polynomials, rotation_mismatches, scan_conditional_shift, CountMode, MAX_PIPE_DREAM_CELLS,
};
use crate::model::{exact_distribution, Method, Sampler};
use crate::polymer::{gamma_degeneration, one_row_shift_spec, shift_invariance_test, wrong_relabelling_spec, ShiftSpec};
use crate::scalar::{derive_seed, random_rational_skew_point, random_wiring_point, rng_for, IntPolynomial, PointConfig, Rational, Status, Verdict};
use crate::symmetry::{
    double_flip_example, global_flip_example, local_flip_example, nine_color_instance, random_flip_instance, random_instance,
    verify_flip, verify_flip_exhaustive, verify_generalized_flip, verify_main_with, worked_example, Backend, FlipInstance, GenFlipInstance,
    MainInstance,
};

/// Dispatches one subcommand. Errors become INVALID reports upstream.
pub fn run(command: &Command, cfg: &RunConfig) -> Result<Report> {
    match command {
        Command::VerifyFlip(a) => verify_flip_cmd(a, cfg),
        Command::VerifyGenflip(a) => genflip_cmd(a, cfg),
        Command::VerifyMain(a) => main_cmd(a, cfg),
        Command::CpsCheck(a) => cps_cmd(a, cfg),
        Command::Rpoly(a) => rpoly_cmd(a, cfg),
        Command::DistSubexpr(a) => dist_cmd(a, cfg),
        Command::PositroidCount(a) => positroid_cmd(a, cfg),
        Command::CountPd(a) => count_pd_cmd(a, cfg),
        Command::Conjecture79(a) => conjecture_cmd(a, cfg),
        Command::Sample(a) => sample_cmd(a, cfg),
        Command::PolymerTest(a) => polymer_cmd(a, cfg),
        Command::Corpus(a) => corpus_cmd(a, cfg),
    }
}

pub(crate) fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        // Field validators already report through `Error::Parse`.
        let msg = e.to_string();
        Error::Parse(format!("{}: {}", path.display(), msg.strip_prefix("parse error: ").unwrap_or(&msg)))
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Runs `check` on `count` generated instances; the first non-passing
/// verdict becomes the report's witness.
fn batch<I: serde::Serialize + Send + Sync>(
    name: &str,
    cfg: &RunConfig,
    count: usize,
    make: impl Fn(&mut rand_chacha::ChaCha8Rng) -> I,
    check: impl Fn(&I, u64) -> Verdict + Sync,
) -> Report {
    let mut rng = rng_for(cfg.seed, u64::MAX);
    let instances: Vec<I> = (0..count).map(|_| make(&mut rng)).collect();
    let verdicts: Vec<Verdict> = instances.par_iter().enumerate().map(|(t, inst)| check(inst, derive_seed(cfg.seed, t as u64))).collect();
    let outcomes: Vec<Status> = verdicts.iter().map(|v| v.status).collect();
    let first_bad = verdicts.into_iter().enumerate().find(|(_, v)| !v.is_pass());
    let passed = outcomes.iter().filter(|s| **s == Status::Pass).count();
    let result = json!({ "instances": count, "passed": passed, "statuses": outcomes });
    let mut report = match &first_bad {
        None => Report::new(name, cfg, Status::Pass, json!({ "random": count }), result),
        Some((t, v)) => {
            let mut r = Report::new(name, cfg, v.status, to_value(&instances[*t]), result);
            r.witness = v.witness.clone();
            r.detail = v.detail.clone().map(|d| format!("instance {}: {d}", t + 1));
            r
        }
    };
    report.summary.push(format!("{passed}/{count} random instances pass"));
    report
}

fn verify_flip_cmd(a: &VerifyFlipArgs, cfg: &RunConfig) -> Result<Report> {
    if let Some(total) = a.exhaustive {
        let largest = (total / 2) * total.div_ceil(2);
        cfg.check_cells(largest)?;
        let sweeps = verify_flip_exhaustive(total, cfg.trials, cfg.seed);
        let bad = sweeps.iter().find(|s| !s.verdict.is_pass());
        let conditions: usize = sweeps.iter().map(|s| s.conditions).sum();
        let mut report = Report::new("verify-flip", cfg, bad.map_or(Status::Pass, |s| s.verdict.status), json!({ "max_total": total }), to_value(&sweeps));
        if let Some(s) = bad {
            report.witness = s.verdict.witness.clone();
            report.detail = Some(format!("{}×{}: {}", s.m, s.n, s.verdict.detail.clone().unwrap_or_default()));
        }
        return Ok(report.line(format!("{} rectangles, {conditions} boundary pairs", sweeps.len())));
    }
    let inst: FlipInstance = match &a.instance {
        Some(p) => load(p)?,
        None => worked_example(),
    };
    cfg.check_cells(inst.m * inst.n)?;
    let verdict = verify_flip(&inst, cfg.trials, cfg.seed);
    Ok(Report::from_verdict("verify-flip", cfg, to_value(&inst), &verdict).line(format!("{}×{} rectangle", inst.m, inst.n)))
}

fn genflip_cmd(a: &GenFlipArgs, cfg: &RunConfig) -> Result<Report> {
    if let Some(count) = a.random {
        if a.max_n < 3 {
            return Err(Error::Parameters("--max-n must be at least 3".into()));
        }
        let max_n = a.max_n;
        return Ok(batch(
            "verify-genflip",
            cfg,
            count,
            |rng| {
                let n = rng.random_range(3..=max_n);
                random_instance(n, rng)
            },
            |inst, seed| verify_generalized_flip(inst, cfg.trials, seed),
        ));
    }
    let inst: GenFlipInstance = match &a.instance {
        Some(p) => load(p)?,
        None => nine_color_instance(),
    };
    let verdict = verify_generalized_flip(&inst, cfg.trials, cfg.seed);
    Ok(Report::from_verdict("verify-genflip", cfg, to_value(&inst), &verdict))
}

fn backend(b: BackendArg) -> Backend {
    match b {
        BackendArg::Rational => Backend::Rational,
        BackendArg::Prime => Backend::Prime,
    }
}

fn main_cmd(a: &MainArgs, cfg: &RunConfig) -> Result<Report> {
    let be = backend(a.backend);
    if let Some(count) = a.random {
        let (m, n) = parse_size(&a.size)?;
        cfg.check_cells(m * n)?;
        return Ok(batch(
            "verify-main",
            cfg,
            count,
            |rng| {
                let (spec, inst) = random_flip_instance(m, n, 4, rng);
                json!({ "flip": spec, "instance": inst })
            },
            |v, seed| match serde_json::from_value::<MainInstance>(v["instance"].clone()) {
                Ok(inst) => verify_main_with(&inst, cfg.trials, seed, be),
                Err(e) => Verdict::invalid(e.to_string()),
            },
        ));
    }
    let inst: MainInstance = match (&a.instance, a.example) {
        (Some(p), _) => load(p)?,
        (None, Some(FigureExample::Double)) => double_flip_example().1,
        (None, Some(FigureExample::Global)) => global_flip_example().1,
        (None, Some(FigureExample::Local)) => local_flip_example().1,
        (None, None) => return Err(Error::Parameters("an instance file, --example or --random is required".into())),
    };
    let verdict = verify_main_with(&inst, cfg.trials, cfg.seed, be);
    Ok(Report::from_verdict("verify-main", cfg, to_value(&inst), &verdict).line(format!("{} cuts", inst.cuts.len())))
}

fn cps_cmd(a: &CpsArgs, cfg: &RunConfig) -> Result<Report> {
    if let Some(count) = a.random {
        let (max_n, max_len) = (a.max_n, a.max_len);
        return Ok(batch("cps-check", cfg, count, |rng| CpsInstance::random(max_n, max_len, rng), |inst, seed| verify_color_position(inst, cfg.trials, seed)));
    }
    let path = a.instance.as_ref().ok_or_else(|| Error::Parameters("an instance file or --random is required".into()))?;
    let inst: CpsInstance = load(path)?;
    let verdict = verify_color_position(&inst, cfg.trials, cfg.seed);
    Ok(Report::from_verdict("cps-check", cfg, to_value(&inst), &verdict))
}

/// Checks the structural facts every R-polynomial table must satisfy.
fn rpoly_table_problems(w: &Permutation, table: &BTreeMap<Permutation, IntPolynomial>) -> Vec<String> {
    let mut problems = Vec::new();
    let sum = table.values().fold(IntPolynomial::zero(), |acc, r| acc + r.clone());
    if sum != IntPolynomial::q().pow(w.length()) {
        problems.push(format!("w = {w}: sum of R-polynomials is {sum}"));
    }
    for (pi, r) in table {
        if r.degree() != Some(w.length() - pi.length()) {
            problems.push(format!("R^{{{pi},{w}}} = {r} has the wrong degree"));
        }
        if pi != w && r.eval_i64(1) != 0.into() {
            problems.push(format!("R^{{{pi},{w}}}(1) ≠ 0"));
        }
    }
    problems
}

fn rpoly_cmd(a: &RpolyArgs, cfg: &RunConfig) -> Result<Report> {
    if a.n == 0 || a.n > 6 {
        return Err(Error::CapExceeded { what: "n", value: a.n, cap: 6 });
    }
    let ws = match &a.w {
        Some(w) => vec![parse_permutation(w, a.n)?],
        None => Permutation::all(a.n),
    };
    if let Some(pi) = &a.pi {
        let pi = parse_permutation(pi, a.n)?;
        let entries: Vec<Value> = ws.iter().map(|w| json!({ "w": w, "coefficients": r_polynomial(&pi, w) })).collect();
        let result = if a.w.is_some() { entries[0]["coefficients"].clone() } else { Value::Array(entries) };
        let w = (a.w.is_some()).then(|| ws[0]);
        return Ok(Report::new("rpoly", cfg, Status::Pass, json!({ "n": a.n, "pi": pi, "w": w }), result));
    }
    let mut problems = Vec::new();
    let mut rows = Vec::new();
    for w in &ws {
        let table = r_polynomials(w);
        problems.extend(rpoly_table_problems(w, &table));
        for (pi, r) in table {
            rows.push(json!({ "pi": pi, "w": w, "coefficients": r }));
        }
    }
    let w = (a.w.is_some()).then(|| ws[0]);
    let mut report = Report::new("rpoly", cfg, status_of(problems.is_empty()), json!({ "n": a.n, "w": w }), Value::Array(rows));
    if let Some(first) = problems.first() {
        report.detail = Some(first.clone());
        report.witness = Some(json!(problems));
    }
    Ok(report.line(format!("{} upper permutations checked", ws.len())))
}

fn dist_cmd(a: &DistArgs, cfg: &RunConfig) -> Result<Report> {
    let pi = parse_permutation(&a.pi, a.n)?;
    let word = match (&a.word, &a.w) {
        (Some(text), _) => parse_word(text, a.n)?,
        (None, Some(w)) => Word::new(a.n, parse_permutation(w, a.n)?.reduced_word())?,
        (None, None) => return Err(Error::Parameters("--word or --w is required".into())),
    };
    let subs = distinguished_subexpressions(&pi, &word)?;
    let total = subs.iter().fold(IntPolynomial::zero(), |acc, (_, wt)| acc + wt.clone());
    let expect = r_polynomial(&pi, &word.product());
    let listed: Vec<Value> = subs.iter().map(|(s, wt)| json!({ "subexpression": s, "weight": wt })).collect();
    let result = json!({ "subexpressions": listed, "total": total, "r_polynomial": expect });
    let mut report = Report::new("dist-subexpr", cfg, status_of(total == expect), json!({ "n": a.n, "pi": pi, "word": word.letters() }), result);
    if total != expect {
        report.detail = Some(format!("distinguished total {total} differs from R-polynomial {expect}"));
        report.witness = Some(json!({ "total": total, "r_polynomial": expect }));
    }
    Ok(report.line(format!("{} distinguished subexpressions", subs.len())))
}

fn boundary_rows<V: serde::Serialize>(table: &BTreeMap<(BoundaryCondition, BoundaryCondition), V>, key: &str) -> Vec<Value> {
    table.iter().map(|((h, v), c)| json!({ "H": h, "V": v, key: c })).collect()
}

fn selected(h: &Option<String>, v: &Option<String>) -> Result<Option<(BoundaryCondition, BoundaryCondition)>> {
    match (h, v) {
        (Some(h), Some(v)) => Ok(Some((parse_boundary(h)?, parse_boundary(v)?))),
        _ => Ok(None),
    }
}

fn positroid_cmd(a: &PositroidArgs, cfg: &RunConfig) -> Result<Report> {
    let census = positroid_census(a.m, a.n, a.p)?;
    let predicted = hecke_point_counts(a.m, a.n, a.p);
    let counted: BTreeMap<_, i64> = census.by_boundary.iter().map(|(k, &c)| (k.clone(), c as i64)).collect();
    let reversal = check_reversal_bijection(a.m, a.n, a.p)?;
    let matches = counted == predicted;
    let instance = json!({ "M": a.m, "N": a.n, "p": a.p });
    let result = match selected(&a.h, &a.v)? {
        Some(key) => json!({ "H": key.0, "V": key.1, "points": counted.get(&key).copied().unwrap_or(0), "predicted": predicted.get(&key).copied().unwrap_or(0) }),
        None => json!({ "points": boundary_rows(&counted, "points"), "cells": census.by_cell.len(), "reversal": reversal }),
    };
    let mut report = Report::new("positroid-count", cfg, status_of(matches && reversal.is_bijection()), instance, result);
    if !matches {
        let bad = predicted.keys().chain(counted.keys()).find(|k| counted.get(*k) != predicted.get(*k)).cloned();
        report.detail = Some("point counts differ from the R-polynomial prediction".into());
        report.witness = bad.map(|(h, v)| json!({ "H": h, "V": v, "points": counted.get(&(h.clone(), v.clone())), "predicted": predicted.get(&(h, v)) }));
    } else if !reversal.is_bijection() {
        report.detail = Some("column reversal is not a bijection".into());
        report.witness = Some(to_value(&reversal));
    }
    Ok(report.line(format!("{} points of the opposite cell over F_{}", reversal.points, a.p)))
}

fn count_pd_cmd(a: &CountPdArgs, cfg: &RunConfig) -> Result<Report> {
    cfg.check_cells((a.m * a.n).min(MAX_PIPE_DREAM_CELLS + 1))?;
    let mismatches = rotation_mismatches(a.m, a.n)?;
    let mode = if a.q_analog { CountMode::QAnalog } else { CountMode::Plain };
    let instance = json!({ "M": a.m, "N": a.n, "mode": mode });
    let result = match selected(&a.h, &a.v)? {
        Some((h, v)) => {
            let count = count_pipe_dreams(a.m, a.n, &h, &v, mode)?;
            let rotated = count_pipe_dreams(a.m, a.n, &h.flip_180(a.m + a.n)?, &v, mode)?;
            json!({ "H": h, "V": v, "count": count, "rotated_count": rotated })
        }
        None => {
            let census = pipe_dream_census(a.m, a.n)?;
            let shown: BTreeMap<_, IntPolynomial> = match mode {
                CountMode::QAnalog => census,
                CountMode::Plain => census.into_iter().map(|(k, p)| (k, IntPolynomial::new(vec![p.eval_i64(1)]))).collect(),
            };
            json!({ "counts": boundary_rows(&shown, "count") })
        }
    };
    let mut report = Report::new("count-pd", cfg, status_of(mismatches.is_empty()), instance, result);
    if let Some((h, v)) = mismatches.first() {
        report.detail = Some("crossing polynomial changes under rotation".into());
        report.witness = Some(json!({ "H": h, "V": v }));
    }
    Ok(report.line(format!("{} pipe dreams enumerated", 1u64 << (a.m * a.n))))
}

fn conjecture_cmd(a: &ConjectureArgs, cfg: &RunConfig) -> Result<Report> {
    if a.n == 0 || a.n > 6 {
        return Err(Error::CapExceeded { what: "n", value: a.n, cap: 6 });
    }
    let scan = scan_conditional_shift(a.n, cfg.trials, cfg.seed)?;
    let ex = conditional_example();
    let mut rng = rng_for(cfg.seed, u64::MAX);
    let mut example_ok = true;
    for _ in 0..cfg.trials {
        let pt = random_wiring_point(&Rational::one(), 4, &mut rng, &PointConfig::default())?;
        example_ok &= ex.check(&pt)?.reproduced();
    }
    let result = json!({ "cases": scan.cases, "counterexamples": scan.counterexamples, "worked_example_reproduced": example_ok });
    let mut report = Report::new("conjecture79", cfg, status_of(scan.passed() && example_ok), json!({ "n": a.n }), result);
    if let Some(c) = scan.counterexamples.first() {
        report.detail = Some(format!("identity {:?} fails", c.identity));
        report.witness = Some(to_value(c));
    } else if !example_ok {
        report.detail = Some("worked example not reproduced".into());
    }
    Ok(report.line(format!("{} classes scanned, {} counterexamples", scan.cases, scan.counterexamples.len())))
}

/// Four standard errors of a binomial frequency.
pub(crate) fn within_four_se(count: usize, samples: usize, prob: f64) -> (bool, f64) {
    let n = samples as f64;
    let se = (prob * (1.0 - prob) / n).sqrt();
    let diff = (count as f64 / n - prob).abs();
    if se == 0.0 {
        return (diff == 0.0, 0.0);
    }
    (diff <= 4.0 * se, diff / se)
}

fn sample_cmd(a: &SampleArgs, cfg: &RunConfig) -> Result<Report> {
    let dom = match (&a.p_path, &a.q_path) {
        (Some(p), Some(q)) => SkewDomain::parse(p, q)?,
        _ => {
            let (m, n) = parse_size(&a.rectangle)?;
            SkewDomain::rectangle(m, n)
        }
    };
    if a.samples == 0 {
        return Err(Error::Parameters("--samples must be positive".into()));
    }
    let cuts: Vec<Cut> = a.cuts.iter().map(|c| parse_cut(c)).collect::<Result<_>>()?;
    for c in &cuts {
        c.validate(&dom)?;
    }
    let pt = random_rational_skew_point(dom.m_inf(), dom.n_inf(), &mut rng_for(cfg.seed, u64::MAX), &PointConfig { box_size: 100, ..PointConfig::constrained() })?;
    let sampler = Sampler::new(&dom, &pt)?;
    if a.stream {
        let mut out = std::io::stdout().lock();
        for t in 0..a.samples {
            let rec = sampler.record(cfg.seed, t as u64, &cuts)?;
            writeln!(out, "{}", serde_json::to_string(&rec).expect("records serialize")).map_err(|e| Error::Parameters(e.to_string()))?;
        }
    }
    let counts = sampler.frequencies(a.samples, cfg.seed);
    let instance = json!({ "domain": dom, "point": pt, "samples": a.samples, "cuts": cuts });
    if dom.num_cells() > cfg.cap_cells {
        let rows: Vec<Value> = counts.iter().map(|(pi, c)| json!({ "permutation": pi, "count": c })).collect();
        return Ok(Report::new("sample", cfg, Status::Pass, instance, json!({ "frequencies": rows, "exact": Value::Null }))
            .line("domain above --cap-cells; exact comparison skipped"));
    }
    let exact = exact_distribution(&dom, &pt, Method::Hecke)?;
    let mut rows = Vec::new();
    let mut worst: Option<(f64, Value)> = None;
    let mut support: Vec<Permutation> = exact.terms().map(|(p, _)| *p).chain(counts.keys().copied()).collect();
    support.sort();
    support.dedup();
    let mut all_ok = true;
    for pi in support {
        let prob = exact.coeff(&pi).map_or(0.0, |c| c.to_f64());
        let count = counts.get(&pi).copied().unwrap_or(0);
        let (ok, z) = within_four_se(count, a.samples, prob);
        all_ok &= ok;
        let row = json!({ "permutation": pi, "count": count, "probability": prob, "z": z });
        if worst.as_ref().is_none_or(|(wz, _)| z > *wz) {
            worst = Some((z, row.clone()));
        }
        rows.push(row);
    }
    let worst_z = worst.as_ref().map_or(0.0, |w| w.0);
    let mut report = Report::new("sample", cfg, status_of(all_ok), instance, json!({ "frequencies": rows, "max_z": worst_z }));
    if !all_ok {
        report.detail = Some("an empirical frequency is more than 4 standard errors from its exact probability".into());
        report.witness = worst.map(|w| w.1);
    }
    Ok(report.line(format!("{} samples, {} outcomes, max |z| = {worst_z:.2}", a.samples, rows.len())))
}

fn polymer_cmd(a: &PolymerArgs, cfg: &RunConfig) -> Result<Report> {
    if a.gamma {
        let eps = [1.0, 0.25, 0.0625];
        let ks = gamma_degeneration(1.5, 0, 2, 5, &eps, a.samples, cfg.seed)?;
        let decreasing = ks.windows(2).all(|w| w[1].1 < w[0].1);
        let rows: Vec<Value> = ks.iter().map(|(e, d)| json!({ "eps": e, "ks": d })).collect();
        let instance = json!({ "kappa": 1.5, "d": 0, "r": 2, "u": 5, "samples": a.samples });
        let mut report = Report::new("polymer-test", cfg, status_of(decreasing), instance, json!({ "distances": rows, "decreasing": decreasing }));
        if !decreasing {
            report.detail = Some("KS distance does not decrease with eps".into());
        }
        return Ok(report);
    }
    let spec: ShiftSpec = match &a.spec {
        Some(p) => load(p)?,
        None if a.negative_control => wrong_relabelling_spec(),
        None => one_row_shift_spec(),
    };
    let sr = shift_invariance_test(&spec, a.samples, cfg.seed, a.significance)?;
    let min = sr.tests.iter().min_by(|x, y| x.p_value.total_cmp(&y.p_value)).cloned();
    let result = json!({
        "statistic": min.as_ref().map(|t| t.statistic),
        "p_value": sr.min_p_value(),
        "n": sr.samples,
        "decision": sr.decision,
        "threshold": sr.threshold,
        "phi": sr.phi,
        "tests": sr.tests,
    });
    let mut report = Report::new("polymer-test", cfg, status_of(sr.accepted()), to_value(&spec), result);
    if !sr.accepted() {
        report.detail = Some(format!("rejected at threshold {:.4}", sr.threshold));
        report.witness = min.map(|t| to_value(&t));
    }
    Ok(report.line(format!("{} samples per side, smallest p = {:.4}", sr.samples, sr.min_p_value())))
}

fn corpus_cmd(a: &CorpusArgs, cfg: &RunConfig) -> Result<Report> {
    let dir = a.dir.clone().unwrap_or_else(corpus::default_dir);
    let outcome = corpus::check(&dir, a.regen)?;
    let mut report = Report::new("corpus", cfg, status_of(outcome.mismatched.is_empty()), json!({ "dir": dir, "regen": a.regen }), to_value(&outcome));
    if let Some(name) = outcome.mismatched.first() {
        report.detail = Some(format!("{name} differs from its golden file"));
    }
    Ok(report.line(format!("{} entries, {} mismatched", outcome.entries.len(), outcome.mismatched.len())))
}
