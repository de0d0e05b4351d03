//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --release --test acceptance`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::Rng;
use sc6v::combinat::{grassmannian_perm, grassmannian_word, Cut, Permutation, SkewDomain, Word};
use sc6v::hecke::{verify_color_position, yb_element, CpsInstance};
use sc6v::klgr::{
    check_reversal_bijection, conditional_example, count_positroid_cell, distinguished_total, hecke_point_counts, positroid_census, r_polynomials,
    rotation_mismatches, scan_conditional_shift, BoundedAffinePermutation,
};
use sc6v::model::{exact_distribution, wiring_configuration_sum, Method, Sampler};
use sc6v::polymer::{gamma_degeneration, one_row_shift_spec, shift_invariance_test, wrong_relabelling_spec};
use sc6v::scalar::{
    random_rational_skew_point, random_wiring_point, rng_for, IntPolynomial, PointConfig, Rational, Scalar, Status,
};
use sc6v::symmetry::{
    double_flip_example, global_flip_example, local_flip_example, nine_color_instance, random_flip_instance, random_instance, rectangle_element,
    verify_flip, verify_flip_exhaustive, verify_generalized_flip, verify_main, verify_main_unchecked, verify_main_with, worked_example,
    worked_example_brute_force, worked_example_closed_forms, Backend, MainInstance,
};

const SEED: u64 = 2024;

type Outcome = Result<String, String>;

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The worked 2×3 flip example: closed forms, brute-force pipe dreams and
/// the Hecke projections agree, and both sides are equal.
fn worked_flip() -> Outcome {
    let inst = worked_example();
    let cfg = PointConfig::default();
    for t in 0..20 {
        let pt = random_rational_skew_point(2, 3, &mut rng_for(SEED, t), &cfg).map_err(err)?;
        let closed = worked_example_closed_forms(&pt).map_err(err)?;
        let brute = worked_example_brute_force(&pt).map_err(err)?;
        let here = rectangle_element(&pt, 2, 3).map_err(err)?;
        let reversed = rectangle_element(&pt.rev_y(), 2, 3).map_err(err)?;
        let hecke = (
            here.boundary_projection(2, 3, &inst.h, &inst.v).unwrap_or_else(Rational::zero),
            reversed.boundary_projection(2, 3, &inst.flipped_h(), &inst.v).unwrap_or_else(Rational::zero),
        );
        ensure(closed == brute && brute == hecke, || format!("point {t}: routes disagree"))?;
        ensure(closed.0 == closed.1, || format!("point {t}: lhs {} ≠ rhs {}", closed.0, closed.1))?;
    }
    ensure(verify_flip(&inst, 10, SEED).is_pass(), || "verify_flip did not pass".into())?;
    Ok("20 points".into())
}

fn exhaustive_flip() -> Outcome {
    let sweeps = verify_flip_exhaustive(6, 10, SEED);
    let pairs: usize = sweeps.iter().map(|s| s.conditions).sum();
    if let Some(bad) = sweeps.iter().find(|s| !s.verdict.is_pass()) {
        return Err(format!("{}×{}: {:?}", bad.m, bad.n, bad.verdict.detail));
    }
    Ok(format!("{} rectangles, {pairs} boundary pairs", sweeps.len()))
}

/// Pipe-dream sums on wiring diagrams equal the product of R-factors.
fn wiring_sums() -> Outcome {
    let mut rng = rng_for(SEED, 3);
    let cfg = PointConfig::default();
    for t in 0..200 {
        let n = rng.random_range(2..=5);
        let len = rng.random_range(0..=10);
        let word: Vec<usize> = (0..len).map(|_| rng.random_range(1..n)).collect();
        let sigma = *Permutation::all(n).choose(&mut rng).expect("nonempty");
        for _ in 0..5 {
            let pt = random_wiring_point(&Rational::one(), len.max(1), &mut rng, &cfg).map_err(err)?;
            let params = &pt.z[..len];
            let sum = wiring_configuration_sum(&word, params, &sigma, &pt.q).map_err(err)?;
            let product: BTreeMap<Permutation, Rational> =
                yb_element(&word, params, &sigma, &pt.q).terms().map(|(p, c)| (*p, c.clone())).collect();
            let sum: BTreeMap<Permutation, Rational> = sum.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            ensure(sum == product, || format!("instance {t}: word {word:?}, σ = {sigma}"))?;
        }
    }
    Ok("200 words × 5 points".into())
}

fn color_position() -> Outcome {
    let mut rng = rng_for(SEED, 4);
    for t in 0..100 {
        let inst = CpsInstance::random(5, 10, &mut rng);
        let v = verify_color_position(&inst, 5, SEED + t);
        ensure(v.is_pass(), || format!("{inst:?}: {:?}", v.detail))?;
    }
    Ok("100 random words".into())
}

fn generalized_flip() -> Outcome {
    let v = verify_generalized_flip(&nine_color_instance(), 5, SEED);
    ensure(v.is_pass(), || format!("nine-color instance: {:?}", v.detail))?;
    let mut rng = rng_for(SEED, 5);
    for t in 0..100 {
        let n = rng.random_range(3..=7);
        let inst = random_instance(n, &mut rng);
        let v = verify_generalized_flip(&inst, 5, SEED + t);
        ensure(v.is_pass(), || format!("random instance {t}: {:?}", v.detail))?;
    }
    Ok("nine-color instance and 100 random instances".into())
}

/// Moves the first image cut by one row, which breaks the row support.
fn wrong_image_cut(inst: &MainInstance) -> Option<MainInstance> {
    let mut bad = inst.clone();
    let c = bad.image_cuts[0];
    let moved = [Cut::new(c.l, c.d, c.u + 1, c.r), Cut::new(c.l, c.d + 1, c.u, c.r), Cut::new(c.l, c.d.checked_sub(1)?, c.u, c.r)];
    for cut in moved.into_iter().flatten() {
        if cut.validate(&bad.image_domain).is_ok() {
            bad.image_cuts[0] = cut;
            return Some(bad);
        }
    }
    None
}

/// Swaps the row rapidity of a row some cut covers with one it does not.
fn wrong_row_relabelling(inst: &MainInstance) -> Option<MainInstance> {
    let c = inst.cuts[0];
    let outside = (1..=inst.ymap.len()).find(|t| !(c.d..=c.u).contains(t))?;
    let mut bad = inst.clone();
    let inside = bad.ymap.iter().position(|&y| y == c.d)?;
    let out = bad.ymap.iter().position(|&y| y == outside)?;
    bad.ymap.swap(inside, out);
    Some(bad)
}

fn main_theorem() -> Outcome {
    for (spec, inst) in [double_flip_example(), global_flip_example(), local_flip_example()] {
        let v = verify_main_with(&inst, 10, SEED, Backend::Rational);
        ensure(v.is_pass(), || format!("{}: {:?}", spec.name(), v.detail))?;
    }
    let mut rng = rng_for(SEED, 6);
    let mut pool = Vec::new();
    for t in 0..100 {
        let (spec, inst) = random_flip_instance(3, 4, 4, &mut rng);
        let v = verify_main(&inst, 5, SEED + t);
        ensure(v.is_pass(), || format!("catalog instance {t} ({}): {:?}", spec.name(), v.detail))?;
        pool.push(inst);
    }
    let (mut invalid, mut failing) = (0, 0);
    for (t, inst) in pool.iter().enumerate() {
        if invalid < 20 {
            if let Some(bad) = wrong_image_cut(inst) {
                let v = verify_main(&bad, 2, t as u64);
                ensure(v.status == Status::Invalid, || format!("moved image cut on instance {t} gave {}", v.status.as_str()))?;
                invalid += 1;
            }
        }
        if failing < 20 {
            if let Some(bad) = wrong_row_relabelling(inst) {
                ensure(verify_main(&bad, 1, 0).status == Status::Invalid, || format!("relabelled instance {t} passed the support check"))?;
                let v = verify_main_unchecked(&bad, 5, t as u64, Backend::Rational);
                ensure(v.status == Status::Fail, || format!("relabelled instance {t} gave {}", v.status.as_str()))?;
                failing += 1;
            }
        }
    }
    ensure(invalid == 20 && failing == 20, || format!("only {invalid} moved-cut and {failing} relabelled controls"))?;
    Ok("3 figure instances, 100 catalog instances, 20 INVALID and 20 FAIL controls".into())
}

fn r_polynomials_s4() -> Outcome {
    let mut checked = 0;
    for w in Permutation::all(4) {
        let table = r_polynomials(&w);
        let sum = table.values().fold(IntPolynomial::zero(), |acc, r| acc + r.clone());
        ensure(sum == IntPolynomial::q().pow(w.length()), || format!("w = {w}: sum {sum}"))?;
        for (pi, r) in &table {
            ensure(r.degree() == Some(w.length() - pi.length()), || format!("R({pi},{w}) = {r}: degree"))?;
            ensure(pi == &w || r.eval_i64(1) == 0.into(), || format!("R({pi},{w})(1) ≠ 0"))?;
            for word in Word::all_reduced(&w) {
                let total = distinguished_total(pi, &word).map_err(err)?;
                ensure(&total == r, || format!("R({pi},{w}) along {:?}", word.letters()))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs, every reduced word"))
}

fn positroid_counts() -> Outcome {
    for (m, rows) in [(1, 2), (2, 2), (2, 3)] {
        for p in [2u64, 3] {
            let census = positroid_census(m, rows, p).map_err(err)?;
            let by_hecke = hecke_point_counts(m, rows, p);
            let census_i: BTreeMap<_, i64> = census.by_boundary.iter().map(|(k, &v)| (k.clone(), v as i64)).collect();
            let nonzero: BTreeMap<_, i64> = by_hecke.iter().filter(|(_, &v)| v != 0).map(|(k, &v)| (k.clone(), v)).collect();
            ensure(census_i == nonzero, || format!("({m},{rows}) at p = {p}: census differs from R-polynomial sums"))?;

            let q = Rational::integer(p as i64);
            let word = grassmannian_word(m, rows);
            let params = vec![Rational::new(1, p as i64); word.len()];
            let scale = Rational::integer((p as i64).pow((m * rows) as u32));
            let y = yb_element(&word, &params, &Permutation::identity(m + rows), &q);
            for ((h, v), prob) in y.projections(m, rows) {
                let count = prob * scale.clone();
                let expect = census.by_boundary.get(&(h.clone(), v.clone())).copied().unwrap_or(0);
                ensure(count == Rational::integer(expect as i64), || format!("({m},{rows}) p = {p}: {h:?} {v:?} gives {count}"))?;
            }
            ensure(grassmannian_perm(m, rows).length() == m * rows, || "Grassmannian length".into())?;
            let rev = check_reversal_bijection(m, rows, p).map_err(err)?;
            ensure(rev.is_bijection(), || format!("reversal on ({m},{rows}) p = {p}: {rev:?}"))?;
        }
    }
    let top = BoundedAffinePermutation::shift(2, 4);
    for q in [2i64, 3] {
        let formula = (q - 1).pow(4) + q * (q - 1).pow(2);
        let count = count_positroid_cell(&top, q as u64).map_err(err)?;
        ensure(count as i64 == formula, || format!("top cell at q = {q}: {count} ≠ {formula}"))?;
    }
    Ok("3 shapes × 2 primes, top cell 3 and 28".into())
}

fn rotation_identities() -> Outcome {
    for m in 1..=3 {
        for rows in 1..=3 {
            let bad = rotation_mismatches(m, rows).map_err(err)?;
            ensure(bad.is_empty(), || format!("({m},{rows}): {} mismatched pairs", bad.len()))?;
        }
    }
    Ok("M, N ≤ 3".into())
}

fn conditional_shift() -> Outcome {
    let mut cases = 0;
    for n in 1..=5 {
        let scan = scan_conditional_shift(n, 5, SEED).map_err(err)?;
        ensure(scan.passed(), || format!("n = {n}: {} counterexamples", scan.counterexamples.len()))?;
        cases += scan.cases;
    }
    let ex = conditional_example();
    for t in 0..5 {
        let pt = random_wiring_point(&Rational::one(), 4, &mut rng_for(SEED, 100 + t), &PointConfig::default()).map_err(err)?;
        ensure(ex.check(&pt).map_err(err)?.reproduced(), || format!("worked example not reproduced at point {t}"))?;
    }
    Ok(format!("{cases} classes for n ≤ 5, worked example reproduced"))
}

fn sampler() -> Outcome {
    let cfg = PointConfig { box_size: 100, ..PointConfig::constrained() };
    let samples = 100_000;
    let mut worst: f64 = 0.0;
    for (t, (m, n)) in [(2, 2), (2, 3)].into_iter().enumerate() {
        let dom = SkewDomain::rectangle(m, n);
        let pt = random_rational_skew_point(m, n, &mut rng_for(SEED, 11 + t as u64), &cfg).map_err(err)?;
        let exact = exact_distribution(&dom, &pt, Method::Hecke).map_err(err)?;
        let counts = Sampler::new(&dom, &pt).map_err(err)?.frequencies(samples, SEED);
        for pi in counts.keys() {
            ensure(exact.coeff(pi).is_some(), || format!("{m}×{n}: sampled {pi} outside the support"))?;
        }
        for (pi, prob) in exact.terms() {
            let prob = prob.to_f64();
            let freq = counts.get(pi).copied().unwrap_or(0) as f64 / samples as f64;
            let se = (prob * (1.0 - prob) / samples as f64).sqrt();
            let z = (freq - prob).abs() / se;
            worst = worst.max(z);
            ensure(z <= 4.0, || format!("{m}×{n}: {pi} at {z:.2} standard errors"))?;
        }
    }
    Ok(format!("max |z| = {worst:.2}"))
}

fn polymer() -> Outcome {
    let accept = shift_invariance_test(&one_row_shift_spec(), 100_000, SEED, 0.01).map_err(err)?;
    ensure(accept.accepted(), || format!("shift rejected, smallest p = {:.4}", accept.min_p_value()))?;
    let control = shift_invariance_test(&wrong_relabelling_spec(), 100_000, SEED, 0.01).map_err(err)?;
    ensure(!control.accepted(), || "negative control accepted".into())?;
    let ks = gamma_degeneration(1.5, 0, 2, 5, &[1.0, 0.25, 0.0625], 100_000, SEED).map_err(err)?;
    ensure(ks.windows(2).all(|w| w[1].1 < w[0].1), || format!("KS distances {ks:?} do not decrease"))?;
    Ok(format!(
        "shift p = {:.3}, control p = {:.1e}, KS {}",
        accept.min_p_value(),
        control.min_p_value(),
        ks.iter().map(|(_, d)| format!("{d:.3}")).collect::<Vec<_>>().join(" → ")
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("worked flip example", worked_flip, Some(Duration::from_secs(1))),
        ("flip invariance, every rectangle with M+N ≤ 6", exhaustive_flip, None),
        ("wiring pipe-dream sums equal R-factor products", wiring_sums, None),
        ("color-position symmetry", color_position, None),
        ("generalized flip", generalized_flip, None),
        ("cut-tuple transformations with controls", main_theorem, None),
        ("R-polynomials of S_4", r_polynomials_s4, Some(Duration::from_secs(60))),
        ("positroid point counts", positroid_counts, Some(Duration::from_secs(120))),
        ("pipe-dream rotation identities", rotation_identities, None),
        ("conditional shift identities", conditional_shift, None),
        ("sampler against exact laws", sampler, None),
        ("polymer shift invariance", polymer, None),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if took > limit {
                outcome = Err(format!("took {took:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({took:.2?})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
