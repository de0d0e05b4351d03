//! The golden corpus: deterministic JSON renderings of the worked examples,
//! the figure instances and a few exhaustive scans, compared byte for byte
//! with the committed files under `golden/`.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::combinat::{grassmannian_perm, grassmannian_word, BoundaryCondition, Permutation, SkewDomain};
use crate::error::{Error, Result};
use crate::klgr::{conditional_example, r_polynomials};
use crate::model::{height_by_paths, PipeDream, Tile};
use crate::scalar::{random_rational_skew_point, random_wiring_point, rng_for, PointConfig, Rational};
use crate::symmetry::{
    double_flip_example, global_flip_example, local_flip_example, nine_color_instance, verify_flip, verify_flip_exhaustive,
    verify_generalized_flip, verify_main_with, worked_example, worked_example_brute_force, worked_example_closed_forms, Backend, FlipSpec,
    MainInstance,
};

/// Seed used for every randomized entry.
pub const CORPUS_SEED: u64 = 20;

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub sha256: String,
    /// `match`, `mismatch`, `missing` or `written`.
    pub state: &'static str,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusOutcome {
    pub entries: Vec<EntryOutcome>,
    pub mismatched: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

type Generator = fn() -> Result<Value>;

/// Every corpus entry, by file stem.
pub fn generators() -> Vec<(&'static str, Generator)> {
    vec![
        ("rotation_example", rotation_example),
        ("flip_worked_example", flip_worked_example),
        ("flip_worked_configurations", flip_worked_configurations),
        ("grassmannian_reduction", grassmannian_reduction),
        ("cut_height_example", cut_height_example),
        ("double_flip_instance", || main_entry(double_flip_example())),
        ("global_flip_instance", || main_entry(global_flip_example())),
        ("local_flip_instance", || main_entry(local_flip_example())),
        ("generalized_flip_instance", generalized_flip_instance),
        ("conditional_shift_example", conditional_shift_example),
        ("flip_exhaustive_digest", flip_exhaustive_digest),
        ("rpoly_s4", rpoly_s4),
    ]
}

/// Regenerates every entry and compares it with `dir/golden/<name>.json`;
/// with `regen` the golden files are rewritten instead.
pub fn check(dir: &Path, regen: bool) -> Result<CorpusOutcome> {
    let golden = dir.join("golden");
    if regen {
        std::fs::create_dir_all(&golden).map_err(|e| Error::Parse(format!("{}: {e}", golden.display())))?;
    }
    let mut out = CorpusOutcome::default();
    for (name, make) in generators() {
        let text = render(&make()?);
        let path = golden.join(format!("{name}.json"));
        let state = if regen {
            std::fs::write(&path, &text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            "written"
        } else {
            match std::fs::read_to_string(&path) {
                Ok(old) if old == text => "match",
                Ok(_) => "mismatch",
                Err(_) => "missing",
            }
        };
        if state == "mismatch" || state == "missing" {
            out.mismatched.push(name.to_string());
        }
        out.entries.push(EntryOutcome { name: name.to_string(), sha256: sha256_hex(text.as_bytes()), state });
    }
    Ok(out)
}

fn rotation_example() -> Result<Value> {
    let h = BoundaryCondition::new(vec![(6, 6), (7, 4), (9, 5), (10, 7)])?;
    Ok(json!({ "n": 11, "H": h, "rotated": h.flip_180(11)? }))
}

fn flip_worked_example() -> Result<Value> {
    let inst = worked_example();
    let cfg = PointConfig { box_size: 20, ..PointConfig::default() };
    let mut rows = Vec::new();
    for t in 0..3 {
        let pt = random_rational_skew_point(2, 3, &mut rng_for(CORPUS_SEED, t), &cfg)?;
        let (lhs, rhs) = worked_example_closed_forms(&pt)?;
        let (blhs, brhs) = worked_example_brute_force(&pt)?;
        rows.push(json!({
            "point": pt,
            "closed_form": [lhs.to_string(), rhs.to_string()],
            "brute_force": [blhs.to_string(), brhs.to_string()],
        }));
    }
    let verdict = verify_flip(&inst, 10, CORPUS_SEED);
    Ok(json!({ "instance": inst, "rotated_H": inst.flipped_h(), "evaluations": rows, "status": verdict.status }))
}

fn factor_label(from_bottom: usize, from_left: usize, tile: Tile, cell: (usize, usize)) -> String {
    let (i, j) = cell;
    match (from_bottom < from_left, tile) {
        (true, Tile::Crossing) => format!("p{i}{j}"),
        (true, Tile::Elbow) => format!("1-p{i}{j}"),
        (false, Tile::Crossing) => format!("q*p{i}{j}"),
        (false, Tile::Elbow) => format!("1-q*p{i}{j}"),
    }
}

/// The pipe dreams behind both sides of the worked flip example, each with
/// its table of cell factors (top row first).
fn flip_worked_configurations() -> Result<Value> {
    let inst = worked_example();
    let dom = SkewDomain::rectangle(2, 3);
    let side = |h: &BoundaryCondition| -> Vec<Value> {
        (0..1u64 << dom.num_cells())
            .filter_map(|mask| {
                let pd = PipeDream::from_mask(&dom, mask);
                let (pi, meetings) = pd.trace(&dom);
                if BoundaryCondition::horizontal(&pi, 2, 3) != *h || BoundaryCondition::vertical(&pi, 2, 3) != inst.v {
                    return None;
                }
                let mut rows = vec![Vec::new(); dom.n_inf()];
                for mt in meetings {
                    rows[mt.cell.1 - 1].push(factor_label(mt.from_bottom, mt.from_left, mt.tile, mt.cell));
                }
                rows.reverse();
                Some(json!({ "tiles": pd.to_rows(&dom), "permutation": pi, "factors": rows }))
            })
            .collect()
    };
    Ok(json!({ "instance": inst, "original": side(&inst.h), "rotated": side(&inst.flipped_h()) }))
}

fn grassmannian_reduction() -> Result<Value> {
    let mut rows = Vec::new();
    for (m, n) in [(2, 2), (2, 3), (4, 3)] {
        let x: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
        let y: Vec<String> = (1..=n).map(|j| format!("y{j}")).collect();
        let (w, z) = SkewDomain::rectangle(m, n).to_wiring(&x, &y)?;
        let word = grassmannian_word(m, n);
        rows.push(json!({
            "M": m,
            "N": n,
            "permutation": w,
            "matches_formula": w == grassmannian_perm(m, n),
            "length": w.length(),
            "reduced_word": word,
            "word_product_matches": Permutation::from_word(m + n, &word) == w,
            "rapidities": z,
        }));
    }
    Ok(Value::Array(rows))
}

/// A skew domain, the first cut (in enumeration order) that two paths can
/// cross, its cutoff levels and the first such configuration.
fn cut_height_example() -> Result<Value> {
    let dom = SkewDomain::parse("LLULUU", "UULULL")?;
    let (cut, pd) = dom
        .all_cuts()
        .into_iter()
        .find_map(|cut| {
            (0..1u64 << dom.num_cells()).map(|mask| PipeDream::from_mask(&dom, mask)).find(|pd| height_by_paths(&dom, pd, &cut) == 2).map(|pd| (cut, pd))
        })
        .ok_or_else(|| Error::Hypothesis("no configuration of height 2".into()))?;
    let levels = crate::combinat::cutoff_levels(&dom, &cut)?;
    let pi = pd.permutation(&dom);
    Ok(json!({
        "domain": dom,
        "cut": cut,
        "levels": levels,
        "configuration": pd.to_rows(&dom),
        "permutation": pi,
        "height": crate::model::height(&pi, levels),
    }))
}

fn main_entry((spec, inst): (FlipSpec, MainInstance)) -> Result<Value> {
    let verdict = verify_main_with(&inst, 2, CORPUS_SEED, Backend::Prime);
    Ok(json!({ "flip": spec, "instance": inst, "status": verdict.status }))
}

fn generalized_flip_instance() -> Result<Value> {
    let inst = nine_color_instance();
    let verdict = verify_generalized_flip(&inst, 5, CORPUS_SEED);
    Ok(json!({ "instance": inst, "rectangle_permutation": inst.rectangle_permutation()?, "status": verdict.status }))
}

fn conditional_shift_example() -> Result<Value> {
    let ex = conditional_example();
    let cfg = PointConfig { box_size: 20, ..PointConfig::default() };
    let mut rows = Vec::new();
    for t in 0..3 {
        let pt = random_wiring_point(&Rational::one(), 4, &mut rng_for(CORPUS_SEED, t), &cfg)?;
        let here = ex.probabilities(&pt)?;
        let there = ex.probabilities(&pt.swapped(ex.alpha, ex.beta()))?;
        rows.push(json!({
            "point": pt,
            "total": here.total.to_string(),
            "sent_below": here.sent_below.to_string(),
            "swapped_total": there.total.to_string(),
            "swapped_from_above": there.from_above.to_string(),
            "outcome": ex.check(&pt)?,
        }));
    }
    Ok(json!({ "w": ex.w, "alpha": ex.alpha, "delta": ex.delta, "beta": ex.beta(), "H": ex.h, "V": ex.v, "evaluations": rows }))
}

/// Exhaustive flip scan for `M + N ≤ 6`; the full report is summarized by
/// its content hash.
fn flip_exhaustive_digest() -> Result<Value> {
    let sweeps = verify_flip_exhaustive(6, 2, CORPUS_SEED);
    let full = serde_json::to_string(&sweeps).expect("sweeps serialize");
    let shapes: Vec<Value> = sweeps.iter().map(|s| json!({ "M": s.m, "N": s.n, "conditions": s.conditions, "status": s.verdict.status })).collect();
    Ok(json!({ "max_total": 6, "trials": 2, "seed": CORPUS_SEED, "shapes": shapes, "sha256": sha256_hex(full.as_bytes()) }))
}

fn rpoly_s4() -> Result<Value> {
    let mut rows = Vec::new();
    for w in Permutation::all(4) {
        for (pi, r) in r_polynomials(&w) {
            rows.push(json!({ "pi": pi, "w": w, "coefficients": r }));
        }
    }
    Ok(Value::Array(rows))
}
