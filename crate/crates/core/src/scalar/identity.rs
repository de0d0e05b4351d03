use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Scalar;
use crate::error::{Error, Result};

/// SplitMix64 finalizer, used to derive independent per-task seeds.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INVALID")]
    Invalid,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Invalid => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Invalid => "INVALID",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub points_tried: usize,
    pub skipped: usize,
    pub checks: usize,
}

/// Outcome of a verification. A failing verdict always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub points: Vec<Value>,
    pub stats: Stats,
}

impl Verdict {
    pub fn pass(points: Vec<Value>, stats: Stats) -> Self {
        Verdict { status: Status::Pass, witness: None, detail: None, points, stats }
    }

    pub fn fail(witness: Value, detail: impl Into<String>, points: Vec<Value>, stats: Stats) -> Self {
        Verdict { status: Status::Fail, witness: Some(witness), detail: Some(detail.into()), points, stats }
    }

    pub fn invalid(detail: impl Into<String>) -> Self {
        Verdict { status: Status::Invalid, witness: None, detail: Some(detail.into()), points: Vec::new(), stats: Stats::default() }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Conjunction of two verdicts; the first non-passing one wins.
    pub fn and(mut self, other: Verdict) -> Verdict {
        let stats = Stats {
            points_tried: self.stats.points_tried + other.stats.points_tried,
            skipped: self.stats.skipped + other.stats.skipped,
            checks: self.stats.checks + other.stats.checks,
        };
        let mut points = std::mem::take(&mut self.points);
        points.extend(other.points.iter().cloned());
        let mut out = if self.status != Status::Pass { self } else { other };
        out.points = points;
        out.stats = stats;
        out
    }
}

/// Runs `check` at `trials` random points. `check` returns `Some(detail)` on a
/// mismatch. Singular points (`Error::SingularPoint`) are resampled and
/// counted as skipped; other errors abort with an INVALID verdict.
pub fn randomized_check<P, F, C>(trials: usize, seed: u64, sample: F, check: C) -> Verdict
where
    P: Serialize + Send,
    F: Fn(&mut ChaCha8Rng) -> Result<P> + Sync,
    C: Fn(&P) -> Result<Option<Value>> + Sync,
{
    const MAX_RESAMPLES: usize = 32;
    let outcomes: Vec<Result<(Value, usize, Option<Value>)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(seed, t as u64);
            let mut skipped = 0;
            loop {
                let pt = sample(&mut rng)?;
                match check(&pt) {
                    Ok(res) => return Ok((serde_json::to_value(&pt).unwrap_or(Value::Null), skipped, res)),
                    Err(Error::SingularPoint(_)) if skipped < MAX_RESAMPLES => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect();
    let mut points = Vec::new();
    let mut stats = Stats::default();
    for outcome in outcomes {
        match outcome {
            Err(e) => return Verdict::invalid(e.to_string()),
            Ok((pt, skipped, res)) => {
                stats.points_tried += 1 + skipped;
                stats.skipped += skipped;
                stats.checks += 1;
                points.push(pt.clone());
                if let Some(detail) = res {
                    let witness = serde_json::json!({ "point": pt, "mismatch": detail });
                    return Verdict::fail(witness, "identity fails at a sampled point", points, stats);
                }
            }
        }
    }
    Verdict::pass(points, stats)
}

/// Checks `lhs(pt) == rhs(pt)` at random points.
pub fn identity_test<P, S, F, L, R>(trials: usize, seed: u64, sample: F, lhs: L, rhs: R) -> Verdict
where
    P: Serialize + Send,
    S: Scalar,
    F: Fn(&mut ChaCha8Rng) -> Result<P> + Sync,
    L: Fn(&P) -> Result<S> + Sync,
    R: Fn(&P) -> Result<S> + Sync,
{
    randomized_check(trials, seed, sample, |pt| {
        let (a, b) = (lhs(pt)?, rhs(pt)?);
        Ok((a != b).then(|| serde_json::json!({ "lhs": a.to_string(), "rhs": b.to_string() })))
    })
}
