use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::yb_element;
use crate::combinat::Permutation;
use crate::error::{Error, Result};
use crate::scalar::{random_wiring_point, randomized_check, PointConfig, Rational, Verdict};

/// A word in the generators of `S_n`, not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpsInstance {
    pub n: usize,
    pub word: Vec<usize>,
}

impl CpsInstance {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Parameters("n must be positive".into()));
        }
        match self.word.iter().find(|&&k| k == 0 || k >= self.n) {
            Some(k) => Err(Error::InvalidWord(format!("letter {k} outside [1, {}]", self.n - 1))),
            None => Ok(()),
        }
    }

    pub fn random<R: Rng>(max_n: usize, max_len: usize, rng: &mut R) -> Self {
        let n = rng.random_range(2..=max_n.max(2));
        let len = rng.random_range(0..=max_len);
        CpsInstance { n, word: (0..len).map(|_| rng.random_range(1..n)).collect() }
    }
}

/// Color-position symmetry: applying `T_π ↦ T_{π⁻¹}` to
/// `R_{i_1}(p_1)⋯R_{i_r}(p_r)` gives the product along the reversed word with
/// reversed parameters. Parameters and `q` are drawn independently.
pub fn verify_color_position(inst: &CpsInstance, trials: usize, seed: u64) -> Verdict {
    if let Err(e) = inst.validate() {
        return Verdict::invalid(e.to_string());
    }
    let cfg = PointConfig::default();
    let id = Permutation::identity(inst.n);
    let rev_word: Vec<usize> = inst.word.iter().rev().copied().collect();
    randomized_check(
        trials,
        seed,
        // One rapidity per letter plus q; only the raw values are used.
        |rng| random_wiring_point(&Rational::one(), inst.word.len().max(1), rng, &cfg),
        |pt| {
            let params = &pt.z[..inst.word.len()];
            let rev_params: Vec<Rational> = params.iter().rev().cloned().collect();
            let lhs = yb_element(&inst.word, params, &id, &pt.q).cps_transform();
            let rhs = yb_element(&rev_word, &rev_params, &id, &pt.q);
            if lhs == rhs {
                return Ok(None);
            }
            let pi = lhs.terms().map(|(p, _)| *p).chain(rhs.terms().map(|(p, _)| *p)).find(|p| lhs.coeff(p) != rhs.coeff(p));
            Ok(pi.map(|p| {
                let show = |c: Option<&Rational>| c.map_or_else(|| "0".to_string(), |c| c.to_string());
                json!({ "permutation": p, "transformed": show(lhs.coeff(&p)), "reversed": show(rhs.coeff(&p)) })
            }))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rng_for, Status};

    #[test]
    fn random_words_pass() {
        let mut rng = rng_for(3, 0);
        for t in 0..20 {
            let inst = CpsInstance::random(5, 10, &mut rng);
            assert!(verify_color_position(&inst, 3, t).is_pass(), "{inst:?}");
        }
    }

    #[test]
    fn bad_letter_is_invalid() {
        let inst = CpsInstance { n: 3, word: vec![1, 3] };
        assert_eq!(verify_color_position(&inst, 1, 0).status, Status::Invalid);
    }
}
