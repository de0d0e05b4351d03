use std::collections::BTreeMap;

use crate::combinat::Permutation;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sum of configuration weights of a wiring diagram, by enumeration.
///
/// The diagram starts with forced crossings along a reduced word of `sigma`
/// and continues with `word`; crossing at a letter with parameter `p` weighs
/// `p` or `q·p` depending on whether the two wires there have crossed an
/// even or odd number of times, and a bounce weighs `1−p` or `1−q·p`. The
/// result maps each output permutation (wire → final position) to its total
/// weight.
pub fn wiring_configuration_sum<S: Scalar>(word: &[usize], params: &[S], sigma: &Permutation, q: &S) -> Result<BTreeMap<Permutation, S>> {
    if word.len() != params.len() {
        return Err(Error::InvalidWord(format!("{} letters, {} parameters", word.len(), params.len())));
    }
    if word.len() > 24 {
        return Err(Error::CapExceeded { what: "letters", value: word.len(), cap: 24 });
    }
    let n = sigma.n();
    let prefix = sigma.reduced_word();
    let mut out: BTreeMap<Permutation, S> = BTreeMap::new();
    for mask in 0u64..1 << word.len() {
        // wire_at[h] is the wire on position h; parity[a][b] counts crossings.
        let mut wire_at: Vec<usize> = (0..=n).collect();
        let mut parity = vec![vec![false; n + 1]; n + 1];
        let cross = |wire_at: &mut Vec<usize>, parity: &mut Vec<Vec<bool>>, k: usize| {
            let (a, b) = (wire_at[k], wire_at[k + 1]);
            parity[a][b] = !parity[a][b];
            parity[b][a] = !parity[b][a];
            wire_at.swap(k, k + 1);
        };
        for &k in &prefix {
            cross(&mut wire_at, &mut parity, k);
        }
        let mut weight = q.one_like();
        for (t, (&k, p)) in word.iter().zip(params).enumerate() {
            let (a, b) = (wire_at[k], wire_at[k + 1]);
            let odd = parity[a][b];
            let crossing_weight = if odd { q.clone() * p.clone() } else { p.clone() };
            if mask >> t & 1 == 1 {
                weight = weight * crossing_weight;
                cross(&mut wire_at, &mut parity, k);
            } else {
                weight = weight * (q.one_like() - crossing_weight);
            }
        }
        let mut images = vec![0; n];
        for (h, &wire) in wire_at.iter().enumerate().skip(1) {
            images[wire - 1] = h;
        }
        let pi = Permutation::new(&images)?;
        match out.get_mut(&pi) {
            Some(v) => *v = v.clone() + weight,
            None => {
                out.insert(pi, weight);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::yb_element;
    use crate::scalar::Rational;

    #[test]
    fn matches_the_hecke_product() {
        let q = Rational::new(3, 7);
        let word = [1usize, 2, 1, 3, 2, 2];
        let params: Vec<Rational> = (1..=6).map(|t| Rational::new(t, 13)).collect();
        let sigma = Permutation::new(&[2, 1, 4, 3]).unwrap();
        let brute = wiring_configuration_sum(&word, &params, &sigma, &q).unwrap();
        let hecke = yb_element(&word, &params, &sigma, &q);
        let as_map: BTreeMap<Permutation, Rational> = hecke.terms().map(|(k, v)| (*k, v.clone())).collect();
        assert_eq!(brute, as_map);
    }
}
