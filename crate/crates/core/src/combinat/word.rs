use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// A word in the simple transpositions of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&k| k == 0 || k >= n) {
            return Err(Error::InvalidWord(format!("letter {bad} is not in [1,{}]", n.saturating_sub(1))));
        }
        Ok(Word { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self) -> Permutation {
        Permutation::from_word(self.n, &self.letters)
    }

    pub fn is_reduced(&self) -> bool {
        self.product().length() == self.letters.len()
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { n: self.n, letters }
    }

    /// Every reduced word of `w`, by peeling off right descents.
    pub fn all_reduced(w: &Permutation) -> Vec<Word> {
        fn rec(w: Permutation, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if w.is_identity() {
                let mut word = suffix.clone();
                word.reverse();
                out.push(word);
                return;
            }
            for k in 1..w.n() {
                if !w.right_ascent(k) {
                    suffix.push(k);
                    rec(w.mul_simple_right(k), suffix, out);
                    suffix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(*w, &mut Vec::new(), &mut out);
        out.into_iter().map(|letters| Word { n: w.n(), letters }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn longest_element_of_s3_has_two_reduced_words() {
        let w0 = Permutation::longest(3);
        let words = Word::all_reduced(&w0);
        assert_eq!(words.len(), 2);
        for w in &words {
            assert!(w.is_reduced());
            assert_eq!(w.product(), w0);
        }
    }

    #[test]
    fn s4_longest_has_sixteen() {
        assert_eq!(Word::all_reduced(&Permutation::longest(4)).len(), 16);
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(Word::new(3, vec![1, 3]).is_err());
        assert!(Word::new(3, vec![0]).is_err());
        assert!(!Word::new(3, vec![1, 1]).unwrap().is_reduced());
    }
}
