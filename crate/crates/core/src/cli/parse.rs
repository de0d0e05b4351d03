//! Small text formats accepted on the command line.

use crate::combinat::{BoundaryCondition, Cut, Permutation, Word};
use crate::error::{Error, Result};

fn integers(text: &str, what: &str) -> Result<Vec<usize>> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .enumerate()
        .map(|(k, tok)| tok.trim().parse::<usize>().map_err(|_| Error::Parse(format!("{what}: entry {} is not a nonnegative integer: {tok:?}", k + 1))))
        .collect()
}

/// One-line notation, `2,3,1` or `[2,3,1]`.
pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation> {
    let images = integers(text, "permutation")?;
    if images.len() != n {
        return Err(Error::Parse(format!("permutation {text:?} has {} entries, expected {n}", images.len())));
    }
    Permutation::new(&images)
}

pub fn parse_word(text: &str, n: usize) -> Result<Word> {
    Word::new(n, integers(text, "word")?)
}

/// A JSON array of pairs, e.g. `[[3,2],[5,3]]`.
pub fn parse_boundary(text: &str) -> Result<BoundaryCondition> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("boundary condition {text:?}: {e}")))
}

pub fn parse_cut(text: &str) -> Result<Cut> {
    match integers(text, "cut")?[..] {
        [l, d, u, r] => Cut::new(l, d, u, r),
        _ => Err(Error::Parse(format!("cut {text:?} needs four entries l,d,u,r"))),
    }
}

/// `COLUMNSxROWS`.
pub fn parse_size(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("size {text:?} is not of the form COLUMNSxROWS"));
    let (a, b) = text.split_once('x').ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(parse_permutation("[2,3,1]", 3).unwrap(), Permutation::new(&[2, 3, 1]).unwrap());
        assert!(parse_permutation("2,2,1", 3).is_err());
        assert!(parse_permutation("2,x", 2).unwrap_err().to_string().contains("entry 2"));
        assert_eq!(parse_word("1, 2,1", 3).unwrap().letters(), &[1, 2, 1]);
        assert_eq!(parse_word("", 3).unwrap().len(), 0);
        assert_eq!(parse_boundary("[[3,2],[5,3]]").unwrap().len(), 2);
        assert_eq!(parse_cut("1,2,3,4").unwrap().as_array(), [1, 2, 3, 4]);
        assert_eq!(parse_size("2x3").unwrap(), (2, 3));
        assert!(parse_size("2by3").is_err());
    }
}
