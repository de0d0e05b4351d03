//! Products of R-factors in the Hecke algebra: transition probabilities of
//! a wiring diagram, checked against configuration enumeration, and the
//! color-position symmetry.
//!
//! `cargo run --release --example hecke_products`

use sc6v::combinat::Permutation;
use sc6v::hecke::{verify_color_position, yb_element, CpsInstance};
use sc6v::model::wiring_configuration_sum;
use sc6v::scalar::Rational;

fn main() -> sc6v::Result<()> {
    let word = [4usize, 2, 3, 2, 1, 2, 3];
    let params: Vec<Rational> = (1..=7).map(|t| Rational::new(t, 11)).collect();
    let sigma = Permutation::new(&[3, 1, 2, 5, 4])?;
    let q = Rational::new(1, 3);

    let y = yb_element(&word, &params, &sigma, &q);
    let brute = wiring_configuration_sum(&word, &params, &sigma, &q)?;
    println!("{} output permutations; total mass {}", y.len(), y.total().unwrap_or_else(Rational::zero));
    let target = Permutation::new(&[1, 4, 2, 5, 3])?;
    println!("P(pi = {target}) = {} (enumeration: {})", y.coeff(&target).cloned().unwrap_or_else(Rational::zero), brute.get(&target).cloned().unwrap_or_else(Rational::zero));
    let agree = y.terms().all(|(pi, c)| brute.get(pi) == Some(c)) && brute.len() == y.len();
    println!("Hecke product equals configuration sum: {agree}");

    let inst = CpsInstance { n: 5, word: word.to_vec() };
    println!("color-position symmetry: {}", verify_color_position(&inst, 10, 3).status.as_str());
    Ok(())
}
