//! R-polynomials of S_4 and their distinguished-subexpression expansions.
//!
//! `cargo run --release --example r_polynomials`

use sc6v::combinat::{Permutation, Word};
use sc6v::klgr::{distinguished_subexpressions, r_polynomials};

fn main() -> sc6v::Result<()> {
    let w0 = Permutation::longest(4);
    for (pi, r) in r_polynomials(&w0).iter().take(8) {
        println!("R^{{{pi}, w0}} = {r}");
    }
    let word = Word::new(4, w0.reduced_word())?;
    let pi = Permutation::new(&[2, 1, 3, 4])?;
    println!("distinguished subexpressions of {:?} for {pi}:", word.letters());
    for (sub, weight) in distinguished_subexpressions(&pi, &word)? {
        let pattern: String = sub.mask.iter().map(|&taken| if taken { '1' } else { '0' }).collect();
        println!("  {pattern}  {weight}");
    }
    println!("reduced words of w0: {}", Word::all_reduced(&w0).len());
    Ok(())
}
