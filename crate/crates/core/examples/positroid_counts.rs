//! Points of positroid strata over small prime fields, split by boundary
//! data, against sums of R-polynomials; then pipe-dream counts.
//!
//! `cargo run --release --example positroid_counts`

use sc6v::klgr::{check_reversal_bijection, hecke_point_counts, pipe_dream_census, positroid_census, rotation_mismatches};

fn main() -> sc6v::Result<()> {
    for p in [2, 3] {
        let census = positroid_census(2, 2, p)?;
        let predicted = hecke_point_counts(2, 2, p);
        println!("Gr(2,4) over F_{p}: {} boundary pairs, {} cells", census.by_boundary.len(), census.by_cell.len());
        for ((h, v), count) in &census.by_boundary {
            println!("  H = {:<16} V = {:<16} {count:>4}  (predicted {})", format!("{:?}", h.pairs()), format!("{:?}", v.pairs()), predicted[&(h.clone(), v.clone())]);
        }
        let rev = check_reversal_bijection(2, 2, p)?;
        println!("  column reversal bijective: {}", rev.is_bijection());
    }
    for (h, v) in pipe_dream_census(2, 3)?.keys().take(3) {
        println!("pipe dreams H = {:?}, V = {:?}", h.pairs(), v.pairs());
    }
    println!("rotation mismatches on 3x3: {}", rotation_mismatches(3, 3)?.len());
    Ok(())
}
