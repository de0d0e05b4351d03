//! Monte Carlo sampling against the exact law of the color permutation.
//!
//! `cargo run --release --example sampling [samples]`

use sc6v::combinat::SkewDomain;
use sc6v::model::{exact_distribution, Method, Sampler};
use sc6v::scalar::{random_rational_skew_point, rng_for, PointConfig};

fn main() -> sc6v::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let dom = SkewDomain::rectangle(2, 2);
    let pt = random_rational_skew_point(2, 2, &mut rng_for(4, 0), &PointConfig { box_size: 50, ..PointConfig::constrained() })?;
    let exact = exact_distribution(&dom, &pt, Method::Hecke)?;
    let counts = Sampler::new(&dom, &pt)?.frequencies(samples, 9);
    println!("{:<12} {:>10} {:>10} {:>7}", "permutation", "exact", "empirical", "z");
    for (pi, c) in exact.terms() {
        let p = c.to_f64();
        let emp = *counts.get(pi).unwrap_or(&0) as f64 / samples as f64;
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        println!("{:<12} {:>10.5} {:>10.5} {:>7.2}", pi.to_string(), p, emp, (emp - p) / se);
    }
    Ok(())
}
