// Orders a generated structure with a hundred thousand variables.
// Run with `--release`; pass a size to override.

use std::time::Instant;

use causord::nayak::analyze;
use causord::structure::random_complete_structure;

pub fn run_with(n: usize) -> causord::Result<()> {
    let t = Instant::now();
    let s = random_complete_structure(n, 3.0, 42)?;
    println!(
        "generated {} equations, {} incidences in {:?}",
        n,
        s.density(),
        t.elapsed()
    );

    let t = Instant::now();
    let a = analyze(&s)?;
    let largest = a
        .ordering
        .clusters()
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0);
    println!(
        "{} direct dependencies, {} clusters (largest {largest}) in {:?}",
        a.direct.edge_count(),
        a.ordering.cluster_count(),
        t.elapsed()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(100_000);
    run_with(n)
}
