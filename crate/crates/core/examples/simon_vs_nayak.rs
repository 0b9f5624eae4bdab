// The recursive minimal-substructure algorithm against the matching-based
// one: same orderings, very different running times.

use std::time::Instant;

use causord::budget::Budget;
use causord::fixtures::coupled;
use causord::nayak::causal_ordering;
use causord::simon::{coa, minimal_substructures};
use causord::structure::random_complete_structure;

pub fn run() -> causord::Result<()> {
    // One recursion step at a time on the running example.
    let mut s = coupled();
    let budget = Budget::default();
    let mut level = 0;
    while !s.is_empty() {
        let minimal = minimal_substructures(&s, &budget)?;
        println!("level {level}: {:?}", minimal.named(&s));
        let removed: Vec<usize> = minimal.members.concat();
        s = s.eliminate(&removed)?;
        level += 1;
    }

    for n in [4, 8, 12, 16] {
        let s = random_complete_structure(n, 0.6, 7)?;
        let t = Instant::now();
        let fast = causal_ordering(&s)?;
        let fast_time = t.elapsed();
        let t = Instant::now();
        let slow = coa(&s, &budget)?;
        let slow_time = t.elapsed();
        assert_eq!(fast, slow);
        println!(
            "n={n:>2}: matching {fast_time:?}, recursion {slow_time:?}, {} pairs",
            fast.edge_count()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    run()
}
