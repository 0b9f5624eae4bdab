// Deciding whether a complete substructure of size `l` exists, directly and
// through a biclique in the bipartite complement.

use causord::bipartite::BipartiteGraph;
use causord::budget::Budget;
use causord::fixtures::triangle;
use causord::simon::{csdp, CsdpMode};

pub fn run() -> causord::Result<()> {
    let s = triangle();
    let complement = BipartiteGraph::from_structure(&s).complement();
    println!("complement edges:");
    for (u, v) in complement.edges() {
        println!(
            "  {} - {}",
            complement.left_names()[u],
            complement.right_names()[v]
        );
    }

    let budget = Budget::default();
    for l in 1..s.equation_count() {
        let direct = csdp(&s, l, CsdpMode::BruteForce, &budget)?;
        let via = csdp(&s, l, CsdpMode::Biclique, &budget)?;
        assert_eq!(direct.is_some(), via.is_some());
        match via.and_then(|w| w.biclique) {
            Some(b) => println!(
                "l={l}: yes, K_{{{l},{}}} = {:?} x {:?}",
                b.right.len(),
                b.left,
                b.right
            ),
            None => println!("l={l}: no"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    run()
}
