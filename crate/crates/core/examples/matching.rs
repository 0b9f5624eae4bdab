// The bipartite view of a structure and its maximum matching.

use causord::bipartite::BipartiteGraph;
use causord::fixtures::coupled;

pub fn run() -> causord::Result<()> {
    let g = BipartiteGraph::from_structure(&coupled());
    let m = g.maximum_matching();
    println!("{} edges, matching of size {}", g.edge_count(), m.len());
    for (u, v) in m.edges() {
        println!("  {} = {}", g.left_names()[u], g.right_names()[v]);
    }
    assert!(m.saturates_left());
    assert!(!g.has_augmenting_path(&m));
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    run()
}
