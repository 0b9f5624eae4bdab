// The seven-equation running example, end to end: parse, validate, map,
// derive direct dependencies, close them and read off the clusters.

use causord::fixtures::COUPLED;
use causord::nayak::{direct_dependencies, tcm, transitive_closure};
use causord::structure::{parse_text, ParseOptions};

pub fn run() -> causord::Result<()> {
    let s = parse_text(COUPLED, ParseOptions::default())?;
    println!("{}", s.validate());

    let mapping = tcm(&s)?;
    for (f, x) in mapping.named(&s) {
        println!("{f} -> {x}");
    }

    let direct = direct_dependencies(&s, &mapping)?;
    println!("{} direct dependencies", direct.edge_count());

    let ordering = transitive_closure(&direct);
    println!("{} pairs in the causal ordering", ordering.edge_count());
    for cluster in ordering.cluster_names() {
        println!("  [{}]", cluster.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    run()
}
