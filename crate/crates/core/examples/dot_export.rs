// Graphviz and JSON renderings of an analysis. Pipe the DOT into
// `dot -Tsvg` to draw it.

use causord::export::{analysis_json, dependency_dot, ordering_dot};
use causord::fixtures::coupled;
use causord::nayak::analyze;

pub fn run() -> causord::Result<()> {
    let s = coupled();
    let a = analyze(&s)?;
    print!("{}", dependency_dot(&a.direct));
    print!("{}", ordering_dot(&a.ordering));
    print!("{}", analysis_json(&s, &a));
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    run()
}
