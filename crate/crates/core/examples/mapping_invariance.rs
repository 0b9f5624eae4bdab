// Every total causal mapping of a structure induces the same ordering.

use causord::budget::Budget;
use causord::fixtures::coupled;
use causord::nayak::{enumerate_tcms, CausalAnalysis, DEFAULT_ENUMERATION_LIMIT};

pub fn run() -> causord::Result<()> {
    let s = coupled();
    let mappings = enumerate_tcms(&s, DEFAULT_ENUMERATION_LIMIT, &Budget::default())?;
    let mut orderings = Vec::new();
    for m in mappings {
        let pairs: Vec<String> = m
            .named(&s)
            .iter()
            .map(|(f, x)| format!("{f}->{x}"))
            .collect();
        let analysis = CausalAnalysis::from_mapping(&s, m)?;
        println!(
            "{}: {} direct, {} closed",
            pairs.join(" "),
            analysis.direct.edge_count(),
            analysis.ordering.edge_count()
        );
        orderings.push(analysis.ordering);
    }
    let same = orderings.windows(2).all(|w| w[0] == w[1]);
    println!("all {} orderings equal: {same}", orderings.len());
    assert!(same);
    Ok(())
}

#[allow(dead_code)]
fn main() -> causord::Result<()> {
    run()
}
