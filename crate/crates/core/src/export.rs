//! JSON and Graphviz renderings of causal analyses.

use std::fmt::Write as _;

use serde::Serialize;

use crate::nayak::{CausalAnalysis, CausalOrdering, DependencyGraph};
use crate::structure::Structure;

#[derive(Serialize)]
struct AnalysisJson<'a> {
    mapping: std::collections::BTreeMap<&'a str, &'a str>,
    direct: Vec<[&'a str; 2]>,
    closure: Vec<[&'a str; 2]>,
    clusters: Vec<Vec<&'a str>>,
}

fn sorted_pairs(names: &[String], edges: impl Iterator<Item = (usize, usize)>) -> Vec<[&str; 2]> {
    let mut out: Vec<[&str; 2]> = edges
        .map(|(a, b)| [names[a].as_str(), names[b].as_str()])
        .collect();
    out.sort_unstable();
    out
}

/// Sorted cluster member names, clusters sorted as lists.
pub fn sorted_clusters(ordering: &CausalOrdering) -> Vec<Vec<&str>> {
    let mut clusters = ordering.cluster_names();
    for c in &mut clusters {
        c.sort_unstable();
    }
    clusters.sort_unstable();
    clusters
}

/// `{"mapping": {..}, "direct": [..], "closure": [..], "clusters": [..]}`
/// on one line, every list sorted by name.
pub fn analysis_json(s: &Structure, analysis: &CausalAnalysis) -> String {
    let doc = AnalysisJson {
        mapping: analysis.mapping.to_map(s),
        direct: sorted_pairs(analysis.direct.names(), analysis.direct.edges()),
        closure: sorted_pairs(analysis.ordering.names(), analysis.ordering.edges()),
        clusters: sorted_clusters(&analysis.ordering),
    };
    let mut out = serde_json::to_string(&doc).expect("plain data serializes");
    out.push('\n');
    out
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The direct dependency graph as a Graphviz digraph.
pub fn dependency_dot(g: &DependencyGraph) -> String {
    let mut out = String::from("digraph causal_graph {\n  rankdir=LR;\n");
    for name in g.names() {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            quote(&g.names()[a]),
            quote(&g.names()[b])
        );
    }
    out.push_str("}\n");
    out
}

/// The causal ordering as a Graphviz digraph: strongly coupled variables
/// share a labeled cluster, and only covering edges between clusters are
/// drawn.
pub fn ordering_dot(o: &CausalOrdering) -> String {
    let names = o.names();
    let mut out = String::from("digraph causal_ordering {\n  rankdir=LR;\n  compound=true;\n");
    for (c, members) in o.clusters().iter().enumerate() {
        if members.len() == 1 {
            let _ = writeln!(out, "  {};", quote(&names[members[0]]));
            continue;
        }
        let label: Vec<&str> = members.iter().map(|&v| names[v].as_str()).collect();
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        let _ = writeln!(out, "    label={};", quote(&label.join(" ")));
        for &v in members {
            let _ = writeln!(out, "    {};", quote(&names[v]));
        }
        for (i, &a) in members.iter().enumerate() {
            let b = members[(i + 1) % members.len()];
            let _ = writeln!(out, "    {} -> {};", quote(&names[a]), quote(&names[b]));
        }
        out.push_str("  }\n");
    }
    for (c, d) in o.covering_edges() {
        let (from, to) = (&o.clusters()[c], &o.clusters()[d]);
        let mut attrs = Vec::new();
        if from.len() > 1 {
            attrs.push(format!("ltail=cluster_{c}"));
        }
        if to.len() > 1 {
            attrs.push(format!("lhead=cluster_{d}"));
        }
        let _ = write!(
            out,
            "  {} -> {}",
            quote(&names[from[0]]),
            quote(&names[to[0]])
        );
        if !attrs.is_empty() {
            let _ = write!(out, " [{}]", attrs.join(", "));
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
