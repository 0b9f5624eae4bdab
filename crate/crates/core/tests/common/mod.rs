//! Independent oracles shared by the integration tests. None of these use
//! the library's matching or closure code.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use causord::nayak::DependencyGraph;
use causord::Structure;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure pairs by breadth-first search from every vertex.
pub fn bfs_pairs(g: &DependencyGraph) -> BTreeSet<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for a in 0..n {
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = g.successors(a).iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            if v != a {
                out.insert((a, v));
            }
            queue.extend(g.successors(v).iter().copied());
        }
    }
    out
}

/// Closure pairs of an explicit edge list over named vertices.
pub fn named_bfs_pairs(edges: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    let mut names: Vec<&str> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    names.sort_unstable();
    names.dedup();
    let idx = |n: &str| names.iter().position(|&m| m == n).unwrap();
    let g = DependencyGraph::new(
        names.iter().map(|s| s.to_string()).collect(),
        edges.iter().map(|&(a, b)| (idx(a), idx(b))),
    )
    .unwrap();
    bfs_pairs(&g)
        .into_iter()
        .map(|(a, b)| (names[a].to_string(), names[b].to_string()))
        .collect()
}

/// Strongly coupled classes from mutual reachability, as sorted name sets.
pub fn mutual_classes(names: &[String], pairs: &BTreeSet<(usize, usize)>) -> BTreeSet<Vec<String>> {
    let n = names.len();
    let mut assigned = vec![false; n];
    let mut out = BTreeSet::new();
    for a in 0..n {
        if assigned[a] {
            continue;
        }
        let mut class = vec![a];
        for b in a + 1..n {
            if pairs.contains(&(a, b)) && pairs.contains(&(b, a)) {
                class.push(b);
            }
        }
        for &v in &class {
            assigned[v] = true;
        }
        let mut named: Vec<String> = class.iter().map(|&v| names[v].clone()).collect();
        named.sort();
        out.insert(named);
    }
    out
}

/// Every subset of `k` equations touches at least `k` variables, checked
/// over all subsets.
pub fn hall_holds(s: &Structure) -> bool {
    let m = s.equation_count();
    assert!(m <= 16, "subset oracle is for small instances");
    (1u32..1 << m).all(|mask| {
        let eqs: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let mut vars: Vec<usize> = eqs
            .iter()
            .flat_map(|&i| s.vars_of(i).iter().copied())
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars.len() >= eqs.len()
    })
}

pub fn complete_by_subsets(s: &Structure) -> bool {
    s.equation_count() == s.variable_count() && hall_holds(s)
}

/// Sizes `l` for which some `l` equations touch exactly `l` variables.
pub fn complete_subset_sizes(s: &Structure) -> Vec<bool> {
    let m = s.equation_count();
    let mut sizes = vec![false; m + 1];
    for mask in 1u32..1 << m {
        let eqs: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if s.variables_of_set(&eqs).count_ones(..) == eqs.len() {
            sizes[eqs.len()] = true;
        }
    }
    sizes
}

/// All bijections equation -> own variable, by trying every assignment.
pub fn all_bijections(s: &Structure) -> Vec<Vec<usize>> {
    fn go(
        s: &Structure,
        i: usize,
        used: &mut [bool],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == s.equation_count() {
            out.push(cur.clone());
            return;
        }
        for j in 0..s.variable_count() {
            if !used[j] && s.contains(i, j) {
                used[j] = true;
                cur.push(j);
                go(s, i + 1, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        s,
        0,
        &mut vec![false; s.variable_count()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// `n` equations over `vars` variables with random incidence; every
/// variable appears at least once.
pub fn random_incidence(rng: &mut ChaCha8Rng, n: usize, vars: usize) -> Structure {
    let mut rows: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=3.min(vars));
            (0..k).map(|_| rng.gen_range(0..vars)).collect()
        })
        .collect();
    for v in 0..vars {
        if !rows.iter().any(|r| r.contains(&v)) {
            let i = rng.gen_range(0..n);
            rows[i].push(v);
        }
    }
    Structure::from_equations(rows.iter().enumerate().map(|(i, r)| {
        (
            format!("e{i}"),
            r.iter().map(|v| format!("v{v}")).collect::<Vec<_>>(),
        )
    }))
    .unwrap()
}

/// Random digraph on `n` vertices, each ordered pair present with
/// probability `p`.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DependencyGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    DependencyGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
}
